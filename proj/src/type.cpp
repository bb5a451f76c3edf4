// Copyright 2026 The qarrow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qarrow/type.hpp"

#include <map>
#include <stdexcept>

namespace qarrow {

namespace {

TypePtr make(TypeKind kind, TypePtr a = nullptr, TypePtr b = nullptr) {
    auto t = std::make_shared<Type>();
    t->kind = kind;
    t->a = std::move(a);
    t->b = std::move(b);
    return t;
}

}  // namespace

TypePtr Type::boolean() {
    static const TypePtr instance = make(TypeKind::Bool);
    return instance;
}
TypePtr Type::prod(TypePtr a, TypePtr b) { return make(TypeKind::Prod, std::move(a), std::move(b)); }
TypePtr Type::fun(TypePtr a, TypePtr b) { return make(TypeKind::Fun, std::move(a), std::move(b)); }
TypePtr Type::vec(TypePtr a) { return make(TypeKind::Vec, std::move(a)); }
TypePtr Type::dens(TypePtr a) { return make(TypeKind::Dens, std::move(a)); }
TypePtr Type::super(TypePtr a, TypePtr b) { return make(TypeKind::Super, std::move(a), std::move(b)); }
TypePtr Type::lin(TypePtr a, TypePtr b) { return fun(std::move(a), vec(std::move(b))); }
TypePtr Type::variable(int id) {
    auto t = std::make_shared<Type>();
    t->kind = TypeKind::Var;
    t->var = id;
    return t;
}

bool type_equal(const TypePtr &x, const TypePtr &y) {
    if (x == y) {
        return true;
    }
    if (!x || !y || x->kind != y->kind) {
        return false;
    }
    switch (x->kind) {
        case TypeKind::Bool:
            return true;
        case TypeKind::Var:
            return x->var == y->var;
        case TypeKind::Vec:
        case TypeKind::Dens:
            return type_equal(x->a, y->a);
        default:
            return type_equal(x->a, y->a) && type_equal(x->b, y->b);
    }
}

bool is_classical(const TypePtr &t) {
    if (t->kind == TypeKind::Bool) {
        return true;
    }
    return t->kind == TypeKind::Prod && is_classical(t->a) && is_classical(t->b);
}

bool is_ground(const TypePtr &t) {
    switch (t->kind) {
        case TypeKind::Bool:
            return true;
        case TypeKind::Var:
            return false;
        case TypeKind::Vec:
        case TypeKind::Dens:
            return is_ground(t->a);
        default:
            return is_ground(t->a) && is_ground(t->b);
    }
}

int bit_count(const TypePtr &t) {
    if (t->kind == TypeKind::Bool) {
        return 1;
    }
    if (t->kind == TypeKind::Prod) {
        return bit_count(t->a) + bit_count(t->b);
    }
    throw std::invalid_argument("not a classical type: " + to_string(t));
}

std::size_t dimension(const TypePtr &t) { return std::size_t{1} << bit_count(t); }

namespace {

// Precedence: 0 = arrow, 1 = constructor application, 2 = atom.
std::string render(const TypePtr &t, int prec);

void render_tuple(const TypePtr &t, std::string &out) {
    // Right-nested products print as flat tuples: (A, (B, C)) == (A, B, C).
    out += render(t->a, 0);
    out += ", ";
    if (t->b->kind == TypeKind::Prod) {
        render_tuple(t->b, out);
    } else {
        out += render(t->b, 0);
    }
}

std::string render(const TypePtr &t, int prec) {
    std::string s;
    switch (t->kind) {
        case TypeKind::Bool:
            return "Bool";
        case TypeKind::Var:
            return "t" + std::to_string(t->var);
        case TypeKind::Prod:
            s = "(";
            render_tuple(t, s);
            return s + ")";
        case TypeKind::Fun:
            s = render(t->a, 1) + " -> " + render(t->b, 0);
            break;
        case TypeKind::Vec:
            s = "Vec " + render(t->a, 2);
            if (prec < 2) {
                return s;
            }
            break;
        case TypeKind::Dens:
            s = "Dens " + render(t->a, 2);
            if (prec < 2) {
                return s;
            }
            break;
        case TypeKind::Super:
            s = "Super " + render(t->a, 2) + " " + render(t->b, 2);
            if (prec < 2) {
                return s;
            }
            break;
    }
    if (t->kind == TypeKind::Fun && prec == 0) {
        return s;
    }
    return "(" + s + ")";
}

}  // namespace

std::string to_string(const TypePtr &t) { return render(t, 0); }

namespace {

// Renumbers type variables 0, 1, ... in order of appearance.
TypePtr canonical_vars(const TypePtr &t, std::map<int, int> &ids) {
    switch (t->kind) {
        case TypeKind::Bool:
            return t;
        case TypeKind::Var: {
            auto it = ids.find(t->var);
            int id = it == ids.end() ? (ids[t->var] = static_cast<int>(ids.size())) : it->second;
            return Type::variable(id);
        }
        case TypeKind::Vec:
            return Type::vec(canonical_vars(t->a, ids));
        case TypeKind::Dens:
            return Type::dens(canonical_vars(t->a, ids));
        case TypeKind::Prod:
            return Type::prod(canonical_vars(t->a, ids), canonical_vars(t->b, ids));
        case TypeKind::Fun:
            return Type::fun(canonical_vars(t->a, ids), canonical_vars(t->b, ids));
        case TypeKind::Super:
            return Type::super(canonical_vars(t->a, ids), canonical_vars(t->b, ids));
    }
    return t;
}

}  // namespace

TypePtr canonical(const TypePtr &t) {
    std::map<int, int> ids;
    return canonical_vars(t, ids);
}

bool same_type_up_to_renaming(const TypePtr &x, const TypePtr &y) { return type_equal(canonical(x), canonical(y)); }


}  // namespace qarrow
