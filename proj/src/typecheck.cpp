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

#include "qarrow/typecheck.hpp"

namespace qarrow {

namespace {

enum class Tag { Gamma, Delta, Hidden };

struct Entry {
    std::string name;
    TypePtr ty;
    Tag tag;
};

bool is_quantum(Kind k) {
    switch (k) {
        case Kind::VecUnit:
        case Kind::VecLet:
        case Kind::VecAdd:
        case Kind::VecSub:
        case Kind::VecScale:
        case Kind::MZero:
        case Kind::ArrowAbs:
            return true;
        default:
            return is_command(k);
    }
}

// Bool, a variable, or a product of such.
bool may_be_classical(const TypePtr &t) {
    switch (t->kind) {
        case TypeKind::Bool:
        case TypeKind::Var:
            return true;
        case TypeKind::Prod:
            return may_be_classical(t->a) && may_be_classical(t->b);
        default:
            return false;
    }
}

NodePtr rebuild(const NodePtr &n, Kind kind, std::vector<NodePtr> kids, TypePtr ty) {
    auto copy = std::make_shared<Node>(*n);
    copy->kind = kind;
    copy->kids = std::move(kids);
    copy->ty = std::move(ty);
    return copy;
}

class Checker {
   public:
    explicit Checker(const GlobalTypes &globals) : globals_(globals) {}

    void push_env(const EnvPair &env, bool delta_visible_as_gamma) {
        for (const auto &[name, ty] : env.gamma) {
            stack_.push_back({name, ty, Tag::Gamma});
        }
        for (const auto &[name, ty] : env.delta) {
            stack_.push_back({name, ty, delta_visible_as_gamma ? Tag::Gamma : Tag::Delta});
        }
    }

    TypePtr fresh() { return Type::variable(next_var_++); }

    TypePtr prune(TypePtr t) const {
        while (t->kind == TypeKind::Var) {
            auto it = subst_.find(t->var);
            if (it == subst_.end()) {
                break;
            }
            t = it->second;
        }
        return t;
    }

    TypePtr resolve(const TypePtr &t) const {
        TypePtr p = prune(t);
        switch (p->kind) {
            case TypeKind::Bool:
            case TypeKind::Var:
                return p;
            case TypeKind::Vec:
                return Type::vec(resolve(p->a));
            case TypeKind::Dens:
                return Type::dens(resolve(p->a));
            case TypeKind::Prod:
                return Type::prod(resolve(p->a), resolve(p->b));
            case TypeKind::Fun:
                return Type::fun(resolve(p->a), resolve(p->b));
            case TypeKind::Super:
                return Type::super(resolve(p->a), resolve(p->b));
        }
        return p;
    }

    bool occurs(int v, const TypePtr &t) const {
        TypePtr p = prune(t);
        if (p->kind == TypeKind::Var) {
            return p->var == v;
        }
        return (p->a && occurs(v, p->a)) || (p->b && occurs(v, p->b));
    }

    bool unify_rec(const TypePtr &x, const TypePtr &y) {
        TypePtr a = prune(x);
        TypePtr b = prune(y);
        if (a->kind == TypeKind::Var && b->kind == TypeKind::Var && a->var == b->var) {
            return true;
        }
        if (a->kind == TypeKind::Var) {
            if (occurs(a->var, b)) {
                return false;
            }
            subst_[a->var] = b;
            return true;
        }
        if (b->kind == TypeKind::Var) {
            return unify_rec(b, a);
        }
        if (a->kind != b->kind) {
            return false;
        }
        switch (a->kind) {
            case TypeKind::Bool:
                return true;
            case TypeKind::Vec:
            case TypeKind::Dens:
                return unify_rec(a->a, b->a);
            default:
                return unify_rec(a->a, b->a) && unify_rec(a->b, b->b);
        }
    }

    void unify(const TypePtr &expected, const TypePtr &found, SourcePos pos) {
        if (!unify_rec(expected, found)) {
            throw TypeError(TypeErrorKind::Mismatch, pos, resolve(expected), resolve(found));
        }
    }

    TypePtr instantiate(const TypePtr &t, std::map<int, TypePtr> &fresh_for) {
        switch (t->kind) {
            case TypeKind::Bool:
                return t;
            case TypeKind::Var: {
                auto it = fresh_for.find(t->var);
                if (it != fresh_for.end()) {
                    return it->second;
                }
                return fresh_for[t->var] = fresh();
            }
            case TypeKind::Vec:
                return Type::vec(instantiate(t->a, fresh_for));
            case TypeKind::Dens:
                return Type::dens(instantiate(t->a, fresh_for));
            case TypeKind::Prod:
                return Type::prod(instantiate(t->a, fresh_for), instantiate(t->b, fresh_for));
            case TypeKind::Fun:
                return Type::fun(instantiate(t->a, fresh_for), instantiate(t->b, fresh_for));
            case TypeKind::Super:
                return Type::super(instantiate(t->a, fresh_for), instantiate(t->b, fresh_for));
        }
        return t;
    }

    void bind(const Pattern &p, const TypePtr &t, Tag tag, SourcePos pos) {
        if (p.is_var()) {
            stack_.push_back({p.name, t, tag});
            return;
        }
        TypePtr pt = prune(t);
        if (pt->kind == TypeKind::Var) {
            TypePtr a = fresh();
            TypePtr b = fresh();
            unify(Type::prod(a, b), pt, pos);
            pt = prune(t);
        }
        if (pt->kind != TypeKind::Prod) {
            throw TypeError(TypeErrorKind::PatternArity, pos, Type::prod(fresh(), fresh()), resolve(pt));
        }
        bind(p.parts[0], pt->a, tag, pos);
        bind(p.parts[1], pt->b, tag, pos);
    }

    // Marks visible delta entries with `to`; returns the previous tags.
    std::vector<Tag> retag_delta(Tag to) {
        std::vector<Tag> saved;
        saved.reserve(stack_.size());
        for (auto &e : stack_) {
            saved.push_back(e.tag);
            if (e.tag == Tag::Delta) {
                e.tag = to;
            }
        }
        return saved;
    }

    void restore_tags(const std::vector<Tag> &saved) {
        for (std::size_t i = 0; i < saved.size(); ++i) {
            stack_[i].tag = saved[i];
        }
    }

    TypePtr lookup(const NodePtr &n) {
        for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
            if (it->name != n->name) {
                continue;
            }
            if (it->tag == Tag::Hidden) {
                throw TypeError(TypeErrorKind::DeltaMisuse, n->pos,
                                "arrow-bound variable '" + n->name +
                                    "' cannot be used in the function position of an arrow application");
            }
            return it->ty;
        }
        auto g = globals_.find(n->name);
        if (g != globals_.end()) {
            std::map<int, TypePtr> fresh_for;
            return instantiate(g->second, fresh_for);
        }
        throw TypeError(TypeErrorKind::Unbound, n->pos, "unbound variable '" + n->name + "'");
    }

    TypePtr hint_part(const TypePtr &hint, TypeKind kind, bool first) const {
        if (!hint) {
            return nullptr;
        }
        TypePtr h = prune(hint);
        if (h->kind != kind) {
            return nullptr;
        }
        return first ? h->a : h->b;
    }

    NodePtr term(const NodePtr &n, const TypePtr &hint) {
        switch (n->kind) {
            case Kind::Var:
                return rebuild(n, n->kind, {}, lookup(n));
            case Kind::True:
            case Kind::False:
                return rebuild(n, n->kind, {}, Type::boolean());
            case Kind::Pair: {
                NodePtr a = term(n->kids[0], hint_part(hint, TypeKind::Prod, true));
                NodePtr b = term(n->kids[1], hint_part(hint, TypeKind::Prod, false));
                TypePtr ty = Type::prod(a->ty, b->ty);
                return rebuild(n, n->kind, {a, b}, ty);
            }
            case Kind::Fst:
            case Kind::Snd: {
                NodePtr m = term(n->kids[0], nullptr);
                TypePtr a = fresh();
                TypePtr b = fresh();
                unify(Type::prod(a, b), m->ty, m->pos);
                return rebuild(n, n->kind, {m}, n->kind == Kind::Fst ? a : b);
            }
            case Kind::Lam: {
                TypePtr arg = hint_part(hint, TypeKind::Fun, true);
                if (!arg) {
                    arg = fresh();
                }
                std::size_t mark = stack_.size();
                bind(n->pat, arg, Tag::Gamma, n->pos);
                NodePtr body = term(n->kids[0], hint_part(hint, TypeKind::Fun, false));
                stack_.resize(mark);
                return rebuild(n, n->kind, {body}, Type::fun(arg, body->ty));
            }
            case Kind::App: {
                NodePtr f = term(n->kids[0], nullptr);
                TypePtr pf = prune(f->ty);
                NodePtr a = term(n->kids[1], pf->kind == TypeKind::Fun ? pf->a : nullptr);
                TypePtr result;
                if (pf->kind == TypeKind::Fun) {
                    unify(pf->a, a->ty, a->pos);
                    result = pf->b;
                } else if (pf->kind == TypeKind::Var) {
                    result = fresh();
                    unify(Type::fun(a->ty, result), pf, f->pos);
                } else {
                    throw TypeError(TypeErrorKind::Mismatch, f->pos, Type::fun(resolve(a->ty), fresh()), resolve(pf));
                }
                return rebuild(n, n->kind, {f, a}, result);
            }
            case Kind::Let:
            case Kind::VecLet: {
                NodePtr bound = term(n->kids[0], nullptr);
                TypePtr pb = prune(bound->ty);
                std::size_t mark = stack_.size();
                if (n->kind == Kind::VecLet || pb->kind == TypeKind::Vec) {
                    TypePtr elem = fresh();
                    unify(Type::vec(elem), pb, bound->pos);
                    bind(n->pat, elem, Tag::Gamma, n->pos);
                    NodePtr body = term(n->kids[1], hint);
                    stack_.resize(mark);
                    unify(Type::vec(fresh()), body->ty, body->pos);
                    return rebuild(n, Kind::VecLet, {bound, body}, body->ty);
                }
                bind(n->pat, bound->ty, Tag::Gamma, n->pos);
                NodePtr body = term(n->kids[1], hint);
                stack_.resize(mark);
                return rebuild(n, Kind::Let, {bound, body}, body->ty);
            }
            case Kind::If: {
                NodePtr c = term(n->kids[0], Type::boolean());
                unify(Type::boolean(), c->ty, c->pos);
                NodePtr t = term(n->kids[1], hint);
                NodePtr e = term(n->kids[2], hint ? hint : t->ty);
                unify(t->ty, e->ty, e->pos);
                return rebuild(n, n->kind, {c, t, e}, t->ty);
            }
            case Kind::Eq: {
                NodePtr l = term(n->kids[0], nullptr);
                NodePtr r = term(n->kids[1], l->ty);
                unify(l->ty, r->ty, r->pos);
                return rebuild(n, n->kind, {l, r}, Type::boolean());
            }
            case Kind::VecUnit: {
                NodePtr m = term(n->kids[0], hint_part(hint, TypeKind::Vec, true));
                return rebuild(n, n->kind, {m}, Type::vec(m->ty));
            }
            case Kind::VecAdd:
            case Kind::VecSub: {
                NodePtr l = term(n->kids[0], hint);
                unify(Type::vec(fresh()), l->ty, l->pos);
                NodePtr r = term(n->kids[1], l->ty);
                unify(l->ty, r->ty, r->pos);
                return rebuild(n, n->kind, {l, r}, l->ty);
            }
            case Kind::VecScale: {
                NodePtr m = term(n->kids[0], hint);
                unify(Type::vec(fresh()), m->ty, m->pos);
                return rebuild(n, n->kind, {m}, m->ty);
            }
            case Kind::MZero: {
                TypePtr ty = Type::vec(fresh());
                if (hint) {
                    unify(hint, ty, n->pos);
                }
                return rebuild(n, n->kind, {}, ty);
            }
            case Kind::ArrowAbs: {
                TypePtr in = hint_part(hint, TypeKind::Super, true);
                if (!in) {
                    in = fresh();
                }
                auto saved = retag_delta(Tag::Gamma);
                std::size_t mark = stack_.size();
                bind(n->pat, in, Tag::Delta, n->pos);
                NodePtr body = command(n->kids[0], hint_part(hint, TypeKind::Super, false));
                stack_.resize(mark);
                restore_tags(saved);
                return rebuild(n, n->kind, {body}, Type::super(in, body->ty));
            }
            default:
                throw TypeError(TypeErrorKind::Mismatch, n->pos,
                                std::string("a command (") + kind_name(n->kind) + ") cannot be used as a term");
        }
    }

    NodePtr command(const NodePtr &n, const TypePtr &hint) {
        switch (n->kind) {
            case Kind::CApp: {
                auto saved = retag_delta(Tag::Hidden);
                NodePtr l = term(n->kids[0], nullptr);
                restore_tags(saved);
                TypePtr pl = prune(l->ty);
                NodePtr m = term(n->kids[1], pl->kind == TypeKind::Super ? pl->a : nullptr);
                TypePtr result;
                if (pl->kind == TypeKind::Super) {
                    unify(pl->a, m->ty, m->pos);
                    result = pl->b;
                } else if (pl->kind == TypeKind::Var) {
                    result = fresh();
                    unify(Type::super(m->ty, result), pl, l->pos);
                } else {
                    throw TypeError(TypeErrorKind::Mismatch, l->pos, Type::super(resolve(m->ty), fresh()),
                                    resolve(pl));
                }
                return rebuild(n, n->kind, {l, m}, result);
            }
            case Kind::CUnit: {
                NodePtr m = term(n->kids[0], nullptr);
                TypePtr pm = prune(m->ty);
                TypePtr result;
                if (pm->kind == TypeKind::Vec) {
                    result = pm->a;
                } else if (pm->kind == TypeKind::Var) {
                    result = fresh();
                    deferred_.push_back({m->ty, result, n->pos});
                } else {
                    result = m->ty;
                }
                (void)hint;
                return rebuild(n, n->kind, {m}, result);
            }
            case Kind::CLet: {
                NodePtr p = command(n->kids[0], nullptr);
                std::size_t mark = stack_.size();
                bind(n->pat, p->ty, Tag::Delta, n->pos);
                NodePtr q = command(n->kids[1], hint);
                stack_.resize(mark);
                return rebuild(n, n->kind, {p, q}, q->ty);
            }
            case Kind::Meas: {
                NodePtr m = term(n->kids[0], nullptr);
                return rebuild(n, n->kind, {m}, Type::prod(m->ty, m->ty));
            }
            case Kind::TrL: {
                NodePtr m = term(n->kids[0], nullptr);
                TypePtr a = fresh();
                TypePtr b = fresh();
                unify(Type::prod(a, b), m->ty, m->pos);
                return rebuild(n, n->kind, {m}, b);
            }
            default:
                throw TypeError(TypeErrorKind::Mismatch, n->pos,
                                std::string("a term (") + kind_name(n->kind) + ") cannot be used as a command");
        }
    }

    // Command units whose argument type was unknown when checked: a Vec
    // argument selects the quantum lift, anything else the classical one.
    void solve_deferred() {
        std::vector<bool> done(deferred_.size(), false);
        std::size_t remaining = deferred_.size();
        while (remaining > 0) {
            bool progress = false;
            for (std::size_t i = 0; i < deferred_.size(); ++i) {
                if (done[i]) {
                    continue;
                }
                TypePtr pa = prune(deferred_[i].arg);
                if (pa->kind == TypeKind::Var) {
                    continue;
                }
                unify(deferred_[i].result, pa->kind == TypeKind::Vec ? pa->a : pa, deferred_[i].pos);
                done[i] = true;
                --remaining;
                progress = true;
            }
            if (!progress) {
                for (std::size_t i = 0; i < deferred_.size(); ++i) {
                    if (!done[i]) {
                        unify(deferred_[i].result, deferred_[i].arg, deferred_[i].pos);
                        done[i] = true;
                        --remaining;
                        break;
                    }
                }
            }
        }
        deferred_.clear();
    }

    // The element type of an otherwise unconstrained mzero cannot affect any
    // result, so it defaults to Bool instead of being reported as ambiguous.
    void default_mzero(const NodePtr &n) {
        for (const auto &k : n->kids) {
            default_mzero(k);
        }
        if (n->kind == Kind::MZero) {
            default_vars(resolve(n->ty));
        }
    }

    void default_vars(const TypePtr &t) {
        if (t->kind == TypeKind::Var) {
            unify_rec(t, Type::boolean());
            return;
        }
        if (t->a) {
            default_vars(resolve(t->a));
        }
        if (t->b) {
            default_vars(resolve(t->b));
        }
    }

    static void check_bases(const TypePtr &t, SourcePos pos) {
        switch (t->kind) {
            case TypeKind::Bool:
            case TypeKind::Var:
                return;
            case TypeKind::Vec:
            case TypeKind::Dens:
                if (!may_be_classical(t->a)) {
                    throw TypeError(TypeErrorKind::NonClassicalBasis, pos,
                                    "expected a classical type, found " + to_string(t->a));
                }
                return;
            case TypeKind::Super:
                for (const auto &x : {t->a, t->b}) {
                    if (!may_be_classical(x)) {
                        throw TypeError(TypeErrorKind::NonClassicalBasis, pos,
                                        "expected a classical type, found " + to_string(x));
                    }
                }
                return;
            default:
                check_bases(t->a, pos);
                check_bases(t->b, pos);
        }
    }

    NodePtr finalize(const NodePtr &n) {
        std::vector<NodePtr> kids;
        kids.reserve(n->kids.size());
        for (const auto &k : n->kids) {
            kids.push_back(finalize(k));
        }
        TypePtr ty = resolve(n->ty);
        check_bases(ty, n->pos);
        if (is_quantum(n->kind) && !is_ground(ty)) {
            throw TypeError(TypeErrorKind::Ambiguous, n->pos,
                            "cannot determine the type " + to_string(ty) + " here; add a type annotation");
        }
        if (n->kind == Kind::Eq && !may_be_classical(kids[0]->ty)) {
            throw TypeError(TypeErrorKind::NonClassicalBasis, n->pos,
                            "expected a classical type, found " + to_string(kids[0]->ty));
        }
        if (n->kind == Kind::Meas || n->kind == Kind::TrL) {
            if (!is_classical(kids[0]->ty)) {
                throw TypeError(TypeErrorKind::NonClassicalBasis, kids[0]->pos,
                                "expected a classical type, found " + to_string(kids[0]->ty));
            }
        }
        if (n->kind == Kind::CUnit && kids[0]->ty->kind != TypeKind::Vec && !is_classical(kids[0]->ty)) {
            throw TypeError(TypeErrorKind::NonClassicalBasis, kids[0]->pos,
                            "expected a classical type, found " + to_string(kids[0]->ty));
        }
        if (n->kind == Kind::CApp && !is_classical(kids[1]->ty)) {
            throw TypeError(TypeErrorKind::NonClassicalBasis, kids[1]->pos,
                            "expected a classical type, found " + to_string(kids[1]->ty));
        }
        return rebuild(n, n->kind, std::move(kids), ty);
    }

    std::vector<Entry> stack_;

   private:
    struct Deferred {
        TypePtr arg;
        TypePtr result;
        SourcePos pos;
    };

    const GlobalTypes &globals_;
    std::map<int, TypePtr> subst_;
    std::vector<Deferred> deferred_;
    int next_var_ = 0;
};

}  // namespace

Elaborated elaborate_term(const Term &m, const EnvPair &env, const GlobalTypes &globals, const TypePtr &expected) {
    Checker c(globals);
    c.push_env(env, true);
    if (expected) {
        Checker::check_bases(expected, m->pos);
    }
    NodePtr raw = c.term(m, expected);
    if (expected) {
        c.unify(expected, raw->ty, m->pos);
    }
    c.solve_deferred();
    c.default_mzero(raw);
    NodePtr out = c.finalize(raw);
    return {out, out->ty};
}

Elaborated elaborate_command(const Command &p, const EnvPair &env, const GlobalTypes &globals) {
    Checker c(globals);
    c.push_env(env, false);
    NodePtr raw = c.command(p, nullptr);
    c.solve_deferred();
    c.default_mzero(raw);
    NodePtr out = c.finalize(raw);
    return {out, out->ty};
}

TypePtr infer_term(const EnvPair &env, const Term &m, const GlobalTypes &globals) {
    return elaborate_term(m, env, globals).type;
}

TypePtr check_command(const EnvPair &env, const Command &p, const GlobalTypes &globals) {
    return elaborate_command(p, env, globals).type;
}

CheckedProgram check_program(const Program &p, const GlobalTypes &outer) {
    CheckedProgram out;
    GlobalTypes scope = outer;
    for (const auto &def : p.defs) {
        try {
            Elaborated e = elaborate_term(def.body, {}, scope, def.annotation);
            TypePtr ty = canonical(e.type);
            Definition d = def;
            d.body = e.node;
            out.program.defs.push_back(std::move(d));
            out.types[def.name] = ty;
            scope[def.name] = ty;
        } catch (TypeError &err) {
            err.definition = def.name;
            throw;
        }
    }
    return out;
}

}  // namespace qarrow
