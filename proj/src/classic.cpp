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

#include "qarrow/classic.hpp"

namespace qarrow {

namespace classic {

namespace {

std::shared_ptr<ClassicExpr> node(CKind kind, TypePtr in, TypePtr out) {
    auto e = std::make_shared<ClassicExpr>();
    e->kind = kind;
    e->in = std::move(in);
    e->out = std::move(out);
    return e;
}

}  // namespace

CExprPtr arr(Pattern p, NodePtr body, TypePtr in, TypePtr out) {
    auto e = node(CKind::Arr, std::move(in), std::move(out));
    e->pat = std::move(p);
    e->body = std::move(body);
    return e;
}

CExprPtr arr_id(TypePtr t) { return node(CKind::Arr, t, t); }

CExprPtr lift(Pattern p, NodePtr body, TypePtr in, TypePtr out) {
    auto e = node(CKind::LiftLin, std::move(in), std::move(out));
    e->pat = std::move(p);
    e->body = std::move(body);
    return e;
}

CExprPtr compose(CExprPtr f, CExprPtr g) {
    auto e = node(CKind::Compose, f->in, g->out);
    e->kids = {std::move(f), std::move(g)};
    return e;
}

CExprPtr first(CExprPtr f, TypePtr c) {
    auto e = node(CKind::First, Type::prod(f->in, c), Type::prod(f->out, c));
    e->kids = {std::move(f)};
    return e;
}

CExprPtr second(CExprPtr f, TypePtr c) {
    auto e = node(CKind::Second, Type::prod(c, f->in), Type::prod(c, f->out));
    e->kids = {std::move(f)};
    return e;
}

CExprPtr fanout(CExprPtr f, CExprPtr g) {
    auto e = node(CKind::Fanout, f->in, Type::prod(f->out, g->out));
    e->kids = {std::move(f), std::move(g)};
    return e;
}

CExprPtr meas(TypePtr a) { return node(CKind::Meas, a, Type::prod(a, a)); }

CExprPtr trl(TypePtr a, TypePtr b) { return node(CKind::TrL, Type::prod(a, b), b); }

CExprPtr embed(NodePtr term) {
    auto e = node(CKind::Embed, term->ty->a, term->ty->b);
    e->body = std::move(term);
    return e;
}

}  // namespace classic

namespace {

Pattern rename_pattern(const Pattern &p, const std::map<std::string, std::string> &renames) {
    if (p.is_var()) {
        auto it = renames.find(p.name);
        return Pattern::var(it == renames.end() ? p.name : it->second);
    }
    return Pattern::pair(rename_pattern(p.parts[0], renames), rename_pattern(p.parts[1], renames));
}

// Pattern and type of the left-nested delta tuple.
std::pair<Pattern, TypePtr> delta_tuple(const std::vector<DeltaEntry> &delta) {
    Pattern p = delta.front().pat;
    TypePtr t = delta.front().ty;
    for (std::size_t i = 1; i < delta.size(); ++i) {
        p = Pattern::pair(p, delta[i].pat);
        t = Type::prod(t, delta[i].ty);
    }
    return {p, t};
}

// Extends delta with `p`, renaming earlier entries that `p` shadows to names
// that occur nowhere in `scope`.
std::vector<DeltaEntry> extend_delta(const std::vector<DeltaEntry> &delta, const Pattern &p, const TypePtr &ty,
                                     const NodePtr &scope) {
    std::set<std::string> avoid = free_vars(scope);
    for (const auto &e : delta) {
        for (const auto &v : e.pat.vars()) {
            avoid.insert(v);
        }
    }
    for (const auto &v : p.vars()) {
        avoid.insert(v);
    }
    std::vector<DeltaEntry> out;
    out.reserve(delta.size() + 1);
    for (const auto &e : delta) {
        std::map<std::string, std::string> renames;
        for (const auto &v : e.pat.vars()) {
            if (p.binds(v)) {
                std::string fresh = fresh_name(v, avoid);
                avoid.insert(fresh);
                renames[v] = fresh;
            }
        }
        out.push_back({renames.empty() ? e.pat : rename_pattern(e.pat, renames), e.ty});
    }
    out.push_back({p, ty});
    return out;
}

CExprPtr select(const std::vector<DeltaEntry> &delta, const Term &m) {
    auto [p, t] = delta_tuple(delta);
    return classic::arr(p, m, t, m->ty);
}

void require_typed(const NodePtr &n) {
    if (!n->ty) {
        throw EvalError(std::string("translation needs an elaborated tree (") + kind_name(n->kind) + ")");
    }
}

}  // namespace

CExprPtr translate_command(const std::vector<DeltaEntry> &delta, const Command &p) {
    require_typed(p);
    switch (p->kind) {
        case Kind::CApp: {
            const NodePtr &l = p->kids[0];
            const NodePtr &m = p->kids[1];
            require_typed(l);
            CExprPtr arrow = l->kind == Kind::ArrowAbs ? translate_term(l) : classic::embed(l);
            return classic::compose(select(delta, m), arrow);
        }
        case Kind::CUnit: {
            const NodePtr &m = p->kids[0];
            auto [pat, t] = delta_tuple(delta);
            if (m->ty->kind == TypeKind::Vec) {
                return classic::lift(pat, m, t, m->ty->a);
            }
            return classic::arr(pat, m, t, m->ty);
        }
        case Kind::CLet: {
            auto [pat, t] = delta_tuple(delta);
            (void)pat;
            CExprPtr bound = translate_command(delta, p->kids[0]);
            CExprPtr env = classic::fanout(classic::arr_id(t), bound);
            auto extended = extend_delta(delta, p->pat, p->kids[0]->ty, p->kids[1]);
            return classic::compose(env, translate_command(extended, p->kids[1]));
        }
        case Kind::Meas: {
            const NodePtr &m = p->kids[0];
            return classic::compose(select(delta, m), classic::meas(m->ty));
        }
        case Kind::TrL: {
            const NodePtr &m = p->kids[0];
            return classic::compose(select(delta, m), classic::trl(m->ty->a, m->ty->b));
        }
        default:
            throw EvalError(std::string("not a command: ") + kind_name(p->kind));
    }
}

CExprPtr translate_term(const Term &m) {
    require_typed(m);
    if (m->kind != Kind::ArrowAbs) {
        return classic::embed(m);
    }
    return translate_command({DeltaEntry{m->pat, m->ty->a}}, m->kids[0]);
}

CExprPtr expand_derived(const CExprPtr &e) {
    std::vector<CExprPtr> kids;
    for (const auto &k : e->kids) {
        kids.push_back(expand_derived(k));
    }
    auto swap = [](const TypePtr &a, const TypePtr &b) {
        NodePtr body = ast::pair(ast::var("b"), ast::var("a"));
        body = ast::with_type(body, Type::prod(b, a));
        return classic::arr(Pattern::pair(Pattern::var("a"), Pattern::var("b")), body, Type::prod(a, b),
                            Type::prod(b, a));
    };
    // second f = swap >>> first f >>> swap
    auto second = [&](const CExprPtr &f, const TypePtr &c) {
        return classic::compose(swap(c, f->in), classic::compose(classic::first(f, c), swap(f->out, c)));
    };
    switch (e->kind) {
        case CKind::Second:
            return second(kids[0], e->in->a);
        case CKind::Fanout: {
            const CExprPtr &f = kids[0];
            const CExprPtr &g = kids[1];
            NodePtr body = ast::with_type(ast::pair(ast::var("a"), ast::var("a")), Type::prod(f->in, f->in));
            CExprPtr dup = classic::arr(Pattern::var("a"), body, f->in, Type::prod(f->in, f->in));
            return classic::compose(dup, classic::compose(classic::first(f, f->in), second(g, f->out)));
        }
        default: {
            if (kids.empty()) {
                return e;
            }
            auto copy = std::make_shared<ClassicExpr>(*e);
            copy->kids = std::move(kids);
            return copy;
        }
    }
}

Term inverse_translate(const CExprPtr &e) {
    auto fv_union = [](std::initializer_list<NodePtr> terms) {
        std::set<std::string> out;
        for (const auto &t : terms) {
            auto f = free_vars(t);
            out.insert(f.begin(), f.end());
        }
        return out;
    };
    switch (e->kind) {
        case CKind::Arr:
        case CKind::LiftLin: {
            NodePtr f = e->body ? ast::lam(e->pat, e->body) : ast::lam(Pattern::var("x"), ast::var("x"));
            std::string x = fresh_name("x", free_vars(f));
            return ast::arrow_abs(Pattern::var(x), ast::cunit(ast::app(f, ast::var(x))));
        }
        case CKind::Compose: {
            NodePtr f = inverse_translate(e->kids[0]);
            NodePtr g = inverse_translate(e->kids[1]);
            auto avoid = fv_union({f, g});
            std::string x = fresh_name("x", avoid);
            avoid.insert(x);
            std::string y = fresh_name("y", avoid);
            return ast::arrow_abs(Pattern::var(x), ast::clet(Pattern::var(y), ast::capp(f, ast::var(x)),
                                                             ast::capp(g, ast::var(y))));
        }
        case CKind::First: {
            NodePtr f = inverse_translate(e->kids[0]);
            auto avoid = free_vars(f);
            std::string z = fresh_name("z", avoid);
            avoid.insert(z);
            std::string x = fresh_name("x", avoid);
            return ast::arrow_abs(
                Pattern::var(z),
                ast::clet(Pattern::var(x), ast::capp(f, ast::fst(ast::var(z))),
                          ast::cunit(ast::pair(ast::var(x), ast::snd(ast::var(z))))));
        }
        case CKind::Second:
        case CKind::Fanout:
            return inverse_translate(expand_derived(e));
        case CKind::Meas:
            return ast::arrow_abs(Pattern::var("x"), ast::meas(ast::var("x")));
        case CKind::TrL:
            return ast::arrow_abs(Pattern::var("x"), ast::trl(ast::var("x")));
        case CKind::Embed:
            return e->body;
    }
    return nullptr;
}

std::string to_sexpr(const CExprPtr &e) {
    auto ty = [](const TypePtr &t) {
        std::string s = to_string(t);
        return (t->kind == TypeKind::Bool || t->kind == TypeKind::Prod) ? s : "(" + s + ")";
    };
    switch (e->kind) {
        case CKind::Arr:
            return "(arr " + (e->body ? to_string(ast::lam(e->pat, e->body), true) : std::string("id")) + ")";
        case CKind::LiftLin:
            return "(lift " + to_string(ast::lam(e->pat, e->body), true) + ")";
        case CKind::Compose:
            return "(compose " + to_sexpr(e->kids[0]) + " " + to_sexpr(e->kids[1]) + ")";
        case CKind::First:
            return "(first " + to_sexpr(e->kids[0]) + ")";
        case CKind::Second:
            return "(second " + to_sexpr(e->kids[0]) + ")";
        case CKind::Fanout:
            return "(fanout " + to_sexpr(e->kids[0]) + " " + to_sexpr(e->kids[1]) + ")";
        case CKind::Meas:
            return "(meas " + ty(e->in) + ")";
        case CKind::TrL:
            return "(trL " + ty(e->in->a) + " " + ty(e->in->b) + ")";
        case CKind::Embed:
            return "(embed " + to_string(e->body, true) + ")";
    }
    return "";
}

}  // namespace qarrow
