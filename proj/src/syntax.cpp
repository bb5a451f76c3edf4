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

#include "qarrow/syntax.hpp"

#include <charconv>
#include <cmath>

namespace qarrow {

Pattern Pattern::var(std::string name) {
    Pattern p;
    p.name = std::move(name);
    return p;
}

Pattern Pattern::pair(Pattern left, Pattern right) {
    Pattern p;
    p.parts.push_back(std::move(left));
    p.parts.push_back(std::move(right));
    return p;
}

void Pattern::collect_vars(std::vector<std::string> &out) const {
    if (is_var()) {
        out.push_back(name);
        return;
    }
    for (const auto &part : parts) {
        part.collect_vars(out);
    }
}

std::vector<std::string> Pattern::vars() const {
    std::vector<std::string> out;
    collect_vars(out);
    return out;
}

bool Pattern::binds(const std::string &x) const {
    if (is_var()) {
        return name == x;
    }
    return parts[0].binds(x) || parts[1].binds(x);
}

bool operator==(const Pattern &a, const Pattern &b) { return a.name == b.name && a.parts == b.parts; }

bool is_command(Kind kind) {
    switch (kind) {
        case Kind::CApp:
        case Kind::CUnit:
        case Kind::CLet:
        case Kind::Meas:
        case Kind::TrL:
            return true;
        default:
            return false;
    }
}

const char *kind_name(Kind kind) {
    switch (kind) {
        case Kind::Var: return "Var";
        case Kind::True: return "True";
        case Kind::False: return "False";
        case Kind::Pair: return "Pair";
        case Kind::Fst: return "Fst";
        case Kind::Snd: return "Snd";
        case Kind::Lam: return "Lam";
        case Kind::App: return "App";
        case Kind::Let: return "Let";
        case Kind::If: return "If";
        case Kind::Eq: return "Eq";
        case Kind::VecUnit: return "VecUnit";
        case Kind::VecLet: return "VecLet";
        case Kind::VecAdd: return "VecAdd";
        case Kind::VecSub: return "VecSub";
        case Kind::VecScale: return "VecScale";
        case Kind::MZero: return "MZero";
        case Kind::ArrowAbs: return "ArrowAbs";
        case Kind::CApp: return "CApp";
        case Kind::CUnit: return "CUnit";
        case Kind::CLet: return "CLet";
        case Kind::Meas: return "Meas";
        case Kind::TrL: return "TrL";
    }
    return "?";
}

int binder_child(Kind kind) {
    switch (kind) {
        case Kind::Lam:
        case Kind::ArrowAbs:
            return 0;
        case Kind::Let:
        case Kind::VecLet:
        case Kind::CLet:
            return 1;
        default:
            return -1;
    }
}

namespace ast {

namespace {

NodePtr make(Kind kind, std::vector<NodePtr> kids, SourcePos pos) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->kids = std::move(kids);
    n->pos = pos;
    return n;
}

NodePtr make_bound(Kind kind, Pattern p, std::vector<NodePtr> kids, SourcePos pos) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->pat = std::move(p);
    n->kids = std::move(kids);
    n->pos = pos;
    return n;
}

}  // namespace

NodePtr var(std::string name, SourcePos pos) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->name = std::move(name);
    n->pos = pos;
    return n;
}
NodePtr boolean(bool value, SourcePos pos) { return make(value ? Kind::True : Kind::False, {}, pos); }
NodePtr pair(NodePtr a, NodePtr b, SourcePos pos) { return make(Kind::Pair, {std::move(a), std::move(b)}, pos); }
NodePtr fst(NodePtr m, SourcePos pos) { return make(Kind::Fst, {std::move(m)}, pos); }
NodePtr snd(NodePtr m, SourcePos pos) { return make(Kind::Snd, {std::move(m)}, pos); }
NodePtr lam(Pattern p, NodePtr body, SourcePos pos) { return make_bound(Kind::Lam, std::move(p), {std::move(body)}, pos); }
NodePtr app(NodePtr f, NodePtr a, SourcePos pos) { return make(Kind::App, {std::move(f), std::move(a)}, pos); }
NodePtr let(Pattern p, NodePtr bound, NodePtr body, SourcePos pos) {
    return make_bound(Kind::Let, std::move(p), {std::move(bound), std::move(body)}, pos);
}
NodePtr if_(NodePtr c, NodePtr t, NodePtr e, SourcePos pos) {
    return make(Kind::If, {std::move(c), std::move(t), std::move(e)}, pos);
}
NodePtr eq(NodePtr a, NodePtr b, SourcePos pos) { return make(Kind::Eq, {std::move(a), std::move(b)}, pos); }
NodePtr vec_unit(NodePtr m, SourcePos pos) { return make(Kind::VecUnit, {std::move(m)}, pos); }
NodePtr vec_let(Pattern p, NodePtr bound, NodePtr body, SourcePos pos) {
    return make_bound(Kind::VecLet, std::move(p), {std::move(bound), std::move(body)}, pos);
}
NodePtr vec_add(NodePtr a, NodePtr b, SourcePos pos) { return make(Kind::VecAdd, {std::move(a), std::move(b)}, pos); }
NodePtr vec_sub(NodePtr a, NodePtr b, SourcePos pos) { return make(Kind::VecSub, {std::move(a), std::move(b)}, pos); }
NodePtr vec_scale(std::complex<double> c, NodePtr m, SourcePos pos) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::VecScale;
    n->scalar = c;
    n->kids = {std::move(m)};
    n->pos = pos;
    return n;
}
NodePtr mzero(SourcePos pos) { return make(Kind::MZero, {}, pos); }
NodePtr arrow_abs(Pattern p, NodePtr body, SourcePos pos) {
    return make_bound(Kind::ArrowAbs, std::move(p), {std::move(body)}, pos);
}
NodePtr capp(NodePtr arrow, NodePtr arg, SourcePos pos) {
    return make(Kind::CApp, {std::move(arrow), std::move(arg)}, pos);
}
NodePtr cunit(NodePtr m, SourcePos pos) { return make(Kind::CUnit, {std::move(m)}, pos); }
NodePtr clet(Pattern p, NodePtr bound, NodePtr body, SourcePos pos) {
    return make_bound(Kind::CLet, std::move(p), {std::move(bound), std::move(body)}, pos);
}
NodePtr meas(NodePtr m, SourcePos pos) { return make(Kind::Meas, {std::move(m)}, pos); }
NodePtr trl(NodePtr m, SourcePos pos) { return make(Kind::TrL, {std::move(m)}, pos); }

NodePtr with_kids(const NodePtr &n, std::vector<NodePtr> kids) {
    auto copy = std::make_shared<Node>(*n);
    copy->kids = std::move(kids);
    copy->ty = nullptr;
    return copy;
}

NodePtr with_type(const NodePtr &n, TypePtr ty) {
    auto copy = std::make_shared<Node>(*n);
    copy->ty = std::move(ty);
    return copy;
}

NodePtr pattern_term(const Pattern &p, SourcePos pos) {
    if (p.is_var()) {
        return var(p.name, pos);
    }
    return pair(pattern_term(p.parts[0], pos), pattern_term(p.parts[1], pos), pos);
}

}  // namespace ast

namespace {

void collect_free(const NodePtr &n, std::vector<std::string> &bound, std::set<std::string> &out) {
    if (n->kind == Kind::Var) {
        for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
            if (*it == n->name) {
                return;
            }
        }
        out.insert(n->name);
        return;
    }
    int b = binder_child(n->kind);
    for (int i = 0; i < static_cast<int>(n->kids.size()); ++i) {
        if (i == b) {
            auto vars = n->pat.vars();
            bound.insert(bound.end(), vars.begin(), vars.end());
            collect_free(n->kids[i], bound, out);
            bound.resize(bound.size() - vars.size());
        } else {
            collect_free(n->kids[i], bound, out);
        }
    }
}

Pattern rename_pattern(const Pattern &p, const std::map<std::string, std::string> &renames) {
    if (p.is_var()) {
        auto it = renames.find(p.name);
        return Pattern::var(it == renames.end() ? p.name : it->second);
    }
    return Pattern::pair(rename_pattern(p.parts[0], renames), rename_pattern(p.parts[1], renames));
}

}  // namespace

std::set<std::string> free_vars(const NodePtr &n) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(n, bound, out);
    return out;
}

std::string fresh_name(const std::string &base, const std::set<std::string> &avoid) {
    std::string candidate = base + "'";
    while (avoid.count(candidate)) {
        candidate += "'";
    }
    return candidate;
}

NodePtr substitute(const NodePtr &n, const std::map<std::string, NodePtr> &sigma) {
    if (sigma.empty()) {
        return n;
    }
    if (n->kind == Kind::Var) {
        auto it = sigma.find(n->name);
        return it == sigma.end() ? n : it->second;
    }
    if (n->kids.empty()) {
        return n;
    }
    int b = binder_child(n->kind);
    Pattern pat = n->pat;
    std::vector<NodePtr> kids;
    kids.reserve(n->kids.size());
    bool changed = false;
    for (int i = 0; i < static_cast<int>(n->kids.size()); ++i) {
        const NodePtr &kid = n->kids[i];
        NodePtr out;
        if (i != b) {
            out = substitute(kid, sigma);
        } else {
            std::map<std::string, NodePtr> inner;
            auto body_free = free_vars(kid);
            for (const auto &[name, value] : sigma) {
                if (!pat.binds(name) && body_free.count(name)) {
                    inner.emplace(name, value);
                }
            }
            if (inner.empty()) {
                out = kid;
            } else {
                std::set<std::string> range_free;
                for (const auto &entry : inner) {
                    auto fv = free_vars(entry.second);
                    range_free.insert(fv.begin(), fv.end());
                }
                std::map<std::string, std::string> renames;
                std::set<std::string> avoid = range_free;
                avoid.insert(body_free.begin(), body_free.end());
                auto pvars = pat.vars();
                avoid.insert(pvars.begin(), pvars.end());
                for (const auto &[name, value] : inner) {
                    avoid.insert(name);
                }
                for (const auto &v : pvars) {
                    if (range_free.count(v)) {
                        std::string fresh = fresh_name(v, avoid);
                        avoid.insert(fresh);
                        renames[v] = fresh;
                    }
                }
                NodePtr body = kid;
                if (!renames.empty()) {
                    std::map<std::string, NodePtr> rename_sigma;
                    for (const auto &[from, to] : renames) {
                        rename_sigma[from] = ast::var(to, kid->pos);
                    }
                    body = substitute(body, rename_sigma);
                    pat = rename_pattern(pat, renames);
                }
                out = substitute(body, inner);
            }
        }
        changed = changed || out != kid;
        kids.push_back(std::move(out));
    }
    if (!changed && pat == n->pat) {
        return n;
    }
    auto copy = std::make_shared<Node>(*n);
    copy->kids = std::move(kids);
    copy->pat = std::move(pat);
    return copy;
}

NodePtr subst_term(const Term &m, const std::string &x, const Term &n) { return substitute(m, {{x, n}}); }

NodePtr subst_command(const Command &q, const std::string &x, const Term &n) { return substitute(q, {{x, n}}); }

namespace {

void bind_pattern(const Pattern &p, const NodePtr &m, std::map<std::string, NodePtr> &out) {
    if (p.is_var()) {
        out[p.name] = m;
        return;
    }
    if (m->kind == Kind::Pair) {
        bind_pattern(p.parts[0], m->kids[0], out);
        bind_pattern(p.parts[1], m->kids[1], out);
    } else {
        bind_pattern(p.parts[0], ast::fst(m, m->pos), out);
        bind_pattern(p.parts[1], ast::snd(m, m->pos), out);
    }
}

bool same_shape(const Pattern &a, const Pattern &b) {
    if (a.is_var() || b.is_var()) {
        return a.is_var() && b.is_var();
    }
    return same_shape(a.parts[0], b.parts[0]) && same_shape(a.parts[1], b.parts[1]);
}

int lookup(const std::vector<std::string> &stack, const std::string &name) {
    for (int i = static_cast<int>(stack.size()) - 1; i >= 0; --i) {
        if (stack[i] == name) {
            return i;
        }
    }
    return -1;
}

bool alpha_rec(const NodePtr &a, const NodePtr &b, std::vector<std::string> &la, std::vector<std::string> &lb) {
    if (a->kind != b->kind || a->kids.size() != b->kids.size()) {
        return false;
    }
    if (a->kind == Kind::Var) {
        int ia = lookup(la, a->name);
        int ib = lookup(lb, b->name);
        if (ia < 0 && ib < 0) {
            return a->name == b->name;
        }
        return ia == ib;
    }
    if (a->kind == Kind::VecScale && a->scalar != b->scalar) {
        return false;
    }
    int bc = binder_child(a->kind);
    if (bc >= 0 && !same_shape(a->pat, b->pat)) {
        return false;
    }
    for (int i = 0; i < static_cast<int>(a->kids.size()); ++i) {
        if (i == bc) {
            auto va = a->pat.vars();
            auto vb = b->pat.vars();
            la.insert(la.end(), va.begin(), va.end());
            lb.insert(lb.end(), vb.begin(), vb.end());
            bool ok = alpha_rec(a->kids[i], b->kids[i], la, lb);
            la.resize(la.size() - va.size());
            lb.resize(lb.size() - vb.size());
            if (!ok) {
                return false;
            }
        } else if (!alpha_rec(a->kids[i], b->kids[i], la, lb)) {
            return false;
        }
    }
    return true;
}

}  // namespace

std::map<std::string, NodePtr> pattern_bindings(const Pattern &p, const NodePtr &m) {
    std::map<std::string, NodePtr> out;
    bind_pattern(p, m, out);
    return out;
}

bool alpha_eq(const NodePtr &a, const NodePtr &b) {
    std::vector<std::string> la;
    std::vector<std::string> lb;
    return alpha_rec(a, b, la, lb);
}

std::string to_string(const Pattern &p) {
    if (p.is_var()) {
        return p.name;
    }
    std::string s = "(" + to_string(p.parts[0]);
    const Pattern *rest = &p.parts[1];
    while (!rest->is_var()) {
        s += ", " + to_string(rest->parts[0]);
        rest = &rest->parts[1];
    }
    return s + ", " + rest->name + ")";
}

namespace {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string scalar_to_string(std::complex<double> c) {
    if (c.imag() == 0.0 && c.real() == M_SQRT1_2) {
        return "invsqrt2";
    }
    if (c.imag() == 0.0) {
        return format_double(c.real());
    }
    if (c.real() == 0.0) {
        return format_double(c.imag()) + "i";
    }
    std::string im = format_double(c.imag());
    if (im[0] != '-') {
        im = "+" + im;
    }
    return "(" + format_double(c.real()) + im + "i)";
}

namespace {

// Precedence levels: 0 binders (\, let, if), 1 ==, 2 + -, 3 scalar *, 4 application, 5 atoms.
struct Printer {
    bool ascii;

    const char *bullet() const { return ascii ? "@" : "\xE2\x80\xA2"; }
    const char *lambda() const { return ascii ? "\\" : "\xCE\xBB"; }

    std::string paren(std::string s, int level, int prec) const {
        return level < prec ? "(" + s + ")" : s;
    }

    std::string tuple_tail(const NodePtr &n) const {
        if (n->kind == Kind::Pair) {
            return term(n->kids[0], 0) + ", " + tuple_tail(n->kids[1]);
        }
        return term(n, 0);
    }

    std::string term(const NodePtr &n, int prec) const {
        switch (n->kind) {
            case Kind::Var:
                return n->name;
            case Kind::True:
                return "True";
            case Kind::False:
                return "False";
            case Kind::MZero:
                return "mzero";
            case Kind::Pair:
                return "(" + term(n->kids[0], 0) + ", " + tuple_tail(n->kids[1]) + ")";
            case Kind::VecUnit:
                return "[" + term(n->kids[0], 0) + "]";
            case Kind::Fst:
                return paren("fst " + term(n->kids[0], 5), 4, prec);
            case Kind::Snd:
                return paren("snd " + term(n->kids[0], 5), 4, prec);
            case Kind::App:
                return paren(term(n->kids[0], 4) + " " + term(n->kids[1], 5), 4, prec);
            case Kind::VecScale:
                return paren(scalar_to_string(n->scalar) + " * " + term(n->kids[0], 3), 3, prec);
            case Kind::VecAdd:
                return paren(term(n->kids[0], 2) + " + " + term(n->kids[1], 3), 2, prec);
            case Kind::VecSub:
                return paren(term(n->kids[0], 2) + " - " + term(n->kids[1], 3), 2, prec);
            case Kind::Eq:
                return paren(term(n->kids[0], 2) + " == " + term(n->kids[1], 2), 1, prec);
            case Kind::Lam:
                return paren(lambda() + to_string(n->pat) + ". " + term(n->kids[0], 0), 0, prec);
            case Kind::ArrowAbs:
                return paren(lambda() + std::string(bullet()) + to_string(n->pat) + ". " + command(n->kids[0]), 0, prec);
            case Kind::Let:
            case Kind::VecLet:
                return paren("let " + to_string(n->pat) + " = " + term(n->kids[0], 0) + " in " + term(n->kids[1], 0),
                             0, prec);
            case Kind::If:
                return paren("if " + term(n->kids[0], 0) + " then " + term(n->kids[1], 0) + " else " +
                                 term(n->kids[2], 0),
                             0, prec);
            default:
                return "(" + command(n) + ")";
        }
    }

    std::string command(const NodePtr &n) const {
        switch (n->kind) {
            case Kind::CApp:
                return term(n->kids[0], 4) + " " + bullet() + " " + term(n->kids[1], 5);
            case Kind::CUnit:
                return "[" + term(n->kids[0], 0) + "]";
            case Kind::Meas:
                return std::string("meas ") + bullet() + " " + term(n->kids[0], 5);
            case Kind::TrL:
                return std::string("trL ") + bullet() + " " + term(n->kids[0], 5);
            case Kind::CLet: {
                std::string bound = command(n->kids[0]);
                if (n->kids[0]->kind == Kind::CLet) {
                    bound = "(" + bound + ")";
                }
                return "let " + to_string(n->pat) + " = " + bound + " in " + command(n->kids[1]);
            }
            default:
                return term(n, 0);
        }
    }
};

}  // namespace

std::string to_string(const NodePtr &n, bool ascii) {
    Printer p{ascii};
    return is_command(n->kind) ? p.command(n) : p.term(n, 0);
}

std::size_t ast_size(const NodePtr &n) {
    std::size_t total = 1;
    for (const auto &k : n->kids) {
        total += ast_size(k);
    }
    return total;
}

NodePtr node_at(const NodePtr &root, const std::vector<int> &path) {
    NodePtr cur = root;
    for (int idx : path) {
        if (idx < 0 || idx >= static_cast<int>(cur->kids.size())) {
            throw RewriteError(root->pos, "path does not address a subterm");
        }
        cur = cur->kids[idx];
    }
    return cur;
}

namespace {

NodePtr replace_rec(const NodePtr &cur, const std::vector<int> &path, std::size_t depth, NodePtr replacement) {
    if (depth == path.size()) {
        return replacement;
    }
    int idx = path[depth];
    if (idx < 0 || idx >= static_cast<int>(cur->kids.size())) {
        throw RewriteError(cur->pos, "path does not address a subterm");
    }
    auto kids = cur->kids;
    kids[idx] = replace_rec(cur->kids[idx], path, depth + 1, std::move(replacement));
    return ast::with_kids(cur, std::move(kids));
}

}  // namespace

NodePtr replace_at(const NodePtr &root, const std::vector<int> &path, NodePtr replacement) {
    return replace_rec(root, path, 0, std::move(replacement));
}

const Definition *Program::find(const std::string &name) const {
    for (const auto &d : defs) {
        if (d.name == name) {
            return &d;
        }
    }
    return nullptr;
}

}  // namespace qarrow
