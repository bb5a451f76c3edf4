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

#include "qarrow/rewriter.hpp"

#include <cmath>
#include <cstdio>

#include "qarrow/ket.hpp"

namespace qarrow {

namespace {

struct LawInfo {
    Law law;
    const char *name;
    const char *display;
};

const LawInfo kLaws[] = {
    {Law::BetaArrow, "BetaArrow", "\xCE\xB2\xE2\xA4\xB3"},
    {Law::EtaArrow, "EtaArrow", "\xCE\xB7\xE2\xA4\xB3"},
    {Law::LeftUnit, "LeftUnit", "left"},
    {Law::RightUnit, "RightUnit", "right"},
    {Law::Assoc, "Assoc", "assoc"},
    {Law::BetaPair1, "BetaPair1", "\xCE\xB2\xC3\x97" "1"},
    {Law::BetaPair2, "BetaPair2", "\xCE\xB2\xC3\x97" "2"},
    {Law::EtaPair, "EtaPair", "\xCE\xB7\xC3\x97"},
    {Law::BetaFun, "BetaFun", "\xCE\xB2\xE2\x86\x92"},
    {Law::EtaFun, "EtaFun", "\xCE\xB7\xE2\x86\x92"},
    {Law::LetSubst, "LetSubst", "let"},
    {Law::IfTrue, "IfTrue", "\xCE\xB2-if1"},
    {Law::IfFalse, "IfFalse", "\xCE\xB2-if2"},
    {Law::MLeft, "MLeft", "m-left"},
    {Law::MRight, "MRight", "m-right"},
    {Law::MAssoc, "MAssoc", "m-assoc"},
    {Law::MZeroL, "MZeroL", "mzero+"},
    {Law::MZeroR, "MZeroR", "+mzero"},
    {Law::PlusAssoc, "PlusAssoc", "plus-assoc"},
    {Law::LetZero, "LetZero", "let-mzero"},
    {Law::LetPlus, "LetPlus", "let-plus"},
    {Law::DeltaUnfold, "DeltaUnfold", "def."},
};

const LawInfo &info(Law law) {
    for (const auto &i : kLaws) {
        if (i.law == law) {
            return i;
        }
    }
    return kLaws[0];
}

// Laws applied by normalize, in priority order at each position. Eta and
// associativity laws are left out: eta expands matches and assoc can loop.
const Law kContractions[] = {
    Law::BetaArrow, Law::LeftUnit, Law::RightUnit, Law::BetaPair1, Law::BetaPair2,
    Law::BetaFun,   Law::LetSubst, Law::IfTrue,    Law::IfFalse,   Law::MLeft,
    Law::MRight,    Law::MZeroL,   Law::MZeroR,    Law::LetZero,   Law::DeltaUnfold,
};

using ast::with_kids;

std::set<std::string> vars_of(const Pattern &p) {
    auto v = p.vars();
    return {v.begin(), v.end()};
}

bool disjoint(const std::set<std::string> &a, const std::set<std::string> &b) {
    for (const auto &x : a) {
        if (b.count(x)) {
            return false;
        }
    }
    return true;
}

NodePtr beta(const Pattern &p, const NodePtr &arg, const NodePtr &body) {
    return substitute(body, pattern_bindings(p, arg));
}

bool is_classical_unit(const NodePtr &n) {
    return n->kind == Kind::CUnit && n->kids[0]->ty && n->kids[0]->ty->kind != TypeKind::Vec;
}

// Bool and products of it: types whose values are finite data.
bool data_type(const TypePtr &t) {
    if (t->kind == TypeKind::Prod) {
        return data_type(t->a) && data_type(t->b);
    }
    return t->kind == TypeKind::Bool;
}

bool first_order_classical(const TypePtr &t) {
    switch (t->kind) {
        case TypeKind::Bool:
            return true;
        case TypeKind::Prod:
        case TypeKind::Fun:
            return first_order_classical(t->a) && first_order_classical(t->b);
        default:
            return false;
    }
}

NodePtr literal(const ValuePtr &v) {
    if (v->kind == VKind::Bool) {
        return ast::boolean(v->b);
    }
    return ast::pair(literal(v->left), literal(v->right));
}

void collect_var_types(const NodePtr &n, std::map<std::string, TypePtr> &out, std::set<std::string> bound) {
    if (n->kind == Kind::Var && !bound.count(n->name) && !out.count(n->name)) {
        out[n->name] = n->ty;
    }
    int b = binder_child(n->kind);
    for (std::size_t i = 0; i < n->kids.size(); ++i) {
        if (static_cast<int>(i) == b) {
            auto inner = bound;
            for (const auto &v : n->pat.vars()) {
                inner.insert(v);
            }
            collect_var_types(n->kids[i], out, inner);
        } else {
            collect_var_types(n->kids[i], out, bound);
        }
    }
}

struct LocalVar {
    std::string name;
    TypePtr ty;
};

// Projections of `value` along a fst/snd path.
ValuePtr project(ValuePtr v, const std::vector<bool> &path) {
    for (bool second : path) {
        v = second ? v->right : v->left;
    }
    return v;
}

NodePtr project_term(NodePtr t, const std::vector<bool> &path) {
    for (bool second : path) {
        t = second ? ast::snd(t) : ast::fst(t);
    }
    return t;
}

void access_paths(const TypePtr &t, std::vector<bool> &cur, std::vector<std::pair<std::vector<bool>, TypePtr>> &out) {
    out.emplace_back(cur, t);
    if (t->kind == TypeKind::Prod) {
        cur.push_back(false);
        access_paths(t->a, cur, out);
        cur.back() = true;
        access_paths(t->b, cur, out);
        cur.pop_back();
    }
}

// The smallest term built from literals, variables, projections and pairs
// whose value matches `results` on every assignment, if any.
std::optional<NodePtr> simple_form(const TypePtr &ty, const std::vector<ValuePtr> &results,
                                   const std::vector<LocalVar> &vars,
                                   const std::vector<std::vector<ValuePtr>> &assignments) {
    bool constant = true;
    for (const auto &r : results) {
        if (!value_equal(r, results[0])) {
            constant = false;
            break;
        }
    }
    if (constant) {
        return literal(results[0]);
    }
    for (std::size_t vi = 0; vi < vars.size(); ++vi) {
        std::vector<std::pair<std::vector<bool>, TypePtr>> paths;
        std::vector<bool> cur;
        access_paths(vars[vi].ty, cur, paths);
        for (const auto &[path, pt] : paths) {
            if (!type_equal(pt, ty)) {
                continue;
            }
            bool ok = true;
            for (std::size_t k = 0; k < results.size() && ok; ++k) {
                ok = value_equal(project(assignments[k][vi], path), results[k]);
            }
            if (ok) {
                return project_term(ast::var(vars[vi].name), path);
            }
        }
    }
    if (ty->kind == TypeKind::Prod) {
        std::vector<ValuePtr> left;
        std::vector<ValuePtr> right;
        for (const auto &r : results) {
            left.push_back(r->left);
            right.push_back(r->right);
        }
        auto l = simple_form(ty->a, left, vars, assignments);
        if (!l) {
            return std::nullopt;
        }
        auto r = simple_form(ty->b, right, vars, assignments);
        if (!r) {
            return std::nullopt;
        }
        return ast::pair(*l, *r);
    }
    return std::nullopt;
}

bool is_simple(const NodePtr &t) {
    switch (t->kind) {
        case Kind::Var:
        case Kind::True:
        case Kind::False:
            return true;
        case Kind::Fst:
        case Kind::Snd:
            return is_simple(t->kids[0]) && t->kids[0]->kind != Kind::Pair;
        case Kind::Pair:
            return is_simple(t->kids[0]) && is_simple(t->kids[1]);
        default:
            return false;
    }
}

constexpr int kMaxUnfoldBits = 16;

std::string path_string(const Path &p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += (i ? "," : "") + std::to_string(p[i]);
    }
    return s + "]";
}

}  // namespace

const std::vector<Law> &all_laws() {
    static const std::vector<Law> laws = [] {
        std::vector<Law> v;
        for (const auto &i : kLaws) {
            v.push_back(i.law);
        }
        return v;
    }();
    return laws;
}

const char *law_name(Law law) { return info(law).name; }
const char *law_display(Law law) { return info(law).display; }

std::optional<Law> law_from_name(const std::string &name) {
    for (const auto &i : kLaws) {
        if (name == i.name || name == i.display) {
            return i.law;
        }
    }
    return std::nullopt;
}

const char *direction_name(Direction d) { return d == Direction::L2R ? "l2r" : "r2l"; }

std::string step_label(const ProofStep &s) {
    if (s.law == Law::DeltaUnfold) {
        return "def. " + s.detail;
    }
    return law_display(s.law);
}

const char *verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::ProvedByNormalization:
            return "ProvedByNormalization";
        case VerdictKind::ProvedSemantically:
            return "ProvedSemantically";
        case VerdictKind::NotEqual:
            return "NotEqual";
        case VerdictKind::Unknown:
            return "Unknown";
    }
    return "Unknown";
}

Rewriter::Rewriter(ModulePtr module, EnvPair env) : module_(std::move(module)), env_(std::move(env)) {}

NodePtr Rewriter::elaborate(const NodePtr &t, const TypePtr &expected) const {
    if (is_command(t->kind)) {
        return elaborate_command(t, env_, module_->types).node;
    }
    return elaborate_term(t, env_, module_->types, expected).node;
}

std::optional<NodePtr> Rewriter::rewrite_here(const NodePtr &t, Law law, Direction dir,
                                               const std::set<std::string> &locals, std::string *detail) const {
    const auto &k = t->kids;
    const bool l2r = dir == Direction::L2R;
    auto fresh_for = [&](const char *base) { return fresh_name(base, free_vars(t)); };
    switch (law) {
        case Law::BetaArrow:
            if (l2r && t->kind == Kind::CApp && k[0]->kind == Kind::ArrowAbs) {
                return beta(k[0]->pat, k[1], k[0]->kids[0]);
            }
            break;
        case Law::EtaArrow:
            if (l2r) {
                if (t->kind == Kind::ArrowAbs && k[0]->kind == Kind::CApp &&
                    alpha_eq(k[0]->kids[1], ast::pattern_term(t->pat)) &&
                    disjoint(vars_of(t->pat), free_vars(k[0]->kids[0]))) {
                    return k[0]->kids[0];
                }
            } else if (!is_command(t->kind) && t->ty && t->ty->kind == TypeKind::Super) {
                std::string x = fresh_for("x");
                return ast::arrow_abs(Pattern::var(x), ast::capp(t, ast::var(x)));
            }
            break;
        case Law::LeftUnit:
            if (l2r && t->kind == Kind::CLet && is_classical_unit(k[0])) {
                return beta(t->pat, k[0]->kids[0], k[1]);
            }
            break;
        case Law::RightUnit:
            if (l2r) {
                if (t->kind == Kind::CLet && is_classical_unit(k[1]) &&
                    alpha_eq(k[1]->kids[0], ast::pattern_term(t->pat))) {
                    return k[0];
                }
            } else if (is_command(t->kind)) {
                std::string x = fresh_for("x");
                return ast::clet(Pattern::var(x), t, ast::cunit(ast::var(x)));
            }
            break;
        case Law::Assoc:
        case Law::MAssoc: {
            Kind let_kind = law == Law::Assoc ? Kind::CLet : Kind::VecLet;
            if (t->kind != let_kind) {
                break;
            }
            if (l2r && k[0]->kind == let_kind) {
                // let y = (let x = P in Q) in R  ->  let x = P in (let y = Q in R)
                const NodePtr &inner = k[0];
                if (!disjoint(vars_of(inner->pat), free_vars(k[1]))) {
                    break;
                }
                NodePtr rest = with_kids(t, {inner->kids[1], k[1]});
                return with_kids(inner, {inner->kids[0], rest});
            }
            if (!l2r && k[1]->kind == let_kind) {
                // let x = P in (let y = Q in R)  ->  let y = (let x = P in Q) in R
                const NodePtr &inner = k[1];
                if (!disjoint(vars_of(t->pat), free_vars(inner->kids[1]))) {
                    break;
                }
                NodePtr bound = with_kids(t, {k[0], inner->kids[0]});
                return with_kids(inner, {bound, inner->kids[1]});
            }
            break;
        }
        case Law::BetaPair1:
        case Law::BetaPair2:
            if (l2r && t->kind == (law == Law::BetaPair1 ? Kind::Fst : Kind::Snd) && k[0]->kind == Kind::Pair) {
                return k[0]->kids[law == Law::BetaPair1 ? 0 : 1];
            }
            break;
        case Law::EtaPair:
            if (l2r) {
                if (t->kind == Kind::Pair && k[0]->kind == Kind::Fst && k[1]->kind == Kind::Snd &&
                    alpha_eq(k[0]->kids[0], k[1]->kids[0])) {
                    return k[0]->kids[0];
                }
            } else if (!is_command(t->kind) && t->ty && t->ty->kind == TypeKind::Prod) {
                return ast::pair(ast::fst(t), ast::snd(t));
            }
            break;
        case Law::BetaFun:
            if (l2r && t->kind == Kind::App && k[0]->kind == Kind::Lam) {
                return beta(k[0]->pat, k[1], k[0]->kids[0]);
            }
            break;
        case Law::EtaFun:
            if (l2r) {
                if (t->kind == Kind::Lam && k[0]->kind == Kind::App &&
                    alpha_eq(k[0]->kids[1], ast::pattern_term(t->pat)) &&
                    disjoint(vars_of(t->pat), free_vars(k[0]->kids[0]))) {
                    return k[0]->kids[0];
                }
            } else if (!is_command(t->kind) && t->ty && t->ty->kind == TypeKind::Fun) {
                std::string x = fresh_for("x");
                return ast::lam(Pattern::var(x), ast::app(t, ast::var(x)));
            }
            break;
        case Law::LetSubst:
            if (l2r && t->kind == Kind::Let) {
                return beta(t->pat, k[0], k[1]);
            }
            break;
        case Law::IfTrue:
        case Law::IfFalse:
            if (l2r && t->kind == Kind::If && k[0]->kind == (law == Law::IfTrue ? Kind::True : Kind::False)) {
                return k[law == Law::IfTrue ? 1 : 2];
            }
            break;
        case Law::MLeft:
            if (l2r && t->kind == Kind::VecLet && k[0]->kind == Kind::VecUnit) {
                return beta(t->pat, k[0]->kids[0], k[1]);
            }
            break;
        case Law::MRight:
            if (l2r) {
                if (t->kind == Kind::VecLet && k[1]->kind == Kind::VecUnit &&
                    alpha_eq(k[1]->kids[0], ast::pattern_term(t->pat))) {
                    return k[0];
                }
            } else if (!is_command(t->kind) && t->ty && t->ty->kind == TypeKind::Vec) {
                std::string x = fresh_for("x");
                return ast::vec_let(Pattern::var(x), t, ast::vec_unit(ast::var(x)));
            }
            break;
        case Law::MZeroL:
        case Law::MZeroR: {
            int zero_side = law == Law::MZeroL ? 0 : 1;
            if (l2r) {
                if (t->kind == Kind::VecAdd && k[zero_side]->kind == Kind::MZero) {
                    return k[1 - zero_side];
                }
            } else if (!is_command(t->kind) && t->ty && t->ty->kind == TypeKind::Vec) {
                return zero_side == 0 ? ast::vec_add(ast::mzero(), t) : ast::vec_add(t, ast::mzero());
            }
            break;
        }
        case Law::PlusAssoc:
            if (t->kind != Kind::VecAdd) {
                break;
            }
            if (l2r && k[1]->kind == Kind::VecAdd) {
                return ast::vec_add(ast::vec_add(k[0], k[1]->kids[0]), k[1]->kids[1]);
            }
            if (!l2r && k[0]->kind == Kind::VecAdd) {
                return ast::vec_add(k[0]->kids[0], ast::vec_add(k[0]->kids[1], k[1]));
            }
            break;
        case Law::LetZero:
            if (l2r && t->kind == Kind::VecLet && k[0]->kind == Kind::MZero) {
                return ast::mzero(t->pos);
            }
            break;
        case Law::LetPlus:
            if (l2r) {
                if (t->kind == Kind::VecLet && k[0]->kind == Kind::VecAdd) {
                    return ast::vec_add(with_kids(t, {k[0]->kids[0], k[1]}), with_kids(t, {k[0]->kids[1], k[1]}));
                }
            } else if (t->kind == Kind::VecAdd && k[0]->kind == Kind::VecLet && k[1]->kind == Kind::VecLet &&
                       k[0]->pat == k[1]->pat && alpha_eq(k[0]->kids[1], k[1]->kids[1])) {
                return with_kids(k[0], {ast::vec_add(k[0]->kids[0], k[1]->kids[0]), k[0]->kids[1]});
            }
            break;
        case Law::DeltaUnfold:
            if (l2r) {
                return delta_unfold(t, locals, detail);
            }
            break;
    }
    return std::nullopt;
}

std::optional<NodePtr> Rewriter::delta_unfold(const NodePtr &t, const std::set<std::string> &locals,
                                               std::string *detail) const {
    if (is_command(t->kind) || is_simple(t) || !t->ty || !data_type(t->ty)) {
        return std::nullopt;
    }
    std::set<std::string> fv = free_vars(t);
    std::vector<std::string> globals;
    std::map<std::string, TypePtr> var_types;
    collect_var_types(t, var_types, {});
    std::vector<LocalVar> vars;
    int bits = 0;
    for (const auto &name : fv) {
        if (locals.count(name)) {
            const TypePtr &ty = var_types[name];
            if (!ty || !data_type(ty)) {
                return std::nullopt;
            }
            vars.push_back({name, ty});
            bits += bit_count(ty);
        } else {
            TypePtr gt = module_->type(name);
            if (!gt || !first_order_classical(gt)) {
                return std::nullopt;
            }
            globals.push_back(name);
        }
    }
    if (globals.empty() || bits > kMaxUnfoldBits) {
        return std::nullopt;
    }
    std::vector<ValuePtr> results;
    std::vector<std::vector<ValuePtr>> assignments;
    for (std::size_t code = 0; code < (std::size_t{1} << bits); ++code) {
        EnvPtr env = module_->env;
        std::vector<ValuePtr> assignment;
        int shift = bits;
        for (const auto &v : vars) {
            int b = bit_count(v.ty);
            shift -= b;
            ValuePtr val = value_at((code >> shift) & ((std::size_t{1} << b) - 1), v.ty);
            assignment.push_back(val);
            env = bind(env, v.name, val);
        }
        results.push_back(eval_term(env, t));
        assignments.push_back(std::move(assignment));
    }
    auto simple = simple_form(t->ty, results, vars, assignments);
    if (!simple || alpha_eq(*simple, t)) {
        return std::nullopt;
    }
    if (detail) {
        std::string names;
        for (const auto &g : globals) {
            names += (names.empty() ? "" : ", ") + g;
        }
        *detail = names;
    }
    return *simple;
}

NodePtr Rewriter::apply_law_at(const NodePtr &t, const Path &path, Law law, Direction dir) const {
    NodePtr root = t->ty ? t : elaborate(t);
    std::set<std::string> locals;
    for (const auto &[name, ty] : env_.gamma) {
        locals.insert(name);
    }
    for (const auto &[name, ty] : env_.delta) {
        locals.insert(name);
    }
    NodePtr cur = root;
    for (int i : path) {
        if (i == binder_child(cur->kind)) {
            for (const auto &v : cur->pat.vars()) {
                locals.insert(v);
            }
        }
        cur = node_at(cur, {i});
    }
    std::string detail;
    auto out = rewrite_here(cur, law, dir, locals, &detail);
    if (!out) {
        throw RewriteError(cur->pos, std::string("law ") + law_name(law) + " (" + direction_name(dir) +
                                         ") does not apply at " + path_string(path) + " to " + to_string(cur));
    }
    NodePtr next = elaborate(replace_at(root, path, *out), is_command(root->kind) ? nullptr : root->ty);
    if (!same_type_up_to_renaming(next->ty, root->ty)) {
        throw RewriteError(cur->pos, std::string("law ") + law_name(law) + " changed the type from " +
                                         to_string(root->ty) + " to " + to_string(next->ty));
    }
    return next;
}

std::optional<ProofStep> Rewriter::find_redex(const NodePtr &root, const NodePtr &t, Path &path,
                                              std::set<std::string> &locals) const {
    for (Law law : kContractions) {
        std::string detail;
        auto out = rewrite_here(t, law, Direction::L2R, locals, &detail);
        if (!out) {
            continue;
        }
        NodePtr next = elaborate(replace_at(root, path, *out), is_command(root->kind) ? nullptr : root->ty);
        return ProofStep{law, path, Direction::L2R, next, detail};
    }
    int b = binder_child(t->kind);
    for (std::size_t i = 0; i < t->kids.size(); ++i) {
        std::set<std::string> saved;
        bool binds = static_cast<int>(i) == b;
        if (binds) {
            saved = locals;
            for (const auto &v : t->pat.vars()) {
                locals.insert(v);
            }
        }
        path.push_back(static_cast<int>(i));
        auto step = find_redex(root, t->kids[i], path, locals);
        path.pop_back();
        if (binds) {
            locals = std::move(saved);
        }
        if (step) {
            return step;
        }
    }
    return std::nullopt;
}

std::optional<ProofStep> Rewriter::next_step(const NodePtr &t) const {
    NodePtr root = t->ty ? t : elaborate(t);
    std::set<std::string> locals;
    for (const auto &[name, ty] : env_.gamma) {
        locals.insert(name);
    }
    for (const auto &[name, ty] : env_.delta) {
        locals.insert(name);
    }
    Path path;
    return find_redex(root, root, path, locals);
}

ProofTrace Rewriter::normalize(const NodePtr &t, std::size_t fuel) const {
    ProofTrace trace;
    trace.start = t->ty ? t : elaborate(t);
    NodePtr cur = trace.start;
    for (;;) {
        auto step = next_step(cur);
        if (!step) {
            break;
        }
        if (trace.steps.size() >= fuel) {
            trace.fuel_exhausted = true;
            break;
        }
        cur = step->result;
        trace.steps.push_back(std::move(*step));
    }
    trace.end = cur;
    return trace;
}

NodePtr Rewriter::replay(const ProofTrace &trace) const {
    NodePtr cur = trace.start->ty ? trace.start : elaborate(trace.start);
    for (const auto &s : trace.steps) {
        cur = apply_law_at(cur, s.path, s.law, s.dir);
    }
    return cur;
}

namespace {

struct Comparison {
    enum { Equal, Differ, Unknown } status = Unknown;
    double max_diff = 0.0;
    std::optional<DensVal> witness;
    std::string witness_text;
};

std::vector<std::pair<DensVal, std::string>> probe_densities(const Basis &b) {
    std::vector<std::pair<DensVal, std::string>> out;
    int bits = bit_count(b.type);
    for (std::size_t i = 0; i < b.dim; ++i) {
        out.emplace_back(basis_density(b, i, i), ket_label(i, bits));
    }
    const double s = M_SQRT1_2;
    for (cplx phase : {cplx(1.0, 0.0), cplx(0.0, 1.0)}) {
        for (std::size_t i = 0; i < b.dim; ++i) {
            for (std::size_t j = i + 1; j < b.dim; ++j) {
                VecVal v = vec_zero(b);
                v.amps[static_cast<Eigen::Index>(i)] = s;
                v.amps[static_cast<Eigen::Index>(j)] = s * phase;
                std::string label = "(" + ket_label(i, bits) + (phase.imag() != 0.0 ? " + i" : " + ") +
                                    ket_label(j, bits) + ")/sqrt2";
                out.emplace_back(density_of(v), label);
            }
        }
    }
    return out;
}

Comparison compare_values(const ValuePtr &a, const ValuePtr &b, const TypePtr &ty, double tol) {
    Comparison c;
    if (a->kind != b->kind) {
        return c;
    }
    switch (a->kind) {
        case VKind::Bool:
        case VKind::Pair:
            c.status = value_equal(a, b) ? Comparison::Equal : Comparison::Differ;
            if (c.status == Comparison::Differ) {
                c.max_diff = 1.0;
                c.witness_text = value_to_string(a) + " vs " + value_to_string(b);
            }
            return c;
        case VKind::Vec:
            c.max_diff = max_abs_diff(a->vec->amps, b->vec->amps);
            c.status = c.max_diff <= tol ? Comparison::Equal : Comparison::Differ;
            return c;
        case VKind::Super: {
            c.max_diff = max_abs_diff(a->super->action, b->super->action);
            if (c.max_diff <= tol) {
                c.status = Comparison::Equal;
                return c;
            }
            for (const auto &[rho, label] : probe_densities(a->super->in)) {
                double d = max_abs_diff(apply_super(*a->super, rho).mat, apply_super(*b->super, rho).mat);
                if (d > 1e-6) {
                    c.status = Comparison::Differ;
                    c.witness = rho;
                    c.witness_text = label;
                    return c;
                }
            }
            return c;
        }
        case VKind::Closure: {
            if (!ty || ty->kind != TypeKind::Fun || !is_ground(ty->a) || !is_classical(ty->a)) {
                return c;
            }
            c.status = Comparison::Equal;
            for (std::size_t i = 0; i < dimension(ty->a); ++i) {
                ValuePtr x = value_at(i, ty->a);
                Comparison r = compare_values(qarrow::apply(a, x), qarrow::apply(b, x), ty->b, tol);
                c.max_diff = std::max(c.max_diff, r.max_diff);
                if (r.status == Comparison::Differ) {
                    r.witness_text = "input " + value_to_string(x) + (r.witness_text.empty() ? "" : ", " + r.witness_text);
                    return r;
                }
                if (r.status == Comparison::Unknown) {
                    c.status = Comparison::Unknown;
                }
            }
            return c;
        }
    }
    return c;
}

}  // namespace

Verdict Rewriter::prove_equal(const Term &a, const Term &b, std::size_t fuel, double tol) const {
    NodePtr ea = a->ty ? a : elaborate(a);
    NodePtr eb = b->ty ? b : elaborate(b, ea->ty);
    if (!same_type_up_to_renaming(ea->ty, eb->ty)) {
        throw TypeError(TypeErrorKind::Mismatch, b->pos, ea->ty, eb->ty);
    }
    Verdict v;
    v.tolerance = tol;
    v.lhs = normalize(ea, fuel);
    v.rhs = normalize(eb, fuel);
    if (alpha_eq(v.lhs.end, v.rhs.end)) {
        v.kind = VerdictKind::ProvedByNormalization;
        v.reason = "both sides normalize to " + to_string(v.lhs.end);
        return v;
    }
    if (is_command(ea->kind) || !env_.gamma.empty() || !env_.delta.empty()) {
        v.kind = VerdictKind::Unknown;
        v.reason = "normal forms differ and open terms are not compared semantically";
        return v;
    }
    Comparison c = compare_values(eval_term(module_->env, ea), eval_term(module_->env, eb), ea->ty, tol);
    v.max_diff = c.max_diff;
    switch (c.status) {
        case Comparison::Equal:
            v.kind = VerdictKind::ProvedSemantically;
            {
                char buf[64];
                std::snprintf(buf, sizeof buf, "denotations agree within %g", tol);
                v.reason = buf;
            }
            break;
        case Comparison::Differ:
            v.kind = VerdictKind::NotEqual;
            v.witness = c.witness;
            v.witness_text = c.witness_text;
            v.reason = "denotations differ" + (c.witness_text.empty() ? "" : " on " + c.witness_text);
            break;
        case Comparison::Unknown:
            v.kind = VerdictKind::Unknown;
            v.reason = "normal forms differ and the denotations could not be compared";
            break;
    }
    if (v.lhs.fuel_exhausted || v.rhs.fuel_exhausted) {
        v.reason += " (normalization ran out of fuel)";
    }
    return v;
}

}  // namespace qarrow
