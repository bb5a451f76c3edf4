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

#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qarrow/error.hpp"
#include "qarrow/type.hpp"

namespace qarrow {

/// A binder: a variable, or a pair of patterns. Triples are right-nested pairs.
struct Pattern {
    std::string name;
    std::vector<Pattern> parts;  // empty, or exactly two

    static Pattern var(std::string name);
    static Pattern pair(Pattern left, Pattern right);

    bool is_var() const { return parts.empty(); }
    void collect_vars(std::vector<std::string> &out) const;
    std::vector<std::string> vars() const;
    bool binds(const std::string &x) const;
};

bool operator==(const Pattern &a, const Pattern &b);

enum class Kind {
    // terms: lambda core
    Var,
    True,
    False,
    Pair,
    Fst,
    Snd,
    Lam,
    App,
    Let,
    If,
    Eq,
    // terms: vector monad
    VecUnit,
    VecLet,
    VecAdd,
    VecSub,
    VecScale,
    MZero,
    // terms: arrow abstraction
    ArrowAbs,
    // commands
    CApp,
    CUnit,
    CLet,
    Meas,
    TrL,
};

bool is_command(Kind kind);
const char *kind_name(Kind kind);

struct Node;
using NodePtr = std::shared_ptr<const Node>;
using Term = NodePtr;
using Command = NodePtr;

/// One AST node. Child layout per kind:
///   Pair[M,N] Fst[M] Snd[M] Lam(pat)[body] App[fun,arg] Let(pat)[bound,body]
///   If[c,t,e] Eq[l,r] VecUnit[M] VecLet(pat)[bound,body] VecAdd[l,r]
///   VecSub[l,r] VecScale(scalar)[M] MZero[] ArrowAbs(pat)[cmd]
///   CApp[arrow,arg] CUnit[M] CLet(pat)[P,Q] Meas[M] TrL[M]
/// `ty` is empty after parsing and filled by elaboration: the term's type, or
/// the command's result type A in `! Dens A`.
struct Node {
    Kind kind = Kind::Var;
    std::string name;
    Pattern pat;
    std::complex<double> scalar{};
    std::vector<NodePtr> kids;
    SourcePos pos;
    TypePtr ty;
};

/// Index of the child a node's pattern scopes over, or -1.
int binder_child(Kind kind);

namespace ast {
NodePtr var(std::string name, SourcePos pos = {});
NodePtr boolean(bool value, SourcePos pos = {});
NodePtr pair(NodePtr a, NodePtr b, SourcePos pos = {});
NodePtr fst(NodePtr m, SourcePos pos = {});
NodePtr snd(NodePtr m, SourcePos pos = {});
NodePtr lam(Pattern p, NodePtr body, SourcePos pos = {});
NodePtr app(NodePtr f, NodePtr a, SourcePos pos = {});
NodePtr let(Pattern p, NodePtr bound, NodePtr body, SourcePos pos = {});
NodePtr if_(NodePtr c, NodePtr t, NodePtr e, SourcePos pos = {});
NodePtr eq(NodePtr a, NodePtr b, SourcePos pos = {});
NodePtr vec_unit(NodePtr m, SourcePos pos = {});
NodePtr vec_let(Pattern p, NodePtr bound, NodePtr body, SourcePos pos = {});
NodePtr vec_add(NodePtr a, NodePtr b, SourcePos pos = {});
NodePtr vec_sub(NodePtr a, NodePtr b, SourcePos pos = {});
NodePtr vec_scale(std::complex<double> c, NodePtr m, SourcePos pos = {});
NodePtr mzero(SourcePos pos = {});
NodePtr arrow_abs(Pattern p, NodePtr body, SourcePos pos = {});
NodePtr capp(NodePtr arrow, NodePtr arg, SourcePos pos = {});
NodePtr cunit(NodePtr m, SourcePos pos = {});
NodePtr clet(Pattern p, NodePtr bound, NodePtr body, SourcePos pos = {});
NodePtr meas(NodePtr m, SourcePos pos = {});
NodePtr trl(NodePtr m, SourcePos pos = {});

/// Copy of `n` with new children (and no type annotation).
NodePtr with_kids(const NodePtr &n, std::vector<NodePtr> kids);
/// Copy of `n` with a type annotation.
NodePtr with_type(const NodePtr &n, TypePtr ty);
/// The term that a pattern denotes: x, or (p1, p2).
NodePtr pattern_term(const Pattern &p, SourcePos pos = {});
}  // namespace ast

std::set<std::string> free_vars(const NodePtr &n);

/// A name based on `base` that is not in `avoid` (adds primes).
std::string fresh_name(const std::string &base, const std::set<std::string> &avoid);

/// Simultaneous capture-avoiding substitution.
NodePtr substitute(const NodePtr &n, const std::map<std::string, NodePtr> &sigma);

/// M[x:=N] on terms.
NodePtr subst_term(const Term &m, const std::string &x, const Term &n);
/// Q[x:=N] on commands.
NodePtr subst_command(const Command &q, const std::string &x, const Term &n);

/// The substitution that binding pattern `p` to term `m` induces. Tuple
/// patterns destructure literal pairs and project otherwise.
std::map<std::string, NodePtr> pattern_bindings(const Pattern &p, const NodePtr &m);

/// Equality up to renaming of bound variables. Ignores positions and types.
bool alpha_eq(const NodePtr &a, const NodePtr &b);

/// Surface syntax, re-parseable. `ascii` replaces the bullet with `@`.
std::string to_string(const NodePtr &n, bool ascii = false);
std::string to_string(const Pattern &p);
std::string scalar_to_string(std::complex<double> c);

/// Node count.
std::size_t ast_size(const NodePtr &n);

/// Subterm at a child-index path; throws RewriteError on a bad path.
NodePtr node_at(const NodePtr &root, const std::vector<int> &path);
/// Replaces the subterm at `path`.
NodePtr replace_at(const NodePtr &root, const std::vector<int> &path, NodePtr replacement);

struct Definition {
    std::string name;
    TypePtr annotation;  // may be null
    NodePtr body;
    SourcePos pos;
};

struct Program {
    std::vector<Definition> defs;

    const Definition *find(const std::string &name) const;
};

}  // namespace qarrow
