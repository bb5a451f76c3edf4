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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qarrow/session.hpp"

namespace qarrow {

enum class Law {
    // arrow calculus
    BetaArrow,
    EtaArrow,
    LeftUnit,
    RightUnit,
    Assoc,
    // lambda layer
    BetaPair1,
    BetaPair2,
    EtaPair,
    BetaFun,
    EtaFun,
    LetSubst,
    IfTrue,
    IfFalse,
    // vector monad and its plus
    MLeft,
    MRight,
    MAssoc,
    MZeroL,
    MZeroR,
    PlusAssoc,
    LetZero,
    LetPlus,
    // replacing a classical subterm that mentions definitions by its value
    DeltaUnfold,
};

enum class Direction { L2R, R2L };

const std::vector<Law> &all_laws();
/// Identifier, e.g. "BetaArrow".
const char *law_name(Law law);
/// Annotation used in printed proofs, e.g. "β⤳" or "left".
const char *law_display(Law law);
std::optional<Law> law_from_name(const std::string &name);
const char *direction_name(Direction d);

using Path = std::vector<int>;

struct ProofStep {
    Law law;
    Path path;
    Direction dir = Direction::L2R;
    NodePtr result;       // whole term after the step
    std::string detail;   // unfolded definitions, for DeltaUnfold
};

/// "def. not" for unfolding steps, the law's display name otherwise.
std::string step_label(const ProofStep &s);

struct ProofTrace {
    NodePtr start;
    std::vector<ProofStep> steps;
    NodePtr end;
    bool fuel_exhausted = false;
};

enum class VerdictKind { ProvedByNormalization, ProvedSemantically, NotEqual, Unknown };

const char *verdict_name(VerdictKind k);

struct Verdict {
    VerdictKind kind = VerdictKind::Unknown;
    ProofTrace lhs;
    ProofTrace rhs;
    double tolerance = 0.0;
    double max_diff = 0.0;
    std::optional<DensVal> witness;  // input density for superoperators
    std::string witness_text;
    std::string reason;
};

/// Equational rewriting of closed terms (or commands under `env`) against the
/// definitions of a module. Every result is re-elaborated and must keep the
/// type of the input.
class Rewriter {
   public:
    explicit Rewriter(ModulePtr module, EnvPair env = {});

    /// Elaborates a term or command in this rewriter's scope.
    NodePtr elaborate(const NodePtr &t, const TypePtr &expected = nullptr) const;

    /// Rewrites the subterm at `path`; throws RewriteError when the law does
    /// not match there or its side condition fails.
    NodePtr apply_law_at(const NodePtr &t, const Path &path, Law law, Direction dir = Direction::L2R) const;

    /// The first subterm, leftmost-outermost, where some contraction law
    /// applies, or nullopt when `t` is normal.
    std::optional<ProofStep> next_step(const NodePtr &t) const;

    /// Applies contraction laws until none fires or `fuel` steps were taken.
    ProofTrace normalize(const NodePtr &t, std::size_t fuel = 10000) const;

    /// Reapplies every step of `trace` from its start.
    NodePtr replay(const ProofTrace &trace) const;

    /// Normalizes both sides; if the normal forms differ, compares the
    /// denotations numerically at `tol`.
    Verdict prove_equal(const Term &a, const Term &b, std::size_t fuel = 10000, double tol = 1e-9) const;

    const Module &module() const { return *module_; }

   private:
    std::optional<NodePtr> rewrite_here(const NodePtr &t, Law law, Direction dir, const std::set<std::string> &locals,
                                        std::string *detail) const;
    std::optional<NodePtr> delta_unfold(const NodePtr &t, const std::set<std::string> &locals,
                                        std::string *detail) const;
    std::optional<ProofStep> find_redex(const NodePtr &root, const NodePtr &t, Path &path,
                                        std::set<std::string> &locals) const;

    ModulePtr module_;
    EnvPair env_;
};

}  // namespace qarrow
