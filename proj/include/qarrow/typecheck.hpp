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

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qarrow/syntax.hpp"

namespace qarrow {

/// Types of earlier top-level definitions. Type variables in an entry are
/// implicitly quantified and instantiated fresh at each use.
using GlobalTypes = std::map<std::string, TypePtr>;

/// Local environments: gamma holds lambda-bound names, delta arrow-bound names.
/// Later entries shadow earlier ones.
struct EnvPair {
    std::vector<std::pair<std::string, TypePtr>> gamma;
    std::vector<std::pair<std::string, TypePtr>> delta;
};

/// Result of elaborating a term or command: the same tree with every node's
/// `ty` filled in, `let` over a Vec-typed bound rewritten to the monadic form,
/// and the node's type (or command result type).
struct Elaborated {
    NodePtr node;
    TypePtr type;
};

/// Elaborates a term under gamma (delta is treated as merged into gamma for
/// the term, as for the argument of an arrow application).
Elaborated elaborate_term(const Term &m, const EnvPair &env = {}, const GlobalTypes &globals = {},
                          const TypePtr &expected = nullptr);

/// Elaborates a command under the judgment gamma; delta |- P ! Dens A.
Elaborated elaborate_command(const Command &p, const EnvPair &env = {}, const GlobalTypes &globals = {});

TypePtr infer_term(const EnvPair &env, const Term &m, const GlobalTypes &globals = {});
TypePtr check_command(const EnvPair &env, const Command &p, const GlobalTypes &globals = {});

struct CheckedProgram {
    Program program;  // elaborated definitions
    GlobalTypes types;
};

/// Checks definitions in order. `outer` supplies names from an enclosing
/// scope (the prelude); definitions here may shadow them.
CheckedProgram check_program(const Program &p, const GlobalTypes &outer = {});

}  // namespace qarrow
