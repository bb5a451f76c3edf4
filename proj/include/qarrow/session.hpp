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

#include <memory>
#include <string>
#include <string_view>

#include "qarrow/evaluator.hpp"
#include "qarrow/typecheck.hpp"

namespace qarrow {

/// A checked and evaluated program layered over an optional parent scope.
struct Module {
    std::shared_ptr<const Module> parent;
    Program program;     // this layer's elaborated definitions
    GlobalTypes types;   // every visible name, including the parent's
    EnvPtr env;          // every visible value

    /// The visible definition named `name`, searching this layer first.
    const Definition *find(const std::string &name) const;
    ValuePtr value(const std::string &name) const;
    TypePtr type(const std::string &name) const;
};

using ModulePtr = std::shared_ptr<const Module>;

/// Text of the standard prelude.
const std::string &prelude_source();

/// The prelude, parsed, checked and evaluated once per process.
ModulePtr prelude();

/// Parses, checks and evaluates `source` on top of `parent` (may be null).
ModulePtr load_module(std::string_view source, ModulePtr parent);

/// Same, with the prelude as parent when `with_prelude` is set.
ModulePtr load_program(std::string_view source, bool with_prelude = true);

/// Elaborates a closed term against a module's globals.
Elaborated elaborate_in(const Module &m, const Term &t, const TypePtr &expected = nullptr);

/// A definition's elaborated body when `text` names one, otherwise `text`
/// parsed and elaborated as a closed term against `expected`.
Term resolve_term(const Module &m, std::string_view text, const TypePtr &expected = nullptr);

}  // namespace qarrow
