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

#include <stdexcept>
#include <string>
#include <vector>

#include "qarrow/type.hpp"

namespace qarrow {

struct SourcePos {
    int line = 0;
    int col = 0;
};

/// Base class for every diagnostic the library raises.
class Error : public std::runtime_error {
   public:
    Error(SourcePos pos, std::string kind, std::string detail);

    SourcePos pos() const { return pos_; }
    const std::string &kind() const { return kind_; }
    const std::string &detail() const { return detail_; }

    /// `file:line:col: <kind>: <detail>`
    std::string render(const std::string &filename) const;

   private:
    SourcePos pos_;
    std::string kind_;
    std::string detail_;
};

class SyntaxError : public Error {
   public:
    SyntaxError(SourcePos pos, std::vector<std::string> expected, std::string found);
    SyntaxError(SourcePos pos, std::string message);

    const std::vector<std::string> &expected() const { return expected_; }

   private:
    std::vector<std::string> expected_;
};

enum class TypeErrorKind { Mismatch, Unbound, DeltaMisuse, NonClassicalBasis, PatternArity, Ambiguous };

const char *type_error_kind_name(TypeErrorKind kind);

class TypeError : public Error {
   public:
    TypeError(TypeErrorKind kind, SourcePos pos, TypePtr expected, TypePtr found);
    TypeError(TypeErrorKind kind, SourcePos pos, std::string message);

    TypeErrorKind error_kind() const { return error_kind_; }
    const TypePtr &expected() const { return expected_; }
    const TypePtr &found() const { return found_; }

    /// Name of the definition being checked, filled in by check_program.
    std::string definition;

   private:
    TypeErrorKind error_kind_;
    TypePtr expected_;
    TypePtr found_;
};

/// Raised when a rewrite law does not apply at the requested position.
class RewriteError : public Error {
   public:
    RewriteError(SourcePos pos, std::string message) : Error(pos, "rewrite", std::move(message)) {}
};

/// Raised by evaluation on inputs that break the typechecker contract, or on
/// basis mismatches in the linear-algebra layer.
class EvalError : public Error {
   public:
    explicit EvalError(std::string message) : Error({}, "eval", std::move(message)) {}
};

}  // namespace qarrow
