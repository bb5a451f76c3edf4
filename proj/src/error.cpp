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

#include "qarrow/error.hpp"

namespace qarrow {

namespace {

std::string position_prefix(SourcePos pos) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.col);
}

std::string join_expected(const std::vector<std::string> &expected, const std::string &found) {
    std::string s = "expected ";
    if (expected.size() > 1) {
        s += "one of ";
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) {
            s += ", ";
        }
        s += expected[i];
    }
    return s + ", found " + found;
}

}  // namespace

Error::Error(SourcePos pos, std::string kind, std::string detail)
    : std::runtime_error(position_prefix(pos) + ": " + kind + ": " + detail),
      pos_(pos),
      kind_(std::move(kind)),
      detail_(std::move(detail)) {}

std::string Error::render(const std::string &filename) const {
    return filename + ":" + position_prefix(pos_) + ": " + kind_ + ": " + detail_;
}

SyntaxError::SyntaxError(SourcePos pos, std::vector<std::string> expected, std::string found)
    : Error(pos, "syntax", join_expected(expected, found)), expected_(std::move(expected)) {}

SyntaxError::SyntaxError(SourcePos pos, std::string message) : Error(pos, "syntax", std::move(message)) {}

const char *type_error_kind_name(TypeErrorKind kind) {
    switch (kind) {
        case TypeErrorKind::Mismatch:
            return "mismatch";
        case TypeErrorKind::Unbound:
            return "unbound";
        case TypeErrorKind::DeltaMisuse:
            return "delta-misuse";
        case TypeErrorKind::NonClassicalBasis:
            return "non-classical-basis";
        case TypeErrorKind::PatternArity:
            return "pattern-arity";
        case TypeErrorKind::Ambiguous:
            return "ambiguous";
    }
    return "unknown";
}

TypeError::TypeError(TypeErrorKind kind, SourcePos pos, TypePtr expected, TypePtr found)
    : Error(pos, type_error_kind_name(kind),
            "expected " + to_string(expected) + ", found " + to_string(found)),
      error_kind_(kind),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

TypeError::TypeError(TypeErrorKind kind, SourcePos pos, std::string message)
    : Error(pos, type_error_kind_name(kind), std::move(message)), error_kind_(kind) {}

}  // namespace qarrow
