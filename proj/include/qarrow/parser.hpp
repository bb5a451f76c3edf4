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

#include <string>
#include <string_view>

#include "qarrow/syntax.hpp"

namespace qarrow {

/// Parses a `.qarr` source file. A definition `name [: type] = term` starts
/// in column 1; continuation lines must be indented. `--` starts a comment.
Program parse_program(std::string_view source);

Term parse_term(std::string_view source);
Command parse_command(std::string_view source);
TypePtr parse_type(std::string_view source);

}  // namespace qarrow
