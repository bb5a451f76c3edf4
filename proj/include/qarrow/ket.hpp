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

#include "qarrow/linalg.hpp"

namespace qarrow {

/// Parses ket notation such as "|01>", "(|0> + |1>)/sqrt2" or "|00> - i|11>".
/// Bit strings are most significant first and all kets must have the same
/// length n; the result lives on the basis of n right-nested booleans, or on
/// `basis` when one is given and its dimension is 2^n. Amplitudes are taken
/// as written, nothing is normalized. Throws Error on malformed input.
VecVal parse_ket(std::string_view text, const Basis *basis = nullptr);

/// The pure density |v><v| of a parsed ket.
DensVal parse_ket_density(std::string_view text, const Basis *basis = nullptr);

/// "|0110>" for index 6 of a 4-bit basis.
std::string ket_label(std::size_t index, int bits);

}  // namespace qarrow
