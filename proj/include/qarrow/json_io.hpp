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

#include <nlohmann/json.hpp>

#include "qarrow/evaluator.hpp"
#include "qarrow/rewriter.hpp"

namespace qarrow {

using json = nlohmann::json;

/// {"basis": "(Bool, Bool)", "rows": [[{"re": .., "im": ..}, ..], ..]}
json matrix_to_json(const Basis &basis, const Eigen::MatrixXcd &m);
json density_to_json(const DensVal &d);
/// Reads a density; its basis must match `expected` when one is given.
DensVal density_from_json(const json &j, const Basis *expected = nullptr);

/// Booleans, pairs as two-element arrays, vectors as {"basis", "amps"},
/// superoperators as {"in", "out", "action"}. Closures are not serializable.
json value_to_json(const ValuePtr &v);

json step_to_json(const ProofStep &s);
/// {"start", "steps": [{"law", "display", "path", "direction", "result"}], "end", "fuel_exhausted"}
json trace_to_json(const ProofTrace &t);
json verdict_to_json(const Verdict &v);

}  // namespace qarrow
