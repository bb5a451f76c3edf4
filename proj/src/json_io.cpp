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

#include "qarrow/json_io.hpp"

#include "qarrow/parser.hpp"

namespace qarrow {

json matrix_to_json(const Basis &basis, const Eigen::MatrixXcd &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back({{"re", m(r, c).real()}, {"im", m(r, c).imag()}});
        }
        rows.push_back(std::move(row));
    }
    return {{"basis", to_string(basis.type)}, {"rows", std::move(rows)}};
}

json density_to_json(const DensVal &d) { return matrix_to_json(d.basis, d.mat); }

DensVal density_from_json(const json &j, const Basis *expected) {
    if (!j.is_object() || !j.contains("rows") || !j["rows"].is_array()) {
        throw EvalError("density JSON needs a \"rows\" array");
    }
    const json &rows = j["rows"];
    auto n = static_cast<Eigen::Index>(rows.size());
    Basis basis;
    if (j.contains("basis")) {
        basis = Basis::of(parse_type(j["basis"].get<std::string>()));
    } else if (expected) {
        basis = *expected;
    } else {
        int bits = 0;
        while ((Eigen::Index{1} << bits) < n) {
            ++bits;
        }
        basis = Basis::qubits(bits);
    }
    if (expected && basis != *expected) {
        throw EvalError("density basis " + to_string(basis.type) + " does not match " + to_string(expected->type));
    }
    if (static_cast<Eigen::Index>(basis.dim) != n) {
        throw EvalError("density has " + std::to_string(n) + " rows, basis " + to_string(basis.type) +
                        " needs " + std::to_string(basis.dim));
    }
    DensVal d{basis, Eigen::MatrixXcd::Zero(n, n)};
    for (Eigen::Index r = 0; r < n; ++r) {
        const json &row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw EvalError("density row " + std::to_string(r) + " is not of length " + std::to_string(n));
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            const json &e = row[static_cast<std::size_t>(c)];
            if (e.is_number()) {
                d.mat(r, c) = e.get<double>();
            } else {
                d.mat(r, c) = cplx(e.value("re", 0.0), e.value("im", 0.0));
            }
        }
    }
    return d;
}

json value_to_json(const ValuePtr &v) {
    switch (v->kind) {
        case VKind::Bool:
            return v->b;
        case VKind::Pair:
            return json::array({value_to_json(v->left), value_to_json(v->right)});
        case VKind::Vec: {
            json amps = json::array();
            for (Eigen::Index i = 0; i < v->vec->amps.size(); ++i) {
                amps.push_back({{"re", v->vec->amps[i].real()}, {"im", v->vec->amps[i].imag()}});
            }
            return {{"basis", to_string(v->vec->basis.type)}, {"amps", std::move(amps)}};
        }
        case VKind::Super: {
            json action = matrix_to_json(product_basis(v->super->out, v->super->out), v->super->action);
            return {{"in", to_string(v->super->in.type)},
                    {"out", to_string(v->super->out.type)},
                    {"action", action["rows"]}};
        }
        case VKind::Closure:
            break;
    }
    throw EvalError("function values have no JSON form");
}

json step_to_json(const ProofStep &s) {
    json j = {{"law", law_name(s.law)},
              {"display", step_label(s)},
              {"path", s.path},
              {"direction", direction_name(s.dir)},
              {"result", to_string(s.result)}};
    if (!s.detail.empty()) {
        j["detail"] = s.detail;
    }
    return j;
}

json trace_to_json(const ProofTrace &t) {
    json steps = json::array();
    for (const auto &s : t.steps) {
        steps.push_back(step_to_json(s));
    }
    return {{"start", to_string(t.start)},
            {"steps", std::move(steps)},
            {"end", to_string(t.end)},
            {"fuel_exhausted", t.fuel_exhausted}};
}

json verdict_to_json(const Verdict &v) {
    json j = {{"verdict", verdict_name(v.kind)},
              {"lhs", trace_to_json(v.lhs)},
              {"rhs", trace_to_json(v.rhs)},
              {"tolerance", v.tolerance},
              {"max_diff", v.max_diff},
              {"reason", v.reason}};
    if (v.witness) {
        j["witness"] = density_to_json(*v.witness);
        j["witness_ket"] = v.witness_text;
    } else if (!v.witness_text.empty()) {
        j["witness_text"] = v.witness_text;
    }
    return j;
}

}  // namespace qarrow
