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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qarrow/classic.hpp"
#include "qarrow/json_io.hpp"
#include "qarrow/ket.hpp"
#include "qarrow/session.hpp"

namespace py = pybind11;
using namespace qarrow;

namespace {

using Matrix = std::vector<std::vector<std::complex<double>>>;

Matrix to_rows(const Eigen::MatrixXcd &m) {
    Matrix rows(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            rows[static_cast<std::size_t>(r)].push_back(m(r, c));
        }
    }
    return rows;
}

DensVal from_rows(const Matrix &rows, const Basis &basis) {
    auto n = static_cast<Eigen::Index>(rows.size());
    if (n != static_cast<Eigen::Index>(basis.dim)) {
        throw EvalError("input has " + std::to_string(n) + " rows, expected " + std::to_string(basis.dim));
    }
    DensVal d{basis, Eigen::MatrixXcd::Zero(n, n)};
    for (Eigen::Index r = 0; r < n; ++r) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(r)].size()) != n) {
            throw EvalError("input is not square");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            d.mat(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        }
    }
    return d;
}

std::map<std::string, std::string> check(const std::string &source, bool prelude) {
    ModulePtr m = load_program(source, prelude);
    std::map<std::string, std::string> out;
    for (const auto &d : m->program.defs) {
        out[d.name] = to_string(m->type(d.name));
    }
    return out;
}

Matrix run_def(const std::string &source, const std::string &def, const py::object &input, bool prelude) {
    ModulePtr m = load_program(source, prelude);
    if (!m->find(def)) {
        throw Error(SourcePos{}, "unbound", "no definition named " + def);
    }
    ValuePtr v = m->value(def);
    if (v->kind != VKind::Super) {
        throw EvalError(def + " is not a superoperator");
    }
    DensVal in = py::isinstance<py::str>(input) ? parse_ket_density(input.cast<std::string>(), &v->super->in)
                                                : from_rows(input.cast<Matrix>(), v->super->in);
    return to_rows(run(*v->super, in).mat);
}

std::string normalize_json(const std::string &source, const std::string &term, std::size_t fuel, bool prelude) {
    ModulePtr m = load_program(source, prelude);
    return trace_to_json(Rewriter(m).normalize(resolve_term(*m, term), fuel)).dump();
}

std::string prove_json(const std::string &source, const std::string &lhs, const std::string &rhs, std::size_t fuel,
                       double tol, bool prelude) {
    ModulePtr m = load_program(source, prelude);
    Term a = resolve_term(*m, lhs);
    Term b = resolve_term(*m, rhs, a->ty);
    return verdict_to_json(Rewriter(m).prove_equal(a, b, fuel, tol)).dump();
}

std::string emit_classic(const std::string &source, const std::string &def, bool prelude) {
    ModulePtr m = load_program(source, prelude);
    const Definition *d = m->find(def);
    if (!d || d->body->kind != Kind::ArrowAbs) {
        throw Error(SourcePos{}, "emit", def + " is not a defined arrow abstraction");
    }
    return to_sexpr(translate_term(d->body));
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Quantum arrow calculus: typechecking, evaluation and equational proofs";

    static py::exception<Error> error(mod, "QarrowError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const Error &e) {
            py::object exc = py::handle(error.ptr())(e.what());
            exc.attr("kind") = e.kind();
            exc.attr("line") = e.pos().line;
            exc.attr("col") = e.pos().col;
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    mod.def("check", &check, py::arg("source"), py::arg("prelude") = true,
            "Typechecks a program; returns {definition: type}.");
    mod.def("run", &run_def, py::arg("source"), py::arg("definition"), py::arg("input"), py::arg("prelude") = true,
            "Applies a superoperator definition to a ket string or a density given as rows.");
    mod.def("normalize_json", &normalize_json, py::arg("source"), py::arg("term"), py::arg("fuel") = 10000,
            py::arg("prelude") = true);
    mod.def("prove_json", &prove_json, py::arg("source"), py::arg("lhs"), py::arg("rhs"), py::arg("fuel") = 10000,
            py::arg("tol") = 1e-9, py::arg("prelude") = true);
    mod.def("emit_classic", &emit_classic, py::arg("source"), py::arg("definition"), py::arg("prelude") = true,
            "Combinator translation of an arrow abstraction as an s-expression.");
    mod.def("prelude_source", &prelude_source);
}
