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

// Test-side reference implementations. Nothing here calls the library's
// superoperator combinators; densities and channels are built from plain
// matrices so they can check the library.

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "qarrow/rewriter.hpp"
#include "qarrow/session.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using cplx = std::complex<double>;

/// Random density: G G^dagger / tr, G with Gaussian entries.
Mat random_density(std::size_t d, std::mt19937_64 &rng);
/// Random pure state |v><v|.
Mat random_pure(std::size_t d, std::mt19937_64 &rng);
/// Haar-ish unitary from the QR of a Gaussian matrix.
Mat random_unitary(std::size_t d, std::mt19937_64 &rng);

Mat kron(const Mat &a, const Mat &b);
/// |row><col| in dimension d.
Mat unit(std::size_t d, std::size_t row, std::size_t col);
/// Permutation (or any function) matrix: column i has a 1 in row f(i).
Mat function_matrix(std::size_t d_in, std::size_t d_out, const std::function<std::size_t(std::size_t)> &f);

Mat hadamard();
Mat pauli_x();
Mat cnot();
Mat cz();
Mat sqrt_not();
Mat controlled(const Mat &u);
/// (a, b, c) -> (a, b, c xor ab) on 3 bits, most significant first.
Mat toffoli();

/// Matrix of a linear map on densities, row-major vectorized, built by
/// applying `f` to every |i><j|.
Mat action_of(std::size_t d_in, std::size_t d_out, const std::function<Mat(const Mat &)> &f);
/// U rho U^dagger as an action.
Mat unitary_action(const Mat &u);
/// Applies a row-major action to a density.
Mat apply_action(const Mat &action, const Mat &rho);

/// meas : rho on A -> sum_x rho_xx |xx><xx| on (A, A).
Mat measure(const Mat &rho);
/// Partial trace of the left factor of a density on (A, B).
Mat trace_left(const Mat &rho, std::size_t da, std::size_t db);

bool hermitian(const Mat &m, double tol);
double max_diff(const Mat &a, const Mat &b);

/// Denotation of an elaborated arrow abstraction computed by interpreting its
/// command directly on pairs of arrow-bound environments, without translating
/// to combinators. Nested literal abstractions are interpreted the same way;
/// any other arrow is evaluated as a term.
Mat direct_action(const qarrow::Module &m, const qarrow::NodePtr &abs);

/// A random well-typed redex of `law` wrapped in a closed term of type
/// Super Bool Bool, in ASCII surface syntax, with the path to the redex.
struct LawInstance {
    std::string source;
    qarrow::Path path;
    qarrow::Direction dir = qarrow::Direction::L2R;
};

/// Supports the arrow-calculus laws (BetaArrow .. Assoc) and the monad and
/// plus laws (MLeft .. LetPlus).
LawInstance random_instance(qarrow::Law law, std::mt19937_64 &rng);

}  // namespace oracle
