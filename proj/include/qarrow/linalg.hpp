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

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <string>

#include "qarrow/type.hpp"

namespace qarrow {

using cplx = std::complex<double>;

/// Enumerated basis of a classical type. Bool is [False, True]; a product
/// (A, B) is A-major, so element (a, b) has index a * dim(B) + b. For a tuple
/// of booleans the index is the bit string read most significant first.
struct Basis {
    TypePtr type;
    std::size_t dim = 1;

    static Basis of(const TypePtr &t);
    static Basis qubits(int n);
};

bool operator==(const Basis &a, const Basis &b);
inline bool operator!=(const Basis &a, const Basis &b) { return !(a == b); }

Basis product_basis(const Basis &a, const Basis &b);

/// Element of Vec A.
struct VecVal {
    Basis basis;
    Eigen::VectorXcd amps;
};

/// Element of Dens A.
struct DensVal {
    Basis basis;
    Eigen::MatrixXcd mat;
};

/// Linear map Lin A B = A -> Vec B as a dim(B) x dim(A) matrix.
struct LinOp {
    Basis in;
    Basis out;
    Eigen::MatrixXcd mat;
};

/// Super A B acting on row-major vectorized densities: entry (r, c) of a
/// d x d density sits at index r * d + c. `action` is dim(B)^2 x dim(A)^2.
struct SuperVal {
    Basis in;
    Basis out;
    Eigen::MatrixXcd action;
};

using IndexFn = std::function<std::size_t(std::size_t)>;

VecVal vec_zero(const Basis &b);
VecVal vec_return(const Basis &b, std::size_t index);
VecVal vec_bind(const VecVal &v, const std::function<VecVal(std::size_t)> &f, const Basis &out);
VecVal vec_add(const VecVal &a, const VecVal &b);
VecVal vec_sub(const VecVal &a, const VecVal &b);
VecVal vec_scale(cplx c, const VecVal &v);
VecVal tensor(const VecVal &a, const VecVal &b);

LinOp fun2lin(const Basis &in, const Basis &out, const IndexFn &f);
LinOp lin_from(const Basis &in, const Basis &out, const std::function<VecVal(std::size_t)> &f);
LinOp lin_compose(const LinOp &f, const LinOp &g);  // g after f

SuperVal super_identity(const Basis &b);
SuperVal lin2super(const LinOp &f);
/// arr f = fun2lin (\(b1, b2) -> (f b1, f b2)).
SuperVal super_arr(const Basis &in, const Basis &out, const IndexFn &f);
/// f >>> g.
SuperVal super_compose(const SuperVal &f, const SuperVal &g);
/// first f : Super (A, C) (B, C).
SuperVal super_first(const SuperVal &f, const Basis &c);
/// second f : Super (C, A) (C, B), via arr swap >>> first f >>> arr swap.
SuperVal super_second(const SuperVal &f, const Basis &c);
/// f &&& g, via arr dup >>> first f >>> second g.
SuperVal super_fanout(const SuperVal &f, const SuperVal &g);
/// meas : Super A (A, A).
SuperVal super_meas(const Basis &a);
/// trL : Super (A, B) B.
SuperVal super_trL(const Basis &a, const Basis &b);

DensVal apply_super(const SuperVal &s, const DensVal &d);
bool dens_close(const DensVal &a, const DensVal &b, double tol);
double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

DensVal density_of(const VecVal &v);
DensVal basis_density(const Basis &b, std::size_t row, std::size_t col);
DensVal tensor(const DensVal &a, const DensVal &b);

/// Index permutations on product bases.
std::size_t swap_index(std::size_t i, std::size_t dim_a, std::size_t dim_b);

/// Fixed 6-decimal text rendering, one row per line.
std::string format_matrix(const Eigen::MatrixXcd &m);
std::string format_complex(cplx z);

}  // namespace qarrow
