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

#include "qarrow/linalg.hpp"

#include <cmath>
#include <cstdio>

#include "qarrow/error.hpp"

namespace qarrow {

namespace {

void require_same(const Basis &a, const Basis &b, const char *what) {
    if (a != b) {
        throw EvalError(std::string(what) + ": basis mismatch between " + to_string(a.type) + " and " +
                        to_string(b.type));
    }
}

}  // namespace

Basis Basis::of(const TypePtr &t) {
    if (!is_classical(t)) {
        throw EvalError("not a classical basis type: " + to_string(t));
    }
    return Basis{t, dimension(t)};
}

Basis Basis::qubits(int n) {
    TypePtr t = Type::boolean();
    for (int i = 1; i < n; ++i) {
        t = Type::prod(Type::boolean(), t);
    }
    return of(t);
}

bool operator==(const Basis &a, const Basis &b) { return a.dim == b.dim && type_equal(a.type, b.type); }

Basis product_basis(const Basis &a, const Basis &b) { return Basis{Type::prod(a.type, b.type), a.dim * b.dim}; }

VecVal vec_zero(const Basis &b) { return VecVal{b, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b.dim))}; }

VecVal vec_return(const Basis &b, std::size_t index) {
    if (index >= b.dim) {
        throw EvalError("basis element out of range for " + to_string(b.type));
    }
    VecVal v = vec_zero(b);
    v.amps[static_cast<Eigen::Index>(index)] = 1.0;
    return v;
}

VecVal vec_bind(const VecVal &v, const std::function<VecVal(std::size_t)> &f, const Basis &out) {
    VecVal r = vec_zero(out);
    for (std::size_t a = 0; a < v.basis.dim; ++a) {
        cplx c = v.amps[static_cast<Eigen::Index>(a)];
        if (c == cplx(0.0)) {
            continue;
        }
        VecVal fa = f(a);
        require_same(fa.basis, out, "bind");
        r.amps += c * fa.amps;
    }
    return r;
}

VecVal vec_add(const VecVal &a, const VecVal &b) {
    require_same(a.basis, b.basis, "+");
    return VecVal{a.basis, a.amps + b.amps};
}

VecVal vec_sub(const VecVal &a, const VecVal &b) {
    require_same(a.basis, b.basis, "-");
    return VecVal{a.basis, a.amps - b.amps};
}

VecVal vec_scale(cplx c, const VecVal &v) { return VecVal{v.basis, c * v.amps}; }

VecVal tensor(const VecVal &a, const VecVal &b) {
    VecVal r = vec_zero(product_basis(a.basis, b.basis));
    for (std::size_t i = 0; i < a.basis.dim; ++i) {
        for (std::size_t j = 0; j < b.basis.dim; ++j) {
            r.amps[static_cast<Eigen::Index>(i * b.basis.dim + j)] =
                a.amps[static_cast<Eigen::Index>(i)] * b.amps[static_cast<Eigen::Index>(j)];
        }
    }
    return r;
}

LinOp fun2lin(const Basis &in, const Basis &out, const IndexFn &f) {
    LinOp op{in, out, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out.dim), static_cast<Eigen::Index>(in.dim))};
    for (std::size_t a = 0; a < in.dim; ++a) {
        op.mat(static_cast<Eigen::Index>(f(a)), static_cast<Eigen::Index>(a)) = 1.0;
    }
    return op;
}

LinOp lin_from(const Basis &in, const Basis &out, const std::function<VecVal(std::size_t)> &f) {
    LinOp op{in, out, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(out.dim), static_cast<Eigen::Index>(in.dim))};
    for (std::size_t a = 0; a < in.dim; ++a) {
        VecVal fa = f(a);
        require_same(fa.basis, out, "lin");
        op.mat.col(static_cast<Eigen::Index>(a)) = fa.amps;
    }
    return op;
}

LinOp lin_compose(const LinOp &f, const LinOp &g) {
    require_same(f.out, g.in, "lin compose");
    return LinOp{f.in, g.out, g.mat * f.mat};
}

SuperVal super_identity(const Basis &b) {
    auto n = static_cast<Eigen::Index>(b.dim * b.dim);
    return SuperVal{b, b, Eigen::MatrixXcd::Identity(n, n)};
}

SuperVal lin2super(const LinOp &f) {
    // vec(F rho F^dagger) = (F kron conj(F)) vec(rho) for row-major vectorization.
    const auto &m = f.mat;
    Eigen::Index ro = m.rows();
    Eigen::Index ci = m.cols();
    Eigen::MatrixXcd action(ro * ro, ci * ci);
    for (Eigen::Index r1 = 0; r1 < ro; ++r1) {
        for (Eigen::Index r2 = 0; r2 < ro; ++r2) {
            for (Eigen::Index c1 = 0; c1 < ci; ++c1) {
                for (Eigen::Index c2 = 0; c2 < ci; ++c2) {
                    action(r1 * ro + r2, c1 * ci + c2) = m(r1, c1) * std::conj(m(r2, c2));
                }
            }
        }
    }
    return SuperVal{f.in, f.out, std::move(action)};
}

SuperVal super_arr(const Basis &in, const Basis &out, const IndexFn &f) {
    // Literally fun2lin on the pair basis (A, A) -> (B, B).
    Basis in2 = product_basis(in, in);
    Basis out2 = product_basis(out, out);
    LinOp pairwise = fun2lin(in2, out2, [&](std::size_t i) { return f(i / in.dim) * out.dim + f(i % in.dim); });
    return SuperVal{in, out, std::move(pairwise.mat)};
}

SuperVal super_compose(const SuperVal &f, const SuperVal &g) {
    require_same(f.out, g.in, ">>>");
    return SuperVal{f.in, g.out, g.action * f.action};
}

SuperVal super_first(const SuperVal &f, const Basis &c) {
    const std::size_t da = f.in.dim;
    const std::size_t db = f.out.dim;
    const std::size_t dc = c.dim;
    Basis in = product_basis(f.in, c);
    Basis out = product_basis(f.out, c);
    const std::size_t nin = da * dc;
    const std::size_t nout = db * dc;
    Eigen::MatrixXcd action = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nout * nout),
                                                     static_cast<Eigen::Index>(nin * nin));
    // first f ((b1,d1),(b2,d2)) = permute (f (b1,b2) (x) return (d1,d2))
    for (std::size_t a1 = 0; a1 < da; ++a1) {
        for (std::size_t a2 = 0; a2 < da; ++a2) {
            auto fcol = static_cast<Eigen::Index>(a1 * da + a2);
            for (std::size_t c1 = 0; c1 < dc; ++c1) {
                for (std::size_t c2 = 0; c2 < dc; ++c2) {
                    auto col = static_cast<Eigen::Index>((a1 * dc + c1) * nin + (a2 * dc + c2));
                    for (std::size_t b1 = 0; b1 < db; ++b1) {
                        for (std::size_t b2 = 0; b2 < db; ++b2) {
                            cplx w = f.action(static_cast<Eigen::Index>(b1 * db + b2), fcol);
                            if (w == cplx(0.0)) {
                                continue;
                            }
                            auto row = static_cast<Eigen::Index>((b1 * dc + c1) * nout + (b2 * dc + c2));
                            action(row, col) = w;
                        }
                    }
                }
            }
        }
    }
    return SuperVal{in, out, std::move(action)};
}

std::size_t swap_index(std::size_t i, std::size_t dim_a, std::size_t dim_b) {
    return (i % dim_b) * dim_a + i / dim_b;
}

SuperVal super_second(const SuperVal &f, const Basis &c) {
    const std::size_t da = f.in.dim;
    const std::size_t db = f.out.dim;
    const std::size_t dc = c.dim;
    SuperVal swap_in = super_arr(product_basis(c, f.in), product_basis(f.in, c),
                                 [=](std::size_t i) { return swap_index(i, dc, da); });
    SuperVal swap_out = super_arr(product_basis(f.out, c), product_basis(c, f.out),
                                  [=](std::size_t i) { return swap_index(i, db, dc); });
    return super_compose(super_compose(swap_in, super_first(f, c)), swap_out);
}

SuperVal super_fanout(const SuperVal &f, const SuperVal &g) {
    require_same(f.in, g.in, "&&&");
    const std::size_t d = f.in.dim;
    SuperVal dup = super_arr(f.in, product_basis(f.in, f.in), [=](std::size_t i) { return i * d + i; });
    return super_compose(super_compose(dup, super_first(f, f.in)), super_second(g, f.out));
}

SuperVal super_meas(const Basis &a) {
    const std::size_t d = a.dim;
    Basis out = product_basis(a, a);
    const std::size_t nout = d * d;
    Eigen::MatrixXcd action = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(nout * nout),
                                                     static_cast<Eigen::Index>(d * d));
    for (std::size_t x = 0; x < d; ++x) {
        std::size_t pair = x * d + x;
        action(static_cast<Eigen::Index>(pair * nout + pair), static_cast<Eigen::Index>(x * d + x)) = 1.0;
    }
    return SuperVal{a, out, std::move(action)};
}

SuperVal super_trL(const Basis &a, const Basis &b) {
    const std::size_t da = a.dim;
    const std::size_t db = b.dim;
    const std::size_t nin = da * db;
    Eigen::MatrixXcd action = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(db * db),
                                                     static_cast<Eigen::Index>(nin * nin));
    for (std::size_t x = 0; x < da; ++x) {
        for (std::size_t b1 = 0; b1 < db; ++b1) {
            for (std::size_t b2 = 0; b2 < db; ++b2) {
                auto col = static_cast<Eigen::Index>((x * db + b1) * nin + (x * db + b2));
                action(static_cast<Eigen::Index>(b1 * db + b2), col) = 1.0;
            }
        }
    }
    return SuperVal{product_basis(a, b), b, std::move(action)};
}

DensVal apply_super(const SuperVal &s, const DensVal &d) {
    require_same(s.in, d.basis, "apply");
    const auto n = static_cast<Eigen::Index>(d.basis.dim);
    Eigen::VectorXcd v(n * n);
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            v[r * n + c] = d.mat(r, c);
        }
    }
    Eigen::VectorXcd w = s.action * v;
    const auto m = static_cast<Eigen::Index>(s.out.dim);
    DensVal out{s.out, Eigen::MatrixXcd(m, m)};
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
            out.mat(r, c) = w[r * m + c];
        }
    }
    return out;
}

double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw EvalError("matrix shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool dens_close(const DensVal &a, const DensVal &b, double tol) {
    require_same(a.basis, b.basis, "dens_close");
    return max_abs_diff(a.mat, b.mat) < tol;
}

DensVal density_of(const VecVal &v) { return DensVal{v.basis, v.amps * v.amps.adjoint()}; }

DensVal basis_density(const Basis &b, std::size_t row, std::size_t col) {
    auto n = static_cast<Eigen::Index>(b.dim);
    DensVal d{b, Eigen::MatrixXcd::Zero(n, n)};
    d.mat(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = 1.0;
    return d;
}

DensVal tensor(const DensVal &a, const DensVal &b) {
    const auto na = a.mat.rows();
    const auto nb = b.mat.rows();
    DensVal d{product_basis(a.basis, b.basis), Eigen::MatrixXcd(na * nb, na * nb)};
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            d.mat.block(i * nb, j * nb, nb, nb) = a.mat(i, j) * b.mat;
        }
    }
    return d;
}

std::string format_complex(cplx z) {
    auto clean = [](double x) { return std::abs(x) < 5e-7 ? 0.0 : x; };
    double re = clean(z.real());
    double im = clean(z.imag());
    char buf[64];
    if (im == 0.0) {
        std::snprintf(buf, sizeof buf, "%.6f", re);
    } else if (re == 0.0) {
        std::snprintf(buf, sizeof buf, "%.6fi", im);
    } else {
        std::snprintf(buf, sizeof buf, "%.6f%+.6fi", re, im);
    }
    return buf;
}

std::string format_matrix(const Eigen::MatrixXcd &m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) {
                out += ' ';
            }
            out += format_complex(m(r, c));
        }
        out += '\n';
    }
    return out;
}

}  // namespace qarrow
