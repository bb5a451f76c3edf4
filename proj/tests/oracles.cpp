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

#include "oracles.hpp"

#include <cmath>

namespace oracle {

using namespace qarrow;

namespace {

Mat gaussian(std::size_t d, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat g(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) {
            g(r, c) = cplx(n(rng), n(rng));
        }
    }
    return g;
}

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

}  // namespace

Mat random_density(std::size_t d, std::mt19937_64 &rng) {
    Mat g = gaussian(d, d, rng);
    Mat rho = g * g.adjoint();
    return rho / rho.trace();
}

Mat random_pure(std::size_t d, std::mt19937_64 &rng) {
    Mat v = gaussian(d, 1, rng);
    v /= v.norm();
    return v * v.adjoint();
}

Mat random_unitary(std::size_t d, std::mt19937_64 &rng) {
    Eigen::HouseholderQR<Mat> qr(gaussian(d, d, rng));
    return qr.householderQ() * Mat::Identity(idx(d), idx(d));
}

Mat kron(const Mat &a, const Mat &b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

Mat unit(std::size_t d, std::size_t row, std::size_t col) {
    Mat m = Mat::Zero(idx(d), idx(d));
    m(idx(row), idx(col)) = 1.0;
    return m;
}

Mat function_matrix(std::size_t d_in, std::size_t d_out, const std::function<std::size_t(std::size_t)> &f) {
    Mat m = Mat::Zero(idx(d_out), idx(d_in));
    for (std::size_t i = 0; i < d_in; ++i) {
        m(idx(f(i)), idx(i)) = 1.0;
    }
    return m;
}

Mat hadamard() {
    Mat h(2, 2);
    h << 1, 1, 1, -1;
    return h / std::sqrt(2.0);
}

Mat pauli_x() {
    Mat x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

Mat controlled(const Mat &u) {
    Mat c = Mat::Identity(2 * u.rows(), 2 * u.cols());
    c.bottomRightCorner(u.rows(), u.cols()) = u;
    return c;
}

Mat cnot() { return controlled(pauli_x()); }

Mat cz() {
    Mat z(2, 2);
    z << 1, 0, 0, -1;
    return controlled(z);
}

Mat sqrt_not() {
    Mat v(2, 2);
    v << cplx(0.5, 0.5), cplx(0.5, -0.5), cplx(0.5, -0.5), cplx(0.5, 0.5);
    return v;
}

Mat toffoli() {
    return function_matrix(8, 8, [](std::size_t i) { return (i & 6U) == 6U ? i ^ 1U : i; });
}

Mat action_of(std::size_t d_in, std::size_t d_out, const std::function<Mat(const Mat &)> &f) {
    Mat a = Mat::Zero(idx(d_out * d_out), idx(d_in * d_in));
    for (std::size_t i = 0; i < d_in; ++i) {
        for (std::size_t j = 0; j < d_in; ++j) {
            Mat out = f(unit(d_in, i, j));
            for (std::size_t r = 0; r < d_out; ++r) {
                for (std::size_t c = 0; c < d_out; ++c) {
                    a(idx(r * d_out + c), idx(i * d_in + j)) = out(idx(r), idx(c));
                }
            }
        }
    }
    return a;
}

Mat unitary_action(const Mat &u) {
    return action_of(static_cast<std::size_t>(u.cols()), static_cast<std::size_t>(u.rows()),
                     [&](const Mat &rho) -> Mat { return u * rho * u.adjoint(); });
}

Mat apply_action(const Mat &action, const Mat &rho) {
    const Eigen::Index din = rho.rows();
    const auto dout = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(action.rows()))));
    Eigen::VectorXcd v(din * din);
    for (Eigen::Index r = 0; r < din; ++r) {
        for (Eigen::Index c = 0; c < din; ++c) {
            v(r * din + c) = rho(r, c);
        }
    }
    Eigen::VectorXcd w = action * v;
    Mat out(dout, dout);
    for (Eigen::Index r = 0; r < dout; ++r) {
        for (Eigen::Index c = 0; c < dout; ++c) {
            out(r, c) = w(r * dout + c);
        }
    }
    return out;
}

Mat measure(const Mat &rho) {
    const Eigen::Index d = rho.rows();
    Mat out = Mat::Zero(d * d, d * d);
    for (Eigen::Index x = 0; x < d; ++x) {
        out(x * d + x, x * d + x) = rho(x, x);
    }
    return out;
}

Mat trace_left(const Mat &rho, std::size_t da, std::size_t db) {
    Mat out = Mat::Zero(idx(db), idx(db));
    for (std::size_t x = 0; x < da; ++x) {
        out += rho.block(idx(x * db), idx(x * db), idx(db), idx(db));
    }
    return out;
}

bool hermitian(const Mat &m, double tol) { return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol; }

double max_diff(const Mat &a, const Mat &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return INFINITY;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

namespace {

// Interprets commands on a pair of arrow-bound environments (the row and the
// column of one input entry |s><s'|).
class Direct {
   public:
    Mat abs_action(const NodePtr &abs, const EnvPtr &gamma) const {
        const TypePtr &ty = abs->ty;
        std::size_t din = dimension(ty->a);
        std::size_t dout = dimension(ty->b);
        Mat a = Mat::Zero(idx(dout * dout), idx(din * din));
        for (std::size_t i = 0; i < din; ++i) {
            for (std::size_t j = 0; j < din; ++j) {
                Mat out = apply_abs(abs, gamma, value_at(i, ty->a), value_at(j, ty->a));
                for (std::size_t r = 0; r < dout; ++r) {
                    for (std::size_t c = 0; c < dout; ++c) {
                        a(idx(r * dout + c), idx(i * din + j)) = out(idx(r), idx(c));
                    }
                }
            }
        }
        return a;
    }

   private:
    Mat apply_abs(const NodePtr &abs, const EnvPtr &gamma, const ValuePtr &l, const ValuePtr &r) const {
        return command(abs->kids[0], gamma, bind_pattern(gamma, abs->pat, l), bind_pattern(gamma, abs->pat, r));
    }

    Mat command(const NodePtr &p, const EnvPtr &gamma, const EnvPtr &l, const EnvPtr &r) const {
        const auto &k = p->kids;
        switch (p->kind) {
            case Kind::CUnit: {
                const TypePtr &t = k[0]->ty;
                ValuePtr a = eval_term(l, k[0]);
                ValuePtr b = eval_term(r, k[0]);
                if (t->kind == TypeKind::Vec) {
                    return a->vec->amps * b->vec->amps.adjoint();
                }
                return unit(dimension(t), value_index(a, t), value_index(b, t)).eval();
            }
            case Kind::CApp: {
                ValuePtr a = eval_term(l, k[1]);
                ValuePtr b = eval_term(r, k[1]);
                if (k[0]->kind == Kind::ArrowAbs) {
                    return apply_abs(k[0], gamma, a, b);
                }
                ValuePtr s = eval_term(gamma, k[0]);
                const TypePtr &t = k[1]->ty;
                Mat in = unit(dimension(t), value_index(a, t), value_index(b, t));
                return apply_action(s->super->action, in);
            }
            case Kind::Meas: {
                const TypePtr &t = k[0]->ty;
                ValuePtr a = eval_term(l, k[0]);
                ValuePtr b = eval_term(r, k[0]);
                return measure(unit(dimension(t), value_index(a, t), value_index(b, t)));
            }
            case Kind::TrL: {
                const TypePtr &t = k[0]->ty;
                ValuePtr a = eval_term(l, k[0]);
                ValuePtr b = eval_term(r, k[0]);
                return trace_left(unit(dimension(t), value_index(a, t), value_index(b, t)), dimension(t->a),
                                  dimension(t->b));
            }
            case Kind::CLet: {
                const TypePtr &bt = k[0]->ty;
                Mat bound = command(k[0], gamma, l, r);
                std::size_t d = dimension(p->ty);
                Mat out = Mat::Zero(idx(d), idx(d));
                for (Eigen::Index i = 0; i < bound.rows(); ++i) {
                    for (Eigen::Index j = 0; j < bound.cols(); ++j) {
                        if (std::abs(bound(i, j)) < 1e-300) {
                            continue;
                        }
                        auto vi = value_at(static_cast<std::size_t>(i), bt);
                        auto vj = value_at(static_cast<std::size_t>(j), bt);
                        out += bound(i, j) * command(k[1], gamma, bind_pattern(l, p->pat, vi),
                                                     bind_pattern(r, p->pat, vj));
                    }
                }
                return out;
            }
            default:
                throw EvalError(std::string("not a command: ") + kind_name(p->kind));
        }
    }
};

}  // namespace

Mat direct_action(const Module &m, const NodePtr &abs) { return Direct().abs_action(abs, m.env); }

namespace {

// Random surface terms over boolean variables. Every compound piece is
// parenthesized so the pieces compose textually.
class Gen {
   public:
    explicit Gen(std::mt19937_64 &rng) : rng_(rng) {}

    int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

    std::string fresh(const char *base) { return base + std::to_string(counter_++); }

    std::string boolean(const std::vector<std::string> &vars, int depth) {
        int choice = pick(depth > 0 ? 6 : 3);
        switch (choice) {
            case 0:
            case 1:
                if (!vars.empty()) {
                    return vars[static_cast<std::size_t>(pick(static_cast<int>(vars.size())))];
                }
                return "True";
            case 2:
                return pick(2) ? "True" : "False";
            case 3:
                return "(not " + boolean(vars, depth - 1) + ")";
            case 4:
                return "(" + boolean(vars, depth - 1) + " == " + boolean(vars, depth - 1) + ")";
            default:
                return "(if " + boolean(vars, depth - 1) + " then " + boolean(vars, depth - 1) + " else " +
                       boolean(vars, depth - 1) + ")";
        }
    }

    std::string vec(std::vector<std::string> vars, int depth) {
        int choice = pick(depth > 0 ? 8 : 3);
        switch (choice) {
            case 0:
                return "[" + boolean(vars, 1) + "]";
            case 1:
                return "(hadamard " + boolean(vars, 1) + ")";
            case 2:
                return "(sqrtnot " + boolean(vars, 1) + ")";
            case 3:
                return "(invsqrt2 * " + vec(vars, depth - 1) + ")";
            case 4:
                return "(" + vec(vars, depth - 1) + " + " + vec(vars, depth - 1) + ")";
            case 5:
                return "(" + vec(vars, depth - 1) + " - " + vec(vars, depth - 1) + ")";
            case 6: {
                std::string y = fresh("v");
                std::string bound = vec(vars, depth - 1);
                vars.push_back(y);
                return "(let " + y + " = " + bound + " in " + vec(vars, depth - 1) + ")";
            }
            default:
                return "(if " + boolean(vars, 1) + " then " + vec(vars, depth - 1) + " else " + vec(vars, depth - 1) +
                       ")";
        }
    }

    std::string command(std::vector<std::string> vars, int depth) {
        static const char *one_qubit[] = {"QNot", "Had", "(\\@z. [hadamard z])"};
        static const char *two_qubit[] = {"Cnot", "Cz", "cV", "cVdagger"};
        int choice = pick(depth > 0 ? 8 : 4);
        switch (choice) {
            case 0:
                return "[" + boolean(vars, 1) + "]";
            case 1:
                return "[" + vec(vars, 1) + "]";
            case 2:
                return std::string(one_qubit[pick(3)]) + " @ " + boolean(vars, 0);
            case 3:
                return "trL @ (" + boolean(vars, 0) + ", " + boolean(vars, 0) + ")";
            case 4: {
                std::string y = fresh("y");
                std::string bound = command(vars, depth - 1);
                vars.push_back(y);
                return "let " + y + " = " + bound + " in " + command(vars, depth - 1);
            }
            case 5: {
                std::string a = fresh("a");
                std::string b = fresh("b");
                std::string bound =
                    std::string(two_qubit[pick(4)]) + " @ (" + boolean(vars, 0) + ", " + boolean(vars, 0) + ")";
                vars.push_back(a);
                vars.push_back(b);
                return "let (" + a + ", " + b + ") = " + bound + " in " + command(vars, depth - 1);
            }
            case 6: {
                std::string o = fresh("o");
                std::string q = fresh("q");
                std::string bound = "meas @ " + boolean(vars, 0);
                vars.push_back(o);
                vars.push_back(q);
                return "let (" + o + ", " + q + ") = " + bound + " in " + command(vars, depth - 1);
            }
            default:
                return "(\\@w. " + command({"w"}, depth - 1) + ") @ " + boolean(vars, 0);
        }
    }

    // A closed Super Bool Bool term.
    std::string arrow(int depth) {
        switch (pick(3)) {
            case 0:
                return "QNot";
            case 1:
                return "Had";
            default:
                return "(\\@z. " + command({"z"}, depth) + ")";
        }
    }

   private:
    std::mt19937_64 &rng_;
    int counter_ = 0;
};

}  // namespace

LawInstance random_instance(Law law, std::mt19937_64 &rng) {
    Gen g(rng);
    const std::vector<std::string> delta = {"x0"};
    const int d = 2;
    bool r2l = g.pick(2) == 1;
    auto cmd = [](const std::string &c) { return "\\@x0. " + c; };
    auto vec = [](const std::string &t) { return "\\@x0. [" + t + "]"; };
    LawInstance out;
    out.path = {0};
    switch (law) {
        case Law::BetaArrow:
            out.source = cmd("(\\@y. " + g.command({"y"}, d) + ") @ " + g.boolean(delta, 2));
            break;
        case Law::EtaArrow:
            out.path = {};
            if (r2l) {
                out.source = g.arrow(d);
                out.dir = Direction::R2L;
            } else {
                out.source = "\\@y. " + g.arrow(d) + " @ y";
            }
            break;
        case Law::LeftUnit: {
            std::string m = g.boolean(delta, 2);
            out.source = cmd("let y = [" + m + "] in " + g.command({"x0", "y"}, d));
            break;
        }
        case Law::RightUnit:
            if (r2l) {
                out.source = cmd(g.command(delta, d));
                out.dir = Direction::R2L;
            } else {
                out.source = cmd("let y = " + g.command(delta, d) + " in [y]");
            }
            break;
        case Law::Assoc: {
            std::string p = g.command(delta, d);
            std::string q = g.command({"x0", "z"}, d);
            std::string r = g.command({"x0", "y"}, d);
            if (r2l) {
                out.source = cmd("let z = " + p + " in (let y = " + q + " in " + r + ")");
                out.dir = Direction::R2L;
            } else {
                out.source = cmd("let y = (let z = " + p + " in " + q + ") in " + r);
            }
            break;
        }
        default: {
            out.path = {0, 0};
            std::string l = g.vec(delta, d);
            std::string m = g.vec(delta, d);
            std::string n = g.vec({"x0", "y"}, d);
            switch (law) {
                case Law::MLeft:
                    out.source = vec("let y = [" + g.boolean(delta, 2) + "] in " + n);
                    break;
                case Law::MRight:
                    if (r2l) {
                        out.source = vec(l);
                        out.dir = Direction::R2L;
                    } else {
                        out.source = vec("let y = " + l + " in [y]");
                    }
                    break;
                case Law::MAssoc: {
                    std::string mz = g.vec({"x0", "z"}, d);
                    if (r2l) {
                        out.source = vec("let z = " + l + " in (let y = " + mz + " in " + n + ")");
                        out.dir = Direction::R2L;
                    } else {
                        out.source = vec("let y = (let z = " + l + " in " + mz + ") in " + n);
                    }
                    break;
                }
                case Law::MZeroL:
                case Law::MZeroR:
                    if (r2l) {
                        out.source = vec(l);
                        out.dir = Direction::R2L;
                    } else {
                        out.source = vec(law == Law::MZeroL ? "mzero + " + l : l + " + mzero");
                    }
                    break;
                case Law::PlusAssoc:
                    if (r2l) {
                        out.source = vec("(" + l + " + " + m + ") + " + l);
                        out.dir = Direction::R2L;
                    } else {
                        out.source = vec(l + " + (" + m + " + " + l + ")");
                    }
                    break;
                case Law::LetZero:
                    out.source = vec("let y = mzero in " + n);
                    break;
                case Law::LetPlus:
                    if (r2l) {
                        out.source = vec("(let y = " + l + " in " + n + ") + (let y = " + m + " in " + n + ")");
                        out.dir = Direction::R2L;
                    } else {
                        out.source = vec("let y = (" + l + " + " + m + ") in " + n);
                    }
                    break;
                default:
                    throw std::invalid_argument(std::string("no generator for ") + law_name(law));
            }
        }
    }
    return out;
}

}  // namespace oracle
