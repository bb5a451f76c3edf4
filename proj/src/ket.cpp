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

#include "qarrow/ket.hpp"

#include <cctype>
#include <cmath>
#include <map>

#include "qarrow/error.hpp"

namespace qarrow {

namespace {

// Sparse amplitudes keyed by bit string until the width is known.
using Amps = std::map<std::string, cplx>;

class KetParser {
   public:
    explicit KetParser(std::string_view s) : s_(s) {}

    Amps parse() {
        Amps a = expr();
        skip();
        if (i_ != s_.size()) {
            fail("end of input");
        }
        return a;
    }

    int width() const { return width_; }

   private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            ++i_;
        }
    }

    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(i_, tok.size()) == tok) {
            i_ += tok.size();
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string &expected) const {
        std::string found = i_ < s_.size() ? "'" + std::string(1, s_[i_]) + "'" : "end of input";
        throw SyntaxError(SourcePos{1, static_cast<int>(i_) + 1}, {expected}, found);
    }

    static void add(Amps &into, const Amps &from, cplx c) {
        for (const auto &[k, v] : from) {
            into[k] += c * v;
        }
    }

    Amps expr() {
        Amps out;
        cplx sign = eat("-") ? -1.0 : 1.0;
        add(out, term(), sign);
        for (;;) {
            if (eat("+")) {
                add(out, term(), 1.0);
            } else if (eat("-")) {
                add(out, term(), -1.0);
            } else {
                return out;
            }
        }
    }

    Amps term() {
        cplx c = coefficient();
        Amps a;
        add(a, atom(), c);
        for (;;) {
            if (!eat("/")) {
                return a;
            }
            if (eat("sqrt2")) {
                add_scale(a, M_SQRT1_2);
            } else {
                double d = number();
                if (d == 0.0) {
                    fail("nonzero divisor");
                }
                add_scale(a, 1.0 / d);
            }
        }
    }

    static void add_scale(Amps &a, double s) {
        for (auto &[k, v] : a) {
            v *= s;
        }
    }

    cplx coefficient() {
        skip();
        cplx c = 1.0;
        if (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
            c = number();
            eat("*");
            skip();
        }
        if (i_ < s_.size() && s_[i_] == 'i') {
            ++i_;
            c *= cplx(0.0, 1.0);
            eat("*");
        }
        return c;
    }

    double number() {
        skip();
        std::size_t start = i_;
        while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '.')) {
            ++i_;
        }
        if (start == i_) {
            fail("number");
        }
        return std::stod(std::string(s_.substr(start, i_ - start)));
    }

    Amps atom() {
        if (eat("(")) {
            Amps a = expr();
            if (!eat(")")) {
                fail("')'");
            }
            return a;
        }
        if (!eat("|")) {
            fail("'|' or '('");
        }
        std::string bits;
        while (i_ < s_.size() && (s_[i_] == '0' || s_[i_] == '1')) {
            bits += s_[i_++];
        }
        if (bits.empty()) {
            fail("bit");
        }
        if (!eat(">")) {
            fail("'>'");
        }
        if (width_ < 0) {
            width_ = static_cast<int>(bits.size());
        } else if (width_ != static_cast<int>(bits.size())) {
            throw SyntaxError(SourcePos{1, static_cast<int>(i_)},
                              "kets of different widths " + std::to_string(width_) + " and " +
                                  std::to_string(bits.size()));
        }
        return {{bits, 1.0}};
    }

    std::string_view s_;
    std::size_t i_ = 0;
    int width_ = -1;
};

}  // namespace

VecVal parse_ket(std::string_view text, const Basis *basis) {
    KetParser p(text);
    Amps amps = p.parse();
    int n = p.width();
    if (n > 30) {
        throw SyntaxError(SourcePos{1, 1}, "ket wider than 30 qubits");
    }
    Basis b = Basis::qubits(n);
    if (basis) {
        if (basis->dim != b.dim) {
            throw Error(SourcePos{1, 1}, "ket",
                        "a " + std::to_string(n) + "-qubit ket does not fit type " + to_string(basis->type));
        }
        b = *basis;
    }
    VecVal v = vec_zero(b);
    for (const auto &[bits, a] : amps) {
        v.amps[static_cast<Eigen::Index>(std::stoull(bits, nullptr, 2))] += a;
    }
    return v;
}

DensVal parse_ket_density(std::string_view text, const Basis *basis) {
    return density_of(parse_ket(text, basis));
}

std::string ket_label(std::size_t index, int bits) {
    std::string s(static_cast<std::size_t>(bits), '0');
    for (int k = 0; k < bits; ++k) {
        if ((index >> (bits - 1 - k)) & 1U) {
            s[static_cast<std::size_t>(k)] = '1';
        }
    }
    return "|" + s + ">";
}

}  // namespace qarrow
