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

#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "oracles.hpp"
#include "qarrow/json_io.hpp"
#include "qarrow/ket.hpp"
#include "qarrow/parser.hpp"

using namespace qarrow;

namespace {

struct Ran {
    int code;
    std::string out;
};

Ran run_cli(const std::string &args) {
    std::string cmd = std::string(QARROW_CLI) + " " + args + " 2>&1";
    FILE *p = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) {
        out.append(buf.data(), n);
    }
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string programs(const char *name) { return std::string(QARROW_PROGRAMS_DIR) + "/" + name; }

}  // namespace

TEST(Ket, BasisStates) {
    VecVal v = parse_ket("|10>");
    EXPECT_EQ(v.basis.dim, 4u);
    EXPECT_EQ(v.amps[2], cplx(1.0));
    EXPECT_EQ(to_string(v.basis.type), "(Bool, Bool)");
}

TEST(Ket, Superpositions) {
    VecVal plus = parse_ket("(|0> + |1>)/sqrt2");
    EXPECT_NEAR(plus.amps[0].real(), M_SQRT1_2, 1e-15);
    EXPECT_NEAR(plus.amps[1].real(), M_SQRT1_2, 1e-15);
    VecVal minus = parse_ket("(|0> - |1>) / sqrt2");
    EXPECT_NEAR(minus.amps[1].real(), -M_SQRT1_2, 1e-15);
    VecVal mixed = parse_ket("-|01> + i|10> + 0.5|11>");
    EXPECT_EQ(mixed.amps[1], cplx(-1.0));
    EXPECT_EQ(mixed.amps[2], cplx(0.0, 1.0));
    EXPECT_EQ(mixed.amps[3], cplx(0.5));
    DensVal d = parse_ket_density("(|0> + |1>)/sqrt2");
    EXPECT_NEAR(d.mat(0, 1).real(), 0.5, 1e-15);
}

TEST(Ket, TargetBasis) {
    Basis left = Basis::of(parse_type("((Bool, Bool), Bool)"));
    VecVal v = parse_ket("|110>", &left);
    EXPECT_EQ(v.basis, left);
    EXPECT_EQ(v.amps[6], cplx(1.0));
    Basis one = Basis::qubits(1);
    EXPECT_THROW(parse_ket("|00>", &one), Error);
}

TEST(Ket, Malformed) {
    EXPECT_THROW(parse_ket("|0"), SyntaxError);
    EXPECT_THROW(parse_ket("|0> + |01>"), SyntaxError);
    EXPECT_THROW(parse_ket("(|0> + |1>"), SyntaxError);
    EXPECT_THROW(parse_ket("|2>"), SyntaxError);
    EXPECT_THROW(parse_ket(""), SyntaxError);
}

TEST(Ket, Labels) {
    EXPECT_EQ(ket_label(6, 4), "|0110>");
    EXPECT_EQ(ket_label(1, 1), "|1>");
}

TEST(Json, DensityRoundTrip) {
    std::mt19937_64 rng(31);
    Basis b = Basis::qubits(2);
    DensVal d{b, oracle::random_density(4, rng)};
    json j = density_to_json(d);
    EXPECT_EQ(j["basis"], "(Bool, Bool)");
    EXPECT_EQ(j["rows"].size(), 4u);
    EXPECT_TRUE(j["rows"][0][1].contains("re"));
    DensVal back = density_from_json(json::parse(j.dump()), &b);
    EXPECT_EQ(back.mat, d.mat);
    Basis one = Basis::qubits(1);
    EXPECT_THROW(density_from_json(j, &one), EvalError);
    EXPECT_THROW(density_from_json(json::parse("{\"rows\": [[1, 0]]}")), EvalError);
}

TEST(Json, VerdictShape) {
    Rewriter rw(prelude());
    NodePtr a = rw.elaborate(parse_term("QNot"));
    Verdict v = rw.prove_equal(a, rw.elaborate(parse_term("\\@x. [x]"), a->ty));
    json j = verdict_to_json(v);
    EXPECT_EQ(j["verdict"], "NotEqual");
    EXPECT_EQ(j["witness_ket"], "|0>");
    EXPECT_TRUE(j["lhs"].contains("steps"));
    EXPECT_EQ(j["tolerance"], 1e-9);
}

TEST(Cli, ProveDoubleNot) {
    Ran r = run_cli("prove " + programs("doublenot.qarr") + " --lhs doubleNot --rhs idSuper");
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("=(\xCE\xB2\xE2\xA4\xB3)"), std::string::npos);
    EXPECT_NE(r.out.find("=(def. not)"), std::string::npos);
    EXPECT_NE(r.out.find("ProvedByNormalization"), std::string::npos);
}

TEST(Cli, ProveJson) {
    Ran r = run_cli("prove " + programs("doublenot.qarr") + " --lhs doubleNot --rhs idSuper --json");
    ASSERT_EQ(r.code, 0) << r.out;
    json j = json::parse(r.out);
    ASSERT_EQ(j["lhs"]["steps"].size(), 4u);
    EXPECT_EQ(j["lhs"]["steps"][1]["law"], "LeftUnit");
    EXPECT_EQ(j["lhs"]["steps"][0]["path"], json::array({0, 0}));
}

TEST(Cli, RunHadamard) {
    Ran r = run_cli("run " + programs("prelude.qarr") + " --def Had --input '|0>'");
    ASSERT_EQ(r.code, 0) << r.out;
    DensVal d = density_from_json(json::parse(r.out));
    EXPECT_LT(oracle::max_diff(d.mat, oracle::Mat::Constant(2, 2, 0.5)), 1e-12);
}

TEST(Cli, RunWithJsonInput) {
    Ran r = run_cli("run " + programs("prelude.qarr") +
                    " --def QNot --text --input-json '{\"rows\": [[1, 0], [0, 0]]}'");
    ASSERT_EQ(r.code, 0) << r.out;
    EXPECT_EQ(r.out, "0.000000 0.000000\n0.000000 1.000000\n");
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run_cli("check " + programs("bad.qarr")).code, 1);
    EXPECT_NE(run_cli("check " + programs("bad.qarr")).out.find("delta-misuse"), std::string::npos);
    EXPECT_EQ(run_cli("check " + programs("doublenot.qarr")).code, 0);
    EXPECT_EQ(run_cli("prove " + programs("doublenot.qarr") + " --lhs QNot --rhs idSuper").code, 2);
    EXPECT_EQ(run_cli("normalize " + programs("doublenot.qarr") + " --def doubleNot --fuel 1").code, 3);
    EXPECT_EQ(run_cli("frobnicate").code, 64);
    EXPECT_EQ(run_cli("prove " + programs("doublenot.qarr") + " --tol -1 --lhs a --rhs b").code, 64);
    EXPECT_EQ(run_cli("check /nonexistent.qarr").code, 1);
}

TEST(Cli, OutputIsDeterministic) {
    std::string args = "prove " + programs("prelude.qarr") + " --lhs QNot --rhs Had --json";
    Ran a = run_cli(args);
    Ran b = run_cli(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, 2);
}

TEST(Cli, EmitClassic) {
    Ran r = run_cli("emit " + programs("doublenot.qarr") + " --def idSuper");
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "(arr \\x. x)\n");
}
