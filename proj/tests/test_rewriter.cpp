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

#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qarrow/parser.hpp"
#include "qarrow/rewriter.hpp"

using namespace qarrow;

namespace {

std::string read(const std::string &name) {
    std::ifstream in(std::string(QARROW_PROGRAMS_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

TypePtr bool_super() { return Type::super(Type::boolean(), Type::boolean()); }

EnvPair delta_x() {
    EnvPair env;
    env.delta.emplace_back("x", Type::boolean());
    return env;
}

}  // namespace

TEST(Laws, NamesRoundTrip) {
    EXPECT_EQ(all_laws().size(), 22u);
    for (Law l : all_laws()) {
        EXPECT_EQ(law_from_name(law_name(l)), l);
        EXPECT_EQ(law_from_name(law_display(l)), l);
    }
    EXPECT_STREQ(law_display(Law::BetaArrow), "\xCE\xB2\xE2\xA4\xB3");
    EXPECT_FALSE(law_from_name("nope"));
}

TEST(ApplyLaw, BetaArrowOnOpenCommand) {
    Rewriter rw(prelude(), delta_x());
    NodePtr c = rw.elaborate(parse_command("(\\@z. [not z]) @ x"));
    NodePtr r = rw.apply_law_at(c, {}, Law::BetaArrow);
    EXPECT_TRUE(alpha_eq(r, parse_command("[not x]")));
}

TEST(ApplyLaw, LeftUnit) {
    Rewriter rw(prelude(), delta_x());
    NodePtr c = rw.elaborate(parse_command("let w = [not x] in (\\@y. [not y]) @ w"));
    NodePtr r = rw.apply_law_at(c, {}, Law::LeftUnit);
    EXPECT_TRUE(alpha_eq(r, parse_command("(\\@y. [not y]) @ (not x)")));
}

TEST(ApplyLaw, LeftUnitRejectsQuantumUnit) {
    Rewriter rw(prelude(), delta_x());
    NodePtr c = rw.elaborate(parse_command("let w = [hadamard x] in [w]"));
    EXPECT_THROW(rw.apply_law_at(c, {}, Law::LeftUnit), RewriteError);
}

TEST(ApplyLaw, RightUnitBothWays) {
    Rewriter rw(prelude(), delta_x());
    NodePtr c = rw.elaborate(parse_command("let y = Had @ x in [y]"));
    NodePtr r = rw.apply_law_at(c, {}, Law::RightUnit);
    EXPECT_TRUE(alpha_eq(r, parse_command("Had @ x")));
    NodePtr back = rw.apply_law_at(r, {}, Law::RightUnit, Direction::R2L);
    EXPECT_TRUE(alpha_eq(back, c));
}

TEST(ApplyLaw, AssocSideCondition) {
    Rewriter rw(prelude(), delta_x());
    NodePtr ok = rw.elaborate(parse_command("let y = (let z = Had @ x in QNot @ z) in [y]"));
    EXPECT_TRUE(alpha_eq(rw.apply_law_at(ok, {}, Law::Assoc),
                         parse_command("let z = Had @ x in let y = QNot @ z in [y]")));
    // z is free in the body, so the outer let cannot move inside
    EnvPair env = delta_x();
    env.delta.emplace_back("z", Type::boolean());
    Rewriter rw2(prelude(), env);
    NodePtr bad = rw2.elaborate(parse_command("let y = (let z = Had @ x in QNot @ z) in [(y, z)]"));
    EXPECT_THROW(rw2.apply_law_at(bad, {}, Law::Assoc), RewriteError);
}

TEST(ApplyLaw, EtaArrow) {
    Rewriter rw(prelude());
    NodePtr t = rw.elaborate(parse_term("\\@y. Had @ y"));
    EXPECT_TRUE(alpha_eq(rw.apply_law_at(t, {}, Law::EtaArrow), parse_term("Had")));
    NodePtr e = rw.apply_law_at(rw.elaborate(parse_term("QNot")), {}, Law::EtaArrow, Direction::R2L);
    EXPECT_TRUE(alpha_eq(e, parse_term("\\@x. QNot @ x")));
}

TEST(ApplyLaw, LambdaLayer) {
    Rewriter rw(prelude());
    auto at_root = [&](const char *src, Law law, const char *expected) {
        NodePtr r = rw.apply_law_at(rw.elaborate(parse_term(src)), {}, law);
        EXPECT_TRUE(alpha_eq(r, parse_term(expected))) << src << " gave " << to_string(r);
    };
    at_root("fst (True, False)", Law::BetaPair1, "True");
    at_root("snd (True, False)", Law::BetaPair2, "False");
    at_root("(\\x. (x, x)) True", Law::BetaFun, "(True, True)");
    at_root("let x = False in not x", Law::LetSubst, "not False");
    at_root("if True then False else True", Law::IfTrue, "False");
    at_root("if False then False else True", Law::IfFalse, "True");
    at_root("\\x. not x", Law::EtaFun, "not");
    NodePtr pair = rw.elaborate(parse_term("\\p. (fst p, snd p) == (True, True)"));
    EXPECT_TRUE(alpha_eq(rw.apply_law_at(pair, {0, 0}, Law::EtaPair), parse_term("\\p. p == (True, True)")));
}

TEST(ApplyLaw, MonadLayer) {
    Rewriter rw(prelude());
    auto at_root = [&](const char *src, Law law, Direction d, const char *expected) {
        NodePtr r = rw.apply_law_at(rw.elaborate(parse_term(src)), {}, law, d);
        // elaborated, so vector lets compare as binds
        EXPECT_TRUE(alpha_eq(r, rw.elaborate(parse_term(expected)))) << src << " gave " << to_string(r);
    };
    const Direction l2r = Direction::L2R;
    at_root("let y = [True] in hadamard y", Law::MLeft, l2r, "hadamard True");
    at_root("let y = hadamard True in [y]", Law::MRight, l2r, "hadamard True");
    at_root("let y = mzero in hadamard y", Law::LetZero, l2r, "mzero");
    at_root("mzero + hadamard True", Law::MZeroL, l2r, "hadamard True");
    at_root("hadamard True + mzero", Law::MZeroR, l2r, "hadamard True");
    at_root("[True] + ([False] + [True])", Law::PlusAssoc, l2r, "([True] + [False]) + [True]");
    at_root("let y = [True] + [False] in hadamard y", Law::LetPlus, l2r,
            "(let y = [True] in hadamard y) + (let y = [False] in hadamard y)");
    at_root("(let y = [True] in hadamard y) + (let y = [False] in hadamard y)", Law::LetPlus, Direction::R2L,
            "let y = [True] + [False] in hadamard y");
    at_root("let y = (let z = hadamard True in sqrtnot z) in hadamard y", Law::MAssoc, l2r,
            "let z = hadamard True in let y = sqrtnot z in hadamard y");
}

TEST(ApplyLaw, NoMatchIsAnError) {
    Rewriter rw(prelude());
    NodePtr t = rw.elaborate(parse_term("\\@x. [not x]"));
    EXPECT_THROW(rw.apply_law_at(t, {}, Law::BetaArrow), RewriteError);
    EXPECT_THROW(rw.apply_law_at(t, {0}, Law::LeftUnit), RewriteError);
    EXPECT_THROW(rw.apply_law_at(t, {5}, Law::LeftUnit), RewriteError);
}

TEST(Normalize, DoubleNotGoldenTrace) {
    ModulePtr m = load_program(read("doublenot.qarr"));
    Rewriter rw(m);
    ProofTrace tr = rw.normalize(m->find("doubleNot")->body);
    std::vector<std::string> labels;
    for (const auto &s : tr.steps) {
        labels.push_back(step_label(s));
    }
    EXPECT_EQ(labels, (std::vector<std::string>{"\xCE\xB2\xE2\xA4\xB3", "left", "\xCE\xB2\xE2\xA4\xB3", "def. not"}));
    EXPECT_TRUE(alpha_eq(tr.end, parse_term("\\@x. [x]")));
    EXPECT_FALSE(tr.fuel_exhausted);
    EXPECT_TRUE(alpha_eq(rw.replay(tr), tr.end));
    // every step keeps the denotation
    auto start = eval_term(m->env, tr.start)->super->action;
    for (const auto &s : tr.steps) {
        EXPECT_LT(oracle::max_diff(eval_term(m->env, s.result)->super->action, start), 1e-9);
        EXPECT_TRUE(type_equal(s.result->ty, tr.start->ty));
    }
}

TEST(Normalize, NormalTermsHaveEmptyTraces) {
    Rewriter rw(prelude());
    ProofTrace tr = rw.normalize(rw.elaborate(parse_term("\\@x. [x]"), bool_super()));
    EXPECT_TRUE(tr.steps.empty());
}

TEST(Normalize, LetMzero) {
    Rewriter rw(prelude());
    ProofTrace tr = rw.normalize(rw.elaborate(parse_term("let x = mzero in hadamard x")));
    EXPECT_TRUE(alpha_eq(tr.end, parse_term("mzero")));
}

TEST(Normalize, FuelRunsOut) {
    ModulePtr m = load_program(read("doublenot.qarr"));
    ProofTrace tr = Rewriter(m).normalize(m->find("doubleNot")->body, 2);
    EXPECT_TRUE(tr.fuel_exhausted);
    EXPECT_EQ(tr.steps.size(), 2u);
}

TEST(Normalize, TerminatesWithinTenTimesSizeOnThePrelude) {
    ModulePtr m = prelude();
    Rewriter rw(m);
    for (const auto &d : m->program.defs) {
        std::size_t fuel = 10 * ast_size(d.body);
        ProofTrace tr = rw.normalize(d.body, fuel);
        EXPECT_FALSE(tr.fuel_exhausted) << d.name;
        EXPECT_TRUE(alpha_eq(rw.replay(tr), tr.end)) << d.name;
        if (d.body->ty->kind == TypeKind::Super) {
            double gap = oracle::max_diff(eval_term(m->env, tr.end)->super->action, m->value(d.name)->super->action);
            EXPECT_LT(gap, 1e-9) << d.name;
        }
    }
}

TEST(Unfold, OnlyClassicalDefinitions) {
    Rewriter rw(prelude(), delta_x());
    // hadamard is not classical data, so it is never unfolded
    NodePtr c = rw.elaborate(parse_command("[hadamard (not (not x))]"));
    ProofTrace tr = rw.normalize(c);
    ASSERT_EQ(tr.steps.size(), 1u);
    EXPECT_EQ(step_label(tr.steps[0]), "def. not");
    EXPECT_TRUE(alpha_eq(tr.end, parse_command("[hadamard x]")));
    NodePtr k = rw.elaborate(parse_command("[(not True, x == x)]"));
    EXPECT_TRUE(alpha_eq(rw.normalize(k).end, parse_command("[(False, True)]")));
}

TEST(Prove, ByNormalization) {
    ModulePtr m = load_program(read("doublenot.qarr"));
    Verdict v = Rewriter(m).prove_equal(m->find("doubleNot")->body, m->find("idSuper")->body);
    EXPECT_EQ(v.kind, VerdictKind::ProvedByNormalization);
}

TEST(Prove, HadamardTwiceIsIdentitySemantically) {
    Rewriter rw(prelude());
    NodePtr a = rw.elaborate(parse_term("\\@x. let y = Had @ x in Had @ y"));
    NodePtr b = rw.elaborate(parse_term("\\@x. [x]"), a->ty);
    Verdict v = rw.prove_equal(a, b);
    EXPECT_EQ(v.kind, VerdictKind::ProvedSemantically);
    EXPECT_EQ(v.tolerance, 1e-9);
    EXPECT_LE(v.max_diff, 1e-9);
}

TEST(Prove, NotEqualWithWitness) {
    Rewriter rw(prelude());
    NodePtr a = rw.elaborate(parse_term("QNot"));
    NodePtr b = rw.elaborate(parse_term("\\@x. [x]"), a->ty);
    Verdict v = rw.prove_equal(a, b);
    ASSERT_EQ(v.kind, VerdictKind::NotEqual);
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(v.witness_text, "|0>");
    EXPECT_LT(max_abs_diff(v.witness->mat, basis_density(v.witness->basis, 0, 0).mat), 1e-15);
    const SuperVal &q = *prelude()->value("QNot")->super;
    EXPECT_GT(max_abs_diff(apply_super(q, *v.witness).mat, v.witness->mat), 1e-6);
}

TEST(Prove, PhaseOnlyDifferenceNeedsACoherentWitness) {
    Rewriter rw(prelude());
    NodePtr a = rw.elaborate(parse_term("\\@x. [hadamard x]"));
    NodePtr b = rw.elaborate(parse_term("\\@x. let y = Had @ x in QNot @ y"), a->ty);
    Verdict v = rw.prove_equal(a, b);
    EXPECT_EQ(v.kind, VerdictKind::NotEqual);
    EXPECT_NE(v.witness_text.find("sqrt2"), std::string::npos) << v.witness_text;
}

TEST(Prove, TypeMismatchIsAnError) {
    Rewriter rw(prelude());
    EXPECT_THROW(rw.prove_equal(rw.elaborate(parse_term("QNot")), rw.elaborate(parse_term("Cnot"))), TypeError);
}

TEST(Prove, ClassicalFunctionsByTabulation) {
    Rewriter rw(prelude());
    NodePtr a = rw.elaborate(parse_term("\\x. not (not x)"));
    NodePtr b = rw.elaborate(parse_term("\\y. y"), a->ty);
    EXPECT_NE(rw.prove_equal(a, b).kind, VerdictKind::NotEqual);
    NodePtr c = rw.elaborate(parse_term("\\y. True"), a->ty);
    EXPECT_EQ(rw.prove_equal(a, c).kind, VerdictKind::NotEqual);
}
