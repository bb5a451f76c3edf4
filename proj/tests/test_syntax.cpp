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

#include "qarrow/parser.hpp"
#include "qarrow/syntax.hpp"

using namespace qarrow;

namespace {

NodePtr t(const char *s) { return parse_term(s); }
NodePtr c(const char *s) { return parse_command(s); }

}  // namespace

TEST(FreeVars, BindersHideTheirPattern) {
    EXPECT_EQ(free_vars(t("\\(x, y). f x z")), (std::set<std::string>{"f", "z"}));
    EXPECT_EQ(free_vars(t("\\@x. let y = G @ x in H @ (y, w)")), (std::set<std::string>{"G", "H", "w"}));
    EXPECT_EQ(free_vars(t("let x = x in x")), (std::set<std::string>{"x"}));
}

TEST(FreshName, AvoidsTakenNames) {
    EXPECT_EQ(fresh_name("x", {}), "x'");
    std::string n = fresh_name("x", {"x", "x'"});
    EXPECT_NE(n, "x");
    EXPECT_NE(n, "x'");
}

TEST(Substitute, AvoidsCapture) {
    // (\y. x y)[x := y] must rename the binder
    NodePtr r = subst_term(t("\\y. x y"), "x", t("y"));
    ASSERT_EQ(r->kind, Kind::Lam);
    EXPECT_NE(r->pat.name, "y");
    EXPECT_TRUE(free_vars(r).count("y"));
    EXPECT_TRUE(alpha_eq(r, t("\\z. y z")));
}

TEST(Substitute, StopsAtShadowingBinder) {
    NodePtr r = subst_term(t("(x, \\x. x)"), "x", t("True"));
    EXPECT_TRUE(alpha_eq(r, t("(True, \\x. x)")));
}

TEST(Substitute, ReachesIntoCommands) {
    NodePtr r = subst_command(c("let y = F @ x in [(x, y)]"), "x", t("not b"));
    EXPECT_TRUE(alpha_eq(r, c("let y = F @ (not b) in [(not b, y)]")));
}

TEST(PatternBindings, DestructuresPairsAndProjectsOtherwise) {
    Pattern p = Pattern::pair(Pattern::var("a"), Pattern::pair(Pattern::var("b"), Pattern::var("c")));
    auto lit = pattern_bindings(p, t("(True, False, x)"));
    EXPECT_TRUE(alpha_eq(lit.at("a"), t("True")));
    EXPECT_TRUE(alpha_eq(lit.at("c"), t("x")));
    auto proj = pattern_bindings(p, t("v"));
    EXPECT_TRUE(alpha_eq(proj.at("a"), t("fst v")));
    EXPECT_TRUE(alpha_eq(proj.at("c"), t("snd (snd v)")));
}

TEST(AlphaEq, RenamingOnly) {
    EXPECT_TRUE(alpha_eq(t("\\@x. [x]"), t("\\@y. [y]")));
    EXPECT_TRUE(alpha_eq(t("\\(a, b). (b, a)"), t("\\(p, q). (q, p)")));
    EXPECT_FALSE(alpha_eq(t("\\(a, b). (b, a)"), t("\\(p, q). (p, q)")));
    EXPECT_FALSE(alpha_eq(t("\\x. y"), t("\\y. y")));
    EXPECT_FALSE(alpha_eq(t("0.5 * [True]"), t("0.25 * [True]")));
}

TEST(Paths, NodeAtAndReplaceAt) {
    NodePtr n = t("\\@x. let w = F @ x in G @ w");
    EXPECT_EQ(node_at(n, {0, 0})->kind, Kind::CApp);
    EXPECT_EQ(node_at(n, {0, 0, 0})->name, "F");
    NodePtr r = replace_at(n, {0, 0, 0}, t("H"));
    EXPECT_TRUE(alpha_eq(r, t("\\@x. let w = H @ x in G @ w")));
    EXPECT_THROW(node_at(n, {3}), RewriteError);
}

TEST(Printing, AsciiAndUnicode) {
    NodePtr n = t("\\@x. [not x]");
    EXPECT_EQ(to_string(n, true), "\\@x. [not x]");
    EXPECT_EQ(to_string(n), "\xCE\xBB\xE2\x80\xA2x. [not x]");
    EXPECT_EQ(ast_size(n), 5u);
}

TEST(Printing, ScalarForms) {
    EXPECT_EQ(scalar_to_string({0.5, 0.0}), "0.5");
    EXPECT_TRUE(alpha_eq(t(to_string(t("(0.5-0.5i) * [x]"), true).c_str()), t("(0.5-0.5i) * [x]")));
}
