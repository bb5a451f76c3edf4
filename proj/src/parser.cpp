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

#include "qarrow/parser.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <set>

namespace qarrow {

namespace {

enum class Tok { Ident, Keyword, Number, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double number = 0.0;
    bool imaginary = false;
    SourcePos pos;
};

const std::set<std::string> &keywords() {
    static const std::set<std::string> kw = {
        "let",  "in",  "if",    "then",     "else", "True", "False", "fst", "snd",   "meas",
        "trL",  "mzero", "invsqrt2", "Bool", "Vec", "Lin",  "Dens",  "Super",
    };
    return kw;
}

bool ident_start(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool ident_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '\''; }

std::string describe(const Token &t) {
    switch (t.kind) {
        case Tok::End:
            return "end of definition";
        case Tok::Number:
            return "number '" + t.text + "'";
        default:
            return "'" + t.text + "'";
    }
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        unsigned char c = src[i];
        if (c == '\n' || c == ' ' || c == '\t' || c == '\r') {
            advance(1);
            continue;
        }
        if (src.compare(i, 2, "--") == 0) {
            while (i < src.size() && src[i] != '\n') {
                advance(1);
            }
            continue;
        }
        Token t;
        t.pos = {line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) {
                ++j;
            }
            t.text = std::string(src.substr(i, j - i));
            t.kind = keywords().count(t.text) ? Tok::Keyword : Tok::Ident;
            advance(j - i);
        } else if (std::isdigit(c)) {
            std::size_t j = i;
            while (j < src.size() && (std::isdigit(src[j]) || src[j] == '.')) {
                ++j;
            }
            if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < src.size() && (src[k] == '+' || src[k] == '-')) {
                    ++k;
                }
                if (k < src.size() && std::isdigit(src[k])) {
                    j = k;
                    while (j < src.size() && std::isdigit(src[j])) {
                        ++j;
                    }
                }
            }
            std::string digits(src.substr(i, j - i));
            auto res = std::from_chars(digits.data(), digits.data() + digits.size(), t.number);
            if (res.ec != std::errc() || res.ptr != digits.data() + digits.size()) {
                throw SyntaxError(t.pos, "malformed number '" + digits + "'");
            }
            if (j < src.size() && src[j] == 'i' && (j + 1 >= src.size() || !ident_char(src[j + 1]))) {
                t.imaginary = true;
                ++j;
            }
            t.kind = Tok::Number;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
        } else if (src.compare(i, 3, "\xE2\x80\xA2") == 0) {  // bullet
            t.kind = Tok::Symbol;
            t.text = "@";
            advance(3);
        } else if (src.compare(i, 2, "\xCE\xBB") == 0) {  // lambda
            t.kind = Tok::Symbol;
            t.text = "\\";
            advance(2);
        } else {
            static const char *multi[] = {"==", "->", "~>"};
            bool matched = false;
            for (const char *m : multi) {
                if (src.compare(i, 2, m) == 0) {
                    t.kind = Tok::Symbol;
                    t.text = m;
                    advance(2);
                    matched = true;
                    break;
                }
            }
            if (!matched) {
                static const std::string singles = "\\@.()[],=+-*:";
                if (singles.find(static_cast<char>(c)) == std::string::npos) {
                    throw SyntaxError(t.pos, "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
                }
                t.kind = Tok::Symbol;
                t.text = std::string(1, static_cast<char>(c));
                advance(1);
            }
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.pos = {line, col};
    out.push_back(end);
    return out;
}

class Parser {
   public:
    Parser(const std::vector<Token> &toks, std::size_t begin, std::size_t end) : toks_(toks), i_(begin), end_(end) {}

    const Token &peek(std::size_t ahead = 0) const {
        std::size_t k = i_ + ahead;
        return k >= end_ ? end_token() : toks_[k];
    }

    bool at_end() const { return i_ >= end_; }

    bool is_sym(const char *s, std::size_t ahead = 0) const {
        const Token &t = peek(ahead);
        return t.kind == Tok::Symbol && t.text == s;
    }
    bool is_kw(const char *s, std::size_t ahead = 0) const {
        const Token &t = peek(ahead);
        return t.kind == Tok::Keyword && t.text == s;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        throw SyntaxError(peek().pos, std::move(expected), describe(peek()));
    }

    void expect_sym(const char *s) {
        if (!is_sym(s)) {
            fail({std::string("'") + s + "'"});
        }
        ++i_;
    }
    void expect_kw(const char *s) {
        if (!is_kw(s)) {
            fail({std::string("'") + s + "'"});
        }
        ++i_;
    }

    std::string expect_ident() {
        if (peek().kind != Tok::Ident) {
            fail({"identifier"});
        }
        return toks_[i_++].text;
    }

    // ---- types ----

    TypePtr type() {
        TypePtr left = type_app();
        if (is_sym("->")) {
            ++i_;
            return Type::fun(left, type());
        }
        if (is_sym("~>")) {
            ++i_;
            return Type::super(left, type());
        }
        return left;
    }

    TypePtr type_app() {
        if (is_kw("Vec")) {
            ++i_;
            return Type::vec(type_atom());
        }
        if (is_kw("Dens")) {
            ++i_;
            return Type::dens(type_atom());
        }
        if (is_kw("Lin")) {
            ++i_;
            TypePtr a = type_atom();
            return Type::lin(a, type_atom());
        }
        if (is_kw("Super")) {
            ++i_;
            TypePtr a = type_atom();
            return Type::super(a, type_atom());
        }
        return type_atom();
    }

    TypePtr type_atom() {
        if (is_kw("Bool")) {
            ++i_;
            return Type::boolean();
        }
        if (is_sym("(")) {
            ++i_;
            std::vector<TypePtr> items{type()};
            while (is_sym(",")) {
                ++i_;
                items.push_back(type());
            }
            expect_sym(")");
            TypePtr t = items.back();
            for (std::size_t k = items.size() - 1; k-- > 0;) {
                t = Type::prod(items[k], t);
            }
            return t;
        }
        fail({"'Bool'", "'('", "'Vec'", "'Lin'", "'Dens'", "'Super'"});
    }

    // ---- patterns ----

    Pattern pattern() {
        if (peek().kind == Tok::Ident) {
            return Pattern::var(toks_[i_++].text);
        }
        if (is_sym("(")) {
            SourcePos pos = peek().pos;
            ++i_;
            std::vector<Pattern> items{pattern()};
            while (is_sym(",")) {
                ++i_;
                items.push_back(pattern());
            }
            expect_sym(")");
            Pattern p = items.back();
            for (std::size_t k = items.size() - 1; k-- > 0;) {
                p = Pattern::pair(items[k], p);
            }
            auto vars = p.vars();
            std::set<std::string> seen;
            for (const auto &v : vars) {
                if (!seen.insert(v).second) {
                    throw SyntaxError(pos, "variable '" + v + "' bound twice in pattern");
                }
            }
            return p;
        }
        fail({"identifier", "'('"});
    }

    // ---- terms ----

    NodePtr term() {
        SourcePos pos = peek().pos;
        if (is_sym("\\")) {
            ++i_;
            if (is_sym("@")) {
                ++i_;
                Pattern p = pattern();
                expect_sym(".");
                return ast::arrow_abs(std::move(p), command(), pos);
            }
            Pattern p = pattern();
            expect_sym(".");
            return ast::lam(std::move(p), term(), pos);
        }
        if (is_kw("let")) {
            ++i_;
            Pattern p = pattern();
            expect_sym("=");
            NodePtr bound = term();
            expect_kw("in");
            return ast::let(std::move(p), bound, term(), pos);
        }
        if (is_kw("if")) {
            ++i_;
            NodePtr c = term();
            expect_kw("then");
            NodePtr t = term();
            expect_kw("else");
            return ast::if_(c, t, term(), pos);
        }
        return eq_expr();
    }

    NodePtr eq_expr() {
        NodePtr left = add_expr();
        if (is_sym("==")) {
            SourcePos pos = peek().pos;
            ++i_;
            return ast::eq(left, add_expr(), pos);
        }
        return left;
    }

    NodePtr add_expr() {
        NodePtr left = scale_expr();
        while (is_sym("+") || is_sym("-")) {
            SourcePos pos = peek().pos;
            bool plus = is_sym("+");
            ++i_;
            NodePtr right = scale_expr();
            left = plus ? ast::vec_add(left, right, pos) : ast::vec_sub(left, right, pos);
        }
        return left;
    }

    bool at_scalar() const {
        if (peek().kind == Tok::Number || is_kw("invsqrt2")) {
            return true;
        }
        if (is_sym("-") && peek(1).kind == Tok::Number) {
            return true;
        }
        if (is_sym("(")) {
            return peek(1).kind == Tok::Number || (is_sym("-", 1) && peek(2).kind == Tok::Number);
        }
        return false;
    }

    std::complex<double> signed_number() {
        double sign = 1.0;
        if (is_sym("-")) {
            sign = -1.0;
            ++i_;
        } else if (is_sym("+")) {
            ++i_;
        }
        if (peek().kind != Tok::Number) {
            fail({"number"});
        }
        const Token &t = toks_[i_++];
        return t.imaginary ? std::complex<double>(0.0, sign * t.number) : std::complex<double>(sign * t.number, 0.0);
    }

    std::complex<double> scalar() {
        if (is_kw("invsqrt2")) {
            ++i_;
            return {M_SQRT1_2, 0.0};
        }
        if (is_sym("(")) {
            ++i_;
            std::complex<double> c = signed_number();
            if (is_sym("+") || is_sym("-")) {
                c += signed_number();
            }
            expect_sym(")");
            return c;
        }
        return signed_number();
    }

    NodePtr scale_expr() {
        if (at_scalar()) {
            SourcePos pos = peek().pos;
            std::complex<double> c = scalar();
            expect_sym("*");
            return ast::vec_scale(c, scale_expr(), pos);
        }
        return app_expr();
    }

    bool at_atom() const {
        const Token &t = peek();
        if (t.kind == Tok::Ident) {
            return true;
        }
        if (t.kind == Tok::Keyword) {
            return t.text == "True" || t.text == "False" || t.text == "mzero";
        }
        return t.kind == Tok::Symbol && (t.text == "(" || t.text == "[");
    }

    NodePtr app_expr() {
        SourcePos pos = peek().pos;
        NodePtr head;
        if (is_kw("fst")) {
            ++i_;
            head = ast::fst(atom(), pos);
        } else if (is_kw("snd")) {
            ++i_;
            head = ast::snd(atom(), pos);
        } else {
            head = atom();
        }
        while (at_atom()) {
            SourcePos apos = peek().pos;
            head = ast::app(head, atom(), apos);
        }
        return head;
    }

    NodePtr atom() {
        const Token &t = peek();
        SourcePos pos = t.pos;
        if (t.kind == Tok::Ident) {
            ++i_;
            return ast::var(t.text, pos);
        }
        if (is_kw("True") || is_kw("False")) {
            ++i_;
            return ast::boolean(t.text == "True", pos);
        }
        if (is_kw("mzero")) {
            ++i_;
            return ast::mzero(pos);
        }
        if (is_sym("[")) {
            ++i_;
            NodePtr m = term();
            expect_sym("]");
            return ast::vec_unit(m, pos);
        }
        if (is_sym("(")) {
            ++i_;
            std::vector<NodePtr> items{term()};
            while (is_sym(",")) {
                ++i_;
                items.push_back(term());
            }
            expect_sym(")");
            NodePtr m = items.back();
            for (std::size_t k = items.size() - 1; k-- > 0;) {
                m = ast::pair(items[k], m, items[k]->pos);
            }
            return m;
        }
        fail({"identifier", "'True'", "'False'", "'mzero'", "'('", "'['"});
    }

    // ---- commands ----

    NodePtr command() {
        SourcePos pos = peek().pos;
        if (is_kw("let")) {
            ++i_;
            Pattern p = pattern();
            expect_sym("=");
            NodePtr bound = command();
            expect_kw("in");
            return ast::clet(std::move(p), bound, command(), pos);
        }
        if (is_sym("[")) {
            ++i_;
            NodePtr m = term();
            expect_sym("]");
            return ast::cunit(m, pos);
        }
        if (is_kw("meas") || is_kw("trL")) {
            bool is_meas = is_kw("meas");
            ++i_;
            if (is_sym("@")) {
                ++i_;
            }
            NodePtr arg = app_expr();
            return is_meas ? ast::meas(arg, pos) : ast::trl(arg, pos);
        }
        if (is_sym("(")) {
            // Either a parenthesized command or a parenthesized arrow term `(L) • M`.
            std::size_t save = i_;
            try {
                ++i_;
                NodePtr inner = command();
                expect_sym(")");
                if (!is_sym("@")) {
                    return inner;
                }
            } catch (const SyntaxError &) {
            }
            i_ = save;
        }
        NodePtr arrow = app_expr();
        if (!is_sym("@")) {
            fail({"'\xE2\x80\xA2'"});
        }
        SourcePos bpos = peek().pos;
        ++i_;
        (void)bpos;
        return ast::capp(arrow, term(), pos);
    }

    std::size_t index() const { return i_; }

   private:
    const Token &end_token() const {
        static thread_local Token t;
        t = Token{};
        t.pos = toks_[end_].pos;
        return t;
    }

    const std::vector<Token> &toks_;
    std::size_t i_;
    std::size_t end_;
};

template <typename F>
auto parse_whole(std::string_view source, F f) {
    auto toks = lex(source);
    Parser p(toks, 0, toks.size() - 1);
    auto result = f(p);
    if (!p.at_end()) {
        p.fail({"end of input"});
    }
    return result;
}

}  // namespace

Program parse_program(std::string_view source) {
    auto toks = lex(source);
    Program prog;
    const std::size_t n = toks.size() - 1;  // last token marks the end
    std::size_t i = 0;
    while (i < n) {
        if (toks[i].pos.col != 1) {
            throw SyntaxError(toks[i].pos, "definitions must start in column 1");
        }
        std::size_t end = i + 1;
        while (end < n && toks[end].pos.col != 1) {
            ++end;
        }
        Parser p(toks, i, end);
        Definition def;
        def.pos = toks[i].pos;
        def.name = p.expect_ident();
        if (p.is_sym(":")) {
            p.expect_sym(":");
            def.annotation = p.type();
        }
        p.expect_sym("=");
        def.body = p.term();
        if (!p.at_end()) {
            p.fail({"end of definition"});
        }
        if (prog.find(def.name)) {
            throw SyntaxError(def.pos, "duplicate definition '" + def.name + "'");
        }
        prog.defs.push_back(std::move(def));
        i = end;
    }
    return prog;
}

Term parse_term(std::string_view source) {
    return parse_whole(source, [](Parser &p) { return p.term(); });
}

Command parse_command(std::string_view source) {
    return parse_whole(source, [](Parser &p) { return p.command(); });
}

TypePtr parse_type(std::string_view source) {
    return parse_whole(source, [](Parser &p) { return p.type(); });
}

}  // namespace qarrow
