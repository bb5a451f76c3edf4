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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qarrow/classic.hpp"
#include "qarrow/json_io.hpp"
#include "qarrow/ket.hpp"
#include "qarrow/session.hpp"

namespace {

using namespace qarrow;

// Exit codes.
constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kNotEqual = 2;
constexpr int kUndecided = 3;
constexpr int kUsage = 64;

struct Options {
    std::string file;
    bool no_prelude = false;
    bool json_out = false;
    bool text_out = false;
    std::string def;
    std::string term;
    std::string input;
    std::string input_json;
    std::string lhs;
    std::string rhs;
    std::string emit = "classic";
    double tol = 1e-9;
    std::size_t fuel = 10000;
};

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(SourcePos{}, "io", "cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ModulePtr load(const Options &o) {
    return load_program(read_file(o.file), !o.no_prelude);
}

void print_trace(std::ostream &out, const ProofTrace &t) {
    out << to_string(t.start) << "\n";
    for (const auto &s : t.steps) {
        out << "   =(" << step_label(s) << ")\n" << to_string(s.result) << "\n";
    }
    if (t.fuel_exhausted) {
        out << "   ... fuel exhausted after " << t.steps.size() << " steps\n";
    }
}

int cmd_check(const Options &o) {
    ModulePtr m = load(o);
    json defs = json::array();
    for (const auto &d : m->program.defs) {
        if (o.json_out) {
            defs.push_back({{"name", d.name}, {"type", to_string(m->type(d.name))}});
        } else {
            std::cout << d.name << " : " << to_string(m->type(d.name)) << "\n";
        }
    }
    if (o.json_out) {
        std::cout << json{{"definitions", defs}}.dump(2) << "\n";
    }
    return kOk;
}

DensVal read_input(const Options &o, const Basis &basis) {
    if (!o.input.empty() && !o.input_json.empty()) {
        throw CLI::ValidationError("--input and --input-json are exclusive");
    }
    if (!o.input.empty()) {
        return parse_ket_density(o.input, &basis);
    }
    if (o.input_json.empty()) {
        throw CLI::RequiredError("--input or --input-json");
    }
    std::string text = o.input_json.front() == '{' ? o.input_json : read_file(o.input_json);
    return density_from_json(json::parse(text), &basis);
}

int cmd_run(const Options &o) {
    ModulePtr m = load(o);
    if (!m->find(o.def)) {
        throw Error(SourcePos{}, "unbound", "no definition named " + o.def);
    }
    ValuePtr v = m->value(o.def);
    if (v->kind == VKind::Super) {
        DensVal out = run(*v->super, read_input(o, v->super->in));
        if (o.text_out) {
            std::cout << format_matrix(out.mat);
        } else {
            std::cout << density_to_json(out).dump(2) << "\n";
        }
        return kOk;
    }
    if (v->kind == VKind::Closure || o.text_out) {
        std::cout << value_to_string(v) << "\n";
    } else {
        std::cout << value_to_json(v).dump(2) << "\n";
    }
    return kOk;
}

int cmd_normalize(const Options &o) {
    ModulePtr m = load(o);
    if (o.def.empty() == o.term.empty()) {
        throw CLI::ValidationError("give exactly one of --def and --term");
    }
    Term t = resolve_term(*m, o.def.empty() ? o.term : o.def);
    ProofTrace trace = Rewriter(m).normalize(t, o.fuel);
    if (o.json_out) {
        std::cout << trace_to_json(trace).dump(2) << "\n";
    } else {
        print_trace(std::cout, trace);
    }
    return trace.fuel_exhausted ? kUndecided : kOk;
}

int cmd_prove(const Options &o) {
    ModulePtr m = load(o);
    Rewriter rw(m);
    // One side may need the other's type, e.g. an unannotated \•x. [x].
    Term a;
    Term b;
    try {
        a = resolve_term(*m, o.lhs);
        b = resolve_term(*m, o.rhs, a->ty);
    } catch (const TypeError &e) {
        if (e.error_kind() != TypeErrorKind::Ambiguous || a) {
            throw;
        }
        b = resolve_term(*m, o.rhs);
        a = resolve_term(*m, o.lhs, b->ty);
    }
    Verdict v = rw.prove_equal(a, b, o.fuel, o.tol);
    if (o.json_out) {
        std::cout << verdict_to_json(v).dump(2) << "\n";
    } else {
        std::cout << "lhs " << o.lhs << ":\n";
        print_trace(std::cout, v.lhs);
        std::cout << "rhs " << o.rhs << ":\n";
        print_trace(std::cout, v.rhs);
        std::cout << "verdict: " << verdict_name(v.kind) << "\n" << v.reason << "\n";
        if (v.witness) {
            std::cout << "witness input: " << v.witness_text << "\n" << format_matrix(v.witness->mat);
        }
    }
    switch (v.kind) {
        case VerdictKind::ProvedByNormalization:
        case VerdictKind::ProvedSemantically:
            return kOk;
        case VerdictKind::NotEqual:
            return kNotEqual;
        case VerdictKind::Unknown:
            break;
    }
    return kUndecided;
}

int cmd_emit(const Options &o) {
    ModulePtr m = load(o);
    if (o.emit != "classic") {
        throw CLI::ValidationError("--emit supports only 'classic'");
    }
    const Definition *d = m->find(o.def);
    if (!d) {
        throw Error(SourcePos{}, "unbound", "no definition named " + o.def);
    }
    if (d->body->kind != Kind::ArrowAbs) {
        throw Error(d->pos, "emit", o.def + " is not an arrow abstraction");
    }
    std::cout << to_sexpr(translate_term(d->body)) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qarrow: typecheck, run and reason about quantum arrow programs"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub) {
        sub->add_option("file", o.file, "program file (.qarr)")->required();
        sub->add_flag("--no-prelude", o.no_prelude, "do not load the standard prelude");
        sub->add_flag("--json", o.json_out, "machine-readable output");
    };

    auto *check = app.add_subcommand("check", "typecheck a program and list definition types");
    common(check);

    auto *run = app.add_subcommand("run", "apply a definition to an input density");
    common(run);
    run->add_option("--def", o.def, "definition to run")->required();
    run->add_option("--input", o.input, "input as a ket, e.g. \"(|0> + |1>)/sqrt2\"");
    run->add_option("--input-json", o.input_json, "input density as JSON text or a JSON file");
    run->add_flag("--text", o.text_out, "print a fixed-width matrix instead of JSON");

    auto *normalize = app.add_subcommand("normalize", "normalize a term and print the trace");
    common(normalize);
    normalize->add_option("--def", o.def, "definition to normalize");
    normalize->add_option("--term", o.term, "term to normalize");
    normalize->add_option("--fuel", o.fuel, "maximum rewrite steps")->check(CLI::PositiveNumber);

    auto *prove = app.add_subcommand("prove", "prove two terms equal");
    common(prove);
    prove->add_option("--lhs", o.lhs, "left side: definition name or term")->required();
    prove->add_option("--rhs", o.rhs, "right side: definition name or term")->required();
    prove->add_option("--fuel", o.fuel, "maximum rewrite steps per side")->check(CLI::PositiveNumber);
    prove->add_option("--tol", o.tol, "semantic comparison tolerance")->check(CLI::PositiveNumber);

    auto *emit = app.add_subcommand("emit", "print the combinator translation of a definition");
    common(emit);
    emit->add_option("--def", o.def, "definition to translate")->required();
    emit->add_option("--emit", o.emit, "output form (classic)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*check) {
            return cmd_check(o);
        }
        if (*run) {
            return cmd_run(o);
        }
        if (*normalize) {
            return cmd_normalize(o);
        }
        if (*prove) {
            return cmd_prove(o);
        }
        return cmd_emit(o);
    } catch (const CLI::ParseError &e) {
        std::cerr << "usage: " << e.what() << "\n";
        return kUsage;
    } catch (const TypeError &e) {
        std::cerr << e.render(o.file) << (e.definition.empty() ? "" : " (in " + e.definition + ")") << "\n";
        return kRejected;
    } catch (const Error &e) {
        std::cerr << e.render(o.file) << "\n";
        return kRejected;
    } catch (const json::exception &e) {
        std::cerr << o.file << ": json: " << e.what() << "\n";
        return kRejected;
    } catch (const std::exception &e) {
        std::cerr << o.file << ": error: " << e.what() << "\n";
        return kRejected;
    }
}
