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

#include "qarrow/session.hpp"

#include "qarrow/parser.hpp"

namespace qarrow {

const Definition *Module::find(const std::string &name) const {
    for (const Module *m = this; m; m = m->parent.get()) {
        if (const Definition *d = m->program.find(name)) {
            return d;
        }
    }
    return nullptr;
}

ValuePtr Module::value(const std::string &name) const { return lookup(env, name); }

TypePtr Module::type(const std::string &name) const {
    auto it = types.find(name);
    return it == types.end() ? nullptr : it->second;
}

const std::string &prelude_source() {
    static const std::string text =
#include "qarrow/prelude_source.inc"
        ;
    return text;
}

ModulePtr prelude() {
    static const ModulePtr instance = load_module(prelude_source(), nullptr);
    return instance;
}

ModulePtr load_module(std::string_view source, ModulePtr parent) {
    Program parsed = parse_program(source);
    GlobalTypes outer = parent ? parent->types : GlobalTypes{};
    CheckedProgram checked = check_program(parsed, outer);
    EvaluatedProgram evaluated = eval_program(checked.program, parent ? parent->env : nullptr);
    auto m = std::make_shared<Module>();
    m->parent = std::move(parent);
    m->program = std::move(checked.program);
    m->types = std::move(outer);
    for (const auto &[name, ty] : checked.types) {
        m->types[name] = ty;
    }
    m->env = evaluated.env;
    return m;
}

ModulePtr load_program(std::string_view source, bool with_prelude) {
    return load_module(source, with_prelude ? prelude() : nullptr);
}

Elaborated elaborate_in(const Module &m, const Term &t, const TypePtr &expected) {
    return elaborate_term(t, {}, m.types, expected);
}

Term resolve_term(const Module &m, std::string_view text, const TypePtr &expected) {
    Term parsed = parse_term(text);
    if (parsed->kind == Kind::Var) {
        if (const Definition *d = m.find(parsed->name)) {
            return d->body;
        }
    }
    return elaborate_in(m, parsed, expected).node;
}

}  // namespace qarrow
