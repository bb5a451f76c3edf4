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

#include <map>
#include <memory>
#include <string>

#include "qarrow/classic.hpp"
#include "qarrow/linalg.hpp"
#include "qarrow/syntax.hpp"

namespace qarrow {

enum class VKind { Bool, Pair, Closure, Vec, Super };

struct Value;
using ValuePtr = std::shared_ptr<const Value>;

struct Env;
using EnvPtr = std::shared_ptr<const Env>;

/// Persistent environment; the head shadows the tail.
struct Env {
    std::string name;
    ValuePtr value;
    EnvPtr next;
};

/// Runtime values. A Lin value is a closure returning a Vec.
struct Value {
    VKind kind = VKind::Bool;
    bool b = false;
    ValuePtr left;
    ValuePtr right;
    Pattern pat;
    NodePtr body;
    EnvPtr env;
    std::shared_ptr<const VecVal> vec;
    std::shared_ptr<const SuperVal> super;
};

ValuePtr make_bool(bool b);
ValuePtr make_pair(ValuePtr a, ValuePtr b);
ValuePtr make_vec(VecVal v);
ValuePtr make_super(SuperVal s);

EnvPtr bind(EnvPtr env, std::string name, ValuePtr v);
EnvPtr bind_pattern(EnvPtr env, const Pattern &p, const ValuePtr &v);
ValuePtr lookup(const EnvPtr &env, const std::string &name);

/// Basis index of a classical value, and back.
std::size_t value_index(const ValuePtr &v, const TypePtr &t);
ValuePtr value_at(std::size_t index, const TypePtr &t);

/// Structural equality on classical values.
bool value_equal(const ValuePtr &a, const ValuePtr &b);

std::string value_to_string(const ValuePtr &v);

/// Call-by-value evaluation of an elaborated term.
ValuePtr eval_term(const EnvPtr &env, const Term &m);
ValuePtr apply(const ValuePtr &f, const ValuePtr &arg);

/// Denotation of a combinator tree as a superoperator matrix, computed by
/// running a sparse density interpreter on every basis input |i><j|.
SuperVal eval_classic(const CExprPtr &e, const EnvPtr &env);

/// The same denotation built from the dense linear-algebra combinators.
/// Only practical when every intermediate environment is small.
SuperVal eval_classic_dense(const CExprPtr &e, const EnvPtr &env);

DensVal run(const SuperVal &s, const DensVal &d);

struct EvaluatedProgram {
    EnvPtr env;
    std::map<std::string, ValuePtr> values;
};

/// Evaluates checked definitions in order on top of `base`.
EvaluatedProgram eval_program(const Program &checked, const EnvPtr &base = nullptr);

}  // namespace qarrow
