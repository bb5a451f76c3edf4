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

#include <memory>
#include <string>
#include <vector>

#include "qarrow/syntax.hpp"

namespace qarrow {

enum class CKind { Arr, LiftLin, Compose, First, Second, Fanout, Meas, TrL, Embed };

struct ClassicExpr;
using CExprPtr = std::shared_ptr<const ClassicExpr>;

/// Point-free combinator tree over the Super arrow.
///   Arr      arr (\pat. body), or arr id when `body` is null
///   LiftLin  the Lin (\pat. body) lifted to a superoperator
///   Compose  kids[0] >>> kids[1]
///   First    first kids[0], with `in` = (A, C)
///   Second   second kids[0], with `in` = (C, A)
///   Fanout   kids[0] &&& kids[1]
///   Meas     meas at type `in`
///   TrL      trL at type `in` = (A, B)
///   Embed    a term of Super type, evaluated in the surrounding environment
/// Every node carries its elaborated input and output types.
struct ClassicExpr {
    CKind kind = CKind::Arr;
    Pattern pat;
    NodePtr body;
    std::vector<CExprPtr> kids;
    TypePtr in;
    TypePtr out;
};

namespace classic {
CExprPtr arr(Pattern p, NodePtr body, TypePtr in, TypePtr out);
CExprPtr arr_id(TypePtr t);
CExprPtr lift(Pattern p, NodePtr body, TypePtr in, TypePtr out);
CExprPtr compose(CExprPtr f, CExprPtr g);
CExprPtr first(CExprPtr f, TypePtr c);
CExprPtr second(CExprPtr f, TypePtr c);
CExprPtr fanout(CExprPtr f, CExprPtr g);
CExprPtr meas(TypePtr a);
CExprPtr trl(TypePtr a, TypePtr b);
CExprPtr embed(NodePtr term);
}  // namespace classic

/// One arrow-bound entry of the environment, in binding order.
struct DeltaEntry {
    Pattern pat;
    TypePtr ty;
};

/// Translates an elaborated command under delta. Delta is tupled
/// left-nested, ((p1, p2), p3), so that `let` extends it as (delta, p).
CExprPtr translate_command(const std::vector<DeltaEntry> &delta, const Command &p);

/// Translates an elaborated arrow abstraction \•p. Q as Q under [p].
CExprPtr translate_term(const Term &m);

/// An arrow abstraction with the same denotation as `e`. The result is not
/// elaborated.
Term inverse_translate(const CExprPtr &e);

/// Expands second and fanout into arr, >>> and first.
CExprPtr expand_derived(const CExprPtr &e);

/// Stable s-expression rendering.
std::string to_sexpr(const CExprPtr &e);

}  // namespace qarrow
