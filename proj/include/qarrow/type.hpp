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

#include <cstddef>
#include <memory>
#include <string>

namespace qarrow {

struct Type;
using TypePtr = std::shared_ptr<const Type>;

enum class TypeKind { Bool, Prod, Fun, Vec, Dens, Super, Var };

/// Types of the calculus. `Lin A B` is not a separate kind: it is stored as
/// `A -> Vec B`, which makes the two spellings interchangeable everywhere.
struct Type {
    TypeKind kind;
    TypePtr a;
    TypePtr b;
    int var = -1;

    static TypePtr boolean();
    static TypePtr prod(TypePtr a, TypePtr b);
    static TypePtr fun(TypePtr a, TypePtr b);
    static TypePtr vec(TypePtr a);
    static TypePtr dens(TypePtr a);
    static TypePtr super(TypePtr a, TypePtr b);
    static TypePtr lin(TypePtr a, TypePtr b);
    static TypePtr variable(int id);
};

bool type_equal(const TypePtr &x, const TypePtr &y);

/// Bool, or a product of classical types.
bool is_classical(const TypePtr &t);

/// No unresolved type variables.
bool is_ground(const TypePtr &t);

/// Number of Bool leaves of a classical type.
int bit_count(const TypePtr &t);

/// Size of the enumerated basis of a classical type (2^bits).
std::size_t dimension(const TypePtr &t);

std::string to_string(const TypePtr &t);

/// Renumbers type variables 0, 1, ... in order of appearance.
TypePtr canonical(const TypePtr &t);
bool same_type_up_to_renaming(const TypePtr &x, const TypePtr &y);

}  // namespace qarrow
