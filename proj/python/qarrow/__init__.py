# Copyright 2026 The qarrow Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Quantum arrow calculus bindings."""

import json

from ._core import QarrowError, check, emit_classic, prelude_source, run
from ._core import normalize_json as _normalize_json
from ._core import prove_json as _prove_json

__all__ = ["QarrowError", "check", "run", "normalize", "prove", "emit_classic", "prelude_source"]


def normalize(source, term, fuel=10000, prelude=True):
    """Normalizes a definition or term; returns the trace as a dict."""
    return json.loads(_normalize_json(source, term, fuel, prelude))


def prove(source, lhs, rhs, fuel=10000, tol=1e-9, prelude=True):
    """Tries to prove lhs equal to rhs; returns the verdict as a dict."""
    return json.loads(_prove_json(source, lhs, rhs, fuel, tol, prelude))
