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

import os
import pathlib

import pytest

import qarrow

PROGRAMS = pathlib.Path(os.environ.get("QARROW_PROGRAMS_DIR", pathlib.Path(__file__).parents[2] / "programs"))


def read(name):
    return (PROGRAMS / name).read_text()


def test_check_lists_types():
    types = qarrow.check(read("doublenot.qarr"))
    assert types["doubleNot"] == "Super Bool Bool"
    assert types["idSuper"] == "Super Bool Bool"


def test_check_rejects_delta_misuse():
    with pytest.raises(qarrow.QarrowError) as info:
        qarrow.check(read("bad.qarr"))
    assert info.value.kind == "delta-misuse"


def test_run_hadamard_on_zero():
    rho = qarrow.run("", "Had", "|0>")
    for row in rho:
        for x in row:
            assert abs(x - 0.5) < 1e-12


def test_run_accepts_rows():
    rho = qarrow.run("", "QNot", [[1, 0], [0, 0]])
    assert abs(rho[1][1] - 1) < 1e-12 and abs(rho[0][0]) < 1e-12


def test_teleport_returns_input():
    a, b = 0.6, 0.8j
    psi = [[a * a, a * b.conjugate()], [b * a, abs(b) ** 2]]
    full = [[0j] * 8 for _ in range(8)]
    # psi on the first qubit, the other two in |00>
    for r in range(2):
        for c in range(2):
            full[4 * r][4 * c] = psi[r][c]
    out = qarrow.run("", "teleport", full)
    for r in range(2):
        for c in range(2):
            assert abs(out[r][c] - psi[r][c]) < 1e-9


def test_prove_double_not():
    verdict = qarrow.prove(read("doublenot.qarr"), "doubleNot", "idSuper")
    assert verdict["verdict"] == "ProvedByNormalization"
    labels = [s["display"] for s in verdict["lhs"]["steps"]]
    assert labels == ["β⤳", "left", "β⤳", "def. not"]


def test_prove_not_equal_has_witness():
    verdict = qarrow.prove("", "QNot", "\\@x. [x]")
    assert verdict["verdict"] == "NotEqual"
    assert verdict["witness_ket"] == "|0>"


def test_normalize_and_emit():
    trace = qarrow.normalize("", "\\@x. let y = [not x] in [y]")
    assert trace["end"] == "λ•x. [not x]"
    assert not trace["fuel_exhausted"]
    assert qarrow.emit_classic("", "QNot").startswith("(")


def test_prelude_is_exposed():
    assert "teleport" in qarrow.prelude_source()
    assert len(qarrow.check(qarrow.prelude_source(), prelude=False)) > 10
