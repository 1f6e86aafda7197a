# Copyright 2026 The topogame Authors
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

import pytest

import topogame

SIERPINSKI = {"kind": "finite", "atoms": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}


def test_simulate_and_verify():
    t = topogame.simulate("real-line", "completeness", "random", rounds=10, seed=42)
    assert t["rounds"] == 10
    assert t["certificate"]["kind"] == "shrinking-closures"
    assert topogame.verify(t)
    t["certificate"]["steps"][3]["open"] = {"interval": ["-9", "9"]}
    assert not topogame.verify(t)


def test_compile_and_check():
    rep = topogame.compile_rep(SIERPINSKI, "minimal-open", depth=2, branching=2)
    report = topogame.check_rep(rep, max_directed=5)
    status = {r["axiom"]: r["status"] for r in report["axioms"]}
    for name in ("piD1", "piD2", "piD3", "piD4", "piD5w1"):
        assert status[name] == "pass"
    assert topogame.extract_chain(rep, ["q0"]) == ["q0"]
    prod = topogame.product([rep, rep], per_factor=3)
    assert prod["origin"] == "product"


def test_errors_carry_codes():
    with pytest.raises(topogame.TopogameError) as e:
        topogame.simulate("bogus", "completeness", "random")
    assert e.value.args[0] == "InvalidDescriptor"


def test_session():
    s = topogame.Session()
    g = s.create(space="real-line", engine="completeness")["game"]
    r = s.submit(g, {"open": {"interval": ["0", "1"]}})
    assert r["reply"]["open"] == {"interval": ["3/8", "5/8"]}
    assert s.submit(g, {"open": {"interval": ["0", "1"]}})["verdict"] == "NotNested"
    assert len(s.state(g)["moves"]) == 2


def test_cli():
    code, out, _ = topogame.run_cli(["simulate", "--space", "cantor", "--alpha", "cylinder-extend",
                                     "--beta", "random", "--rounds", "3"])
    assert code == 0 and '"cantor"' in out
    assert topogame.run_cli(["simulate", "--space", "bogus", "--alpha", "x", "--beta", "y"])[0] == 2
