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

"""Banach-Mazur and strong Choquet games, certificates and domain representations."""

import json

from . import _topogame
from ._topogame import TopogameError

__all__ = [
    "TopogameError",
    "Session",
    "simulate",
    "verify",
    "compile_rep",
    "check_rep",
    "extract_chain",
    "product",
    "run_cli",
]


def _text(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _space(space):
    # Space kinds and file paths pass through; descriptors become inline JSON.
    return space if isinstance(space, str) else json.dumps(space)


def simulate(space, alpha, beta, rounds=10, seed=0, mode="bm"):
    return json.loads(_topogame.simulate(_space(space), alpha, beta, rounds, seed, mode))


def verify(transcript):
    return _topogame.verify(_text(transcript))


def compile_rep(space, strategy, mode="bm", depth=2, branching=3, cap=4096):
    return json.loads(_topogame.compile_rep(_space(space), strategy, mode, depth, branching, cap))


def check_rep(rep, system="pi", max_directed=4, base=64, points=3):
    return json.loads(_topogame.check_rep(_text(rep), system, max_directed, base, points))


def extract_chain(rep, directed):
    return _topogame.extract_chain(_text(rep), list(directed))


def product(reps, per_factor=8):
    return json.loads(_topogame.product([_text(r) for r in reps], per_factor))


def run_cli(args):
    """Returns (exit code, stdout, stderr)."""
    return _topogame.run_cli(list(args))


class Session:
    def __init__(self):
        self._m = _topogame.SessionManager()

    def create(self, **body):
        return json.loads(self._m.create(json.dumps(body)))

    def submit(self, game, move):
        return json.loads(self._m.submit(game, json.dumps({"move": move})))

    def state(self, game):
        return json.loads(self._m.state(game))

    def rep(self, game):
        return json.loads(self._m.rep(game))
