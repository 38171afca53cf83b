# Copyright 2026 The mkpwc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import mkpwc

FIVE = "1\n5 1 25\n12 12 9 8 8\n11 12 10 10 10\n30\n"


@pytest.fixture
def five():
    return mkpwc.parse_orlib(FIVE, name_prefix="p5")[0]


def test_parse_and_round_trip(five):
    assert (five.n, five.m) == (5, 1)
    assert five.profits == [12, 12, 9, 8, 8]
    assert five.consumption == [[11, 12, 10, 10, 10]]
    assert five.known_best == 25
    again = mkpwc.parse_orlib(mkpwc.to_orlib([five]), name_prefix="p5")[0]
    assert again == five


def test_parse_error_is_value_error():
    with pytest.raises(ValueError):
        mkpwc.parse_orlib("1\n5 1 0\n12 x\n")
    with pytest.raises(mkpwc.ParseError, match="token 6"):
        mkpwc.parse_orlib("1\n5 1 0\n12 x\n")


def test_lp_relaxation_and_hyperplane(five):
    relax = mkpwc.relax_lp(five)
    assert relax.status == "optimal"
    assert relax.objective == pytest.approx(30.3, abs=1e-9)
    assert relax.x == pytest.approx([1, 1, 0.7, 0, 0], abs=1e-9)
    assert relax.duals == pytest.approx([0.9], abs=1e-9)
    k3 = mkpwc.hyperplane_lp(five, 3)
    assert k3.objective == pytest.approx(25)
    assert mkpwc.hyperplane_lp(five, 6).status == "infeasible"


def test_bounds(five):
    z, x = mkpwc.greedy_lower_bound(five)
    assert z == 24 and x == [1, 1, 0, 0, 0]
    b = mkpwc.compute_bounds(five, z)
    assert b.status == "ok"
    assert b.k_max == pytest.approx(3, abs=1e-9)
    assert b.k_min == pytest.approx(19 / 9, abs=1e-9)


def test_decode(five):
    x, f = mkpwc.decode(five, [0, 0, 1, 1, 1])
    assert x == [0, 0, 1, 1, 1] and f == 25
    x, f = mkpwc.decode(five, [1] * 5, mkpwc.Algorithm.wcea, [0.9])
    assert x == [1, 1, 0, 0, 0] and f == 24


def test_solve_and_aggregate(five):
    runs = mkpwc.solve(five, runs=3, seed=7, pop_size=4, max_evals=5000)
    assert [r.seed for r in runs] == [7, 8, 9]
    assert all(r.best == 25 and r.best_x == [0, 0, 1, 1, 1] for r in runs)
    stats = mkpwc.aggregate(runs, five.known_best)
    assert stats["cmp"] == "equal"
    assert stats["std_gap"] == 0
    assert stats["mean_gap"] == pytest.approx(mkpwc.gap(25, 30.3))


def test_generated_instance_matches_brute_force():
    inst = mkpwc.generate_random(14, 3, 0.5, seed=4, profit_range=(1, 100), consumption_range=(1, 100))
    assert mkpwc.validate(inst) == []
    for c, row in zip(inst.capacities, inst.consumption):
        assert c / sum(row) == pytest.approx(0.5)
    opt = mkpwc.brute_force_opt(inst)
    assert opt.fitness <= mkpwc.relax_lp(inst).objective + 1e-9
    best = max(r.best for r in mkpwc.solve(inst, runs=2, pop_size=20, max_evals=5000, threads=2))
    assert best == opt.fitness
    assert math.isclose(mkpwc.gap(opt.fitness, opt.fitness), 0.0)


def test_validate_reports_violations():
    bad = mkpwc.MkpInstance([3, 4], [[5, 6]], [20])
    kinds = {kind for kind, _, _ in mkpwc.validate(bad)}
    assert kinds
