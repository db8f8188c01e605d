import random

import pytest

from shankel.indices import Shape
from shankel.verify import CHECKS, random_binomials, run_check, verify_all


@pytest.mark.parametrize("sh", [Shape((2, 2, 2), 3, 3), Shape((2, 2, 2), 2, 2),
                                Shape((3, 3, 3), 3, 3), Shape((2, 2, 3), 2, 2)], ids=str)
def test_verify_all_passes(sh):
    rep = verify_all(sh, samples=200)
    assert rep["passed"], rep["failed"]
    assert [r["check"] for r in rep["results"]] == CHECKS


def test_skips_are_reported():
    rep = run_check("radcolon", Shape((2, 2, 2), 2, 2))
    assert rep["passed"] is None and "skipped" in rep
    rep = run_check("iso", Shape((2, 2, 2), 1, 1))
    assert rep["passed"] is None


def test_budget_is_reported_not_failed():
    rep = run_check("colon", Shape((3, 3, 2), 3, 3), budget=2)
    assert rep["passed"] is None and "budget_exceeded" in rep


def test_random_binomials_are_seeded():
    sh = Shape((2, 2, 3), 2, 2)
    a = random_binomials(sh, 50, random.Random(3))
    b = random_binomials(sh, 50, random.Random(3))
    assert a == b and all(len(p) <= 2 for p in a)


def test_unknown_check():
    with pytest.raises(ValueError):
        run_check("nope", Shape((2, 2), 2, 2))
