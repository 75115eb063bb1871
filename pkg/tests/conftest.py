"""Shared fixtures.

The two Monte Carlo runs below are reused by several modules, so they
are session scoped; everything downstream of them is deterministic in
the (seed, index) stream.
"""

import pytest

from randsurf.gluing import Gluing
from randsurf.montecarlo import ExperimentPlan, Tallies, run_plan
from randsurf.words import canonicalize


@pytest.fixture(scope="session")
def lr():
    return canonicalize("LR")


@pytest.fixture(scope="session")
def llr():
    return canonicalize("LLR")


@pytest.fixture(scope="session")
def torus_gluing() -> Gluing:
    return Gluing.from_pairs(1, [(1, 4), (2, 5), (3, 6)])


@pytest.fixture(scope="session")
def sphere_gluing() -> Gluing:
    return Gluing.from_pairs(1, [(1, 2), (3, 4), (5, 6)])


@pytest.fixture(scope="session")
def mc_n1(lr) -> tuple[ExperimentPlan, Tallies]:
    """200k samples at N=1 for the single class [LR]."""
    plan = ExperimentPlan(
        half_count=1,
        classes=(lr,),
        samples=200_000,
        seed=2024,
        workers=1,
        with_topology=False,
    )
    return plan, run_plan(plan)


@pytest.fixture(scope="session")
def mc_n2(lr, llr) -> tuple[ExperimentPlan, Tallies]:
    """100k samples at N=2 for the pair ([LR], [LLR])."""
    plan = ExperimentPlan(
        half_count=2,
        classes=(lr, llr),
        samples=100_000,
        seed=2024,
        workers=1,
        with_topology=False,
    )
    return plan, run_plan(plan)
