import math

import pytest

from gearmap.analysis import lambda_from_prevertices
from gearmap.geometry import symmetrize_prevertices
from gearmap.mapping import SolverConfig, solve_goodman, solve_schwarzian_ivp
from gearmap.schwarzian import (PreverticesPair, SymmetricParams,
                                build_symmetric)

# One representative prevertex pair reused by the slower pipeline tests.
PAIR = PreverticesPair(0.5, 1.0)


@pytest.fixture(scope="session")
def default_cfg():
    return SolverConfig()


@pytest.fixture(scope="session")
def fast_cfg():
    return SolverConfig(rays=32)


@pytest.fixture(scope="session")
def goodman_solution(default_cfg):
    return solve_goodman(PAIR, default_cfg)


@pytest.fixture(scope="session")
def symmetric_midrange_solution(default_cfg):
    # the symmetric problem equivalent to PAIR: same gear, symmetric prevertices
    q, t = symmetrize_prevertices(PAIR.t1, PAIR.t2)
    lam = lambda_from_prevertices(PAIR)
    sol = solve_schwarzian_ivp(build_symmetric(SymmetricParams(t, lam)),
                               default_cfg)
    return sol, q, t, lam


@pytest.fixture(scope="session")
def pregear_pi3_solution(default_cfg):
    # lambda = 0 sits strictly inside the interval at t = pi/3
    sol = solve_schwarzian_ivp(
        build_symmetric(SymmetricParams(math.pi / 3.0, 0.0)), default_cfg)
    return sol
