import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from spflag.core.dynamics import (
    StateVector,
    casimir_value,
    cocycle_check,
    evolve,
    geodesic_block,
    geodesic_exp_residual,
    norm_drift,
    random_state,
    time_reversal_check,
    trajectory,
    transition_split,
)
from spflag.core.errors import DimensionMismatch, NotSkewAdjoint, NotUnitQuaternion, PartitionMismatch
from spflag.core.quaternion import E, I, Quaternion
from spflag.core.quatmat import QuatMatrix, block_diag, random_quatmatrix, random_skew

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=20, deadline=None)
@seed(31)
@given(seeds)
def test_norm_is_conserved(s):
    rng = np.random.default_rng(s)
    gen = random_skew(rng, 3)
    psi = random_state(rng, 3, 1)
    assert norm_drift(gen, psi, t_max=5.0, steps=20) < 1e-9 * max(1.0, psi.norm_sq())


def test_evolve_at_zero_time(rng):
    psi = random_state(rng, 3, 1)
    moved = evolve(random_skew(rng, 3), psi, 0.0)
    assert moved.components.allclose(psi.components, atol=1e-14)


def test_evolve_rejects_non_skew_generator(rng):
    with pytest.raises(NotSkewAdjoint):
        evolve(random_quatmatrix(rng, 3, 3), random_state(rng, 3, 1), 1.0)


def test_evolve_rejects_wrong_size(rng):
    with pytest.raises(DimensionMismatch):
        evolve(random_skew(rng, 2), random_state(rng, 3, 1), 1.0)


def test_block_diagonal_generator_keeps_partition(rng):
    gen = block_diag(random_skew(rng, 1), random_skew(rng, 2))
    psi = random_state(rng, 3, 1)
    moved = evolve(gen, psi, 2.5)
    assert moved.system_norm_sq() == pytest.approx(psi.system_norm_sq(), rel=1e-10)
    assert moved.surroundings_norm_sq() == pytest.approx(psi.surroundings_norm_sq(), rel=1e-10)


@pytest.mark.parametrize("t,t0", [(2.7, 1.3), (2.7, 0.0), (2.7, 2.7)])
def test_group_law(rng, t, t0):
    assert cocycle_check(random_skew(rng, 3), t, t0) < 1e-9


@pytest.mark.parametrize("t", [0.1, 1.0, 10.0])
def test_time_reversal(rng, t):
    assert time_reversal_check(random_skew(rng, 3), t) < 1e-11 * max(1.0, t)


def test_state_partition_bounds(rng):
    with pytest.raises(PartitionMismatch):
        StateVector(random_quatmatrix(rng, 3, 1), 4)
    with pytest.raises(DimensionMismatch):
        StateVector(random_quatmatrix(rng, 3, 2), 1)


def test_geodesic_block_matches_exponential():
    u = Quaternion(0.5, 0.5, -0.5, 0.5)
    for t in (0.0, 0.4, 3.0):
        assert geodesic_exp_residual(u, 0.7, t) < 1e-10


def test_geodesic_is_periodic():
    u = Quaternion.from_array(np.array([1.0, 2.0, 2.0, 4.0]) / 5.0)
    period = 2 * math.pi / 0.7
    assert geodesic_block(u, 0.7, period).allclose(QuatMatrix.identity(2), atol=1e-12)


def test_geodesic_quarter_turn():
    block = geodesic_block(I, 1.0, math.pi / 2)
    assert block.entry(0, 1).as_array() == pytest.approx(I.as_array(), abs=1e-15)
    assert block.entry(0, 0).as_array() == pytest.approx(np.zeros(4), abs=1e-15)


def test_geodesic_needs_unit_quaternion():
    with pytest.raises(NotUnitQuaternion):
        geodesic_block(E * 2.0, 1.0, 0.5)


def test_transition_split_reconstructs_action(rng):
    gen = random_skew(rng, 3)
    psi = random_state(rng, 3, 1)
    split = transition_split(gen, psi)
    assert split.reconstruct().allclose(gen @ psi.components, atol=1e-12)
    assert set(split.magnitudes()) == {"system_rotation", "surroundings_rotation", "exchange_in", "exchange_out"}


def test_block_diagonal_generator_has_no_exchange(rng):
    gen = block_diag(random_skew(rng, 1), random_skew(rng, 2))
    magnitudes = transition_split(gen, random_state(rng, 3, 1)).magnitudes()
    assert magnitudes["exchange_in"] == 0.0
    assert magnitudes["exchange_out"] == 0.0


def test_transition_split_needs_proper_partition(rng):
    with pytest.raises(PartitionMismatch):
        transition_split(random_skew(rng, 3), random_state(rng, 3, 0))


def test_casimir_blocks_match_trace(rng):
    blocks, trace = casimir_value(random_skew(rng, 3), 1)
    assert blocks == pytest.approx(trace, rel=1e-12)
    assert blocks > 0


def test_trajectory_rows(rng):
    gen = random_skew(rng, 3)
    psi = random_state(rng, 3, 1)
    times = np.linspace(0.0, 1.0, 5)
    serial = trajectory(gen, psi, times)
    parallel = trajectory(gen, psi, times, workers=2)
    assert [row["t"] for row in serial] == list(times)
    assert serial == parallel
    for row in serial:
        assert row["norm_sq"] == pytest.approx(psi.norm_sq(), rel=1e-10)
        assert row["system_norm_sq"] + row["surroundings_norm_sq"] == pytest.approx(row["norm_sq"], rel=1e-12)
