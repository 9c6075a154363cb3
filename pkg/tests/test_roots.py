import numpy as np
import pytest

from spflag.core.errors import DomainError, InvalidRank, OddDimension, UnsupportedWeightCount
from spflag.core.roots import (
    BAR,
    Weight,
    embed_check,
    euler_characteristic,
    generate,
    is_root,
    parse_label,
    particle_label,
    projection,
    root_table,
    weight_multiset,
)


@pytest.mark.parametrize("n", range(1, 7))
def test_root_count(n):
    system = generate(n)
    assert len(system) == 2 * n * n
    assert len(set(system.roots)) == len(system)
    assert len(system.positive()) == n * n


@pytest.mark.parametrize("n", range(1, 5))
def test_roots_closed_under_negation(n):
    system = generate(n)
    assert all(tuple(-v for v in r) in system for r in system.roots)


def test_rank_one_roots():
    assert generate(1).roots == ((2,), (-2,))


def test_invalid_rank():
    with pytest.raises(InvalidRank):
        generate(0)
    with pytest.raises(InvalidRank):
        embed_check(3, 3)


@pytest.mark.parametrize("m,n", [(1, 2), (2, 4), (3, 5)])
def test_embedding(m, n):
    assert embed_check(m, n)


def test_is_root():
    assert is_root((1, -1, 0))
    assert is_root((0, 0, -2))
    assert not is_root((1, 1, 1))
    assert not is_root((2, 0), n=3)


def test_projection_shape():
    coords = projection(generate(3).roots, 3)
    assert coords.shape == (18, 3)
    np.testing.assert_array_equal(projection([(1,)], 2), [[1.0, 0.0]])
    with pytest.raises(DomainError):
        projection(generate(2).roots, 4)


def test_root_table_columns():
    rows = root_table(generate(2), 2)
    assert rows[0] == {"index": 0, "root": [2, 0], "p1": 2.0, "p2": 0.0}


def test_lepton_label():
    label = particle_label([Weight((2, 0))])
    assert (label.text, label.kind) == ("2u", "lepton")


def test_meson_labels():
    assert particle_label([Weight((1, 1))]).text == "ud"
    anti = particle_label([Weight((-1, 1))])
    assert anti.text == "u" + BAR + "d"
    assert anti.kind == "meson"


def test_baryon_label():
    weights = [Weight((1, 0), "i"), Weight((1, 0), "j"), Weight((0, 1), "k")]
    label = particle_label(weights)
    assert label.text == "uud[i,j,k]"
    assert label.kind == "baryon"
    assert len(set(label.colors)) == 3


def test_unsupported_weight_sets():
    with pytest.raises(UnsupportedWeightCount):
        particle_label([])
    with pytest.raises(UnsupportedWeightCount):
        particle_label([Weight((1, 1)), Weight((1, 1))])


def test_color_on_composite_weight():
    with pytest.raises(DomainError):
        particle_label([Weight((1, 1), "i")])
    with pytest.raises(DomainError):
        Weight((1,), "x")


@pytest.mark.parametrize("weights", [
    [Weight((2, 0))],
    [Weight((1, -1))],
    [Weight((1, 0), "i"), Weight((1, 0), "j"), Weight((0, 1), "k")],
])
def test_label_round_trip(weights):
    label = particle_label(weights)
    assert weight_multiset(parse_label(label.text, 2)) == weight_multiset(weights)


def test_parse_label_errors():
    with pytest.raises(DomainError):
        parse_label("xyz", 2)
    with pytest.raises(DomainError):
        parse_label("us", 2)
    with pytest.raises(DomainError):
        parse_label("ud[i]", 2)


def test_flavors_beyond_four():
    label = particle_label([Weight((0, 0, 0, 0, 1, 1))])
    assert label.text == "q5q6"
    assert parse_label("q5q6", 6) == [Weight((0, 0, 0, 0, 1, 1))]


@pytest.mark.parametrize("d", [2, 4, 12])
def test_euler_characteristic(d):
    assert euler_characteristic(d) == 2


@pytest.mark.parametrize("d", [0, 3])
def test_euler_characteristic_needs_even_sphere(d):
    with pytest.raises(OddDimension):
        euler_characteristic(d)
