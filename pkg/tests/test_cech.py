from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from eqcdr.bm_kernel import beta_eq, chi_eq
from eqcdr.cech import CechTriple, angular_form, constant_pair, cup, d_eq_triple, leibniz_defect, thom_cocycle
from eqcdr.forms import EquivariantForm, d_eq, dz
from eqcdr.randomized import random_equivariant_form, random_triple
from eqcdr.scalar import RationalCoefficient as RC
from eqcdr.scalar import i_over_2pi

Z = EquivariantForm.zero


@pytest.mark.parametrize("l", [1, 2, 3])
def test_thom_cocycle_closed(l):
    assert d_eq_triple(thom_cocycle(l)).is_zero()


def test_thom_cocycle_rank_one_xi01():
    t = thom_cocycle(1)
    assert t.xi01 == EquivariantForm({(dz(1),): RC.over_sigma(RC.zb(1, 1), 1) * i_over_2pi()}, 1)
    assert t.is_relative() and t.degree == 2


def test_theorem_labelling_is_same_triple():
    l = 2
    a, b = thom_cocycle(l, "proof"), thom_cocycle(l, "theorem")
    assert a == b and b.representation == "theorem"
    assert b.xi1 == chi_eq(l) and b.xi01 == -angular_form(l)
    with pytest.raises(ValueError):
        thom_cocycle(l, "other")


def test_d_of_constants():
    l = 2
    t = CechTriple(Z(l), EquivariantForm.one(l), Z(l), 0)
    assert d_eq_triple(t) == CechTriple(Z(l), Z(l), EquivariantForm.one(l), 1)


def test_cup_with_constant_pair():
    l = 2
    t = thom_cocycle(l)
    eta = EquivariantForm.scalar(RC.X(1, 1, l) + RC.X(2, 2, l), l)
    out = cup(t, constant_pair(eta, 2))
    assert out == CechTriple(Z(l), t.xi1 * eta, t.xi01 * eta, 2 * l + 2)


def test_unit_triple_is_unit():
    rng = random.Random(3)
    t = random_triple(2, rng, 3)
    unit = constant_pair(EquivariantForm.one(2), 0)
    assert cup(unit, t) == t


@pytest.mark.parametrize("seed", range(10))
def test_d_squared_and_leibniz_random(seed):
    rng = random.Random(seed)
    l = rng.choice([1, 2])
    a = random_triple(l, rng, rng.randint(1, 3))
    b = random_triple(l, rng, rng.randint(0, 2))
    assert d_eq_triple(d_eq_triple(a)).is_zero()
    assert leibniz_defect(a, b).is_zero()


def test_validation():
    l = 2
    with pytest.raises(ValueError):  # xi1 must be regular
        CechTriple(Z(l), EquivariantForm.scalar(RC.over_sigma(RC.z(1, l), 1), l), Z(l), 0)
    with pytest.raises(ValueError):  # wrong degree on xi01
        CechTriple(Z(l), Z(l), EquivariantForm.one(l), 0)
    with pytest.raises(ValueError):
        CechTriple(Z(l), Z(3), Z(l), 0)
    with pytest.raises(ValueError):
        CechTriple(Z(l), Z(l), Z(l), 1) + CechTriple(Z(l), Z(l), Z(l), 2)


def test_non_homogeneous_rejected():
    l = 1
    mixed = EquivariantForm.one(l) + EquivariantForm({(dz(1),): RC.const(1, l)}, l)
    with pytest.raises(ValueError):
        CechTriple(mixed, Z(l), Z(l), 0)


def test_global_form_pair_closed_iff_form_closed():
    rng = random.Random(11)
    w = random_equivariant_form(2, rng, 2, regular=True)
    assert d_eq_triple(constant_pair(w, 2)).is_zero() == d_eq(w).is_zero()


@settings(max_examples=15)
@given(st.integers(0, 100_000), st.integers(1, 3), st.integers(0, 2))
def test_property_cech_complex(seed, da, db):
    rng = random.Random(seed)
    a = random_triple(1, rng, da)
    b = random_triple(1, rng, db, relative=rng.random() < 0.5)
    assert d_eq_triple(d_eq_triple(a)).is_zero()
    assert leibniz_defect(a, b).is_zero()
    # the cup product is associative
    c = random_triple(1, rng, 1)
    assert cup(cup(a, b), c) == cup(a, cup(b, c))
