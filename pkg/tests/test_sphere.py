from __future__ import annotations

import math
import random
from fractions import Fraction

import numpy as np
import pytest

from eqcdr.bm_kernel import beta_eq
from eqcdr.cech import CechTriple, thom_cocycle
from eqcdr.forms import DtGeneratorError, EquivariantForm, dt, dz, dzb, exterior_derivative
from eqcdr.randomized import random_polynomial_form
from eqcdr.scalar import RationalCoefficient as RC
from eqcdr.scalar import Scalar, i_over_2pi
from eqcdr.sphere import (DegreeError, MCResult, ball_integrate_exact, integrate_triple,
                          projection_formula_check, sphere_integrate_exact, sphere_integrate_mc,
                          sphere_moment, sphere_volume)



@pytest.mark.parametrize("l", [1, 2, 3, 4])
def test_kernel_integrates_to_one(l):
    assert sphere_integrate_exact(beta_eq(l).set_x_zero()) == RC.const(1, l)


def test_rank_one_classical():
    w = EquivariantForm({(dz(1),): RC.over_sigma(RC.zb(1, 1), 1) * i_over_2pi()}, 1)
    assert sphere_integrate_exact(w) == RC.const(1, 1)


def test_sphere_moments():
    assert sphere_moment([1, 0]) == Scalar(1, 0, 2)  # int_{S^3} |z1|^2 = pi^2
    assert sphere_volume(2) == Scalar(2, 0, 2)
    assert sphere_volume(1) == Scalar(2, 0, 1)
    # sum_j |z_j|^2 = 1 on the sphere
    assert sum((sphere_moment([1 if i == j else 0 for i in range(3)]) for j in range(3)),
               Scalar(0)) == sphere_volume(3)


def test_sphere_moment_against_monte_carlo():
    rng = np.random.default_rng(0)
    g = rng.normal(size=(200_000, 4))
    p = g / np.linalg.norm(g, axis=1, keepdims=True)
    est = np.mean(p[:, 0] ** 2 + p[:, 1] ** 2) * sphere_volume(2).evaluate().real
    assert abs(est - sphere_moment([1, 0]).evaluate().real) < 0.05


@pytest.mark.parametrize("seed", range(6))
def test_exact_forms_integrate_to_zero(seed):
    rng = random.Random(seed)
    l = rng.choice([1, 2, 3])
    w = random_polynomial_form(l, rng, 2 * l - 2, terms=3)
    assert sphere_integrate_exact(exterior_derivative(w)).is_zero()


def test_degree_guard():
    beta = beta_eq(2)
    with pytest.raises(DegreeError):
        sphere_integrate_exact(beta)
    strata = beta.x_strata()
    with pytest.raises(DegreeError):
        sphere_integrate_exact(strata[1])
    # non-strict mode integrates the top piece only
    assert sphere_integrate_exact(beta, strict=False) == RC.const(1, 2)


def test_dt_rejected():
    with pytest.raises(DtGeneratorError):
        sphere_integrate_exact(EquivariantForm({(dt(1),): RC.const(1, 1)}, 1))


def test_ball_integral_of_volume_form():
    l = 2
    vol = EquivariantForm.basis([dz(1), dzb(1), dz(2), dzb(2)], l, RC.const(Scalar(Fraction(-1, 4)), l))
    # dz ^ dzb = -2i dx ^ dy, so this is the standard volume form; |ball| = pi^2/2
    assert ball_integrate_exact(vol) == RC.const(Scalar(Fraction(1, 2), 0, 2), l)


def test_stokes_ball_versus_sphere():
    """int_ball dw = int_S w = -(sphere_integrate_exact w) for regular w."""
    rng = random.Random(8)
    l = 2
    w = random_polynomial_form(l, rng, 3, terms=3, denominators=False)
    assert ball_integrate_exact(exterior_derivative(w)) == -sphere_integrate_exact(w)


def test_integrate_thom_cocycle():
    for l in (1, 2):
        assert integrate_triple(thom_cocycle(l)) == RC.const(1, l)
    with pytest.raises(ValueError):
        integrate_triple(CechTriple(EquivariantForm.one(1), EquivariantForm.one(1), EquivariantForm.zero(1), 0))


def test_projection_formula():
    assert projection_formula_check(thom_cocycle(1), 5).is_zero()
    assert projection_formula_check(thom_cocycle(2), i_over_2pi()).is_zero()
    l = 2
    t = CechTriple(EquivariantForm.zero(l), EquivariantForm.zero(l), EquivariantForm.zero(l), 4)
    assert projection_formula_check(t, Scalar(3, 1)).is_zero()


def test_mc_rank_one():
    res = sphere_integrate_mc(beta_eq(1), 100_000, seed=1)
    assert res.within(1.0, 3.0)


def test_mc_zero_form():
    res = sphere_integrate_mc(EquivariantForm.zero(2), 10, seed=0)
    assert res.value == 0 and res.stderr == 0


def test_mc_non_constant_density():
    """A form with a varying density: |z1|^2-weighted kernel, checked against the exact path."""
    l = 2
    w = beta_eq(l).set_x_zero() * (RC.z(1, l) * RC.zb(1, l) * 3)
    exact = complex(sphere_integrate_exact(w).as_scalar().evaluate())
    res = sphere_integrate_mc(w, 200_000, seed=3)
    assert res.stderr > 0
    assert res.within(exact, 4.0)


def test_mc_deterministic_and_rejects_zero_samples():
    a = sphere_integrate_mc(beta_eq(2).set_x_zero() * RC.z(1, 2) * RC.zb(1, 2), 20_000, seed=5)
    b = sphere_integrate_mc(beta_eq(2).set_x_zero() * RC.z(1, 2) * RC.zb(1, 2), 20_000, seed=5)
    assert a == b
    with pytest.raises(ValueError):
        sphere_integrate_mc(beta_eq(2).set_x_zero(), 0)


def test_mc_within_floor():
    assert MCResult(1.0 + 1e-14, 0.0, 10).within(1.0)
    assert not MCResult(1.1, 0.0, 10).within(1.0)
    assert MCResult(1.05, 0.02, 10).within(1.0, 3.0)
