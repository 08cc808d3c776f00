"""Fibre integration over the unit sphere S^(2l-1) in C^l.

All integrals here are taken over T01 = -S^(2l-1), the common boundary of
the honeycomb {|z| >= 1, |z| <= 1} with the opposite of the outward boundary
orientation.  That is the orientation in which the kernel integrates to +1.

Exact path: for a (2l-1)-form w, write ``d|z|^2 ^ w = g dVol``.  On the unit
sphere ``d|z|^2 = 2 dr``, so the sphere density is ``g / 2``, and monomials
are integrated with the complex sphere moments

    int_S |z_1|^(2 a_1) ... |z_l|^(2 a_l) = 2 pi^l a_1! ... a_l! / (l - 1 + |a|)!

while mixed monomials integrate to zero.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np

from .forms import DtGeneratorError, EquivariantForm, dz, dzb
from .scalar import Z, ZB, RationalCoefficient, Scalar, poly_iadd, var_index, var_kind

log = logging.getLogger(__name__)

MC_CHUNK = 100_000


class DegreeError(ValueError):
    """The form has no component the integrator can use."""


def sphere_moment(alpha: Sequence[int]) -> Scalar:
    """``int_{S^(2l-1)} prod |z_j|^(2 alpha_j)`` with the round measure."""
    l = len(alpha)
    num = 2
    for a in alpha:
        num *= math.factorial(a)
    return Scalar(Fraction(num, math.factorial(l - 1 + sum(alpha))), 0, l)


def sphere_volume(l: int) -> Scalar:
    return sphere_moment([0] * l)


def _volume_constant(l: int) -> Scalar:
    """``dz_1^..^dz_l^dzb_1^..^dzb_l = c dx_1^dy_1^...^dx_l^dy_l``."""
    sign = (-1) ** (l * (l - 1) // 2)
    return Scalar(0, -2) ** l * sign


def _top_gens(l: int) -> Tuple[int, ...]:
    return tuple(dz(i) for i in range(1, l + 1)) + tuple(dzb(i) for i in range(1, l + 1))


def _integrate_density(num, l: int, moment) -> RationalCoefficient:
    """Integrate a polynomial density (in z, zb, X) monomial by monomial."""
    out: Dict = {}
    for (mono, k), c in num.items():
        zexp = [0] * (l + 1)
        zbexp = [0] * (l + 1)
        rest = []
        for v, e in mono:
            kind = var_kind(v)
            if kind == Z:
                zexp[var_index(v)] = e
            elif kind == ZB:
                zbexp[var_index(v)] = e
            else:
                rest.append((v, e))
        if zexp != zbexp:
            continue
        m = moment(zexp[1:])
        term = {(tuple(rest), k + kk): cc for kk, cc in m.terms.items()}
        scaled = {}
        for key, (a, b) in term.items():
            scaled[key] = (a * c[0] - b * c[1], a * c[1] + b * c[0])
        poly_iadd(out, scaled)
    return RationalCoefficient(out, 0, l)


def _check_no_dt(w: EquivariantForm):
    if w.has_dt():
        raise DtGeneratorError("sphere integration needs a form on C^l (no dt)")


def _select_top(w: EquivariantForm, degree: int, strict: bool) -> EquivariantForm:
    present = w.form_degrees()
    if strict and present - {degree}:
        raise DegreeError(f"expected form degree {degree}, found {sorted(present)}")
    return w.piece(degree)


def sphere_integrate_exact(w: EquivariantForm, strict: bool = True) -> RationalCoefficient:
    """Exact ``(pi_01)_* w = -int_{S^(2l-1)} w``, polynomial in X.

    With ``strict`` the form must be of pure form degree 2l - 1; otherwise only
    that piece is integrated (lower pieces contribute zero by degree).
    """
    _check_no_dt(w)
    l = w.rank
    top = _select_top(w, 2 * l - 1, strict)
    if top.is_zero():
        return RationalCoefficient.const(0, l)
    dsigma = EquivariantForm.zero(l)
    for i in range(1, l + 1):
        dsigma = dsigma + EquivariantForm({(dz(i),): RationalCoefficient.zb(i, l),
                                           (dzb(i),): RationalCoefficient.z(i, l)}, l)
    full = dsigma * top
    c = full.terms.get(_top_gens(l))
    if c is None:
        return RationalCoefficient.const(0, l)
    # on |z| = 1 the |z|^-2m denominator is 1
    density = RationalCoefficient(c.numerator, 0, l) * (_volume_constant(l) * Fraction(1, 2))
    # T01 carries the opposite of the outward orientation
    return -_integrate_density(density.numerator, l, sphere_moment)


def ball_integrate_exact(w: EquivariantForm, strict: bool = True) -> RationalCoefficient:
    """``int_{|z| <= 1} w`` for a form regular at the origin (standard orientation)."""
    _check_no_dt(w)
    l = w.rank
    if w.max_denom_exp():
        raise ValueError("ball integration needs a form regular at the origin")
    top = _select_top(w, 2 * l, strict)
    c = top.terms.get(_top_gens(l))
    if c is None:
        return RationalCoefficient.const(0, l)
    density = c * _volume_constant(l)

    def moment(alpha):
        return sphere_moment(alpha) * Fraction(1, 2 * l + 2 * sum(alpha))

    return _integrate_density(density.numerator, l, moment)


def integrate_triple(t) -> RationalCoefficient:
    """``pi_*`` of a relative Cech cochain over the honeycomb {T0, T1}."""
    if not t.is_relative():
        raise ValueError("only relative cochains (xi0 = 0) can be integrated over the fibre")
    return (ball_integrate_exact(t.xi1, strict=False)
            + sphere_integrate_exact(t.xi01, strict=False))


def projection_formula_check(alpha, beta_const) -> RationalCoefficient:
    """``pi_*(alpha cup pi^* beta) - pi_*(alpha) beta`` for a constant beta."""
    from .cech import constant_pair, cup
    l = alpha.rank
    beta = EquivariantForm.scalar(beta_const, l)
    lhs = integrate_triple(cup(alpha, constant_pair(beta, 0)))
    return lhs - integrate_triple(alpha) * lhs.coerce(beta_const)


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


@dataclass
class MCResult:
    value: complex
    stderr: float
    samples: int

    def within(self, target: complex, sigmas: float = 3.0, atol: float = 1e-12) -> bool:
        """``|value - target| <= sigmas * stderr``, with ``atol`` as a floor.

        The floor matters for zero-variance integrands (the kernel restricted
        to the sphere is a constant density, so its stderr is exactly 0).
        """
        return abs(self.value - target) <= max(sigmas * self.stderr, atol)


def _sphere_points(rng: np.random.Generator, n: int, l: int) -> np.ndarray:
    g = rng.standard_normal((n, 2 * l))
    return g / np.linalg.norm(g, axis=1, keepdims=True)


def _tangent_frames(p: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """Orthonormal bases (normal, t_1..t_(2l-1)) with positive orientation."""
    n, m = p.shape
    A = rng.standard_normal((n, m, m))
    A[:, :, 0] = p
    Q, R = np.linalg.qr(A)
    signs = np.sign(np.einsum("nii->ni", R))
    signs[signs == 0] = 1
    Q = Q * signs[:, None, :]
    flip = np.linalg.det(Q) < 0
    Q[flip, :, -1] *= -1
    return Q[:, :, 1:]


def _real_to_complex(v: np.ndarray) -> np.ndarray:
    """(x1, y1, x2, y2, ...) -> (x1 + i y1, ...) along axis 1."""
    return v[:, 0::2, ...] + 1j * v[:, 1::2, ...]


def _evaluate_top(top: EquivariantForm, z: np.ndarray, tangents: np.ndarray, X) -> np.ndarray:
    """Density of ``top`` on the frame: one complex value per point."""
    n = z.shape[0]
    k = tangents.shape[2]
    w = _real_to_complex(tangents)  # (n, l, k)
    out = np.zeros(n, dtype=complex)
    for gens, c in top.terms.items():
        rows = []
        for g in gens:
            if g > 1000:
                rows.append(np.conj(w[:, g - 1001, :]))
            else:
                rows.append(w[:, g - 1, :])
        mat = np.stack(rows, axis=1) if k else np.ones((n, 0, 0))
        det = np.linalg.det(mat) if k else np.ones(n)
        out += c.evaluate_array(z, X=X) * det
    return out


def sphere_integrate_mc(w: EquivariantForm, samples: int, seed: int = 0, X=None,
                        strict: bool = True) -> MCResult:
    """Monte Carlo estimate of ``-int_{S^(2l-1)} w`` with its standard error.

    Chunk ``c`` draws from ``Philox(key=seed)`` jumped ``c`` times, so the
    estimate only depends on (seed, samples).
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    _check_no_dt(w)
    l = w.rank
    top = _select_top(w, 2 * l - 1, strict)
    if X is None:
        X = np.zeros((l, l), dtype=complex)
    if top.is_zero():
        return MCResult(0j, 0.0, samples)
    vol = sphere_volume(l).evaluate()
    total = 0j
    total_sq = 0.0
    done = 0
    chunk = 0
    while done < samples:
        n = min(MC_CHUNK, samples - done)
        rng = np.random.Generator(np.random.Philox(key=seed).jumped(chunk))
        p = _sphere_points(rng, n, l)
        frames = _tangent_frames(p, rng)
        z = _real_to_complex(p)
        vals = -vol * _evaluate_top(top, z, frames, X)
        total += vals.sum()
        total_sq += float(np.sum(np.abs(vals) ** 2))
        done += n
        chunk += 1
    mean = total / samples
    var = max(total_sq / samples - abs(mean) ** 2, 0.0)
    stderr = math.sqrt(var / samples) if samples > 1 else float("inf")
    log.debug("mc l=%d samples=%d value=%s stderr=%g", l, samples, mean, stderr)
    return MCResult(complex(mean), stderr, samples)
