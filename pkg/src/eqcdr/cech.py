"""Equivariant Cech-de Rham cochains on the two-set cover of C^l.

W0 = C^l minus the origin, W1 = C^l, W01 = W0.  A cochain of degree r is a
triple (xi0, xi1, xi01) with deg xi0 = deg xi1 = r and deg xi01 = r - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bm_kernel import beta_eq, chi_eq
from .forms import EquivariantForm, d_eq

REPRESENTATIONS = ("proof", "theorem")


def _homogeneous_degree(w: EquivariantForm) -> Optional[int]:
    degs = w.total_degrees()
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError(f"form is not homogeneous: total degrees {sorted(degs)}")
    return next(iter(degs))


@dataclass(frozen=True)
class CechTriple:
    xi0: EquivariantForm
    xi1: EquivariantForm
    xi01: EquivariantForm
    degree: int
    representation: str = "proof"

    def __post_init__(self):
        ranks = {self.xi0.rank, self.xi1.rank, self.xi01.rank}
        if len(ranks) != 1:
            raise ValueError("components have different ranks")
        if self.representation not in REPRESENTATIONS:
            raise ValueError(f"unknown representation {self.representation!r}")
        if self.xi1.max_denom_exp():
            raise ValueError("xi1 must be regular at the origin (no |z|^2 denominators)")
        for name, w, expect in (("xi0", self.xi0, self.degree), ("xi1", self.xi1, self.degree),
                                ("xi01", self.xi01, self.degree - 1)):
            deg = _homogeneous_degree(w)
            if deg is not None and deg != expect:
                raise ValueError(f"{name} has total degree {deg}, expected {expect}")

    @property
    def rank(self) -> int:
        return self.xi0.rank

    def is_relative(self) -> bool:
        return self.xi0.is_zero()

    def is_zero(self) -> bool:
        return self.xi0.is_zero() and self.xi1.is_zero() and self.xi01.is_zero()

    def __add__(self, other: "CechTriple") -> "CechTriple":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return CechTriple(self.xi0 + other.xi0, self.xi1 + other.xi1, self.xi01 + other.xi01,
                          self.degree, self.representation)

    def __neg__(self):
        return CechTriple(-self.xi0, -self.xi1, -self.xi01, self.degree, self.representation)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, CechTriple):
            return NotImplemented
        return (self.xi0 == other.xi0 and self.xi1 == other.xi1 and self.xi01 == other.xi01
                and self.degree == other.degree)

    def __hash__(self):
        return hash((self.xi0, self.xi1, self.xi01, self.degree))


def constant_pair(eta: EquivariantForm, degree: int) -> CechTriple:
    """The image ``(eta, eta, 0)`` of a global form."""
    return CechTriple(eta, eta, EquivariantForm.zero(eta.rank), degree)


def d_eq_triple(t: CechTriple) -> CechTriple:
    """``(d_eq xi0, d_eq xi1, xi1 - xi0 - d_eq xi01)``."""
    return CechTriple(d_eq(t.xi0), d_eq(t.xi1), t.xi1 - t.xi0 - d_eq(t.xi01),
                      t.degree + 1, t.representation)


def cup(a: CechTriple, b: CechTriple) -> CechTriple:
    """``(xi0 eta0, xi1 eta1, (-1)^r xi0 eta01 + xi01 eta1)`` with r = deg a."""
    r = a.degree
    mixed = a.xi0 * b.xi01
    if r % 2:
        mixed = -mixed
    return CechTriple(a.xi0 * b.xi0, a.xi1 * b.xi1, mixed + a.xi01 * b.xi1,
                      a.degree + b.degree, a.representation)


def leibniz_defect(a: CechTriple, b: CechTriple) -> CechTriple:
    """``D(a cup b) - (Da cup b + (-1)^r a cup Db)``."""
    rhs2 = cup(a, d_eq_triple(b))
    if a.degree % 2:
        rhs2 = -rhs2
    return d_eq_triple(cup(a, b)) - (cup(d_eq_triple(a), b) + rhs2)


def thom_cocycle(l: int, representation: str = "proof") -> CechTriple:
    """The relative cocycle ``(0, chi_eq, beta_eq)``.

    ``"proof"`` labels it as ``(0, c^l(D1), c^l(D0, D1))``; ``"theorem"`` labels
    the same triple as ``(0, pi^* eps_eq, -psi_eq)`` with ``eps_eq = chi_eq``
    and ``psi_eq = -beta_eq``.
    """
    if representation not in REPRESENTATIONS:
        raise ValueError(f"unknown representation {representation!r}")
    return CechTriple(EquivariantForm.zero(l), chi_eq(l), beta_eq(l), 2 * l, representation)


def angular_form(l: int) -> EquivariantForm:
    """``psi_eq = -beta_eq``, the global angular form of the theorem labelling."""
    return -beta_eq(l)
