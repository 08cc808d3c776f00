"""Closed-form U(l)-equivariant Bochner-Martinelli kernel.

    beta_eq(X) = sum_{k,I,J} gamma(k,I,J) sum_{I',J'} eps(I,I') X_{I',I}
                 * zb_k dzb_J ^ dz_J' / |z|^(2(|J|+1))

where {k}, I, J partition [l], I' and J' partition [l] with |I'| = |I|, and
``X_{I',I}`` is the minor with rows I' and columns I (see :func:`beta_eq`).
Multi-index forms are always taken in increasing index order.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, List, Tuple

from .forms import EquivariantForm, dz, dzb, form_sum
from .scalar import RationalCoefficient, Scalar, i_over_2pi


@dataclass(frozen=True)
class PartitionTerm:
    k: int
    I: Tuple[int, ...]
    J: Tuple[int, ...]
    Iprime: Tuple[int, ...]
    Jprime: Tuple[int, ...]


def _subsets(items, size=None):
    items = sorted(items)
    sizes = range(len(items) + 1) if size is None else [size]
    for r in sizes:
        yield from itertools.combinations(items, r)


def epsilon_kj(k: int, J) -> int:
    """Koszul sign of ``e_k ^ e_J`` against ``e_{k u J}``."""
    J = tuple(J)
    if k in J:
        raise ValueError(f"{k} already in {J}")
    return -1 if sum(1 for j in J if j < k) % 2 else 1


def epsilon_ii(I, Iprime) -> int:
    """``(-1)^(sum of all indices in I and I')``."""
    I, Iprime = tuple(I), tuple(Iprime)
    if len(I) != len(Iprime):
        raise ValueError("index sets must have equal size")
    return -1 if (sum(I) + sum(Iprime)) % 2 else 1


def gamma(k: int, I, J, l: int) -> Scalar:
    I, J = tuple(I), tuple(J)
    if sorted((k,) + I + J) != list(range(1, l + 1)):
        raise ValueError("{k}, I, J must partition 1..l")
    q = len(J)
    sign = (-1) ** (q * (q - 1) // 2) * epsilon_kj(k, J)
    return i_over_2pi() ** l * (sign * math.factorial(q))


def minor_x(I, Iprime, rank: int | None = None) -> RationalCoefficient:
    """Determinant of the X-submatrix with rows I and columns I'."""
    I, Iprime = tuple(I), tuple(Iprime)
    if len(I) != len(Iprime):
        raise ValueError("index sets must have equal size")
    if rank is None:
        rank = max(I + Iprime, default=1)
    total = RationalCoefficient.const(0, rank)
    for perm in itertools.permutations(range(len(I))):
        term = RationalCoefficient.const(_parity(perm), rank)
        for s, p in enumerate(perm):
            term = term * RationalCoefficient.X(I[s], Iprime[p], rank)
        total = total + term
    return total


def _parity(perm) -> int:
    inv = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
    return -1 if inv % 2 else 1


def partition_terms(l: int) -> Iterator[PartitionTerm]:
    """All index data of the kernel, lexicographic in (k, I)."""
    full = set(range(1, l + 1))
    for k in range(1, l + 1):
        rest = full - {k}
        for I in _subsets(rest):
            J = tuple(sorted(rest - set(I)))
            for Ip in _subsets(full, len(I)):
                Jp = tuple(sorted(full - set(Ip)))
                yield PartitionTerm(k, I, J, Ip, Jp)


def beta_eq(l: int, transpose_minors: bool = True) -> EquivariantForm:
    """The kernel for the action ``z -> exp(-sX) z`` used throughout the package.

    With that action the closed, equivariant kernel pairs the dzb_J/dz_J'
    factors with the minor ``X_{I',I}`` (rows I', columns I).  Passing
    ``transpose_minors=False`` gives the variant with ``X_{I,I'}``, which is
    what one gets after relabelling ``X -> X^T``; it is kept for comparison
    with tables written in that labelling.
    """
    if l < 1:
        raise ValueError("rank must be >= 1")
    parts: List[EquivariantForm] = []
    for pt in partition_terms(l):
        rows, cols = (pt.Iprime, pt.I) if transpose_minors else (pt.I, pt.Iprime)
        coef = RationalCoefficient.zb(pt.k, l) * minor_x(rows, cols, l)
        coef = coef * (gamma(pt.k, pt.I, pt.J, l) * epsilon_ii(pt.I, pt.Iprime))
        coef = RationalCoefficient.over_sigma(coef, len(pt.J) + 1)
        gens = [dzb(j) for j in pt.J] + [dz(j) for j in pt.Jprime]
        parts.append(EquivariantForm.basis(gens, l, coef))
    return form_sum(parts, l)


def chi_eq(l: int) -> EquivariantForm:
    """Euler piece ``(i/2pi)^l det X``."""
    if l < 1:
        raise ValueError("rank must be >= 1")
    full = tuple(range(1, l + 1))
    return EquivariantForm.scalar(minor_x(full, full, l) * i_over_2pi() ** l, l)


def bm_constant(l: int) -> Scalar:
    """``C_l = (-1)^(l(l-1)/2) (l-1)! / (2 pi i)^l``."""
    two_pi_i = Scalar(0, 2, 1)
    return two_pi_i ** (-l) * ((-1) ** (l * (l - 1) // 2) * math.factorial(l - 1))


def bm_classical(l: int) -> EquivariantForm:
    """``-C_l sum_j conj(Phi_j) ^ Phi / |z|^(2l)``, the X = 0 part of beta_eq.

    ``Phi = dz_1^...^dz_l`` and ``Phi_j = (-1)^(j-1) z_j dz_1^..(no j)..^dz_l``.
    """
    if l < 1:
        raise ValueError("rank must be >= 1")
    c = -bm_constant(l)
    phi = [dz(i) for i in range(1, l + 1)]
    parts = []
    for j in range(1, l + 1):
        coef = RationalCoefficient.over_sigma(RationalCoefficient.zb(j, l) * (c * (-1) ** (j - 1)), l)
        gens = [dzb(i) for i in range(1, l + 1) if i != j] + phi
        parts.append(EquivariantForm.basis(gens, l, coef))
    return form_sum(parts, l)
