"""Exact symbolic equivariant Chern-Weil and Cech-de Rham calculus on C^l.

The main entry points are re-exported here; see the submodules for details.
"""
from __future__ import annotations

__version__ = "0.1.0"

from .scalar import RationalCoefficient, Scalar  # noqa: E402
from .forms import EquivariantForm, d_eq, exterior_derivative, total_lie_derivative, wedge  # noqa: E402
from .connection import Connection, bianchi_defect, builtin_d0, builtin_d1, curvature  # noqa: E402
from .chern_weil import bott_difference, chern_form, total_chern_form  # noqa: E402
from .bm_kernel import beta_eq, bm_classical, chi_eq  # noqa: E402
from .cech import CechTriple, cup, d_eq_triple, thom_cocycle  # noqa: E402
from .sphere import sphere_integrate_exact, sphere_integrate_mc  # noqa: E402
from .chern_roots import rr_identity_defect, to_chern_basis  # noqa: E402

__all__ = [
    "RationalCoefficient", "Scalar", "EquivariantForm", "d_eq", "exterior_derivative",
    "total_lie_derivative", "wedge", "Connection", "bianchi_defect", "builtin_d0", "builtin_d1",
    "curvature", "bott_difference", "chern_form", "total_chern_form", "beta_eq", "bm_classical",
    "chi_eq", "CechTriple", "cup", "d_eq_triple", "thom_cocycle", "sphere_integrate_exact",
    "sphere_integrate_mc", "rr_identity_defect", "to_chern_basis",
]
