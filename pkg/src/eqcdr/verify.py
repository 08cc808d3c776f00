"""Verification suites behind ``eqcdr verify``.

Each check is a small pure function returning ``(passed, residual_text)``.
Symbolic checks pass only on an exactly zero residual; numeric ones use the
tolerance passed in.  Reports are deterministic for fixed (version, seed)
apart from the ``wallTimeMs`` fields.
"""
from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Sequence, Tuple

from . import __version__
from .bm_kernel import beta_eq, chi_eq
from .cech import d_eq_triple, leibniz_defect, thom_cocycle
from .chern_roots import rr_identity_defect, to_chern_basis, todd_series
from .chern_weil import bott_cocycle_defect, bott_difference, chern_form
from .connection import bianchi_defect, builtin_d0, builtin_d1, mat_is_zero
from .forms import d_eq, total_lie_derivative
from .randomized import random_invariant_connection, random_triple
from .serialize import form_to_text
from .sphere import DegreeError, sphere_integrate_exact, sphere_integrate_mc

log = logging.getLogger(__name__)

SUITES = ("closedness", "oracle", "bianchi", "equivariance", "integral", "rr", "cech")
MAX_L = {"rr": 4}
DEFAULT_MAX_L = 4


@dataclass
class CheckResult:
    name: str
    l: int
    status: str
    residualDescription: str
    wallTimeMs: float


@dataclass
class VerificationReport:
    checks: List[CheckResult] = field(default_factory=list)
    toolVersion: str = __version__
    seed: int = 0

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_dict(self) -> Dict:
        return {"checks": [asdict(c) for c in self.checks], "toolVersion": self.toolVersion, "seed": self.seed}


@dataclass(frozen=True)
class Options:
    seed: int = 0
    random_connections: int = 20
    random_triples: int = 10
    mc_samples: int = 0
    mc_sigmas: float = 3.0


def _describe(residual, limit: int = 200) -> str:
    if hasattr(residual, "is_zero") and residual.is_zero():
        return "0"
    text = form_to_text(residual) if hasattr(residual, "terms") and hasattr(residual, "rank") else str(residual)
    return text if len(text) <= limit else text[:limit] + "..."


def _zero(residual) -> Tuple[bool, str]:
    return residual.is_zero(), _describe(residual)


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_deq_beta(l: int, opts: Options):
    return _zero(d_eq(beta_eq(l)) - chi_eq(l))


def check_top_chern_d0(l: int, opts: Options):
    return _zero(chern_form(builtin_d0(l), l))


def check_thom_cocycle(l: int, opts: Options):
    t = d_eq_triple(thom_cocycle(l))
    ok = t.is_zero()
    return ok, "0" if ok else f"xi1: {_describe(t.xi1)}; xi01: {_describe(t.xi01)}"


def check_oracle(l: int, opts: Options):
    return _zero(bott_difference([builtin_d0(l), builtin_d1(l)], l) - beta_eq(l))


def _matrix_residual(M) -> Tuple[bool, str]:
    if mat_is_zero(M):
        return True, "0"
    bad = [(i, j) for i, row in enumerate(M) for j, f in enumerate(row) if not f.is_zero()]
    return False, f"nonzero entries at {bad}"


def check_bianchi_builtin(l: int, opts: Options):
    for c in (builtin_d0(l), builtin_d1(l)):
        ok, text = _matrix_residual(bianchi_defect(c))
        if not ok:
            return ok, text
    return True, "0"


def check_bianchi_random(l: int, opts: Options):
    rng = random.Random(opts.seed * 1000 + l)
    for n in range(opts.random_connections):
        ok, text = _matrix_residual(bianchi_defect(random_invariant_connection(l, rng)))
        if not ok:
            return False, f"connection {n}: {text}"
    return True, "0"


def check_equivariance(l: int, opts: Options):
    beta = beta_eq(l)
    for a in range(1, l + 1):
        for b in range(1, l + 1):
            r = total_lie_derivative(beta, (a, b))
            if not r.is_zero():
                return False, f"direction E_{a}{b}: {_describe(r)}"
    return True, "0"


def check_sphere_integral(l: int, opts: Options):
    beta = beta_eq(l)
    value = sphere_integrate_exact(beta.set_x_zero())
    ok = value.is_constant() and value.as_scalar() == 1
    return ok, "0" if ok else f"integral = {value}"


def check_degree_guard(l: int, opts: Options):
    problems = []
    for p, stratum in beta_eq(l).x_strata().items():
        if stratum.form_degrees() != {2 * l - 1 - 2 * p}:
            problems.append(f"X-degree {p} has form degrees {sorted(stratum.form_degrees())}")
        if p >= 1:
            try:
                sphere_integrate_exact(stratum)
                problems.append(f"X-degree {p} stratum was not rejected")
            except DegreeError:
                pass
    return not problems, "0" if not problems else "; ".join(problems)


def check_sphere_mc(l: int, opts: Options):
    res = sphere_integrate_mc(beta_eq(l).set_x_zero(), opts.mc_samples, opts.seed)
    ok = res.within(1.0, opts.mc_sigmas)
    return ok, f"estimate {res.value.real:.6f}{res.value.imag:+.2e}i +- {res.stderr:.2e}"


def check_rr(l: int, opts: Options):
    r = rr_identity_defect(l)
    return r == 0, "0" if r == 0 else repr(r)


def check_todd_basis(l: int, opts: Options):
    got = to_chern_basis(todd_series(2, 2))
    ok = str(got) == "1 + 1/2*c1 + 1/12*c1^2 + 1/12*c2"
    return ok, "0" if ok else str(got)


def check_bott_random(l: int, opts: Options):
    rng = random.Random(opts.seed * 1000 + 500 + l)
    cs = [random_invariant_connection(l, rng) for _ in range(3)]
    for k in range(1, l + 1):
        r = bott_cocycle_defect(cs, k)
        if not r.is_zero():
            return False, f"k={k}: {_describe(r)}"
    return True, "0"


def check_cech_random(l: int, opts: Options):
    rng = random.Random(opts.seed * 1000 + 700 + l)
    for n in range(opts.random_triples):
        a = random_triple(l, rng, rng.randint(1, 3))
        b = random_triple(l, rng, rng.randint(0, 2))
        dd = d_eq_triple(d_eq_triple(a))
        if not dd.is_zero():
            return False, f"triple {n}: D^2 != 0"
        if not leibniz_defect(a, b).is_zero():
            return False, f"pair {n}: Leibniz defect != 0"
    return True, "0"


SUITE_CHECKS: Dict[str, List[Tuple[str, Callable]]] = {
    "closedness": [("deq_beta_equals_chi", check_deq_beta),
                   ("top_chern_form_of_D0_vanishes", check_top_chern_d0),
                   ("thom_cocycle_closed", check_thom_cocycle)],
    "oracle": [("beta_equals_bott_difference", check_oracle)],
    "bianchi": [("bianchi_builtin", check_bianchi_builtin),
                ("bianchi_random", check_bianchi_random),
                ("bott_cocycle_random", check_bott_random)],
    "equivariance": [("total_lie_derivative_beta", check_equivariance)],
    "integral": [("sphere_integral_exact", check_sphere_integral),
                 ("degree_guard", check_degree_guard)],
    "rr": [("rr_series_identity", check_rr)],
    "cech": [("cech_random_triples", check_cech_random)],
}


def parse_l_range(text: str) -> List[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
    else:
        lo = hi = int(text)
    if lo < 1 or hi < lo:
        raise ValueError(f"bad l range {text!r}")
    return list(range(lo, hi + 1))


def plan(suites: Sequence[str], ls: Sequence[int], opts: Options) -> List[Tuple[str, str, int]]:
    jobs = []
    for suite in suites:
        if suite not in SUITE_CHECKS:
            raise ValueError(f"unknown suite {suite!r}")
        for l in ls:
            if l > MAX_L.get(suite, DEFAULT_MAX_L):
                raise ValueError(f"suite {suite} supports l <= {MAX_L.get(suite, DEFAULT_MAX_L)}")
            for name, _fn in SUITE_CHECKS[suite]:
                jobs.append((suite, name, l))
            if suite == "integral" and opts.mc_samples > 0:
                jobs.append((suite, "sphere_integral_mc", l))
            if suite == "rr" and l == 2:
                jobs.append((suite, "todd_chern_basis", l))
    return jobs


_EXTRA = {"sphere_integral_mc": check_sphere_mc, "todd_chern_basis": check_todd_basis}


def _lookup(suite: str, name: str) -> Callable:
    for n, fn in SUITE_CHECKS[suite]:
        if n == name:
            return fn
    return _EXTRA[name]


def run_check(job: Tuple[str, str, int], opts: Options) -> CheckResult:
    suite, name, l = job
    fn = _lookup(suite, name)
    start = time.perf_counter()
    try:
        ok, text = fn(l, opts)
    except Exception as exc:  # a crashing check is a failing check
        ok, text = False, f"error: {type(exc).__name__}: {exc}"
    ms = (time.perf_counter() - start) * 1000.0
    log.info("%s/%s l=%d %s (%.0f ms)", suite, name, l, "pass" if ok else "FAIL", ms)
    return CheckResult(f"{suite}.{name}", l, "pass" if ok else "fail", text, round(ms, 3))


def _run_job(args):
    return run_check(*args)


def run_suites(suites: Sequence[str], ls: Sequence[int], opts: Options = Options(), jobs: int = 1) -> VerificationReport:
    if "all" in suites:
        suites = SUITES
    work = plan(suites, ls, opts)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_job, [(w, opts) for w in work]))
    else:
        results = [run_check(w, opts) for w in work]
    return VerificationReport(results, __version__, opts.seed)
