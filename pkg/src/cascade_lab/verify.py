"""Desk-scale verification suites.

Each check returns a :class:`Check` holding the measured quantities and the
bounds it was held to.  Suites:

``exact``      oracle equivalence, closed-form identities, limit moments,
               cross-module identities (no randomness beyond fixed seeds)
``clt``        normal endpoint laws for H = 1/4 and H = 1/2, Wiener covariance
``remainder``  law of the proxy remainder for H = 0.7
``holder``     Hoelder exponent and box dimension of single paths

Endpoints of the walks are centered by their exact mean ``E(X_n(1))``, which
is ``b^{n(H-1/2)}/sigma_H`` (``1/(sigma_{1/2} sqrt n)`` at H = 1/2) because
``E(Z_n) = 1``; the limit theorems concern the fluctuation, and this bias is
large at desk scale (0.35 for n = 16, H = 1/2).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import cascade, fclt, moments, normalization, stats
from .ensemble import sample_grid
from .rng import SeedSpec

SUITES = ("exact", "clt", "remainder", "holder")
QUARTERS = (0.25, 0.5, 0.75, 1.0)


@dataclass
class Check:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    bounds: dict = field(default_factory=dict)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        shown = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{status}] {self.name}: {shown}"

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "measured": self.measured,
                "bounds": self.bounds}


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(b))


# ---------------------------------------------------------------------------
# exact

ORACLE_H = (-1.0, 0.0, 0.25, 0.5, 0.7, 1.0)


def check_oracle_equivalence(tol: float = 1e-10) -> Check:
    worst = 0.0
    for H in ORACLE_H:
        for n in range(4):
            seq = moments.moment_sequence(2, H, 6, n)
            for q in range(1, 7):
                ref = moments.brute_force_moment(2, H, q, n)
                worst = max(worst, _rel(seq[q, n], ref))
    return Check("oracle-equivalence", worst <= tol, {"max_rel_error": worst}, {"tol": tol})


def check_closed_forms(tol: float = 1e-12) -> Check:
    worst_an = worst_crit = worst_m2 = 0.0
    for b in (2, 3, 4):
        for n in range(1, 41):
            for H in (-1.0, 0.0, 0.25, 0.4):
                s = normalization.sigma(b, H)
                a = normalization.a_n(b, H, n)
                target = s * s * math.expm1(n * (1 - 2 * H) * math.log(b))
                worst_an = max(worst_an, abs(a * a - target) / target)
                m2 = moments.second_moment(b, H, n)
                worst_m2 = max(worst_m2, abs(m2 - (a * a + 1)) / (a * a + 1))
            a = normalization.a_n(b, 0.5, n)
            s = normalization.sigma(b, 0.5)
            worst_crit = max(worst_crit, abs(a - s * math.sqrt(n)) / a)
            m2 = moments.second_moment(b, 0.5, n)
            worst_m2 = max(worst_m2, abs(m2 - (a * a + 1)) / (a * a + 1))
    worst = max(worst_an, worst_crit, worst_m2)
    return Check(
        "closed-form-identities",
        worst <= tol,
        {"a_n_vs_sigma": worst_an, "critical_a_n": worst_crit, "second_moment": worst_m2},
        {"tol": tol},
    )


def check_limit_moments(tol: float = 1e-10) -> Check:
    worst = 0.0
    for b in (2, 3, 4):
        for p in range(1, 6):
            dfact = math.prod(range(1, 2 * p, 2))
            worst = max(worst, abs(moments.limit_even_moment(b, 2 * p) - dfact))
    return Check("gaussian-limit-moments", worst <= tol, {"max_abs_error": worst}, {"tol": tol})


def check_cross_module(seed: int, tol: float = 1e-12) -> Check:
    walk_err = tilde_err = incr_err = 0.0
    signs_ok = True
    for i in range(5):
        s = SeedSpec(seed, i)
        for H in (-1.0, 0.25, 0.5):
            p = cascade.derive_params(2, H)
            n = 10
            path = cascade.simulate_path(p, n, s)
            walk = fclt.clt_walk(p, n, s)
            if H < 0.5:
                factor = 2 ** (n * (H - 0.5)) / normalization.sigma(2, H)
            else:
                factor = 1 / (normalization.sigma(2, H) * math.sqrt(n))
            scaled = path.values * factor
            walk_err = max(walk_err, float(np.max(np.abs(walk.values - scaled))))
        for H in (0.25, 0.7, 0.95):
            p = cascade.derive_params(2, H)
            n = 9
            path = cascade.simulate_path(p, n, s)
            xi = fclt.xi_sequence(p, n, s)
            unit = 2.0 ** (-n * H)
            recovered = np.rint(np.diff(path.values) / unit)
            signs_ok &= bool(np.array_equal(recovered, xi))
            signs_ok &= bool(np.array_equal(path.increments(), xi * unit))
            incr_err = max(incr_err, float(np.max(np.abs(np.diff(path.values) - xi * unit))) / unit)
        p = cascade.derive_params(2, 0.7)
        r = fclt.remainder_path(p, 4, 8, s)
        t = fclt.tilde_walk(p, 4, 8, s)
        tilde_err = max(tilde_err, abs(r.endpoint - t.endpoint))
    passed = walk_err <= tol and tilde_err <= tol and signs_ok and incr_err <= tol
    return Check(
        "cross-module-identities",
        passed,
        {"walk_vs_path": walk_err, "remainder_vs_tilde": tilde_err,
         "xi_matches_increment_signs": signs_ok, "increment_rel_error": incr_err},
        {"tol": tol},
    )


# ---------------------------------------------------------------------------
# Monte Carlo


class Ensembles:
    """Caches the ensembles shared between checks."""

    def __init__(self, trials: int, seed: int, threads: int | None = None):
        self.trials = trials
        self.seed = seed
        self.threads = threads
        self._cache = {}
        #: wall-clock seconds spent building each cached ensemble
        self.build_seconds = {}

    def get(self, kind, b, H, n, m=0, grid_level=2):
        key = (kind, b, H, n, m, grid_level)
        if key not in self._cache:
            p = cascade.derive_params(b, H)
            t0 = time.perf_counter()
            self._cache[key] = sample_grid(kind, p, n, self.trials, self.seed, grid_level, m,
                                           self.threads)
            self.build_seconds[key] = time.perf_counter() - t0
        return self._cache[key]

    def cost(self, *keys) -> float:
        """Build time of the ensembles named by ``(kind, b, H, n[, m])`` tuples."""
        total = 0.0
        for k in keys:
            kind, b, H, n, *rest = k
            m = rest[0] if rest else 0
            total += self.build_seconds.get((kind, b, H, n, m, 2), 0.0)
        return total


def walk_mean(b: int, H: float, n: int) -> float:
    """Exact mean of the walk endpoint: E(S) = b^{nH} over the walk scale."""
    if H == -math.inf:
        return 0.0
    return b ** (n * H) / fclt.walk_scale(b, H, n)


def _endpoint_check(name, ens: Ensembles, b, H, n, reports) -> Check:
    grid = ens.get("walk", b, H, n)
    mu = walk_mean(b, H, n)
    report = stats.EnsembleReport.from_samples(
        {"b": b, "H": H, "n": n, "trials": ens.trials, "seed": ens.seed, "process": "walk",
         "center": mu},
        grid, QUARTERS, center=mu,
    )
    reports[name] = report
    x = report.endpoint_samples
    N = x.size
    ks_bound = stats.ks_threshold(N)
    var = float(np.var(x, ddof=1))
    m3 = report.moments[2]
    m4 = report.moments[3]
    passed = report.ks <= ks_bound and abs(var - 1) <= 0.05 and abs(m3) <= 0.15 and abs(m4 - 3) <= 0.4
    raw = grid[:, -1]
    return Check(
        name,
        passed,
        {"ks": report.ks, "variance": var, "third_moment": m3, "fourth_moment": m4,
         "exact_mean_removed": mu, "ks_uncentered": stats.ks_statistic(raw)},
        {"ks": ks_bound, "variance": [0.95, 1.05], "third_moment": [-0.15, 0.15],
         "fourth_moment": [2.6, 3.4]},
    )


def check_theorem1(ens: Ensembles, reports: dict) -> Check:
    return _endpoint_check("theorem1-endpoint-law", ens, 2, 0.25, 14, reports)


def check_theorem1_critical(ens: Ensembles, reports: dict) -> Check:
    return _endpoint_check("theorem1-critical-endpoint-law", ens, 2, 0.5, 16, reports)


REMAINDER = {"b": 2, "H": 0.7, "n": 6, "m": 15}


def _min_cov(points) -> np.ndarray:
    t = np.asarray(points)
    return np.minimum.outer(t, t)


def check_wiener_covariance(ens: Ensembles) -> Check:
    target = _min_cov(QUARTERS)
    bound = 4 / math.sqrt(ens.trials)
    cases = {
        "walk_H0.25": ens.get("walk", 2, 0.25, 14),
        "walk_H-inf": ens.get("walk", 2, -math.inf, 14),
        "remainder_H0.7": ens.get("remainder", 2, 0.7, REMAINDER["n"], REMAINDER["m"]),
    }
    measured = {}
    passed = True
    for label, grid in cases.items():
        cov = stats.fdd_covariance(grid, QUARTERS)
        err = float(np.max(np.abs(cov - target)))
        measured[label] = err
        passed &= err <= bound
    return Check("wiener-covariance", passed, measured, {"max_abs_error": bound})


def check_remainder_law(ens: Ensembles, reports: dict) -> Check:
    b, H, n, m = REMAINDER["b"], REMAINDER["H"], REMAINDER["n"], REMAINDER["m"]
    grid = ens.get("remainder", b, H, n, m)
    deficit = fclt.proxy_deficit(b, H, m)
    expected_var = 1 - deficit
    report = stats.EnsembleReport.from_samples(
        {"b": b, "H": H, "n": n, "m": m, "trials": ens.trials, "seed": ens.seed,
         "process": "remainder"},
        grid, QUARTERS, scale=math.sqrt(expected_var), deficit=deficit,
    )
    reports["theorem3-remainder-law"] = report
    N = grid.shape[0]
    ks_bound = stats.ks_threshold(N)
    var = float(np.var(grid[:, -1], ddof=1))
    passed = report.ks <= ks_bound and abs(var - expected_var) <= 0.05
    return Check(
        "theorem3-remainder-law",
        passed,
        {"ks_rescaled": report.ks, "variance": var, "expected_variance": expected_var},
        {"ks": ks_bound, "variance_tol": 0.05},
    )


def check_regularity(seed: int, reports: dict, jmin: int = 4, jmax: int = 12) -> Check:
    # box counts saturate sooner than oscillations, so the box window stops at 10
    bmax = max(jmin + 1, min(jmax, 10))
    measured = {}
    passed = True
    for H in (0.7, 0.95):
        path = cascade.simulate_path(cascade.derive_params(2, H), 18, seed)
        osc = stats.oscillation_exponent(path, jmin, jmax)
        box = stats.box_dimension(path, jmin, bmax)
        measured[f"holder_H{H}"] = osc.slope
        measured[f"boxdim_H{H}"] = box.slope
        passed &= abs(osc.slope - H) <= 0.1 and abs(box.slope - (2 - H)) <= 0.15
    line = cascade.simulate_path(cascade.derive_params(2, 1.0), 18, seed)
    osc1 = stats.oscillation_exponent(line, jmin, jmax).slope
    box1 = stats.box_dimension(line, jmin, bmax).slope
    measured["holder_H1"] = osc1
    measured["boxdim_H1"] = box1
    passed &= abs(osc1 - 1) <= 1e-12 and abs(box1 - 1) <= 1e-12
    return Check("theorem2-regularity", passed, measured,
                 {"holder": 0.1, "boxdim": 0.15, "H1_exact": 1e-12})


def run_suites(suites, trials: int = 10_000, seed: int = 1, threads: int | None = None,
               jmin: int | None = None, jmax: int | None = None):
    """Run the named suites; returns ``(checks, reports)``."""
    unknown = set(suites) - set(SUITES)
    if unknown:
        raise ValueError(f"unknown suite(s): {sorted(unknown)}")
    checks: list[Check] = []
    reports: dict = {}
    ens = Ensembles(trials, seed, threads)
    if "exact" in suites:
        checks += [check_oracle_equivalence(), check_closed_forms(), check_limit_moments(),
                   check_cross_module(seed)]
    if "clt" in suites:
        checks += [check_theorem1(ens, reports), check_theorem1_critical(ens, reports),
                   check_wiener_covariance(ens)]
    if "remainder" in suites:
        checks.append(check_remainder_law(ens, reports))
    if "holder" in suites:
        checks.append(check_regularity(seed, reports, jmin or 4, jmax or 12))
    return checks, reports
