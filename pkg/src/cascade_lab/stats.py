"""Empirical checks: normal goodness of fit, covariance structure, regularity estimators."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy import special, stats as sstats

from .errors import SampleSizeError

#: asymptotic Kolmogorov-Smirnov critical value at alpha = 0.01 is KS_COEF / sqrt(N)
KS_COEF = 1.63


def normal_cdf(x):
    """Standard normal CDF (``scipy.special.ndtr``)."""
    return special.ndtr(x)


def ks_statistic(sample) -> float:
    """sup_x |F_N(x) - Phi(x)| for the empirical CDF F_N of ``sample``."""
    x = np.sort(np.asarray(sample, dtype=float))
    n = x.size
    if n < 10:
        raise SampleSizeError(f"need at least 10 samples, got {n}")
    cdf = normal_cdf(x)
    upper = np.arange(1, n + 1) / n - cdf
    lower = cdf - np.arange(n) / n
    return float(max(upper.max(), lower.max()))


def ks_threshold(n: int) -> float:
    return KS_COEF / math.sqrt(n)


def _as_matrix(paths) -> np.ndarray:
    if isinstance(paths, np.ndarray):
        return np.atleast_2d(paths)
    return np.vstack([p.values for p in paths])


def fdd_covariance(paths, gridpoints: Sequence[float]) -> np.ndarray:
    """Sample covariance of the paths at ``gridpoints``.

    ``paths`` is either a sequence of realizations or a 2-D array whose rows are
    path values on a uniform grid of [0, 1] (linear interpolation in between).
    """
    values = _as_matrix(paths)
    if values.shape[0] == 0:
        raise SampleSizeError("empty ensemble")
    if values.shape[0] < 2:
        raise SampleSizeError("need at least two paths for a covariance")
    cols = np.column_stack([_column_at(values, t) for t in gridpoints])
    return np.atleast_2d(np.cov(cols, rowvar=False))


def _column_at(values: np.ndarray, t: float) -> np.ndarray:
    cells = values.shape[1] - 1
    x = float(t) * cells
    k = round(x)
    if abs(x - k) < 1e-9:
        return values[:, k]
    i = min(int(math.floor(x)), cells - 1)
    frac = x - i
    return values[:, i] + frac * (values[:, i + 1] - values[:, i])


class Slope(NamedTuple):
    slope: float
    stderr: float


def _cell_oscillations(values: np.ndarray, b: int, level: int, j: int) -> np.ndarray:
    width = b ** (level - j)
    body = values[:-1].reshape(b**j, width)
    right = values[width::width]
    hi = np.maximum(body.max(axis=1), right)
    lo = np.minimum(body.min(axis=1), right)
    return hi - lo


def _window(level: int, jmin: int, jmax: int) -> None:
    if not (1 <= jmin < jmax):
        raise ValueError("need 1 <= jmin < jmax")
    if jmax > level - 2:
        raise ValueError(f"jmax must be <= level - 2 = {level - 2}")


def _fit(x, y) -> Slope:
    res = sstats.linregress(x, y)
    return Slope(float(res.slope), float(res.stderr))


def oscillation_exponent(path, jmin: int, jmax: int) -> Slope:
    """Global Hoelder exponent from the median cell oscillation at generations jmin..jmax."""
    _window(path.level, jmin, jmax)
    b = path.b
    js = np.arange(jmin, jmax + 1)
    med = [np.median(_cell_oscillations(path.values, b, path.level, j)) for j in js]
    if min(med) <= 0:
        raise ValueError("zero oscillation; exponent undefined")
    return _fit(-js.astype(float), np.log(med) / math.log(b))


def box_counts(path, j: int) -> int:
    """Number of b^-j boxes met by the graph, counted column by column."""
    b = path.b
    osc = _cell_oscillations(path.values, b, path.level, j)
    side = float(b) ** (-j)
    # tolerance keeps exact multiples of the box side from rounding up
    return int(np.sum(1 + np.ceil(osc / side - 1e-9)))


def box_dimension(path, jmin: int, jmax: int) -> Slope:
    """Box-counting dimension of the graph from generations jmin..jmax."""
    _window(path.level, jmin, jmax)
    js = np.arange(jmin, jmax + 1)
    counts = [box_counts(path, j) for j in js]
    return _fit(js.astype(float), np.log(counts) / math.log(path.b))


def ecf(sample, ts) -> np.ndarray:
    """Moduli of the empirical characteristic function at ``ts``."""
    x = np.asarray(sample, dtype=float)
    t = np.atleast_1d(np.asarray(ts, dtype=float))
    if x.size == 0 or t.size == 0:
        raise SampleSizeError("empty input")
    phase = np.outer(t, x)
    return np.hypot(np.cos(phase).mean(axis=1), np.sin(phase).mean(axis=1))


def empirical_moments(sample, qmax: int) -> np.ndarray:
    """Raw sample moments of orders 1..qmax."""
    if not 1 <= qmax <= 8:
        raise ValueError("qmax must lie in 1..8")
    x = np.asarray(sample, dtype=float)
    return np.array([np.mean(x**q) for q in range(1, qmax + 1)])


@dataclass
class EnsembleReport:
    params: dict
    endpoint_samples: np.ndarray = field(repr=False)
    ks: float
    moments: list
    gridpoints: list
    covariance: np.ndarray
    slopes: dict = field(default_factory=dict)
    deficit: float | None = None

    @classmethod
    def from_samples(cls, params: dict, grid_values: np.ndarray, gridpoints, *, center=0.0,
                     scale=1.0, qmax=4, deficit=None):
        """Summarize an ensemble of grid rows (see :func:`cascade_lab.ensemble.sample_grid`)."""
        end = (grid_values[:, -1] - center) / scale
        return cls(
            params=dict(params),
            endpoint_samples=end,
            ks=ks_statistic(end),
            moments=empirical_moments(end, qmax).tolist(),
            gridpoints=[float(t) for t in gridpoints],
            covariance=fdd_covariance(grid_values, gridpoints),
            deficit=deficit,
        )

    def to_dict(self) -> dict:
        cov = np.asarray(self.covariance)
        return {
            "params": self.params,
            "ks": self.ks,
            "moments": list(self.moments),
            "covariance": {"gridpoints": list(self.gridpoints), "values": cov.ravel().tolist()},
            "slopes": {k: {"slope": v[0], "stderr": v[1]} for k, v in self.slopes.items()},
            "deficit": self.deficit,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)
