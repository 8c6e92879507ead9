"""Spectral selectors c_j and the time function built from c_0.

c_j(path) = min{T : mu(r_{-T} . path) <= -j}.  One window of the Maslov step
function determines every selector through the exact periodicity
mu(r_{-(T + 2 pi)} . path) = mu(r_{-T} . path) - 2n, and the returned value is
bit-identical to the eigenphase representative it selects (spectrality is a
theorem, so snapping to the spectrum is the correct rounding).
"""

import math
from dataclasses import dataclass

from .maslov import evaluate_step

TWO_PI = 2.0 * math.pi


def _step(path, window_base=0.0):
    ev = path._step_cache.get(window_base)
    if ev is None:
        ev = evaluate_step(path, window_base)
        path._step_cache[window_base] = ev
    return ev


def selector(path, j, window_base=0.0):
    return _step(path, window_base).selector(j)


def c_plus(path):
    return selector(path, 0)


def c_minus(path):
    return selector(path, -2 * path.lens.n + 1)


@dataclass(frozen=True)
class SelectorReport:
    lens: object
    j_lo: int
    j_hi: int
    values: dict  # j -> c_j, each a spectrum member + exact 2 pi multiple
    c_plus: float
    c_minus: float
    step: object  # the MaslovEvaluation the values came from

    def ceil_multiple(self, j):
        """ceil(c_j / T_w) as an exact lattice integer."""
        return self.lens.period_multiple(self.values[j], "ceil")

    def floor_multiple(self, j):
        return self.lens.period_multiple(self.values[j], "floor")


def selector_range(path, j_lo, j_hi, window_base=0.0):
    if j_lo > j_hi:
        raise ValueError(f"need j_lo <= j_hi, got {j_lo} > {j_hi}")
    ev = _step(path, window_base)
    n2 = 2 * path.lens.n
    values = {j: ev.selector(j) for j in range(j_lo, j_hi + 1)}
    return SelectorReport(
        lens=path.lens,
        j_lo=j_lo,
        j_hi=j_hi,
        values=values,
        c_plus=ev.selector(0),
        c_minus=ev.selector(-n2 + 1),
        step=ev,
    )


def time_function(path, basis, J=None):
    """Weighted average of c_0(path . psi_j) over a basis sequence.

    tau(path) = (sum_j w_j)^{-1} sum_j w_j c_0(path . psi_j)
    with weights w_j = 1 / (2^j max(1, |c_0(psi_j)|)), truncated at J terms.
    A dense basis makes this a strictly monotone time function; any finite
    truncation still satisfies the exact shift tau(r_T . path) = T + tau(path)
    termwise (c_0 moves by T in every term).
    """
    from .paths import product_path

    if not basis:
        raise ValueError("basis must be non-empty")
    J = len(basis) if J is None else J
    if not (1 <= J <= len(basis)):
        raise ValueError(f"J must be in [1, {len(basis)}], got {J}")
    total = 0.0
    weight = 0.0
    for j, psi in enumerate(basis[:J], start=1):
        w = 1.0 / (2.0**j * max(1.0, abs(c_plus(psi))))
        total += w * c_plus(product_path(path, psi))
        weight += w
    return total / weight
