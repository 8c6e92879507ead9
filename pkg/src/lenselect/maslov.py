"""Non-linear Maslov index of a unitary path via based families of forms.

The path is subdivided so every transition stays in the Cayley domain; each
interval contributes a clamped factor V_i(t) = U(clamp(t, s_i, s_{i+1})) *
U(s_i)^{-1}, and F_t is the left-associated #-composition of the factors'
Cayley generating functions.  The total dimension of F_t is constant in t, so

    mu = ind(F_0) - ind(F_1)

is a difference of indices on one fixed space, with ind(F_0) = 2nN asserted
as a per-run self-check.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import quadratic
from .paths import reeb_shift, cluster_phases, _eigenphases
from .quadratic import cayley_gf, index, sharp, zero_form

TWO_PI = 2.0 * math.pi

# Phase travel per subdivision interval; keeps ||V - I|| <= sqrt(2), i.e.
# transition eigenvalues in the closed right half-circle, so tan(theta/2) <= 1
# and the Cayley factors have norm <= 1.
MAX_TRAVEL = math.pi / 2

_F0_INDEX_CACHE = {}


class BasedFamily:
    """Clamped-factor family F_t over a fixed subdivision of the path."""

    def __init__(self, path, breakpoints=None):
        self.path = path
        self.lens = path.lens
        self.breakpoints = (
            np.asarray(breakpoints, dtype=float)
            if breakpoints is not None
            else subdivide(path)
        )
        self._check_subdivision()
        self.N = len(self.breakpoints) - 1
        self._inv_at_start = [
            path.value(s).conj().T for s in self.breakpoints[:-1]
        ]

    def _check_subdivision(self):
        s = self.breakpoints
        if not (s[0] == 0.0 and s[-1] == 1.0 and np.all(np.diff(s) > 0)):
            raise ValueError("breakpoints must be strictly increasing from 0 to 1")
        for a, b in zip(s[:-1], s[1:]):
            if _travel(self.path, a, b) > MAX_TRAVEL * (1 + 1e-9):
                raise ValueError(
                    f"interval [{a}, {b}] exceeds the pi/2 phase-travel bound"
                )

    def form_at(self, t):
        s = self.breakpoints
        F = None
        for i in range(self.N):
            tc = min(max(t, s[i]), s[i + 1])
            V = self.path.value(tc) @ self._inv_at_start[i]
            C = cayley_gf(V, self.lens)
            F = C if F is None else sharp(F, C)
        return F

    @property
    def total_dim(self):
        return (2 * self.N - 1) * 2 * self.lens.n


def _travel(path, a, b):
    """Upper bound on the phase travel of U_t U_a^{-1} for t in [a, b]."""
    total = 0.0
    for i, (A, _) in enumerate(path.segments):
        lo = max(path._starts[i], a)
        hi = min(path._starts[i + 1], b)
        if hi > lo:
            total += np.linalg.norm(A, 2) * (hi - lo)
    return total


def subdivide(path):
    """Breakpoints with phase travel <= pi/2 per interval.

    Segment boundaries are always included; each segment is split uniformly
    into ceil(||A|| d / (pi/2)) parts.
    """
    pts = [0.0]
    for i, (A, d) in enumerate(path.segments):
        a, b = path._starts[i], path._starts[i + 1]
        parts = max(1, math.ceil(np.linalg.norm(A, 2) * d / MAX_TRAVEL - 1e-12))
        for j in range(1, parts + 1):
            pts.append(a + (b - a) * j / parts)
    pts[-1] = 1.0
    return np.array(pts)


def maslov_index(path, breakpoints=None, tol=quadratic.DEFAULT_NULL_TOL):
    """mu(path) = ind(F_0) - ind(F_1) over a based family."""
    fam = BasedFamily(path, breakpoints)
    n2 = 2 * path.lens.n
    key = (n2, fam.N, tol)
    if key not in _F0_INDEX_CACHE:
        _F0_INDEX_CACHE[key] = index(fam.form_at(0.0), tol)
    i0 = _F0_INDEX_CACHE[key]
    if i0 != n2 * fam.N:
        raise AssertionError(
            f"based-family self-check failed: ind(F_0) = {i0} != {n2 * fam.N}"
        )
    return i0 - index(fam.form_at(1.0), tol)


def maslov_shifted(path, T, tol=quadratic.DEFAULT_NULL_TOL):
    """mu of the Reeb-shifted class r_{-T} . path."""
    return maslov_index(reeb_shift(path, T), tol=tol)


@dataclass(frozen=True)
class MaslovEvaluation:
    """Step function T -> mu(r_{-T} . path) over one period window.

    points[i] are the sphere-spectrum phases in [window_base, base + 2 pi);
    values[i] is the (constant) value on [points[i], points[i+1]), evaluated
    at the gap midpoint; the function is right-continuous and extends to all
    of R by the exact periodicity value(T + 2 pi) = value(T) - 2n.
    """

    lens: object
    window_base: float
    points: np.ndarray
    multiplicities: np.ndarray
    values: np.ndarray

    @property
    def n2(self):
        return 2 * self.lens.n

    @property
    def pre_value(self):
        """Value on [window_base, points[0]): one period above the last gap."""
        return int(self.values[-1]) + self.n2

    def value_at(self, T):
        base = self.points[0]
        ell = math.floor((T - base) / TWO_PI)
        Tr = T - TWO_PI * ell
        i = int(np.searchsorted(self.points, Tr, side="right")) - 1
        if i < 0:  # Tr landed a hair under base by rounding
            i, ell = len(self.points) - 1, ell - 1
            Tr += TWO_PI
        return int(self.values[i]) - self.n2 * ell

    def selector(self, j):
        """c_j = min{T : value_at(T) <= -j}, exact eigenphase + 2 pi ell."""
        best = math.inf
        for theta, v in zip(self.points, self.values):
            ell = -((-(j + int(v))) // self.n2)  # ceil((j+v)/2n)
            best = min(best, theta + TWO_PI * ell)
        return best

    def drops(self):
        vals = np.concatenate([[self.pre_value], self.values])
        return (-np.diff(vals)).astype(int)


def evaluate_step(path, window_base=0.0, tol=quadratic.DEFAULT_NULL_TOL):
    """Evaluate the Maslov step function on one window of the sphere spectrum.

    The drift is exactly -2n per +2 pi, so gap values in a single window
    determine the function (and every selector) on all of R.
    """
    lens = path.lens
    raw = _eigenphases(path.endpoint, lens.weight_classes())
    phases, mults = cluster_phases(raw)
    # shift representatives into [window_base, window_base + 2 pi)
    pts = window_base + np.mod(phases - window_base, TWO_PI)
    pts = np.where(pts >= window_base + TWO_PI - 1e-12, pts - TWO_PI, pts)
    order = np.argsort(pts)
    pts, mults = pts[order], mults[order]
    gaps_end = np.concatenate([pts[1:], [pts[0] + TWO_PI]])
    values = np.array(
        [
            maslov_shifted(path, (a + b) / 2.0, tol=tol)
            for a, b in zip(pts, gaps_end)
        ],
        dtype=int,
    )
    ev = MaslovEvaluation(lens, float(window_base), pts, mults, values)
    if np.any(ev.drops() < 0):
        raise AssertionError("Maslov step function failed to be non-increasing")
    return ev
