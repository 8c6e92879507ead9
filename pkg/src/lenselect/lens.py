"""Lens space combinatorics: weights, deck action, Reeb period, period lattice.

A lens space L_k^{2n-1}(w) is the quotient of the unit sphere S^{2n-1} in C^n
by the cyclic action generated by g = diag(e^{2*pi*i*w_j/k}).  Everything
downstream (Maslov indices, selectors, norms) only needs the combinatorics
collected here: the deck phases, the Reeb period T_w, and exact arithmetic on
the lattice T_w * Z.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

TWO_PI = 2.0 * math.pi

# Relative tolerance for "x is a multiple of T_w".  Selector values are
# eigenphases accurate to ~1e-12, so snapping at 1e-9*max(1,|x|) absorbs
# representation noise without ever confusing distinct lattice points
# (neighbouring multiples are >= 2*pi/k apart).
PERIOD_SNAP_TOL = 1e-9


class LensSpaceError(ValueError):
    pass


def _smallest_prime_divisor(k):
    d = 2
    while d * d <= k:
        if k % d == 0:
            return d
        d += 1
    return k


def _reeb_numerator(k, weights):
    """Smallest a in {1..k} with 2*pi*a/k a feasible Reeb return time.

    e^{it} z = g^m z on the sphere forces t = 2*pi*(m*w_j mod k)/k with the
    same residue for every j, i.e. m*(w_j - w_1) = 0 mod k for all j.  For
    each feasible m the return time numerator is m*w_1 mod k (k when the
    residue is 0, since t must be positive).  m = 0 always contributes a = k,
    so the search is total.
    """
    best = k
    for m in range(k):
        if any((m * (w - weights[0])) % k != 0 for w in weights):
            continue
        a = (m * weights[0]) % k
        if a == 0:
            a = k
        best = min(best, a)
    return best


@dataclass(frozen=True)
class LensSpace:
    k: int
    weights: tuple
    n: int
    k_prime: int
    reeb_numerator: int  # T_w = 2*pi * reeb_numerator / k, exact

    @property
    def reeb_period(self):
        return TWO_PI * self.reeb_numerator / self.k

    @property
    def generator_phases(self):
        return np.array([TWO_PI * w / self.k for w in self.weights])

    @property
    def equal_weights(self):
        return all((w - self.weights[0]) % self.k == 0 for w in self.weights)

    @property
    def degenerate(self):
        # n = 1 is the quotient circle; everything computes but the geometric
        # statements are vacuous, so reports flag it.
        return self.n == 1

    def deck(self, m=1):
        """Deck transformation g^m as a complex diagonal matrix."""
        return np.diag(np.exp(2j * math.pi * m * np.array(self.weights) / self.k))

    def weight_classes(self):
        """Indices grouped by w_j mod k (the blocks preserved by ad-g)."""
        groups = {}
        for j, w in enumerate(self.weights):
            groups.setdefault(w % self.k, []).append(j)
        return list(groups.values())

    # --- exact arithmetic on the lattice T_w * Z ---

    def period_multiple(self, x, mode):
        """Integer m with m*T_w = ceil/floor of x in the lattice, snapped."""
        q = x / self.reeb_period
        r = round(q)
        if abs(x - r * self.reeb_period) <= PERIOD_SNAP_TOL * max(1.0, abs(x)):
            return r
        return math.ceil(q) if mode == "ceil" else math.floor(q)

    def period_value(self, m):
        return m * self.reeb_period

    def period_fraction(self, m):
        """m*T_w as an exact fraction of 2*pi: (num, den)."""
        f = Fraction(m * self.reeb_numerator, self.k)
        return f.numerator, f.denominator


def new_lens(k, weights):
    if not isinstance(k, int) or k < 2:
        raise LensSpaceError(f"k must be an integer >= 2, got {k!r}")
    weights = tuple(weights)
    if not weights:
        raise LensSpaceError("weights must be non-empty")
    for j, w in enumerate(weights):
        if not isinstance(w, int) or w < 1:
            raise LensSpaceError(f"weights[{j}] must be a positive integer, got {w!r}")
        if math.gcd(w, k) != 1:
            raise LensSpaceError(
                f"weights[{j}] = {w} is not coprime to k = {k} (gcd {math.gcd(w, k)})"
            )
    return LensSpace(
        k=k,
        weights=weights,
        n=len(weights),
        k_prime=_smallest_prime_divisor(k),
        reeb_numerator=_reeb_numerator(k, weights),
    )


def reeb_period(lens):
    """Least t > 0 with e^{it} z = g^m z for some m, by exhaustive m-search."""
    return TWO_PI * _reeb_numerator(lens.k, lens.weights) / lens.k


def round_to_period(lens, x, mode):
    """T_w * ceil(x/T_w) or T_w * floor(x/T_w) with snap-to-lattice."""
    if mode not in ("ceil", "floor"):
        raise ValueError(f"mode must be 'ceil' or 'floor', got {mode!r}")
    return lens.period_value(lens.period_multiple(x, mode))
