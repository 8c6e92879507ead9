"""Conjugation-invariant norms and geodesic bounds.

nu(path) = max(ceil(c_+ / T_w), -floor(c_- / T_w)) * T_w with c_- = c_{-2n+1}
and c_+ = c_0; nu' bumps nonidentity classes to at least T_w; nu* minimizes nu
over Reeb-period deck shifts of the lift.  All lattice arithmetic is exact:
shifting by N*T_w moves every selector by exactly -N*T_w, so the whole nu*
search happens on integers.

Word-norm machinery is exposed through two certified bounds only: greedy
embedded decompositions (upper bounds) and the selector chain (lower bounds).
"""

import math
from dataclasses import dataclass

import numpy as np

from .paths import is_embedded, reeb_path, reeb_shift, DEFAULT_EMBED_GRID
from .selectors import c_minus, c_plus

TWO_PI = 2.0 * math.pi

IDENTITY_CLASS_TOL = 1e-9


@dataclass(frozen=True)
class LatticeValue:
    """An exact element m * T_w of the period lattice."""

    multiple: int
    num: int  # value as the exact fraction (num/den) * 2 pi
    den: int
    value: float

    @classmethod
    def of(cls, lens, m):
        num, den = lens.period_fraction(m)
        return cls(m, num, den, lens.period_value(m))

    def as_dict(self):
        return {"num": self.num, "den": self.den, "approx": self.value}


def is_identity_class(path):
    """Non-degeneracy criterion: c_- = c_+ = 0 and endpoint U_1 = I."""
    return (
        abs(c_plus(path)) <= IDENTITY_CLASS_TOL
        and abs(c_minus(path)) <= IDENTITY_CLASS_TOL
        and path.is_identity_endpoint()
    )


def _lattice_pair(path):
    lens = path.lens
    C = lens.period_multiple(c_plus(path), "ceil")
    F = lens.period_multiple(c_minus(path), "floor")
    return C, F


def nu(path, variant="plain"):
    """Spectral pseudonorm (variant="plain") or the norm nu' (variant="prime")."""
    if variant not in ("plain", "prime"):
        raise ValueError(f"variant must be 'plain' or 'prime', got {variant!r}")
    lens = path.lens
    C, F = _lattice_pair(path)
    m = max(C, -F)
    if variant == "prime":
        m = 0 if is_identity_class(path) else max(m, 1)
    return LatticeValue.of(lens, m)


def nu_star(path):
    """min over N of nu(reeb_shift(path, N*T_w)), with the minimizing shift.

    Selectors shift exactly: c_j(r_{-N T_w} . path) = c_j(path) - N*T_w, so
    the search is max(C - N, N - F) over integers N in the window
    [F - per, C + per] with per = 2 pi / T_w periods.  Returns
    (value, shift) as lattice values; the value is asserted <= 2 pi + T_w.
    """
    lens = path.lens
    C, F = _lattice_pair(path)
    per = -((-lens.k) // lens.reeb_numerator)  # ceil(2 pi / T_w)
    best_m, best_N = None, None
    for N in range(F - per, C + per + 1):
        m = max(C - N, N - F, 0)
        if best_m is None or m < best_m:
            best_m, best_N = m, N
    bound = TWO_PI + lens.reeb_period
    if lens.period_value(best_m) > bound + 1e-9:
        raise AssertionError(
            f"nu* = {lens.period_value(best_m)} exceeds the 2 pi + T_w bound {bound}"
        )
    return LatticeValue.of(lens, best_m), LatticeValue.of(lens, best_N)


# --- embedded decompositions ---


@dataclass
class DecompositionReport:
    count: int
    breakpoints: list
    certified: bool  # every segment carries an embeddedness certificate
    sign_definite: bool  # every segment usable for the oscillation bound
    notes: list


def _constant_run_end(path, t):
    """End of the maximal constant stretch starting at t (== t if none)."""
    end = t
    for i, (A, _) in enumerate(path.segments):
        a, b = path._starts[i], path._starts[i + 1]
        if b <= end + 1e-15:
            continue
        if a > end + 1e-12:
            break
        if np.linalg.norm(A, 2) * (b - max(a, end)) <= 1e-12:
            end = b
        else:
            break
    return end


def _segment_sign_definite(path, a, b):
    lams = []
    for i, (A, _) in enumerate(path.segments):
        lo, hi = max(path._starts[i], a), min(path._starts[i + 1], b)
        if hi - lo > 1e-15:
            lams.append(np.linalg.eigvalsh(A))
    lam = np.concatenate(lams) if lams else np.zeros(1)
    return bool(lam.min() >= -1e-12 or lam.max() <= 1e-12)


def greedy_embedded_decomposition(path, grid=DEFAULT_EMBED_GRID):
    """Upper bound for the discriminant length via maximal embedded prefixes.

    Each segment is extended to the largest prefix certified embedded by
    bisection; constant stretches form their own (identity-factor) segments.
    The count also bounds the oscillation length when every segment is
    sign-definite.
    """
    t = 0.0
    cuts = [0.0]
    certified = True
    sign_definite = True
    notes = []
    while t < 1.0 - 1e-12:
        run = _constant_run_end(path, t)
        if run > t + 1e-12:
            q = run  # an identity factor; embedded by convention
        else:
            rep = is_embedded(path, t, 1.0, grid=grid)
            if rep.embedded:
                q = 1.0
            else:
                if rep.embedded is None:
                    certified = False
                    notes.append(f"indeterminate on [{t}, 1]")
                lo, hi = t, 1.0
                # invariant: (t, lo] certified embedded (or lo == t), hi not
                for _ in range(60):
                    if hi - lo <= 1e-12 * max(1.0, hi):
                        break
                    mid = (lo + hi) / 2.0
                    r = is_embedded(path, t, mid, grid=grid)
                    if r.embedded:
                        lo = mid
                    else:
                        if r.embedded is None:
                            certified = False
                        hi = mid
                q = lo
            if q <= t + 1e-9 and q < 1.0 - 1e-12:
                raise RuntimeError(
                    f"cannot certify an embedded prefix at t = {t}; refine the grid"
                )
        sign_definite = sign_definite and _segment_sign_definite(path, t, min(q, 1.0))
        t = min(q, 1.0)
        cuts.append(t)
    cuts[-1] = 1.0
    return DecompositionReport(
        count=len(cuts) - 1,
        breakpoints=cuts,
        certified=certified,
        sign_definite=sign_definite,
        notes=notes,
    )


def selector_lower_bounds(path):
    """Selector-based lower bounds for the discriminant/oscillation lengths.

    Every embedded factor satisfies c_0 < T_w, so a decomposition into N
    embedded pieces forces N > c_+/T_w (and, applying the same to the inverse
    path, N > -c_-/T_w); the oscillation length is at least nu/T_w.
    """
    lens = path.lens
    cp, cm = c_plus(path), c_minus(path)
    candidates = [0]
    chain = []
    if cp > IDENTITY_CLASS_TOL:
        d = lens.period_multiple(cp, "floor") + 1
        candidates.append(d)
        chain.append(f"c_+ = {cp:.12g} > 0: dis >= floor(c_+/T_w) + 1 = {d}")
    if cm < -IDENTITY_CLASS_TOL:
        d = lens.period_multiple(-cm, "floor") + 1
        candidates.append(d)
        chain.append(f"c_- = {cm:.12g} < 0: dis >= floor(-c_-/T_w) + 1 = {d} (duality)")
    C, F = _lattice_pair(path)
    osc = max(C, -F)
    chain.append(f"osc >= nu/T_w = {osc}")
    return {"dis": max(candidates), "osc": osc, "chain": chain}


# --- reports ---


@dataclass
class NormReport:
    lens: object
    nu: LatticeValue
    nu_prime: LatticeValue
    nu_star: LatticeValue
    nu_star_shift: LatticeValue
    dis_lower: int
    dis_upper: int | None
    osc_lower: int
    osc_upper: int | None
    equal_weights: bool
    verdict: str
    degenerate: bool

    def as_dict(self):
        return {
            "nu": self.nu.as_dict(),
            "nu_prime": self.nu_prime.as_dict(),
            "nu_star": self.nu_star.as_dict(),
            "nu_star_shift": self.nu_star_shift.as_dict(),
            "dis_lower": self.dis_lower,
            "dis_upper": self.dis_upper,
            "osc_lower": self.osc_lower,
            "osc_upper": self.osc_upper,
            "equal_weights": self.equal_weights,
            "verdict": self.verdict,
            "degenerate_circle_case": self.degenerate,
        }


def norm_report(path, decompose=False, grid=DEFAULT_EMBED_GRID):
    lens = path.lens
    star, shift = nu_star(path)
    bounds = selector_lower_bounds(path)
    dis_upper = osc_upper = None
    if decompose:
        dec = greedy_embedded_decomposition(path, grid=grid)
        if dec.certified:
            dis_upper = dec.count
            if dec.sign_definite:
                osc_upper = dec.count
    return NormReport(
        lens=lens,
        nu=nu(path),
        nu_prime=nu(path, "prime"),
        nu_star=star,
        nu_star_shift=shift,
        dis_lower=bounds["dis"],
        dis_upper=dis_upper,
        osc_lower=bounds["osc"],
        osc_upper=osc_upper,
        equal_weights=lens.equal_weights,
        verdict="not-applicable",
        degenerate=lens.degenerate,
    )


@dataclass
class GeodesicReport:
    lens: object
    T: float
    verdict: str  # "certified" | "gap"
    lower: int
    upper: int
    greedy_count: int | None
    equal_weights: bool

    def as_dict(self):
        return {
            "T": self.T,
            "verdict": self.verdict,
            "lower": self.lower,
            "upper": self.upper,
            "greedy_count": self.greedy_count,
            "equal_weights": self.equal_weights,
        }


def geodesic_report(lens, T, grid=DEFAULT_EMBED_GRID):
    """Reeb-flow geodesic verdict: certified equality for equal weights,
    lower/upper gap for general weights."""
    if T < 0:
        raise ValueError("T must be >= 0")
    # floor(k T / 2 pi) with the same snap tolerance as the period lattice
    q = lens.k * T / TWO_PI
    r = round(q)
    orbit_floor = r if abs(q - r) <= 1e-9 * max(1.0, abs(q)) else math.floor(q)
    upper = orbit_floor + 1
    path = reeb_path(lens, T)
    if lens.equal_weights:
        if T <= 1e-12:
            return GeodesicReport(lens, T, "certified", 1, 1, 1, True)
        dec = greedy_embedded_decomposition(path, grid=grid)
        lower = selector_lower_bounds(path)["dis"]
        if not (dec.certified and dec.count == lower == upper):
            raise AssertionError(
                f"geodesic certificate failed: greedy {dec.count}, "
                f"selector lower {lower}, orbit count {upper}"
            )
        return GeodesicReport(lens, T, "certified", lower, upper, dec.count, True)
    lower = lens.period_multiple(T, "floor") + 1 if T > 1e-12 else 1
    dec = greedy_embedded_decomposition(path, grid=grid)
    return GeodesicReport(
        lens, T, "gap", lower, upper, dec.count if dec.certified else None, False
    )
