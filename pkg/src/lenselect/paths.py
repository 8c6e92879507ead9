"""Piecewise one-parameter unitary paths commuting with the deck action.

A path is a list of (Hermitian generator A, duration d) segments composed
left to right: on segment i, U(tau_i + s) = exp(i A_i s) U(tau_i), starting
from the identity.  Total time is normalized to 1, so a path represents an
element of the universal cover of the unitary contactomorphism group it
generates.  Generators must commute with the deck generator
g = diag(e^{2 pi i w_j / k}); equivalently they are block-diagonal over the
weight classes {j : w_j mod k}.

Exact operations: inverse (conjugated generators), Reeb shift (generator
minus T*I), segment append.  The pointwise product of two paths is re-fitted
piecewise via principal matrix logarithms on a merged grid with sub-segment
arcs below pi/2, which preserves the homotopy class with fixed endpoints.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

TWO_PI = 2.0 * math.pi

HERMITIAN_TOL = 1e-10
COMMUTATION_TOL = 1e-10
ENDPOINT_TOL = 1e-10

# Clustering tolerance for eigenphases: spectrum members closer than this are
# one point of the action spectrum with summed multiplicity.
PHASE_CLUSTER_TOL = 1e-9

# A phase this close to 0 (mod 2 pi) counts as a discriminant crossing.
PHASE_ZERO_TOL = 1e-9

DEFAULT_EMBED_GRID = 512  # grid points per unit time for the sweep tier


def _opnorm(A):
    return float(np.linalg.norm(A, 2)) if A.size else 0.0


def expm_iherm(A, s):
    """exp(i*A*s) for Hermitian A via eigendecomposition (exactly unitary)."""
    lam, V = np.linalg.eigh(A)
    return (V * np.exp(1j * lam * s)) @ V.conj().T


class PathError(ValueError):
    pass


class UnitaryPath:
    def __init__(self, lens, segments, _validate=True):
        self.lens = lens
        total = float(sum(d for _, d in segments))
        if total <= 0:
            raise PathError("total duration must be positive")
        # reparametrize to total time 1: durations shrink, generators grow,
        # so the traced path of unitaries (and the endpoint) is unchanged
        self.segments = [
            (np.asarray(A, dtype=complex) * total, float(d) / total)
            for A, d in segments
        ]
        if _validate:
            self._validate()
        self._starts = np.concatenate(
            [[0.0], np.cumsum([d for _, d in self.segments])]
        )
        self._starts[-1] = 1.0
        self._eig = [np.linalg.eigh(A) for A, _ in self.segments]
        # prefix[i] = U(tau_i); prefix[N] = endpoint
        self._prefix = [np.eye(lens.n, dtype=complex)]
        for (A, d), (lam, V) in zip(self.segments, self._eig):
            step = (V * np.exp(1j * lam * d)) @ V.conj().T
            self._prefix.append(step @ self._prefix[-1])
        self.endpoint = self._prefix[-1]
        self._step_cache = {}  # window_base -> MaslovEvaluation, filled by selectors

    def _validate(self):
        g = self.lens.deck()
        for i, (A, d) in enumerate(self.segments):
            if A.shape != (self.lens.n, self.lens.n):
                raise PathError(f"segment {i}: generator shape {A.shape}")
            if not np.all(np.isfinite(A)):
                raise PathError(f"segment {i}: non-finite generator")
            scale = max(_opnorm(A), 1.0)
            if _opnorm(A - A.conj().T) > HERMITIAN_TOL * scale:
                raise PathError(f"segment {i}: generator not Hermitian")
            if _opnorm(A @ g - g @ A) > COMMUTATION_TOL * scale:
                raise PathError(
                    f"segment {i}: generator does not commute with the deck action"
                )
            if d <= 0:
                raise PathError(f"segment {i}: non-positive duration")

    @property
    def breakpoints(self):
        return self._starts

    def segment_of(self, t):
        i = int(np.searchsorted(self._starts, t, side="right") - 1)
        return min(max(i, 0), len(self.segments) - 1)

    def value(self, t):
        """U(t) for t in [0, 1]."""
        t = min(max(t, 0.0), 1.0)
        i = self.segment_of(t)
        lam, V = self._eig[i]
        s = t - self._starts[i]
        return (V * np.exp(1j * lam * s)) @ V.conj().T @ self._prefix[i]

    def transition(self, s, t):
        """U(t) U(s)^{-1}."""
        return self.value(t) @ self.value(s).conj().T

    def max_generator_norm(self):
        return max(_opnorm(A) for A, _ in self.segments)

    def is_identity_endpoint(self, tol=1e-9):
        return _opnorm(self.endpoint - np.eye(self.lens.n)) <= tol

    def is_constant(self, tol=1e-12):
        return all(_opnorm(A) * d <= tol for A, d in self.segments)


def identity_path(lens):
    return UnitaryPath(lens, [(np.zeros((lens.n, lens.n)), 1.0)])


def reeb_path(lens, T):
    """The class of {r_{T t}}: one segment with generator T*I."""
    return UnitaryPath(lens, [(T * np.eye(lens.n), 1.0)])


def reeb_shift(p, T):
    """The class of r_{-T} . p, i.e. t -> e^{-iTt} U(t): shift every generator by -T*I."""
    n = p.lens.n
    return UnitaryPath(
        p.lens,
        [(A - T * np.eye(n), d) for A, d in p.segments],
        _validate=False,
    )


def inverse_path(p):
    """t -> U(t)^{-1}; exact: generator -U(tau_i)^* A_i U(tau_i) per segment."""
    segs = []
    for i, (A, d) in enumerate(p.segments):
        Ui = p._prefix[i]
        segs.append((-(Ui.conj().T @ A @ Ui), d))
    return UnitaryPath(p.lens, segs, _validate=False)


def append_segment(p, A, d):
    """Follow p by the flow of A for time d (then renormalize total time)."""
    return UnitaryPath(p.lens, [*((B, u) for B, u in p.segments), (np.asarray(A), d)])


def _blockwise_log_phases(W, classes):
    """Principal log of a block-diagonal unitary: Hermitian B with exp(iB) = W.

    W commutes with the deck action so its off-block entries are roundoff;
    taking the log per weight-class block keeps B exactly block-diagonal,
    hence exactly commuting with g even when eigenvalues collide across
    blocks.  Uses the complex Schur form, which is diagonal for normal
    matrices and numerically robust under eigenvalue clustering.
    """
    n = W.shape[0]
    B = np.zeros((n, n), dtype=complex)
    for idx in classes:
        sub = W[np.ix_(idx, idx)]
        T, Q = scipy.linalg.schur(sub, output="complex")
        phases = np.angle(np.diag(T))
        B[np.ix_(idx, idx)] = (Q * phases) @ Q.conj().T
    return (B + B.conj().T) / 2.0


def product_path(p, q):
    """Pointwise product t -> p(t) q(t), re-fitted piecewise.

    The merged breakpoint grid is refined so each sub-segment transition has
    arc length below pi/3 < pi/2; the principal-log refit is then uniformly
    close to the true product, so the homotopy class with fixed endpoints is
    preserved.  Endpoints multiply exactly up to the log/exp roundtrip.
    """
    if p.lens is not q.lens and (p.lens.k != q.lens.k or p.lens.weights != q.lens.weights):
        raise PathError("lens mismatch in product")
    lens = p.lens
    classes = lens.weight_classes()
    knots = sorted(set(np.concatenate([p.breakpoints, q.breakpoints]).tolist()))
    nodes = [0.0]
    for a, b in zip(knots[:-1], knots[1:]):
        if b - a <= 1e-15:
            continue
        La = _opnorm(p.segments[p.segment_of((a + b) / 2)][0])
        Lb = _opnorm(q.segments[q.segment_of((a + b) / 2)][0])
        parts = max(1, math.ceil((La + Lb) * (b - a) / (math.pi / 3)))
        for j in range(1, parts + 1):
            nodes.append(a + (b - a) * j / parts)
    segs = []
    R_prev = np.eye(lens.n, dtype=complex)
    for a, b in zip(nodes[:-1], nodes[1:]):
        R = p.value(b) @ q.value(b)
        W = R @ R_prev.conj().T
        B = _blockwise_log_phases(W, classes)
        segs.append((B / (b - a), b - a))
        R_prev = R
    return UnitaryPath(lens, segs, _validate=False)


def conjugate_path(psi, p):
    """psi . p . psi^{-1} in the universal cover."""
    return product_path(product_path(psi, p), inverse_path(psi))


# --- action spectra ---


def cluster_phases(phases, tol=PHASE_CLUSTER_TOL):
    """Canonicalize to [0, 2 pi), sort, and merge clusters of width <= tol.

    Returns (representatives, multiplicities); the cluster wrapping across
    0 ~ 2 pi is merged into the representative near 0.
    """
    ph = np.mod(np.asarray(phases, dtype=float), TWO_PI)
    ph = np.where(ph >= TWO_PI - 1e-12, ph - TWO_PI, ph)
    order = np.argsort(ph)
    ph = ph[order]
    reps, mults = [], []
    for x in ph:
        if reps and x - reps[-1] <= tol:
            mults[-1] += 1
        else:
            reps.append(x)
            mults.append(1)
    if len(reps) > 1 and (reps[0] + TWO_PI) - reps[-1] <= tol:
        mults[0] += mults.pop()
        reps.pop()
    return np.array(reps), np.array(mults, dtype=int)


@dataclass(frozen=True)
class SpectrumWindow:
    phases_sphere: np.ndarray  # sorted, in [0, 2 pi)
    mult_sphere: np.ndarray
    phases_lens: np.ndarray
    mult_lens: np.ndarray


def _eigenphases(U, classes):
    """Eigenphases of a unitary commuting with the deck action, per block."""
    out = []
    for idx in classes:
        T, _ = scipy.linalg.schur(U[np.ix_(idx, idx)], output="complex")
        out.extend(np.angle(np.diag(T)).tolist())
    return np.array(out)


def action_spectrum(p):
    """Translations of translated points mod 2 pi, on the sphere and the lens.

    Sphere level: eigenphases of the endpoint U_1.  Lens level: union over
    deck powers m of the eigenphases of g^{-m} U_1; since U_1 is
    block-diagonal over weight classes this is the blockwise spectrum shifted
    by -2 pi m w / k per class.
    """
    lens = p.lens
    classes = lens.weight_classes()
    sphere_raw = _eigenphases(p.endpoint, classes)
    phases_sphere, mult_sphere = cluster_phases(sphere_raw)
    lens_raw = []
    for idx in classes:
        T, _ = scipy.linalg.schur(p.endpoint[np.ix_(idx, idx)], output="complex")
        block = np.angle(np.diag(T))
        w = lens.weights[idx[0]]
        for m in range(lens.k):
            lens_raw.extend((block - TWO_PI * m * w / lens.k).tolist())
    phases_lens, mult_lens = cluster_phases(lens_raw)
    return SpectrumWindow(phases_sphere, mult_sphere, phases_lens, mult_lens)


def translated_points(p, T, level="sphere", tol=1e-9):
    """Eigenspace data of translated points with translation T.

    Sphere: orthonormal basis of ker(U_1 - e^{iT}).  Lens: list of
    (m, dimension, basis) over deck powers with nonempty kernel of
    g^{-m} U_1 - e^{iT}.  Empty results are values, not errors.
    """
    U = p.endpoint
    n = p.lens.n

    def kernel_basis(M):
        _, s, Vh = np.linalg.svd(M)
        d = int(np.sum(s <= tol * max(1.0, s.max() if s.size else 1.0)))
        return d, Vh[n - d :].conj().T if d else np.zeros((n, 0))

    if level == "sphere":
        return kernel_basis(U - np.exp(1j * T) * np.eye(n))
    out = []
    for m in range(p.lens.k):
        gm = p.lens.deck(-m)
        d, basis = kernel_basis(gm @ U - np.exp(1j * T) * np.eye(n))
        if d:
            out.append((m, d, basis))
    return out


# --- embeddedness ---


@dataclass
class EmbeddednessReport:
    embedded: bool | None  # None = indeterminate
    status: str  # "embedded" | "not_embedded" | "indeterminate"
    witness: tuple | None  # (s, t, m) for a crossing
    margin: float  # smallest phase distance to 0 mod 2 pi observed
    method: str

    def __bool__(self):
        return self.embedded is True


def _restrict_pieces(p, t0, t1):
    """(generator, length) pieces of p covering [t0, t1]."""
    pieces = []
    for i, (A, _) in enumerate(p.segments):
        a = max(p._starts[i], t0)
        b = min(p._starts[i + 1], t1)
        if b - a > 1e-15:
            pieces.append((A, a, b))
    if not pieces:  # degenerate sliver: treat as constant
        i = p.segment_of((t0 + t1) / 2)
        pieces = [(p.segments[i][0], t0, t1)]
    return pieces


def _joint_eigendata(pieces, lens, rng_seed=0):
    """Common eigenbasis of commuting piece generators and the deck action.

    Returns (slopes[j][piece], class_weights[j]) or None when the pieces do
    not commute (with each other or with the deck phases' diagonal).
    """
    mats = [A for A, _, _ in pieces]
    Gh = np.diag(np.array(lens.weights, dtype=float) % lens.k)
    for i, A in enumerate(mats):
        sa = max(_opnorm(A), 1.0)
        if _opnorm(A @ Gh - Gh @ A) > 1e-10 * sa * max(_opnorm(Gh), 1.0):
            return None
        for B in mats[i + 1 :]:
            sb = max(_opnorm(B), 1.0)
            if _opnorm(A @ B - B @ A) > 1e-10 * sa * sb:
                return None
    rng = np.random.default_rng(rng_seed)
    # a generic combination separates the common eigenspaces
    C = Gh * rng.uniform(1, 2)
    for A in mats:
        C = C + rng.uniform(1, 2) * A
    _, V = np.linalg.eigh(C)
    slopes = []
    for A in mats:
        D = V.conj().T @ A @ V
        if _opnorm(D - np.diag(np.diag(D))) > 1e-8 * max(_opnorm(A), 1.0):
            return None  # non-generic collision; caller falls back to the sweep
        slopes.append(np.real(np.diag(D)))
    Dg = V.conj().T @ Gh @ V
    if _opnorm(Dg - np.diag(np.diag(Dg))) > 1e-8 * max(_opnorm(Gh), 1.0):
        return None
    weights = np.rint(np.real(np.diag(Dg))).astype(int)
    return np.array(slopes), weights


def _commuting_embedded(pieces, lens, t0, t1):
    """Exact embeddedness for commuting pieces via per-eigenline phase travel.

    On a common eigenline with deck weight w, the phase of U_t U_s^{-1} is
    f(t) - f(s) with f piecewise linear; a discriminant crossing at deck power
    m means f(t) - f(s) = 2 pi (m w mod k)/k mod 2 pi for some s < t.  The
    attainable set of forward differences is [min drawdown, max drawup],
    computed exactly at the nodes.
    """
    data = _joint_eigendata(pieces, lens)
    if data is None:
        return None
    slopes, weights = data
    nodes = [pieces[0][1]] + [b for _, _, b in pieces]
    lengths = np.array([b - a for _, a, b in pieces])
    nP, n = slopes.shape
    best_margin = np.inf
    witness = None
    for j in range(n):
        f = np.concatenate([[0.0], np.cumsum(slopes[:, j] * lengths)])
        run_min = np.minimum.accumulate(f)
        run_max = np.maximum.accumulate(f)
        drawup = float(np.max(f - run_min))
        drawdown = float(np.min(f - run_max))
        sl = slopes[:, j]
        scale = max(np.abs(sl).max(), 1.0)
        # zero crossing: some s < t with f(t) = f(s)
        zero_cross = bool(
            np.any(np.abs(sl) * lengths <= 1e-12 * scale)
            or (sl.max() > 0 and sl.min() < 0)
        )
        targets = sorted({(m * weights[j]) % lens.k for m in range(lens.k)})
        for a in targets:
            base = TWO_PI * a / lens.k
            if a == 0:
                if zero_cross:
                    return _crossing_report(f, nodes, 0.0, 0, "commuting-exact")
                # nonzero 2 pi ell targets still need checking below
            lo = math.floor((drawdown - base) / TWO_PI)
            hi = math.ceil((drawup - base) / TWO_PI)
            for ell in range(lo, hi + 1):
                c = base + TWO_PI * ell
                if abs(c) < 1e-15:
                    continue  # handled by zero_cross
                if drawdown - 1e-12 <= c <= drawup + 1e-12:
                    m = _deck_power_for(lens, weights[j], a)
                    return _crossing_report(f, nodes, c, m, "commuting-exact")
                best_margin = min(
                    best_margin, abs(c - drawup), abs(c - drawdown)
                )
    return EmbeddednessReport(True, "embedded", None, best_margin, "commuting-exact")


def _deck_power_for(lens, w, residue):
    for m in range(lens.k):
        if (m * w) % lens.k == residue % lens.k:
            return m
    return 0


def _crossing_report(f, nodes, c, m, method):
    # locate a node pair bracketing the crossing, then refine linearly
    nN = len(f)
    for i in range(nN):
        for j in range(i + 1, nN):
            if (f[j] - f[i] - c) * (f[j] - f[i] - c) <= 1e-20 or (
                i + 1 < j and (f[j] - f[i] >= c) != (f[j - 1] - f[i] >= c)
            ):
                return EmbeddednessReport(
                    False, "not_embedded", (nodes[i], nodes[j], m), 0.0, method
                )
    return EmbeddednessReport(False, "not_embedded", (nodes[0], nodes[-1], m), 0.0, method)


def is_embedded(p, t0, t1, grid=DEFAULT_EMBED_GRID):
    """Certified check that {U_t}_{[t0,t1]} has no discriminant pair.

    True iff 1 is not an eigenvalue of g^{-m} U_t U_s^{-1} for any s < t in
    [t0, t1] and any deck power m.  Commuting pieces (in particular every
    Reeb segment) are decided exactly; otherwise a grid sweep with a
    Lipschitz certificate is used, and an uncertifiable margin yields an
    explicit indeterminate status.  A constant stretch is the identity at
    every pair of times, which we count as embedded by convention (it is an
    identity factor in any decomposition).
    """
    if not (0.0 <= t0 < t1 <= 1.0):
        raise ValueError(f"need 0 <= t0 < t1 <= 1, got ({t0}, {t1})")
    lens = p.lens
    pieces = _restrict_pieces(p, t0, t1)
    if all(_opnorm(A) * (b - a) <= 1e-12 for A, a, b in pieces):
        return EmbeddednessReport(True, "embedded", None, np.inf, "constant")
    exact = _commuting_embedded(pieces, lens, t0, t1)
    if exact is not None:
        return exact
    return _sweep_embedded(p, pieces, t0, t1, grid)


def _sweep_embedded(p, pieces, t0, t1, grid):
    lens = p.lens
    classes = lens.weight_classes()
    L = max(_opnorm(A) for A, _, _ in pieces)
    lam_all = np.concatenate([np.linalg.eigvalsh(A) for A, _, _ in pieces])
    eta = float(lam_all.min()) if lam_all.min() > 0 else (
        float(-lam_all.max()) if lam_all.max() < 0 else 0.0
    )
    # near-diagonal window where sign-definiteness controls the m=0 phases
    if eta > 0:
        d_nd = min(eta / (2 * L * L), math.pi / (2 * lens.k * L), (t1 - t0) / 2)
    else:
        d_nd = 0.0
    G = max(8, math.ceil((t1 - t0) * grid))
    if d_nd > 0:
        # step small enough that the smallest certified margin (about
        # eta * d_nd, for pairs just past the near-diagonal window) beats
        # the Lipschitz movement L * delta
        G = max(G, math.ceil(4 * (t1 - t0) / d_nd),
                math.ceil((t1 - t0) * 2 * (L + eta) / (eta * d_nd)))
    G = min(G, 4096)  # cost cap; beyond this the verdict is indeterminate
    ts = np.unique(
        np.concatenate(
            [np.linspace(t0, t1, G + 1), [a for _, a, _ in pieces], [t1]]
        )
    )
    delta = float(np.diff(ts).max())
    Us = [p.value(t) for t in ts]
    margin = np.inf
    witness = None
    for i in range(len(ts)):
        for j in range(i + 1, len(ts)):
            if d_nd > 0 and ts[j] - ts[i] < d_nd - delta:
                continue  # covered by the sign-definiteness argument
            W = Us[j] @ Us[i].conj().T
            for idx in classes:
                T, _ = scipy.linalg.schur(W[np.ix_(idx, idx)], output="complex")
                block = np.angle(np.diag(T))
                w = lens.weights[idx[0]]
                for m in range(lens.k):
                    ph = block - TWO_PI * m * w / lens.k
                    d0 = np.abs(np.mod(ph + math.pi, TWO_PI) - math.pi).min()
                    if d0 < margin:
                        margin = float(d0)
                        witness = (float(ts[i]), float(ts[j]), m)
    if margin <= PHASE_ZERO_TOL:
        return EmbeddednessReport(False, "not_embedded", witness, margin, "grid")
    if d_nd == 0.0:
        # mixed-sign non-commuting generators: no near-diagonal control
        return EmbeddednessReport(None, "indeterminate", None, margin, "grid")
    if margin > L * delta:
        return EmbeddednessReport(True, "embedded", None, margin, "grid")
    return EmbeddednessReport(None, "indeterminate", None, margin, "grid")


# --- random inputs (all randomness through a caller-provided Generator) ---


def haar_unitary(dim, rng):
    """Haar-distributed unitary: QR of a complex Gaussian, phases fixed."""
    X = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(X)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_hermitian(lens, rng, norm_bound=2.0, semidefinite=None):
    """Random Hermitian commuting with the deck action (blockwise GUE).

    semidefinite="pos"/"neg" shifts the spectrum to the requested sign.
    """
    n = lens.n
    A = np.zeros((n, n), dtype=complex)
    for idx in lens.weight_classes():
        m = len(idx)
        X = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
        A[np.ix_(idx, idx)] = (X + X.conj().T) / 2.0
    s = _opnorm(A)
    if s > 0:
        A *= rng.uniform(0.3, 1.0) * norm_bound / s
    if semidefinite == "pos":
        A = A - np.linalg.eigvalsh(A).min() * np.eye(n)
    elif semidefinite == "neg":
        A = A - np.linalg.eigvalsh(A).max() * np.eye(n)
    return A


def random_path(lens, rng, segments=2, norm_bound=2.0):
    durations = rng.dirichlet(np.ones(segments))
    segs = [
        (random_hermitian(lens, rng, norm_bound), float(d))
        for d in durations
    ]
    return UnitaryPath(lens, segs)
