"""Invariant quadratic forms as conical generating functions.

A form lives on R^{2M} with the M complex coordinates realified in interleaved
(x_j, y_j) pairs.  The cyclic group Z_{k'} acts by rotating coordinate j by
action_phases[j]; every constructor below produces exactly invariant forms, and
validation checks invariance rather than projecting onto it (silent
symmetrization would mask assembly bugs).

The cohomological index of the sublevel set cut out by an invariant form
equals nullity + (number of negative eigenvalues); `index` computes that count
with a relative tolerance for the exactly-zero blocks that appear in based
families.
"""

from dataclasses import dataclass

import numpy as np

# Eigenvalue lambda counts as <= 0 when lambda <= tol * ||S||.  Based families
# contain exactly-zero blocks whose eigenvalues are polluted at machine-eps
# scale by the sharp coupling, hence a relative rather than absolute cut.
DEFAULT_NULL_TOL = 1e-8

# Cayley transform needs -1 away from spec(U); subdivision keeps eigenphases
# within pi/2 of 0 so this guard only trips on contract violations.
CAYLEY_GUARD = 1e-6

J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


class CayleyDomainError(ValueError):
    pass


def realify(A):
    """Real 2m x 2m matrix of the Hermitian form v -> v* A v, coords (x,y) interleaved."""
    m = A.shape[0]
    S = np.zeros((2 * m, 2 * m))
    S[0::2, 0::2] = A.real
    S[1::2, 1::2] = A.real
    S[0::2, 1::2] = -A.imag
    S[1::2, 0::2] = A.imag
    return S


def complex_structure(m):
    """Multiplication by i on R^{2m} in interleaved coordinates."""
    return np.kron(np.eye(m), J2)


def rotation_matrix(phases):
    """Block rotation of R^{2M} by the given angle per complex coordinate."""
    blocks = [
        np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]]) for t in phases
    ]
    M = len(blocks)
    R = np.zeros((2 * M, 2 * M))
    for j, B in enumerate(blocks):
        R[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = B
    return R


@dataclass(frozen=True)
class InvariantQuadraticForm:
    matrix: np.ndarray  # real symmetric, 2M x 2M; W(v) = 1/2 v^T S v
    base_dim: int  # 2n, the first n complex coordinates
    action_phases: np.ndarray  # M angles, multiples of 2*pi/k_prime
    k_prime: int

    @property
    def total_dim(self):
        return self.matrix.shape[0]

    @property
    def fiber_dim(self):
        return self.total_dim - self.base_dim

    def validate(self):
        S = self.matrix
        scale = max(np.linalg.norm(S), 1.0)
        if not np.all(np.isfinite(S)):
            raise ValueError("form matrix has non-finite entries")
        if np.linalg.norm(S - S.T) > 1e-12 * scale:
            raise ValueError("form matrix is not symmetric")
        R = rotation_matrix(self.action_phases)
        if np.linalg.norm(R.T @ S @ R - S) > 1e-10 * scale:
            raise ValueError("form is not invariant under the cyclic action")
        if self.base_dim + self.fiber_dim != self.total_dim:
            raise ValueError("base/fiber bookkeeping broken")
        return self

    def negate(self):
        return InvariantQuadraticForm(
            -self.matrix, self.base_dim, self.action_phases, self.k_prime
        )


def base_phases(lens):
    """Z_{k'} phases carried by the base coordinates: 2*pi*w_j/k'."""
    return 2.0 * np.pi * (np.array(lens.weights) % lens.k_prime) / lens.k_prime


def zero_form(lens):
    n = lens.n
    return InvariantQuadraticForm(
        np.zeros((2 * n, 2 * n)), 2 * n, base_phases(lens), lens.k_prime
    )


def index(Q, tol=DEFAULT_NULL_TOL):
    """nullity + negative count = cohomological index of the sublevel set."""
    lam = np.linalg.eigvalsh(Q.matrix)
    scale = np.abs(lam).max() if lam.size else 0.0
    if scale < 1e-14:
        scale = 1.0  # zero form: every eigenvalue is null
    return int(np.sum(lam <= tol * scale))


def direct_sum(Q1, Q2):
    if Q1.k_prime != Q2.k_prime:
        raise ValueError(f"k' mismatch: {Q1.k_prime} vs {Q2.k_prime}")
    d1, d2 = Q1.total_dim, Q2.total_dim
    S = np.zeros((d1 + d2, d1 + d2))
    S[:d1, :d1] = Q1.matrix
    S[d1:, d1:] = Q2.matrix
    return InvariantQuadraticForm(
        S,
        Q1.base_dim,
        np.concatenate([Q1.action_phases, Q2.action_phases]),
        Q1.k_prime,
    )


def sharp(F, G, lens=None):
    """Generating function of the composite map.

    (F # G)(q; z1, z2, nu1, nu2) = F(z1, nu1) + G(z2, nu2)
                                   - 2<z2 - q, i(z1 - q)>
    with q the new base and everything else fiber.  Total dimension grows by
    2n + 2n: the old bases become fibers alongside the old fibers.
    """
    if F.base_dim != G.base_dim:
        raise ValueError(f"base dimension mismatch: {F.base_dim} vs {G.base_dim}")
    if F.k_prime != G.k_prime:
        raise ValueError(f"k' mismatch: {F.k_prime} vs {G.k_prime}")
    n2 = F.base_dim
    if not np.allclose(F.action_phases[: n2 // 2], G.action_phases[: n2 // 2], atol=1e-12):
        raise ValueError("base action phases differ")
    fF = F.fiber_dim
    fG = G.fiber_dim
    D = 3 * n2 + fF + fG
    H = np.zeros((D, D))
    q = slice(0, n2)
    z1 = slice(n2, 2 * n2)
    z2 = slice(2 * n2, 3 * n2)
    v1 = slice(3 * n2, 3 * n2 + fF)
    v2 = slice(3 * n2 + fF, D)
    H[z1, z1] += F.matrix[:n2, :n2]
    H[z1, v1] += F.matrix[:n2, n2:]
    H[v1, z1] += F.matrix[n2:, :n2]
    H[v1, v1] += F.matrix[n2:, n2:]
    H[z2, z2] += G.matrix[:n2, :n2]
    H[z2, v2] += G.matrix[:n2, n2:]
    H[v2, z2] += G.matrix[n2:, :n2]
    H[v2, v2] += G.matrix[n2:, n2:]
    J = complex_structure(n2 // 2)

    # -2<z2 - q, i(z1 - q)> expands to -2 z2.J z1 + 2 z2.J q + 2 q.J z1
    # (the q.J q term vanishes since J is antisymmetric); W = 1/2 u^T H u,
    # so each bilinear c * a^T M b contributes c*M at (a,b) and c*M^T at (b,a).
    def couple(sa, sb, M):
        H[sa, sb] += M
        H[sb, sa] += M.T

    couple(z2, z1, -2.0 * J)
    couple(z2, q, 2.0 * J)
    couple(q, z1, 2.0 * J)

    base_ph = F.action_phases[: n2 // 2]
    phases = np.concatenate(
        [base_ph, base_ph, base_ph, F.action_phases[n2 // 2 :], G.action_phases[n2 // 2 :]]
    )
    return InvariantQuadraticForm(H, n2, phases, F.k_prime)


def cayley_gf(U, lens):
    """Fiberless generating function of the unitary U via the Cayley transform.

    W(q) = 1/2 q^T realify(A) q with A = 2i(I - U)(I + U)^{-1} Hermitian.
    Contract: for q = (z + Uz)/2 the differential dW(q) is the covector
    i(z - Uz), i.e. the form generates the graph of U.
    """
    m = U.shape[0]
    lam = np.linalg.eigvals(U)
    if np.abs(lam + 1.0).min() < CAYLEY_GUARD:
        raise CayleyDomainError(
            "Cayley transform undefined: eigenvalue of U within "
            f"{CAYLEY_GUARD} of -1 (subdivide the path)"
        )
    I = np.eye(m)
    A = 2j * (I - U) @ np.linalg.inv(I + U)
    A = (A + A.conj().T) / 2.0  # Hermitian up to roundoff by construction
    return InvariantQuadraticForm(realify(A), 2 * m, base_phases(lens), lens.k_prime)
