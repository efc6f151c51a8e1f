"""Independent computation routes used to pin expected values in the tests.

Nothing in this module goes through the package's linear-algebra helpers.
Matrix products and tensor products are explicit Python loops over nested
lists, eigenvalues come from characteristic polynomials instead of a
Hermitian eigensolver, and entropies are scalar ``math.log2`` sums.  The
redundancy is the point: a bug shared between the package and these
routes would have to be introduced twice, independently.

Only ``numpy.roots`` is imported from numpy, to solve the characteristic
polynomial; everything feeding it is hand-rolled.
"""

import math

import numpy as np

# ---------------------------------------------------------------------------
# plain-list linear algebra


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert len(a[0]) == k
    out = [[0j] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            s = 0j
            for t in range(k):
                s += a[i][t] * b[t][j]
            out[i][j] = s
    return out


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def dagger(a):
    n, m = len(a), len(a[0])
    return [[a[j][i].conjugate() for j in range(n)] for i in range(m)]


def vec_kron(u, v):
    return [x * y for x in u for y in v]


def mat_kron(a, b):
    n, m = len(a), len(a[0])
    p, q = len(b), len(b[0])
    out = [[0j] * (m * q) for _ in range(n * p)]
    for i in range(n):
        for j in range(m):
            for k in range(p):
                for l in range(q):
                    out[i * p + k][j * q + l] = a[i][j] * b[k][l]
    return out


def outer(u, v):
    return [[x * y.conjugate() for y in v] for x in u]


def identity(n):
    return [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)]


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


# ---------------------------------------------------------------------------
# spectra via characteristic polynomial (Faddeev-LeVerrier), dim <= 4


def char_poly_coeffs(a):
    """Coefficients [1, c1, ..., cn] of det(lambda*I - A)."""
    n = len(a)
    coeffs = [1.0 + 0j]
    m = identity(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        coeffs.append(c)
        for i in range(n):
            m[i][i] += c
    return coeffs


def eigvals_via_charpoly(a):
    """Real eigenvalues of a Hermitian matrix, descending, via np.roots."""
    roots = np.roots(np.asarray(char_poly_coeffs(a)))
    assert max(abs(r.imag) for r in roots) < 1e-7, "non-real root for Hermitian input"
    return sorted((float(r.real) for r in roots), reverse=True)


def entropy_from_spectrum(lams):
    s = 0.0
    for lam in lams:
        # root-finding error near zero can reach ~1e-8 for quartics
        assert lam > -1e-6, f"spectrum oracle got eigenvalue {lam}"
        if lam > 1e-12:
            s -= lam * math.log2(lam)
    return s


def entropy_via_charpoly(a):
    return entropy_from_spectrum(eigvals_via_charpoly(a))


def binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))


# ---------------------------------------------------------------------------
# the two-qubit probe built from its eight outer-product terms

_TERMS = (
    ((0, 0), (0, 0), +1),
    ((1, 0), (0, 0), +1),
    ((0, 1), (0, 1), +1),
    ((1, 1), (0, 1), +1),
    ((0, 0), (1, 0), -1),
    ((1, 0), (1, 0), +1),
    ((0, 1), (1, 1), -1),
    ((1, 1), (1, 1), +1),
)


def probe_unitary():
    """4x4 coupling assembled term by term, scaled by sqrt(1/2)."""
    basis = {(i, j): vec_kron([1.0 if t == i else 0.0 for t in range(2)],
                              [1.0 if a == j else 0.0 for a in range(2)])
             for i in range(2) for j in range(2)}
    u = [[0j] * 4 for _ in range(4)]
    w = math.sqrt(0.5)
    for ket, bra, sign in _TERMS:
        term = outer(basis[ket], basis[bra])
        for r in range(4):
            for c in range(4):
                u[r][c] += sign * w * term[r][c]
    return u


def probe_ancilla():
    w = math.sqrt(0.5)
    return [w + 0j, w + 0j]


def rotation_quarter():
    """sqrt(1/2) * [[1, -1], [1, 1]], the travel-only factor of the probe."""
    w = math.sqrt(0.5)
    return [[w + 0j, -w + 0j], [w + 0j, w + 0j]]


def attacked_state(travel, chi, unitary):
    return mat_vec(unitary, vec_kron(travel, chi))


def dephased_mixture_entropy(psi, ancilla_dim):
    """Entropy of (|psi><psi| + Zt|psi><psi|Zt)/2 with Zt on the travel qubit.

    An equal mixture of two pure states has rank at most 2 and eigenvalues
    (1 +- |<psi|phi>|)/2, so only the overlap magnitude is needed.
    """
    overlap = 0j
    for k, amp in enumerate(psi):
        z = 1.0 - 2.0 * ((k // ancilla_dim) % 2)
        overlap += amp.conjugate() * z * amp
    ov = abs(overlap)
    return entropy_from_spectrum([(1.0 + ov) / 2.0, (1.0 - ov) / 2.0])


def binomial_sigma(p, n):
    return math.sqrt(p * (1.0 - p) / n)


# frozen scalars, each double-checked against the routes above at test time
BINARY_ENTROPY_011 = 0.499915958164528
ENTROPY_DIAG_09_01 = 0.4689955935892812
