"""Small linear-algebra helpers: null spaces, canonical bases, cross products."""

from __future__ import annotations

import numpy as np
from scipy.linalg import subspace_angles


def null_space(rows, rtol=1e-6, atol=None):
    """Orthonormal basis (as rows) of the numerical null space of ``rows``.

    Singular values below ``rtol * sigma_max`` are treated as zero.  When
    ``sigma_max`` itself is below ``atol`` (default ``rtol``) the whole
    space is returned.  Also returns the singular-value spectrum.
    """
    A = np.atleast_2d(np.asarray(rows, dtype=float))
    n = A.shape[1]
    if atol is None:
        atol = rtol
    if A.shape[0] == 0:
        return np.eye(n), np.zeros(0)
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    smax = s[0] if s.size else 0.0
    if smax < atol:
        return np.eye(n), s
    rank = int(np.sum(s >= rtol * smax))
    return vh[rank:].copy(), s


def canonical_sign(v, eps=1e-12):
    """Flip ``v`` so its first coordinate with ``|x| > eps`` is positive."""
    v = np.asarray(v, dtype=float)
    for x in v:
        if abs(x) > eps:
            return v if x > 0 else -v
    return v


def canonical_basis(basis):
    """Deterministic orthonormal basis of ``span(basis)``.

    Pivoted Gram-Schmidt over the columns of the orthogonal projector,
    so coordinate axes contained in the span are returned as themselves.
    Rows are ordered by pivot index and sign-canonicalized.
    """
    B = np.atleast_2d(np.asarray(basis, dtype=float))
    if B.size == 0:
        return np.zeros((0, B.shape[-1] if B.ndim == 2 else 0))
    n = B.shape[1]
    r = B.shape[0]
    P = B.T @ B
    chosen = []
    residual = P.copy()
    for _ in range(r):
        norms = np.linalg.norm(residual, axis=0)
        j = int(np.argmax(norms - 1e-12 * np.arange(n)))
        v = residual[:, j] / norms[j]
        chosen.append((j, v))
        residual = residual - np.outer(v, v @ residual)
    chosen.sort(key=lambda item: item[0])
    out = np.array([canonical_sign(v) for _, v in chosen])
    # one re-orthonormalization pass for stability
    q, _ = np.linalg.qr(out.T)
    q = q[:, :r].T
    return np.array([canonical_sign(v) for v in q])


def generalized_cross(vectors):
    """Vector ``w`` with ``det([v_1; ...; v_{n-1}; w]) = |w|^2`` and ``w`` orthogonal to all ``v_i``.

    ``vectors`` is an ``(n-1, n)`` array.  ``w_j = det([v_1; ...; v_{n-1}; e_j])``.
    """
    V = np.asarray(vectors, dtype=float)
    k, n = V.shape
    if k != n - 1:
        raise ValueError("need n-1 vectors in R^n")
    w = np.empty(n)
    M = np.empty((n, n))
    M[:k] = V
    for j in range(n):
        M[k] = 0.0
        M[k, j] = 1.0
        w[j] = np.linalg.det(M)
    return w


def complete_frame(frame, n):
    """Extend orthonormal rows to a positively oriented orthonormal basis of R^n."""
    F = np.asarray(frame, dtype=float).reshape(-1, n)
    k = F.shape[0]
    if k == n:
        return F
    if k == n - 1:
        w = generalized_cross(F)
        return np.vstack([F, w / np.linalg.norm(w)])
    extra, _ = null_space(F, rtol=1e-12, atol=0.0) if k else (np.eye(n), None)
    extra = np.array([canonical_sign(v) for v in extra])
    out = np.vstack([F, extra]) if k else extra
    if np.linalg.det(out) < 0:
        out[-1] = -out[-1]
    return out


def max_principal_angle(a, b):
    """Largest principal angle between ``span(rows of a)`` and ``span(rows of b)``."""
    a = np.atleast_2d(a)
    b = np.atleast_2d(b)
    if a.shape[0] != b.shape[0]:
        return np.pi / 2
    if a.shape[0] == 0:
        return 0.0
    return float(np.max(subspace_angles(a.T, b.T)))


def random_rotation(n, rng):
    """Haar-random rotation (det +1)."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q
