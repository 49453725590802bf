"""Independent reference computations shared by the test modules."""

import math

import numpy as np


def fd_derivatives(c, t, order, h=0.05, half=7):
    """Derivatives 1..order from a polynomial fit to point samples (no jets involved)."""
    offsets = np.arange(-half, half + 1) * h
    pts = np.array([c(t + s) for s in offsets])
    V = np.vander(offsets, 2 * half + 1, increasing=True)
    coeffs = np.linalg.solve(V, pts)
    return np.array([coeffs[j] * math.factorial(j) for j in range(1, order + 1)])


def fd_frenet(c, t):
    """Frame and curvatures from a QR factorization of finite-difference derivatives."""
    n = c.dim
    D = fd_derivatives(c, t, n)
    Q, R = np.linalg.qr(D[: n - 1].T, mode="complete")
    signs = np.sign(np.diag(R))
    Q[:, : n - 1] *= signs
    frame = Q.T.copy()
    if np.linalg.det(frame) < 0:
        frame[-1] *= -1
    diag = np.abs(np.diag(R))
    speed = np.linalg.norm(D[0])
    k = [diag[i + 1] / (diag[i] * speed) for i in range(n - 2)]
    k.append(float(D[n - 1] @ frame[-1]) / (diag[n - 2] * speed))
    return frame, np.array(k)
