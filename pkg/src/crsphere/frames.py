"""Left-invariant frames on S^3 = SU(2) and their structure-constant matrices.

A left-invariant metric is encoded by a frame matrix ``A`` (orthonormal
coframe ``omega_i = sum_j A[j, i] omega'_j`` relative to the standard coframe)
or, up to isometry, by its structure matrix ``C`` whose row ``i`` holds
``(c^i_23, c^i_31, c^i_12)`` with ``-d omega_i = sum_{j<k} c^i_jk omega_j ^ omega_k``.
Both are plain ``(3, 3)`` float arrays.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import check_on_sphere
from .errors import InvariantError

SYM_TOL = 1e-10
DET_TOL = 1e-10

# column of C holding c^i_{jk} for the 0-based pair (j, k)
_PAIR_COLUMN = {(1, 2): 0, (2, 0): 1, (0, 1): 2}


def standard_vectors(point) -> np.ndarray:
    """Standard left-invariant frame ``X'_1, X'_2, X'_3`` at ``(z, w)`` as rows in C^2."""
    z, w = check_on_sphere(point)
    zb, wb = z.conjugate(), w.conjugate()
    return np.array([[1j * z, 1j * w], [-wb, zb], [-1j * wb, 1j * zb]])


def standard_coframe(point, v) -> np.ndarray:
    """Values ``omega'_j(v)`` for a tangent vector ``v`` in C^2 at ``point``."""
    X = standard_vectors(point)
    v = np.asarray(v, dtype=complex)
    return np.real(X.conj() @ v)


def check_frame_matrix(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3):
        raise InvariantError(f"frame matrix must be 3x3, got {A.shape}")
    det = np.linalg.det(A)
    if abs(det) <= DET_TOL:
        raise InvariantError(f"frame matrix is singular (|det A| = {abs(det):.3e})", abs(det))
    return A


def check_structure_matrix(C) -> np.ndarray:
    C = np.asarray(C, dtype=float)
    if C.shape != (3, 3):
        raise InvariantError(f"structure matrix must be 3x3, got {C.shape}")
    asym = float(np.max(np.abs(C - C.T)))
    if asym > SYM_TOL:
        raise InvariantError(f"structure matrix is not symmetric (defect {asym:.3e})", asym)
    det = np.linalg.det(C)
    if abs(det) <= DET_TOL:
        raise InvariantError(f"structure matrix is singular (|det C| = {abs(det):.3e})", abs(det))
    return C


def cofactor(A: np.ndarray) -> np.ndarray:
    """Cofactor matrix; it is the matrix of ``A`` acting on 2-forms."""
    A = np.asarray(A, dtype=float)
    out = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            minor = np.delete(np.delete(A, i, axis=0), j, axis=1)
            out[i, j] = (-1) ** (i + j) * np.linalg.det(minor)
    return out


def structure_matrix(A) -> np.ndarray:
    """Structure matrix of the orthonormal coframe ``omega = omega' A``.

    ``d omega'_j = 2 * omega'_j`` (Hodge star of the round metric) and the
    2-form basis ``(omega_2^omega_3, omega_3^omega_1, omega_1^omega_2)`` is
    ``(primed basis) @ cofactor(A)``.  The result equals ``-2 A^T A / det A``.
    """
    A = check_frame_matrix(A)
    # d omega as coefficients on the primed 2-form basis, one column per omega_i
    d_primed = 2.0 * A
    d_new = np.linalg.solve(cofactor(A), d_primed)
    return -d_new.T


def structure_constants(C) -> np.ndarray:
    """Full antisymmetric array ``c[k, i, j] = c^k_ij`` read off ``C``."""
    C = np.asarray(C, dtype=float)
    c = np.zeros((3, 3, 3))
    for (j, k), col in _PAIR_COLUMN.items():
        c[:, j, k] = C[:, col]
        c[:, k, j] = -C[:, col]
    return c


@dataclass(frozen=True)
class FrameInvariants:
    a: float
    mu: complex
    tau: complex
    c231: float

    def magnitudes(self) -> dict:
        return {"a": self.a, "abs_mu": abs(self.mu), "abs_tau": abs(self.tau), "c231": self.c231}


def invariants(C) -> FrameInvariants:
    """Scalars ``a``, ``mu = c^1_12 + i c^1_13``, ``tau`` and ``c^1_23`` of a frame."""
    C = check_structure_matrix(C)
    c = structure_constants(C)
    a = -0.5 * float(np.trace(C))
    mu = complex(c[0, 0, 1], c[0, 0, 2])
    tau = complex(c[1, 1, 0], 0.5 * (c[1, 2, 0] - c[2, 0, 1]))
    return FrameInvariants(a=a, mu=mu, tau=tau, c231=float(c[0, 1, 2]))


def rotation_matrix(t: float, eps: int = 1) -> np.ndarray:
    """``T = diag(eps, 1, 1) Rot_23(t)``: ``X~1 = eps X1``, ``X~2 = cos t X2 - sin t X3``."""
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    c, s = np.cos(t), np.sin(t)
    return np.array([[eps, 0.0, 0.0], [0.0, c, s], [0.0, -s, c]])


def transform(C, T) -> np.ndarray:
    """Structure matrix in the frame ``X~ = X T`` for orthogonal ``T``."""
    T = np.asarray(T, dtype=float)
    return np.sign(np.linalg.det(T)) * T.T @ np.asarray(C, dtype=float) @ T


def rotate_frame(C, t: float, eps: int = 1) -> np.ndarray:
    C = check_structure_matrix(C)
    return transform(C, rotation_matrix(t, eps))


def normalize(C) -> tuple[np.ndarray, np.ndarray]:
    """Rotate to a frame where ``C`` is diagonal.

    Returns ``(T, D)`` with ``T`` in SO(3) and ``D = T^T C T`` diagonal, the
    diagonal ordered by decreasing absolute value (ties: larger value first).
    """
    C = check_structure_matrix(C)
    vals, vecs = np.linalg.eigh(0.5 * (C + C.T))
    order = sorted(range(3), key=lambda i: (-abs(vals[i]), -vals[i]))
    vals, vecs = vals[order], vecs[:, order]
    for j in range(3):
        col = vecs[:, j]
        if col[np.argmax(np.abs(col))] < 0:
            vecs[:, j] = -col
    if np.linalg.det(vecs) < 0:
        vecs[:, 2] = -vecs[:, 2]
    return vecs, np.diag(vals)


def frame_vectors(A) -> np.ndarray:
    """Coefficients of the dual frame: ``X_i = sum_j inv(A)[i, j] X'_j`` (rows)."""
    return np.linalg.inv(check_frame_matrix(A))


def to_json(M) -> list[float]:
    return [float(x) for x in np.asarray(M, dtype=float).reshape(9)]


def from_json(values) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.size != 9:
        raise InvariantError(f"expected 9 entries, got {arr.size}")
    return arr.reshape(3, 3)
