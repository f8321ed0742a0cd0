"""Connection, curvature and metric type of a left-invariant metric on SU(2)."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from .errors import InvariantError
from .frames import check_structure_matrix, normalize, structure_constants

EIG_RTOL = 1e-8


def connection(C) -> np.ndarray:
    """Connection forms of the orthonormal frame: ``w[i, j, k] = omega_ij(X_k)``.

    Antisymmetric in ``(i, j)``; ``nabla_{X_k} X_i = -sum_j w[i, j, k] X_j``.
    """
    c = structure_constants(check_structure_matrix(C))
    # omega_ij = 1/2 sum_k (c^k_ij - c^i_jk + c^j_ik) omega_k
    return 0.5 * (
        np.einsum("kij->ijk", c) - c + np.einsum("jik->ijk", c)
    )


def curvature(C) -> np.ndarray:
    """Riemann tensor ``R[i, j, l, m] = <R(X_l, X_m) X_j, X_i>`` from the structure constants.

    The diagonal terms ``R_ijij`` are sectional curvatures.  In three
    dimensions every nonzero component is of type ``R_ijij`` or ``R_ijim``
    with ``i, j, m`` distinct; the rest follows from the pair symmetries.
    """
    C = check_structure_matrix(C)
    c = structure_constants(C)
    a = -0.5 * float(np.trace(C))
    R = np.zeros((3, 3, 3, 3))

    def put(i, j, l, m, v):
        R[i, j, l, m] = v
        R[j, i, m, l] = v
        R[j, i, l, m] = -v
        R[i, j, m, l] = -v
        R[l, m, i, j] = v
        R[m, l, j, i] = v
        R[m, l, i, j] = -v
        R[l, m, j, i] = -v

    for i, j, m in permutations(range(3)):
        sec = (
            a * a + c[i, i, m] ** 2 - c[i, i, j] ** 2 - c[j, i, j] ** 2
            - c[m, i, j] ** 2 - c[i, j, m] * c[j, m, i]
        )
        mixed = c[j, i, j] * (c[m, i, j] - c[i, j, m] + c[j, m, i]) - 2 * c[i, i, j] * c[i, i, m]
        if i < j:
            put(i, j, i, j, sec)
        if j < m:
            put(i, j, i, m, mixed)
    return R


def sectional_curvature(R, u, v) -> float:
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    num = np.einsum("ijlm,i,j,l,m->", R, u, v, u, v)
    den = u @ u * (v @ v) - (u @ v) ** 2
    return float(num / den)


def transform_tensor(R, T) -> np.ndarray:
    """Components in the frame ``X~_i = sum_a T[a, i] X_a``."""
    return np.einsum("abcd,ai,bj,cl,dm->ijlm", R, T, T, T, T)


@dataclass(frozen=True)
class MetricClass:
    kind: str  # "constant" | "berger" | "generic"
    normalized_diag: tuple[float, float, float]
    b: float | None = None
    c: float | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        out: dict = {"class": self.kind}
        if self.b is not None:
            out["b"] = self.b
        if self.c is not None:
            out["c"] = self.c
        out["normalized_diag"] = list(self.normalized_diag)
        return out


def _close(x: float, y: float, rtol: float) -> bool:
    return abs(x - y) <= rtol * max(abs(x), abs(y))


def classify(C, rtol: float = EIG_RTOL) -> MetricClass:
    """Round / Berger / generic decision from the normalized structure matrix.

    For a Berger metric ``c = c1 c2`` and ``b = sqrt(c1 / c2)`` where ``c1``
    (resp. ``c2``) is half the magnitude of the simple (resp. double)
    eigenvalue.  ``b = 1`` is reported as constant curvature.
    """
    _, D = normalize(C)
    d = np.diag(D).copy()
    diag = tuple(float(x) for x in d)
    if not (np.all(d > 0) or np.all(d < 0)):
        raise InvariantError(
            f"normalized diagonal {diag} has mixed signs; not a metric structure matrix"
        )
    x, y, z = np.abs(d)
    same = [_close(x, y, rtol), _close(y, z, rtol), _close(x, z, rtol)]
    if all(same):
        mean = float(np.mean(np.abs(d)))
        return MetricClass("constant", diag, c=(mean / 2) ** 2)
    if any(same):
        if same[0]:
            double, simple = (x + y) / 2, z
        elif same[1]:
            double, simple = (y + z) / 2, x
        else:
            double, simple = (x + z) / 2, y
        c1, c2 = simple / 2, double / 2
        return MetricClass("berger", diag, b=float(np.sqrt(c1 / c2)), c=float(c1 * c2))
    return MetricClass("generic", diag)
