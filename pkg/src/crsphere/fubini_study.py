"""Extrinsic geometry of an immersion ``[e0]: S^3 -> CP^n`` through its unit lift.

A tangent vector of CP^n at ``[e0]`` is represented by a vector of C^{n+1}
orthogonal to ``e0`` (the element ``conj(e0) (x) W`` of ``Lbar (x) L^perp``).
With that representation the Fubini-Study metric of holomorphic sectional
curvature 4 is ``Re <u, conj v>`` and ``J`` is multiplication by ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .algebra import PolyVector, apply_field, check_on_sphere, hermitian_pair
from .errors import (
    AlignmentError,
    EquivarianceError,
    ImmersionError,
    InvariantError,
    NotCRError,
)
from .frames import structure_matrix
from .intrinsic import curvature

RANK_TOL = 1e-9
EQUIV_TOL = 1e-8
CR_TOL = 1e-8
ROUNDOFF = 1e-14
HORIZONTAL_TOL = 1e-10
HORIZONTAL_REL = 1e-12
DEFAULT_SEED = 42
DEFAULT_SAMPLES = 32

STANDARD_FIELDS = ((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0))


def sample_points(count: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Seeded random points of S^3 as an ``(count, 2)`` complex array."""
    q = np.random.default_rng(seed).normal(size=(count, 4))
    q /= np.linalg.norm(q, axis=1, keepdims=True)
    return q[:, 0::2] + 1j * q[:, 1::2]


class ImmersionLift:
    """Unit lift ``e0`` of a map ``S^3 -> CP^n``; caches exact derivatives."""

    def __init__(self, e0: PolyVector, lift_id: str = "lift", meta: dict | None = None):
        self.e0 = e0 if isinstance(e0, PolyVector) else PolyVector(e0)
        self.lift_id = lift_id
        self.meta = dict(meta or {})
        self._dcache: dict = {}

    @property
    def n(self) -> int:
        return len(self.e0) - 1

    @cached_property
    def unit_norm_defect(self) -> float:
        return (hermitian_pair(self.e0, self.e0) - 1.0).max_abs_coeff()

    def check_unit(self, tol: float = 1e-9) -> None:
        if self.unit_norm_defect > tol:
            raise InvariantError(
                f"lift is not unit: |<e0, e0> - 1| = {self.unit_norm_defect:.3e}",
                self.unit_norm_defect,
            )

    def derivative(self, X) -> PolyVector:
        key = tuple(float(x) for x in X)
        if key not in self._dcache:
            self._dcache[key] = apply_field(self.e0, key)
        return self._dcache[key]

    @cached_property
    def standard_pushforwards(self) -> tuple[PolyVector, PolyVector, PolyVector]:
        return tuple(pushforward(self, X) for X in STANDARD_FIELDS)

    def to_json(self) -> dict:
        return {"lift_id": self.lift_id, "n": self.n, "meta": self.meta, "e0": self.e0.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "ImmersionLift":
        return cls(PolyVector.from_json(data["e0"]), data.get("lift_id", "lift"), data.get("meta"))


@dataclass(frozen=True)
class TangentVectorAtPoint:
    ambient: np.ndarray
    base: tuple[complex, complex]


def _project_horizontal(v: np.ndarray, e0: np.ndarray) -> np.ndarray:
    return v - (v @ e0.conj()) * e0


def pushforward(lift: ImmersionLift, X) -> PolyVector:
    """Horizontal part ``X(e0) - <X(e0), conj e0> e0`` of the derivative along ``X``."""
    X = tuple(float(x) for x in X)
    if not any(X):
        raise ValueError("zero field has no pushforward")
    Xe0 = lift.derivative(X)
    return Xe0 - lift.e0 * hermitian_pair(Xe0, lift.e0)


def tangent_at(lift: ImmersionLift, W: PolyVector, point) -> TangentVectorAtPoint:
    z, w = check_on_sphere(point)
    amb = W.evaluate((z, w))
    e0 = lift.e0.evaluate((z, w))
    defect = abs(amb @ e0.conj())
    if defect > HORIZONTAL_TOL * max(1.0, np.linalg.norm(amb)):
        raise InvariantError(f"vector is not horizontal (defect {defect:.3e})", defect)
    return TangentVectorAtPoint(amb, (z, w))


def fs_metric(u: TangentVectorAtPoint, v: TangentVectorAtPoint) -> float:
    if not np.allclose(u.base, v.base, atol=1e-14):
        raise ValueError("tangent vectors live at different base points")
    return float(np.real(u.ambient @ v.ambient.conj()))


def complex_structure(u: TangentVectorAtPoint) -> TangentVectorAtPoint:
    return TangentVectorAtPoint(1j * u.ambient, u.base)


def ambient_sectional_curvature(u: TangentVectorAtPoint, v: TangentVectorAtPoint) -> float:
    """Sectional curvature of CP^n(4) on the plane spanned by ``u, v``."""
    uu, vv, uv = fs_metric(u, u), fs_metric(v, v), fs_metric(u, v)
    area = uu * vv - uv**2
    juv = fs_metric(complex_structure(u), v)
    return (area + 3.0 * juv**2) / area


# ---------------------------------------------------------------------------
# CR data


@dataclass
class CRData:
    """Induced metric and Kähler-form data in a CR-aligned orthonormal frame.

    ``cr_frame`` is the frame matrix ``A`` of the aligned coframe
    (``omega = omega' A``); ``frame_coeffs = inv(A)`` expresses each aligned
    ``X_i`` in the standard fields.
    """

    Jmatrix: np.ndarray
    kahler_angle: float
    cr_frame: np.ndarray
    metric: np.ndarray
    metric_spread: float
    J_spread: float
    is_cr: bool
    totally_real: bool

    @property
    def frame_coeffs(self) -> np.ndarray:
        return np.linalg.inv(self.cr_frame)

    @property
    def structure_matrix(self) -> np.ndarray:
        return structure_matrix(self.cr_frame)

    @property
    def equivariance_spread(self) -> float:
        return max(self.metric_spread, self.J_spread)


def _spread(stack: np.ndarray) -> float:
    return float(np.max(stack.max(axis=0) - stack.min(axis=0)))


def _complete_basis(k: np.ndarray) -> np.ndarray:
    """Orthogonal matrix with first column ``k`` (unit), built deterministically."""
    cols = [k]
    for e in np.eye(3)[np.argsort(np.abs(k))]:
        v = e - sum((e @ q) * q for q in cols)
        if np.linalg.norm(v) > 1e-6:
            cols.append(v / np.linalg.norm(v))
        if len(cols) == 3:
            break
    T = np.stack(cols, axis=1)
    if np.linalg.det(T) < 0:
        T[:, 2] = -T[:, 2]
    return T


def cr_data(lift: ImmersionLift, samples=None, tol: float = EQUIV_TOL) -> CRData:
    """Fit the constant induced metric and Kähler form, then align the frame.

    Raises :class:`ImmersionError` when the pushforwards have rank < 3 and
    :class:`EquivarianceError` when fitted entries vary over the samples.
    """
    samples = sample_points() if samples is None else np.asarray(samples, dtype=complex)
    if len(samples) < 8:
        raise ValueError("cr_data needs at least 8 sample points")
    V = lift.standard_pushforwards
    vals = np.stack([v.evaluate_many(samples) for v in V], axis=1)  # (N, 3, n+1)
    G = np.real(np.einsum("sad,sbd->sab", vals, vals.conj()))
    G_mean = G.mean(axis=0)
    eig = np.linalg.eigvalsh(G_mean)
    if eig[0] <= RANK_TOL * max(eig[-1], 1.0):
        raise ImmersionError(
            f"pushforward has rank < 3 (induced-metric eigenvalues {eig.round(12).tolist()})"
        )
    g_spread = _spread(G)
    if g_spread > tol:
        raise EquivarianceError(f"induced metric varies over samples by {g_spread:.3e}", g_spread)

    A = np.linalg.cholesky(G_mean)
    B = np.linalg.inv(A)
    U = np.einsum("ia,sad->sid", B, vals)
    J = np.real(np.einsum("sid,sjd->sij", 1j * U, U.conj()))
    j_spread = _spread(J)
    if j_spread > tol:
        raise EquivarianceError(f"Kähler form varies over samples by {j_spread:.3e}", j_spread)
    J_mean = J.mean(axis=0)
    asym = float(np.max(np.abs(J_mean + J_mean.T)))
    if asym > 1e-8:
        raise AlignmentError(f"fitted J is not antisymmetric (defect {asym:.3e})")

    kvec = np.array([J_mean[1, 2], -J_mean[0, 2], J_mean[0, 1]])
    knorm = float(np.linalg.norm(kvec))
    if knorm < CR_TOL:
        T = np.eye(3)
    else:
        T = _complete_basis(kvec / knorm)
        Jt = T.T @ J_mean @ T
        if Jt[1, 2] < 0:
            # X2 -> -X2, then X1 -> -X1 to stay positively oriented
            T[:, 1] = -T[:, 1]
            T[:, 0] = -T[:, 0]
    Jt = T.T @ J_mean @ T
    A_cr = A @ T
    j23 = float(np.clip(Jt[1, 2], -1.0, 1.0))
    if 1.0 - j23 <= ROUNDOFF:
        # arccos turns a rounding error eps into an angle of sqrt(2 eps)
        j23 = 1.0
    return CRData(
        Jmatrix=Jt,
        kahler_angle=float(np.arccos(j23)),
        cr_frame=A_cr,
        metric=G_mean,
        metric_spread=g_spread,
        J_spread=j_spread,
        is_cr=abs(Jt[1, 2] - 1.0) < CR_TOL,
        totally_real=knorm < CR_TOL,
    )


def aligned_pushforwards(lift: ImmersionLift, cr: CRData) -> tuple[PolyVector, ...]:
    """Exact ``phi_* X_i`` for the aligned orthonormal frame."""
    key = ("aligned", cr.cr_frame.tobytes())
    if key not in lift._dcache:
        V = lift.standard_pushforwards
        out = []
        for row in cr.frame_coeffs:
            acc = PolyVector.zeros(len(lift.e0))
            for coef, v in zip(row, V):
                if coef != 0.0:
                    acc = acc + v * complex(coef)
            out.append(acc)
        lift._dcache[key] = tuple(out)
    return lift._dcache[key]


# ---------------------------------------------------------------------------
# connection, second fundamental form, normal connection


def _l1(v: PolyVector) -> float:
    return sum(abs(c) for e in v for _, c in e.items())


def _check_horizontal_field(lift: ImmersionLift, W: PolyVector) -> None:
    """``<W, e0> = 0`` exactly up to roundoff relative to the coefficient mass."""
    key = ("horizontal", id(W))
    if key in lift._dcache and lift._dcache[key][0] is W:
        return
    pairing = hermitian_pair(W, lift.e0).max_abs_coeff()
    rel = pairing / max(_l1(W) * _l1(lift.e0), 1e-300)
    if pairing > HORIZONTAL_TOL and rel > HORIZONTAL_REL:
        raise InvariantError(f"field is not horizontal (|<W, e0>| coefficient {pairing:.3e})", pairing)
    lift._dcache[key] = (W, True)


def _field_derivative(lift: ImmersionLift, W: PolyVector, X) -> PolyVector:
    key = ("field", id(W), X)
    hit = lift._dcache.get(key)
    if hit is None or hit[0] is not W:
        hit = (W, apply_field(W, X))
        lift._dcache[key] = hit
    return hit[1]


def covariant_derivative(lift: ImmersionLift, W: PolyVector, X, point) -> TangentVectorAtPoint:
    """Levi-Civita derivative of the CP^n field ``conj(e0) (x) W`` along ``phi_* X``.

    ``P(X(W)) - <X(e0), conj e0> W`` at ``point``, with ``P`` the projection
    orthogonal to ``e0``.
    """
    _check_horizontal_field(lift, W)
    z, w = check_on_sphere(point)
    X = tuple(float(x) for x in X)
    e0 = lift.e0.evaluate((z, w))
    XW = _field_derivative(lift, W, X).evaluate((z, w))
    Xe0 = lift.derivative(X).evaluate((z, w))
    Wp = W.evaluate((z, w))
    return TangentVectorAtPoint(_project_horizontal(XW, e0) - (Xe0 @ e0.conj()) * Wp, (z, w))


def _real_gram_schmidt(vectors: np.ndarray) -> np.ndarray:
    """Orthonormal (real inner product) basis of the real span; two MGS passes."""
    basis: list[np.ndarray] = []
    scale = max(np.linalg.norm(v) for v in vectors)
    for v in vectors:
        u = v.astype(complex)
        for _ in range(2):
            for q in basis:
                u = u - np.real(u @ q.conj()) * q
        nrm = np.linalg.norm(u)
        if nrm <= RANK_TOL * scale:
            raise ImmersionError("tangent vectors are linearly dependent at this point")
        basis.append(u / nrm)
    return np.array(basis)


def _normal_part(v: np.ndarray, tangent_basis: np.ndarray) -> np.ndarray:
    for q in tangent_basis:
        v = v - np.real(v @ q.conj()) * q
    return v


@dataclass
class SecondFundamentalForm:
    B: np.ndarray  # (3, 3, n+1) normal vectors B(X_i, X_j)
    H: np.ndarray
    tangential: np.ndarray  # T[i, j, k] = <nabla_{X_i} phi_* X_j, phi_* X_k>
    xi0: np.ndarray

    @property
    def H_norm(self) -> float:
        return float(np.linalg.norm(self.H))

    @property
    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.B) ** 2)))

    @property
    def symmetry_defect(self) -> float:
        return float(np.max(np.abs(self.B - self.B.transpose(1, 0, 2))))

    @property
    def w2_part(self) -> np.ndarray:
        """Component of ``B`` orthogonal to ``xi0`` (shape operators of ``W2``)."""
        coef = np.real(np.einsum("ijd,d->ij", self.B, self.xi0.conj()))
        return self.B - coef[..., None] * self.xi0

    def inner(self, i: int, j: int, k: int, l: int) -> float:
        return float(np.real(self.B[i, j] @ self.B[k, l].conj()))


def second_fundamental_form(lift: ImmersionLift, cr: CRData, point) -> SecondFundamentalForm:
    z, w = check_on_sphere(point)
    U = aligned_pushforwards(lift, cr)
    coeffs = cr.frame_coeffs
    Up = np.array([u.evaluate((z, w)) for u in U])
    basis = _real_gram_schmidt(Up)
    n1 = len(lift.e0)
    B = np.zeros((3, 3, n1), dtype=complex)
    T = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            nab = covariant_derivative(lift, U[j], coeffs[i], (z, w)).ambient
            T[i, j] = np.real(Up.conj() @ nab)
            B[i, j] = _normal_part(nab, basis)
    H = np.trace(B, axis1=0, axis2=1) / 3.0
    return SecondFundamentalForm(B=B, H=H, tangential=T, xi0=1j * Up[0])


@dataclass
class NormalConnection:
    components: np.ndarray  # (3, n+1): W2-part of nabla^perp_{X_i} xi0
    norm: float


def normal_connection_xi0(lift: ImmersionLift, cr: CRData, point) -> NormalConnection:
    """``nabla^perp xi0`` with ``xi0 = J phi_* X1``, its ``xi0``-component removed."""
    if not cr.is_cr:
        raise NotCRError(f"immersion is not of CR type (J23 = {cr.Jmatrix[1, 2]:.6g})")
    z, w = check_on_sphere(point)
    U = aligned_pushforwards(lift, cr)
    Up = np.array([u.evaluate((z, w)) for u in U])
    basis = _real_gram_schmidt(Up)
    xi0 = U[0] * 1j
    xi0p = 1j * Up[0]
    comps = []
    for i in range(3):
        nab = covariant_derivative(lift, xi0, cr.frame_coeffs[i], (z, w)).ambient
        nperp = _normal_part(nab, basis)
        nperp = nperp - np.real(nperp @ xi0p.conj()) * xi0p
        comps.append(nperp)
    comps = np.array(comps)
    return NormalConnection(comps, float(np.max(np.linalg.norm(comps, axis=1))))


def gauss_residual(lift: ImmersionLift, C, point, cr: CRData | None = None,
                   sff: SecondFundamentalForm | None = None) -> dict[tuple[int, int], float]:
    """Intrinsic minus extrinsic sectional curvature on the three coordinate planes.

    Extrinsic side: ``1 + 3 g(J X_i, X_j)^2 + <B_ii, B_jj> - |B_ij|^2``.
    """
    cr = cr_data(lift) if cr is None else cr
    sff = second_fundamental_form(lift, cr, point) if sff is None else sff
    R = curvature(C)
    out = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        ext = 1.0 + 3.0 * cr.Jmatrix[i, j] ** 2 + sff.inner(i, i, j, j) - sff.inner(i, j, i, j)
        out[(i + 1, j + 1)] = abs(R[i, j, i, j] - ext)
    return out
