"""Polynomial functions on S^3 = {|z|^2 + |w|^2 = 1} and left-invariant derivations.

Elements of C[z, w, zbar, wbar] / (z zbar + w wbar - 1) are stored as sparse
maps from exponent quadruples ``(a, b, c, d)`` (meaning ``z^a w^b zbar^c wbar^d``)
to complex coefficients.  The normal form eliminates ``w * wbar`` through the
rewrite ``w wbar -> 1 - z zbar``, so no stored monomial has both ``b >= 1`` and
``d >= 1``.
"""

from __future__ import annotations

from collections import defaultdict
from math import comb
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, DomainError

DROP_TOL = 1e-14
SPHERE_TOL = 1e-12

Exponent = tuple[int, int, int, int]

__all__ = [
    "ReducedPolynomial",
    "PolyVector",
    "reduce",
    "derive",
    "apply_field",
    "hermitian_pair",
    "evaluate",
    "check_on_sphere",
]


def _reduce_into(out: defaultdict, expo: Exponent, coeff: complex) -> None:
    a, b, c, d = expo
    m = min(b, d)
    if m == 0:
        out[expo] += coeff
        return
    # (w wbar)^m = (1 - z zbar)^m
    for j in range(m + 1):
        out[(a + j, b - m, c + j, d - m)] += coeff * comb(m, j) * (-1) ** j


def _clean(raw: Mapping[Exponent, complex]) -> dict[Exponent, complex]:
    return {e: complex(v) for e, v in sorted(raw.items()) if abs(v) >= DROP_TOL}


def reduce(raw: Mapping[Exponent, complex]) -> "ReducedPolynomial":
    """Bring an arbitrary exponent -> coefficient map into canonical form."""
    out: defaultdict = defaultdict(complex)
    for expo, coeff in raw.items():
        expo = tuple(int(x) for x in expo)
        if len(expo) != 4 or min(expo) < 0:
            raise ValueError(f"bad exponent {expo!r}")
        _reduce_into(out, expo, complex(coeff))
    return ReducedPolynomial._from_canonical(_clean(out))


class ReducedPolynomial:
    """Canonical element of the function algebra of S^3.

    Instances are immutable; arithmetic returns new reduced polynomials.
    """

    __slots__ = ("_terms", "_arrays")

    def __init__(self, terms: Mapping[Exponent, complex] | None = None):
        red = reduce(terms or {})
        self._terms = red._terms
        self._arrays = None

    @classmethod
    def _from_canonical(cls, terms: dict[Exponent, complex]) -> "ReducedPolynomial":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._arrays = None
        return obj

    # constructors
    @classmethod
    def constant(cls, value: complex) -> "ReducedPolynomial":
        return reduce({(0, 0, 0, 0): value})

    @classmethod
    def monomial(cls, a: int, b: int, c: int, d: int, coeff: complex = 1.0) -> "ReducedPolynomial":
        return reduce({(a, b, c, d): coeff})

    @classmethod
    def z(cls) -> "ReducedPolynomial":
        return cls.monomial(1, 0, 0, 0)

    @classmethod
    def w(cls) -> "ReducedPolynomial":
        return cls.monomial(0, 1, 0, 0)

    @property
    def terms(self) -> dict[Exponent, complex]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(v) <= tol for v in self._terms.values())

    def max_abs_coeff(self) -> float:
        return max((abs(v) for v in self._terms.values()), default=0.0)

    def constant_term(self) -> complex:
        return self._terms.get((0, 0, 0, 0), 0j)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=0)

    # arithmetic
    def __add__(self, other):
        other = _coerce(other)
        out = dict(self._terms)
        for e, v in other._terms.items():
            out[e] = out.get(e, 0j) + v
        return ReducedPolynomial._from_canonical(_clean(out))

    __radd__ = __add__

    def __neg__(self):
        return ReducedPolynomial._from_canonical({e: -v for e, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def scale(self, s: complex) -> "ReducedPolynomial":
        s = complex(s)
        return ReducedPolynomial._from_canonical(_clean({e: s * v for e, v in self._terms.items()}))

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        if isinstance(other, PolyVector):
            return NotImplemented
        other = _coerce(other)
        out: defaultdict = defaultdict(complex)
        for (a1, b1, c1, d1), v1 in self._terms.items():
            for (a2, b2, c2, d2), v2 in other._terms.items():
                _reduce_into(out, (a1 + a2, b1 + b2, c1 + c2, d1 + d2), v1 * v2)
        return ReducedPolynomial._from_canonical(_clean(out))

    def __rmul__(self, other):
        return self.__mul__(other)

    def conj(self) -> "ReducedPolynomial":
        return reduce({(c, d, a, b): np.conj(v) for (a, b, c, d), v in self._terms.items()})

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def allclose(self, other, tol: float = 1e-12) -> bool:
        return (self - _coerce(other)).max_abs_coeff() <= tol

    def derive(self, op: str) -> "ReducedPolynomial":
        return derive(self, op)

    def __call__(self, point) -> complex:
        return evaluate(self, point)

    def _as_arrays(self):
        if self._arrays is None:
            if self._terms:
                ex = np.array(list(self._terms.keys()), dtype=np.int64)
                co = np.array(list(self._terms.values()), dtype=complex)
            else:
                ex = np.zeros((0, 4), dtype=np.int64)
                co = np.zeros(0, dtype=complex)
            self._arrays = (ex, co)
        return self._arrays

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """Vectorised evaluation at an ``(N, 2)`` complex array of points (unchecked)."""
        pts = np.asarray(points, dtype=complex).reshape(-1, 2)
        ex, co = self._as_arrays()
        if len(co) == 0:
            return np.zeros(len(pts), dtype=complex)
        z, w = pts[:, 0:1], pts[:, 1:2]
        vals = z ** ex[:, 0] * w ** ex[:, 1] * np.conj(z) ** ex[:, 2] * np.conj(w) ** ex[:, 3]
        return vals @ co

    def to_json(self) -> list[dict]:
        return [
            {"expo": list(e), "re": float(v.real), "im": float(v.imag)}
            for e, v in sorted(self._terms.items())
        ]

    @classmethod
    def from_json(cls, records: Iterable[Mapping]) -> "ReducedPolynomial":
        raw: defaultdict = defaultdict(complex)
        for rec in records:
            raw[tuple(rec["expo"])] += complex(rec["re"], rec["im"])
        return reduce(raw)

    def __repr__(self) -> str:
        if not self._terms:
            return "ReducedPolynomial(0)"
        parts = []
        for (a, b, c, d), v in self._terms.items():
            mono = "".join(
                f"{s}^{p}" if p > 1 else s
                for s, p in (("z", a), ("w", b), ("zb", c), ("wb", d))
                if p
            )
            parts.append(f"({v:.6g}){mono}")
        return "ReducedPolynomial(" + " + ".join(parts) + ")"


def _coerce(x) -> ReducedPolynomial:
    if isinstance(x, ReducedPolynomial):
        return x
    if isinstance(x, (int, float, complex, np.number)):
        return ReducedPolynomial.constant(x)
    if isinstance(x, Mapping):
        return reduce(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a polynomial")


# derivations ---------------------------------------------------------------

def _derive_raw(terms, op: str) -> dict:
    out: defaultdict = defaultdict(complex)
    if op == "X1":
        for (a, b, c, d), v in terms:
            k = a + b - c - d
            if k:
                out[(a, b, c, d)] += 1j * k * v
    elif op == "Z":
        # -wbar d/dz + zbar d/dw
        for (a, b, c, d), v in terms:
            if a:
                _reduce_into(out, (a - 1, b, c, d + 1), -a * v)
            if b:
                _reduce_into(out, (a, b - 1, c + 1, d), b * v)
    elif op == "Zbar":
        # -w d/dzbar + z d/dwbar
        for (a, b, c, d), v in terms:
            if c:
                _reduce_into(out, (a, b + 1, c - 1, d), -c * v)
            if d:
                _reduce_into(out, (a + 1, b, c, d - 1), d * v)
    else:
        raise ValueError(f"unknown derivation {op!r}; expected X1, Z or Zbar")
    return out


def derive(p: ReducedPolynomial, op: str):
    """Apply one of the left-invariant derivations ``X1``, ``Z``, ``Zbar``.

    ``X1 = i(z d_z + w d_w - zbar d_zbar - wbar d_wbar)``,
    ``Z = -wbar d_z + zbar d_w`` and ``Zbar = -w d_zbar + z d_wbar``.
    The real fields of the standard frame are ``X2 = Z + Zbar`` and
    ``X3 = i(Z - Zbar)``; ``X2``/``X3`` are accepted here as shorthands.
    Works componentwise on a :class:`PolyVector`.
    """
    if isinstance(p, PolyVector):
        return PolyVector([derive(e, op) for e in p])
    if op == "X2":
        return apply_field(p, (0.0, 1.0, 0.0))
    if op == "X3":
        return apply_field(p, (0.0, 0.0, 1.0))
    out = _derive_raw(p.items(), op)
    return ReducedPolynomial._from_canonical(_clean(out))


def apply_field(p, coeffs: Sequence[float]):
    """Derivative along the real left-invariant field ``sum coeffs[a] X'_{a+1}``."""
    if isinstance(p, PolyVector):
        return PolyVector([apply_field(e, coeffs) for e in p])
    x1, x2, x3 = (complex(c) for c in coeffs)
    cz = x2 + 1j * x3
    czb = x2 - 1j * x3
    out: defaultdict = defaultdict(complex)
    for op, s in (("X1", x1), ("Z", cz), ("Zbar", czb)):
        if s == 0:
            continue
        for e, v in _derive_raw(p.items(), op).items():
            out[e] += s * v
    return ReducedPolynomial._from_canonical(_clean(out))


# evaluation ----------------------------------------------------------------

def check_on_sphere(point, tol: float = SPHERE_TOL) -> tuple[complex, complex]:
    z, w = (complex(x) for x in point)
    defect = abs(abs(z) ** 2 + abs(w) ** 2 - 1.0)
    if defect > tol:
        raise DomainError(f"point ({z}, {w}) is off the unit sphere (defect {defect:.3e})")
    return z, w


def evaluate(p, point) -> complex:
    """Value of ``p`` at an on-sphere point.

    ``p`` may be a :class:`ReducedPolynomial` or a raw exponent map; both give
    the same number because the relation vanishes on S^3.
    """
    z, w = check_on_sphere(point)
    terms = p.items()
    zb, wb = z.conjugate(), w.conjugate()
    return complex(sum(v * z**a * w**b * zb**c * wb**d for (a, b, c, d), v in terms))


# vectors -------------------------------------------------------------------

class PolyVector:
    """C^{n+1}-valued polynomial function on S^3 (components in the natural basis)."""

    __slots__ = ("entries",)

    def __init__(self, entries: Iterable):
        self.entries = tuple(_coerce(e) for e in entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def _check(self, other: "PolyVector") -> None:
        if len(self) != len(other):
            raise DimensionError(f"length mismatch: {len(self)} vs {len(other)}")

    def __add__(self, other: "PolyVector") -> "PolyVector":
        self._check(other)
        return PolyVector(a + b for a, b in zip(self, other))

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        self._check(other)
        return PolyVector(a - b for a, b in zip(self, other))

    def __neg__(self) -> "PolyVector":
        return PolyVector(-a for a in self)

    def __mul__(self, s) -> "PolyVector":
        if isinstance(s, ReducedPolynomial):
            return PolyVector(s * a for a in self)
        return PolyVector(a.scale(s) for a in self)

    __rmul__ = __mul__

    def conj(self) -> "PolyVector":
        return PolyVector(a.conj() for a in self)

    def derive(self, op: str) -> "PolyVector":
        return derive(self, op)

    def direct_sum(self, other: "PolyVector") -> "PolyVector":
        return PolyVector(self.entries + other.entries)

    def allclose(self, other: "PolyVector", tol: float = 1e-12) -> bool:
        self._check(other)
        return all(a.allclose(b, tol) for a, b in zip(self, other))

    def max_abs_coeff(self) -> float:
        return max((a.max_abs_coeff() for a in self), default=0.0)

    def degree(self) -> int:
        return max((a.degree() for a in self), default=0)

    def evaluate(self, point) -> np.ndarray:
        check_on_sphere(point)
        return self.evaluate_many(np.asarray([point], dtype=complex))[0]

    def evaluate_many(self, points: np.ndarray) -> np.ndarray:
        """``(N, n+1)`` array of values at ``(N, 2)`` points (unchecked)."""
        pts = np.asarray(points, dtype=complex).reshape(-1, 2)
        return np.stack([a.evaluate_many(pts) for a in self], axis=1)

    def to_json(self) -> list[list[dict]]:
        return [a.to_json() for a in self]

    @classmethod
    def from_json(cls, data) -> "PolyVector":
        return cls(ReducedPolynomial.from_json(rec) for rec in data)

    @classmethod
    def zeros(cls, n: int) -> "PolyVector":
        return cls(ReducedPolynomial() for _ in range(n))

    def __repr__(self) -> str:
        return f"PolyVector(len={len(self)}, degree={self.degree()})"


def hermitian_pair(u: PolyVector, v: PolyVector) -> ReducedPolynomial:
    """``sum_A u_A * conj(v_A)``, reduced."""
    if len(u) != len(v):
        raise DimensionError(f"length mismatch: {len(u)} vs {len(v)}")
    out: defaultdict = defaultdict(complex)
    for ua, va in zip(u, v):
        vb = va.conj()
        for (a1, b1, c1, d1), x in ua.items():
            for (a2, b2, c2, d2), y in vb.items():
                _reduce_into(out, (a1 + a2, b1 + b2, c1 + c2, d1 + d2), x * y)
    return ReducedPolynomial._from_canonical(_clean(out))
