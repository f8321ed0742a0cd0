"""Equivariant CR immersions ``S^3 -> CP^n`` built from holomorphic vectors.

``f = sum_a sqrt(C(k, a)) z^(k-a) w^a eps_a`` spans the degree-k irreducible
representation; its harmonic sequence ``f_a`` is generated by the raising
derivation ``Z``.  The two-parameter family glues two such vectors:
``e0(t) = cos t * f  (+)  i sin t * h`` with ``deg f = k > deg h = l``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .algebra import PolyVector, ReducedPolynomial, derive
from .errors import ParameterError
from .fubini_study import ImmersionLift

MAX_DEGREE = 30
INTEGER_TOL = 1e-8


def holomorphic_vector(k: int) -> PolyVector:
    if k < 0:
        raise ParameterError(f"degree must be nonnegative, got {k}")
    if k > MAX_DEGREE:
        raise ParameterError(f"degree {k} exceeds the supported range (<= {MAX_DEGREE})")
    return PolyVector(
        ReducedPolynomial.monomial(k - a, a, 0, 0, math.sqrt(math.comb(k, a))) for a in range(k + 1)
    )


def harmonic_sequence(k: int, alpha: int) -> PolyVector:
    """``f_alpha = Z^alpha f / (alpha! sqrt(C(k, alpha)))``; unitary for ``0 <= alpha <= k``."""
    if not 0 <= alpha <= k:
        raise ParameterError(f"alpha must lie in [0, {k}], got {alpha}")
    f = holomorphic_vector(k)
    for _ in range(alpha):
        f = derive(f, "Z")
    return f * (1.0 / (math.factorial(alpha) * math.sqrt(math.comb(k, alpha))))


PHI1_T = math.pi / 8


def phi1_lift() -> ImmersionLift:
    """``cos(pi/8) f_0 + i sin(pi/8) f_2`` for ``k = 2``: the non-Berger example in CP^2."""
    e0 = harmonic_sequence(2, 0) * math.cos(PHI1_T) + harmonic_sequence(2, 2) * (1j * math.sin(PHI1_T))
    return ImmersionLift(e0, "phi1", {"family": "phi1"})


@dataclass(frozen=True)
class FamilyParams:
    k: int
    l: int
    t: float

    def __post_init__(self):
        for name in ("k", "l"):
            v = getattr(self, name)
            if isinstance(v, bool) or not float(v).is_integer():
                raise ParameterError(f"{name} must be an integer, got {v!r}")
            object.__setattr__(self, name, int(v))
        if self.l < 0 or self.k <= self.l:
            raise ParameterError(f"need k > l >= 0, got k={self.k}, l={self.l}")
        if self.k > MAX_DEGREE:
            raise ParameterError(f"k = {self.k} exceeds the supported range (<= {MAX_DEGREE})")
        if not (0.0 < self.t < math.pi / 2) or not math.isfinite(self.t):
            raise ParameterError(f"t must lie in (0, pi/2), got {self.t!r}")

    @property
    def n(self) -> int:
        return self.k + self.l + 1

    @property
    def m(self) -> float:
        return 0.5 * (self.k - self.l)

    @property
    def a0(self) -> float:
        return self.k * math.cos(self.t) ** 2 + self.l * math.sin(self.t) ** 2

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "t": self.t}

    @classmethod
    def from_json(cls, data: dict) -> "FamilyParams":
        try:
            return cls(data["k"], data["l"], float(data["t"]))
        except (KeyError, TypeError) as exc:
            raise ParameterError(f"bad family parameters {data!r}") from exc


def family_lift(p: FamilyParams) -> ImmersionLift:
    f = holomorphic_vector(p.k) * math.cos(p.t)
    h = holomorphic_vector(p.l) * (1j * math.sin(p.t))
    return ImmersionLift(f.direct_sum(h), f"family-k{p.k}-l{p.l}", {"family": p.to_json()})


def _check_pair(k: int, l: int) -> None:
    if l < 0 or k <= l:
        raise ParameterError(f"need k > l >= 0, got k={k}, l={l}")


def minimal_t(k: int, l: int) -> float:
    """Closed form ``tan^2 t = 2k / (3(k-l) + sqrt((k+l)^2 + 8(k-l)^2))``."""
    _check_pair(k, l)
    tan2 = 2 * k / (3 * (k - l) + math.sqrt((k + l) ** 2 + 8 * (k - l) ** 2))
    return math.atan(math.sqrt(tan2))


def minimal_t_bisection(k: int, l: int) -> float:
    """Root of ``cot 2t = m sin 2t / a0(t)``, written as ``a0 cos 2t - m sin^2 2t = 0``.

    The left side is positive near 0 and negative on ``[pi/4, pi/2)``, so the
    root is unique.
    """
    _check_pair(k, l)
    m = 0.5 * (k - l)

    def g(t):
        a0 = k * math.cos(t) ** 2 + l * math.sin(t) ** 2
        return a0 * math.cos(2 * t) - m * math.sin(2 * t) ** 2

    return bisect(g, 1e-12, math.pi / 2 - 1e-12, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)


def minimal_params(k: int, l: int) -> FamilyParams:
    return FamilyParams(k, l, minimal_t(k, l))


@dataclass(frozen=True)
class BergerParams:
    b: float
    c: float
    lambda3: float

    def to_json(self) -> dict:
        return {"b": self.b, "c": self.c, "lambda3": self.lambda3}


def berger_params(p: FamilyParams) -> BergerParams:
    """Induced metric ``m^2 sin^2 2t w1'^2 + a0 (w2'^2 + w3'^2)`` as a Berger pair."""
    c = 1.0 / p.a0
    return BergerParams(
        b=p.m * math.sqrt(c) * math.sin(2 * p.t),
        c=c,
        lambda3=math.sqrt(p.k * p.l) / p.a0,
    )


@dataclass(frozen=True)
class Recovered:
    k: float
    l: float
    t: float

    @property
    def integer(self) -> bool:
        return all(abs(x - round(x)) < INTEGER_TOL and round(x) >= 0 for x in (self.k, self.l))

    def to_json(self) -> dict:
        return {"k": self.k, "l": self.l, "t": self.t, "integer": self.integer}


def recover_integers(b: float, c: float) -> Recovered:
    """Degrees ``k, l`` and angle ``t`` of the minimal family inducing Berger ``(b, c)``."""
    if not (b > 0 and c > 0) or not (math.isfinite(b) and math.isfinite(c)):
        raise ParameterError(f"b and c must be positive, got b={b!r}, c={c!r}")
    root = b * math.sqrt(1.0 / c + b * b)
    base = 1.0 / c - b * b
    t = math.atan(math.sqrt(1.0 + b * b * c) - b * math.sqrt(c))
    return Recovered(k=base + root, l=base - root, t=t)


@dataclass(frozen=True)
class ConstantCurvatureCase:
    m: int
    c: float
    n: int

    def to_json(self) -> dict:
        return {"m": self.m, "c": self.c, "n": self.n}


def constant_curvature_case(k: int, l: int, tol: float = 1e-10) -> ConstantCurvatureCase | None:
    """The minimal member is round iff ``b = 1``; then ``c = 1/(m^2 - 1)`` and ``n = 2m^2 - 3``."""
    bp = berger_params(minimal_params(k, l))
    if abs(bp.b - 1.0) > tol:
        return None
    m = (k - l) // 2
    n = k + l + 1
    if (k - l) % 2 or n != 2 * m * m - 3:
        raise AssertionError(f"round minimal member with (k, l) = ({k}, {l}) breaks n = 2m^2 - 3")
    return ConstantCurvatureCase(m=m, c=1.0 / (m * m - 1), n=n)
