"""End-to-end verification of a lift: metric, CR type, minimality, curvature, classification."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import frames
from .families import FamilyParams, berger_params, family_lift, recover_integers
from .fubini_study import (
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    ImmersionLift,
    cr_data,
    gauss_residual,
    normal_connection_xi0,
    sample_points,
    second_fundamental_form,
)
from .intrinsic import classify

LIFT_FORMAT = "crsphere-lift"
LIFT_VERSION = 1


@dataclass
class VerificationReport:
    lift_id: str
    n: int
    unit_norm_defect: float
    equivariance_spread: float
    cr: dict
    minimality_residual: float
    classification: dict
    structure_matrix: list
    invariants: dict
    xi0_parallel: dict
    gauss_residual_max: float
    second_fundamental_form_min: float
    w2_shape_max: float | None
    berger_roundtrip: dict | None
    samples: int
    seed: int
    tol: float
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def verify_lift(lift: ImmersionLift, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED,
                tol: float = 1e-8) -> VerificationReport:
    """Run every check on ``lift``.

    Tolerance ladder: unit norm, equivariance spread and ``max |H|`` use
    ``tol``; Gauss residuals use ``10 * tol``; ``|B|`` must exceed ``tol``.
    Raises :class:`~crsphere.errors.ImmersionError` for rank-deficient lifts.
    """
    pts = sample_points(samples, seed)
    # spreads are reported as a failed check rather than raised
    cr = cr_data(lift, pts, tol=np.inf)
    C = cr.structure_matrix

    h_norms, b_sq, xi_norms, gauss, w2 = [], [], [], [], []
    for p in pts:
        sff = second_fundamental_form(lift, cr, p)
        h_norms.append(sff.H_norm)
        b_sq.append(sff.norm**2)
        gauss.append(max(gauss_residual(lift, C, p, cr, sff).values()))
        if cr.is_cr:
            xi_norms.append(normal_connection_xi0(lift, cr, p).norm)
            w2.append(float(np.max(np.linalg.norm(sff.w2_part, axis=2))))

    def spread(xs):
        return float(np.ptp(xs)) if xs else 0.0

    eq_spread = max(cr.equivariance_spread, spread(h_norms), spread(b_sq), spread(xi_norms))
    mclass = classify(C)
    inv = frames.invariants(C).magnitudes()
    xi_norm = max(xi_norms) if xi_norms else None
    min_res = max(h_norms)

    roundtrip = None
    if mclass.kind in ("berger", "constant") and min_res <= tol:
        b = 1.0 if mclass.kind == "constant" else mclass.b
        rec = recover_integers(b, mclass.c)
        roundtrip = rec.to_json()

    report = VerificationReport(
        lift_id=lift.lift_id,
        n=lift.n,
        unit_norm_defect=lift.unit_norm_defect,
        equivariance_spread=eq_spread,
        cr={"is_cr": bool(cr.is_cr), "kahler_angle": cr.kahler_angle},
        minimality_residual=min_res,
        classification=mclass.to_json(),
        structure_matrix=C.tolist(),
        invariants=inv,
        xi0_parallel={"parallel": xi_norm is not None and xi_norm < tol, "norm": xi_norm},
        gauss_residual_max=max(gauss),
        second_fundamental_form_min=math.sqrt(min(b_sq)),
        w2_shape_max=max(w2) if w2 else None,
        berger_roundtrip=roundtrip,
        samples=samples,
        seed=seed,
        tol=tol,
    )
    report.failures = _failures(report, lift)
    return report


def _failures(r: VerificationReport, lift: ImmersionLift) -> list[str]:
    out = []
    if r.unit_norm_defect > r.tol:
        out.append(f"unit norm defect {r.unit_norm_defect:.3e} > {r.tol:g}")
    if r.equivariance_spread > r.tol:
        out.append(f"equivariance spread {r.equivariance_spread:.3e} > {r.tol:g}")
    if not r.cr["is_cr"]:
        out.append(f"not CR type (Kähler angle {r.cr['kahler_angle']:.6g})")
    if r.minimality_residual > r.tol:
        out.append(f"not minimal: max |H| = {r.minimality_residual:.3e} > {r.tol:g}")
    if r.gauss_residual_max > 10 * r.tol:
        out.append(f"Gauss equation residual {r.gauss_residual_max:.3e} > {10 * r.tol:g}")
    if r.second_fundamental_form_min <= r.tol:
        out.append("second fundamental form vanishes (totally geodesic)")
    fam = lift.meta.get("family")
    if r.berger_roundtrip is not None and isinstance(fam, dict):
        rt = r.berger_roundtrip
        if not rt["integer"] or (round(rt["k"]), round(rt["l"])) != (fam["k"], fam["l"]):
            out.append(f"Berger round trip gave (k, l) = ({rt['k']:.10g}, {rt['l']:.10g})")
        elif abs(rt["t"] - fam["t"]) > 1e-8:
            out.append(f"Berger round trip gave t = {rt['t']:.12g}, expected {fam['t']:.12g}")
    return out


# ---------------------------------------------------------------------------
# sweep rows


SWEEP_COLUMNS = ("t", "mean_curvature_norm", "b", "c", "lambda3", "kahler_angle")


def sweep(k: int, l: int, ts, samples: int = 8, seed: int = DEFAULT_SEED) -> list[dict]:
    """Mean-curvature norm and Berger data of the ``(k, l)`` family along ``ts``."""
    pts = sample_points(samples, seed)
    rows = []
    for t in ts:
        p = FamilyParams(k, l, float(t))
        lift = family_lift(p)
        cr = cr_data(lift, pts)
        h = max(second_fundamental_form(lift, cr, q).H_norm for q in pts)
        bp = berger_params(p)
        rows.append({"t": p.t, "mean_curvature_norm": h, "b": bp.b, "c": bp.c,
                     "lambda3": bp.lambda3, "kahler_angle": cr.kahler_angle})
    return rows


# ---------------------------------------------------------------------------
# lift files


def lift_document(lift: ImmersionLift) -> dict:
    return {"format": LIFT_FORMAT, "version": LIFT_VERSION, **lift.to_json()}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_lift(text: str) -> ImmersionLift:
    """Parse a lift document; raises ``ValueError`` on anything malformed."""
    doc = json.loads(text)
    if not isinstance(doc, dict) or doc.get("format") != LIFT_FORMAT:
        raise ValueError("not a lift document")
    if doc.get("version") != LIFT_VERSION:
        raise ValueError(f"unsupported lift version {doc.get('version')!r}")
    try:
        lift = ImmersionLift.from_json(doc)
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed lift: {exc}") from exc
    if lift.n != doc.get("n", lift.n):
        raise ValueError("declared n does not match the number of components")
    return lift
