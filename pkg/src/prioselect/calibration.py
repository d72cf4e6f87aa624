"""Affine threshold calibration from elicitation anchors.

A threshold that grows with the magnitude of the compared performances is
modelled as t(x) = alpha * x + beta where x is the worse of the two
performances. Two anchor points determine (alpha, beta) through a 2x2 linear
system.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .model import Criterion, ThresholdSpec

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class AnchorPair:
    """Two (reference performance, threshold value) elicitation points."""

    points: tuple[tuple[float, float], tuple[float, float]]

    def __post_init__(self) -> None:
        (x1, t1), (x2, t2) = self.points
        if x1 == x2:
            raise ValueError("anchor reference performances must differ")
        if t1 < 0 or t2 < 0:
            raise ValueError("threshold anchors must be >= 0")


def calibrate_affine(anchors: AnchorPair) -> ThresholdSpec:
    """Fit t(x) = alpha*x + beta exactly through both anchors."""
    (x1, t1), (x2, t2) = anchors.points
    alpha = (t2 - t1) / (x2 - x1)
    beta = t1 - alpha * x1
    return ThresholdSpec.affine(alpha, beta)


def evaluate_threshold(spec: ThresholdSpec, worse_performance: float, veto: bool = False) -> float:
    """Threshold value at the worse of the two compared performances.

    Kind "none" means 0 for discrimination thresholds and +inf (no veto) for
    veto thresholds. Affine values are clamped at 0 from below.
    """
    if spec.kind == "none":
        return math.inf if veto else 0.0
    if spec.kind == "constant":
        return float(spec.value)
    value = spec.alpha * worse_performance + spec.beta
    if value < 0:
        log.warning("affine threshold negative (%g) at %g, clamped to 0",
                    value, worse_performance)
        return 0.0
    return value


def _affine_parts(spec: ThresholdSpec) -> tuple[float, float] | None:
    if spec.kind == "affine":
        return spec.alpha, spec.beta
    if spec.kind == "constant":
        return 0.0, float(spec.value)
    return None


def _candidate_points(specs: Sequence[ThresholdSpec], lo: float, hi: float) -> list[float]:
    """Endpoints, pairwise crossings, and clamp kinks inside the range.

    The evaluated threshold functions are piecewise linear, so the ordering
    q <= p <= v can only flip at one of these points.
    """
    points = [lo, hi]
    lines = [_affine_parts(s) for s in specs]
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            if lines[i] is None or lines[j] is None:
                continue
            a1, b1 = lines[i]
            a2, b2 = lines[j]
            if a1 != a2:
                x = (b2 - b1) / (a1 - a2)
                if lo < x < hi:
                    points.append(x)
    for parts in lines:
        if parts and parts[0] != 0:
            x = -parts[1] / parts[0]
            if lo < x < hi:
                points.append(x)
    return sorted(set(points))


def validate_threshold_order(crit: Criterion, performance_range: tuple[float, float]) -> list[str]:
    """Violations of 0 <= q <= p <= v over the given performance range."""
    lo, hi = performance_range
    if lo > hi:
        raise ValueError("empty performance range")
    report = []
    tol = 1e-9
    for x in _candidate_points((crit.q, crit.p, crit.v), lo, hi):
        qv = evaluate_threshold(crit.q, x)
        pv = evaluate_threshold(crit.p, x)
        vv = evaluate_threshold(crit.v, x, veto=True)
        if qv > pv + tol:
            report.append(f"criterion {crit.id}: q={qv:g} > p={pv:g} at {x:g}")
        if not math.isinf(vv) and pv > vv + tol:
            report.append(f"criterion {crit.id}: p={pv:g} > v={vv:g} at {x:g}")
    return report


def calibrate_from_table(rows: Iterable[dict]) -> dict[tuple[str, str], ThresholdSpec]:
    """Calibrate several thresholds from anchor rows.

    Each row carries a criterion id, a threshold name (q, p or v) and two
    anchor points. Returns specs keyed by (criterion, threshold).
    """
    out = {}
    for row in rows:
        key = (row["criterion"], row["threshold"])
        pts = row["points"]
        anchors = AnchorPair(((float(pts[0][0]), float(pts[0][1])),
                              (float(pts[1][0]), float(pts[1][1]))))
        out[key] = calibrate_affine(anchors)
    return out
