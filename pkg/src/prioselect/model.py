"""Shared domain types: criteria, actions, reference sets, scenarios.

Qualitative scales are stored as integer codes and treated as cardinal values
by the rest of the engine. Composite two-part levels use a lexicographic code
with the first part dominant. All types are immutable after construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

QUALITATIVE_LABELS = {"L": 1, "M": 2, "H": 3, "VH": 4}
LEVEL_NAMES = {v: k for k, v in QUALITATIVE_LABELS.items()}

FUNCTION_IDS = ("U1", "U2", "U3", "U4", "U5", "U6")


def encode_lexicographic(a: int, b: int) -> int:
    """Code of the composite level (a, b) on a 4x4 scale, first part dominant.

    (1,1) -> 1, (1,4) -> 4, (3,4) -> 12, (4,4) -> 16.
    """
    if not (1 <= a <= 4 and 1 <= b <= 4):
        raise ValueError(f"level codes must be in 1..4, got ({a}, {b})")
    return 4 * (a - 1) + b


def decode_lexicographic(code: int) -> tuple[int, int]:
    if not 1 <= code <= 16:
        raise ValueError(f"composite code must be in 1..16, got {code}")
    return (code - 1) // 4 + 1, (code - 1) % 4 + 1


def pair_dominates(p: tuple[int, int], q: tuple[int, int]) -> bool:
    """Componentwise dominance of two composite levels."""
    return p[0] >= q[0] and p[1] >= q[1]


def parse_level_label(text: str) -> int:
    """Turn a qualitative label into its integer code.

    Accepts single labels ("VH" -> 4), composite labels ("H-M" -> 10) and
    plain integer codes.
    """
    token = text.strip()
    if not token:
        raise ValueError("empty qualitative label")
    if "-" in token and not token.lstrip("-").isdigit():
        major_s, minor_s = token.split("-", 1)
        try:
            major = QUALITATIVE_LABELS[major_s.strip().upper()]
            minor = QUALITATIVE_LABELS[minor_s.strip().upper()]
        except KeyError as exc:
            raise ValueError(f"unknown qualitative label {token!r}") from exc
        return encode_lexicographic(major, minor)
    if token.upper() in QUALITATIVE_LABELS:
        return QUALITATIVE_LABELS[token.upper()]
    try:
        return int(token)
    except ValueError as exc:
        raise ValueError(f"unknown qualitative label {token!r}") from exc


@dataclass(frozen=True)
class ThresholdSpec:
    """Discrimination or veto threshold: absent, constant, or affine in the
    worse of the two compared performances."""

    kind: str  # "none" | "constant" | "affine"
    value: Optional[float] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None

    def __post_init__(self) -> None:
        if self.kind not in ("none", "constant", "affine"):
            raise ValueError(f"unknown threshold kind {self.kind!r}")
        if self.kind == "constant":
            if self.value is None or self.value < 0:
                raise ValueError("constant threshold needs value >= 0")
        if self.kind == "affine" and (self.alpha is None or self.beta is None):
            raise ValueError("affine threshold needs alpha and beta")

    @staticmethod
    def none() -> "ThresholdSpec":
        return ThresholdSpec(kind="none")

    @staticmethod
    def constant(value: float) -> "ThresholdSpec":
        return ThresholdSpec(kind="constant", value=float(value))

    @staticmethod
    def affine(alpha: float, beta: float) -> "ThresholdSpec":
        return ThresholdSpec(kind="affine", alpha=float(alpha), beta=float(beta))


@dataclass(frozen=True)
class Criterion:
    id: str
    label: str = ""
    unit: str = ""
    direction: str = "maximize"  # minimize handled by negation at ingestion
    scale_kind: str = "cardinal"  # cardinal | qualitative4 | qualitative16
    q: ThresholdSpec = field(default_factory=ThresholdSpec.none)
    p: ThresholdSpec = field(default_factory=ThresholdSpec.none)
    v: ThresholdSpec = field(default_factory=ThresholdSpec.none)

    def __post_init__(self) -> None:
        if self.direction not in ("maximize", "minimize"):
            raise ValueError(f"bad direction {self.direction!r}")
        if self.scale_kind not in ("cardinal", "qualitative4", "qualitative16"):
            raise ValueError(f"bad scale kind {self.scale_kind!r}")


@dataclass(frozen=True)
class Action:
    id: str
    label: str = ""
    performances: Mapping[str, float] = field(default_factory=dict)
    cost: float = 0.0
    on_decumano: bool = False
    insula_id: Optional[str] = None
    quadrant_id: Optional[int] = None
    functions: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        if self.cost < 0:
            raise ValueError(f"action {self.id}: cost must be >= 0")
        if self.quadrant_id is not None and not 1 <= self.quadrant_id <= 4:
            raise ValueError(f"action {self.id}: quadrant must be 1..4")


@dataclass(frozen=True)
class ReferenceSet:
    """Profiles characterizing one category, ascending category index."""

    category_index: int
    profiles: tuple[Mapping[str, float], ...]
    profile_ids: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValueError(f"category {self.category_index}: needs a profile")


@dataclass(frozen=True)
class WeightVector:
    """Criterion weights on the sum-100 convention; normalization derived."""

    raw: Mapping[str, float]

    def __post_init__(self) -> None:
        for cid, w in self.raw.items():
            if w <= 0:
                raise ValueError(f"weight for {cid} must be > 0")

    def normalized(self) -> dict[str, float]:
        total = sum(self.raw.values())
        return {cid: w / total for cid, w in self.raw.items()}


@dataclass(frozen=True)
class Scenario:
    id: str
    name: str
    criteria: tuple[Criterion, ...]
    actions: tuple[Action, ...]
    reference_sets: tuple[ReferenceSet, ...]
    weight_vectors: Mapping[str, WeightVector]
    lambda_cut: float
    decks: Mapping[str, object] = field(default_factory=dict)
    constraint_profiles: Mapping[str, object] = field(default_factory=dict)
    budgets: Mapping[str, float] = field(default_factory=dict)
    function_labels: Mapping[str, str] = field(default_factory=dict)
    metadata: Mapping[str, object] = field(default_factory=dict)
    provenance: Mapping[str, object] = field(default_factory=dict)

    def criterion(self, cid: str) -> Criterion:
        for crit in self.criteria:
            if crit.id == cid:
                return crit
        raise KeyError(cid)

    def action(self, aid: str) -> Action:
        for act in self.actions:
            if act.id == aid:
                return act
        raise KeyError(aid)

    @property
    def category_count(self) -> int:
        return len(self.reference_sets)


def _check_threshold_values(crit: Criterion, lo: float, hi: float, report: list[str]) -> None:
    # evaluated lazily here to avoid a circular import with calibration
    from .calibration import evaluate_threshold, validate_threshold_order

    report.extend(validate_threshold_order(crit, (lo, hi)))
    for name, spec in (("q", crit.q), ("p", crit.p), ("v", crit.v)):
        for x in (lo, hi):
            val = evaluate_threshold(spec, x, veto=(name == "v"))
            if not math.isinf(val) and val < 0:
                report.append(f"criterion {crit.id}: {name} evaluates below 0 at {x}")


def validate_scenario(scenario: Scenario) -> list[str]:
    """All invariant violations found, empty when the scenario is well formed."""
    report: list[str] = []
    crit_ids = [c.id for c in scenario.criteria]
    if len(set(crit_ids)) != len(crit_ids):
        report.append("duplicate criterion ids")
    act_ids = [a.id for a in scenario.actions]
    if len(set(act_ids)) != len(act_ids):
        report.append("duplicate action ids")

    if not 0.5 <= scenario.lambda_cut <= 1.0:
        report.append(f"lambda {scenario.lambda_cut} outside [0.5, 1]")

    for act in scenario.actions:
        missing = [cid for cid in crit_ids if cid not in act.performances]
        for cid in missing:
            report.append(f"action {act.id}: missing performance on {cid}")
        for cid in act.performances:
            if cid not in crit_ids:
                report.append(f"action {act.id}: performance on unknown criterion {cid}")
        for fn in act.functions:
            if fn not in FUNCTION_IDS:
                report.append(f"action {act.id}: unknown function {fn}")

    indices = sorted(rs.category_index for rs in scenario.reference_sets)
    if indices != list(range(1, len(indices) + 1)):
        report.append(f"category indices not contiguous from 1: {indices}")
    for rs in scenario.reference_sets:
        for i, prof in enumerate(rs.profiles):
            for cid in crit_ids:
                if cid not in prof:
                    report.append(
                        f"category {rs.category_index} profile {i}: missing {cid}")

    for wname, vec in scenario.weight_vectors.items():
        for cid in vec.raw:
            if cid not in crit_ids:
                report.append(f"weights {wname}: unknown criterion {cid}")
        for cid in crit_ids:
            if cid not in vec.raw:
                report.append(f"weights {wname}: missing criterion {cid}")
        norm = sum(vec.normalized().values())
        if abs(norm - 1.0) > 1e-9:
            report.append(f"weights {wname}: normalization off by {norm - 1.0}")

    # threshold ordering over the observed performance range per criterion
    for crit in scenario.criteria:
        values = [a.performances[crit.id] for a in scenario.actions
                  if crit.id in a.performances]
        for rs in scenario.reference_sets:
            values.extend(p[crit.id] for p in rs.profiles if crit.id in p)
        if values:
            _check_threshold_values(crit, min(values), max(values), report)

    return report
