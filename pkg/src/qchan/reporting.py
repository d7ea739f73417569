"""Structured verdicts for verified claims and their JSON serialization.

Margin convention: every claim is normalized to "lhs >= rhs within tolerance",
so ``margin = lhs - rhs`` and ``passed == (margin >= -tolerance)``.  Residual
claims use lhs = 0 and rhs = residual.  Floats are emitted with 17 significant
digits (bit-faithful round-trips); infinities, which JSON cannot carry as
numbers, become the strings "inf" / "-inf".
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

import numpy as np


@dataclass(frozen=True)
class PropositionReport:
    """Verdict for one claim instance or batch (worst case)."""

    claim_id: str
    lhs: float
    rhs: float
    margin: float
    tolerance: float
    passed: bool
    witness: dict[str, Any] | None = None
    seed: int | None = None


def proposition_report(
    claim_id: str,
    lhs: float,
    rhs: float,
    tolerance: float,
    witness: dict[str, Any] | None = None,
    seed: int | None = None,
) -> PropositionReport:
    """Build a report, deriving margin and pass from the normalized convention."""
    margin = lhs - rhs
    return PropositionReport(
        claim_id=claim_id,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        tolerance=tolerance,
        passed=bool(margin >= -tolerance),
        witness=witness,
        seed=seed,
    )


@dataclass(frozen=True)
class AdditivityReport:
    """Output-entropy infimum of a tensor pair against the sum of the parts."""

    s_min_a: float
    s_min_b: float
    s_min_joint: float
    gap: float
    schmidt_coefficients: tuple[float, ...]
    restarts: int
    seed: int
    tolerance: float
    passed: bool
    converged_a: bool
    converged_b: bool
    converged_joint: bool


@dataclass(frozen=True)
class MultiplicativityReport:
    """Output p-norm of a tensor pair against the product of the parts."""

    p: float
    norm_a: float
    norm_b: float
    norm_joint: float
    deviation: float
    restarts: int
    seed: int
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class Prop4Violation:
    """A sampled coefficient vector meeting the averaging condition yet not CP."""

    q: tuple[float, ...]
    min_eigenvalue: float


@dataclass(frozen=True)
class Prop4Report:
    """Batch CP test of damping coefficients satisfying the averaging condition."""

    l: int
    samples: int
    seed: int
    condition_hits: int
    min_margin: float
    violations: tuple[Prop4Violation, ...]
    remark_margins: tuple[tuple[float, float], ...]  # (Q, margin) pairs
    remark_passed: bool
    sampled_passed: bool


@dataclass(frozen=True)
class SuiteReport:
    """Worst margin over a sampled batch of one inequality."""

    claim_id: str
    samples: int
    seed: int
    min_margin: float
    tolerance: float
    passed: bool
    worst_index: int
    infinite_count: int = 0


@dataclass(frozen=True)
class TheoremReport:
    """All sub-checks of the composed-channel additivity statement."""

    basis_projection: PropositionReport
    s_min_equality: PropositionReport
    eq13: tuple[PropositionReport, ...]
    additivity: AdditivityReport
    passed: bool


def _format_float(x: float) -> str:
    if math.isnan(x):
        raise ValueError("NaN is not representable in reports")
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.17g}"


def _escape(s: str) -> str:
    out = []
    for ch in s:
        if ch == '"':
            out.append('\\"')
        elif ch == "\\":
            out.append("\\\\")
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)


def to_json(obj: Any, indent: int | None = 2) -> str:
    """Serialize a report tree deterministically with 17-digit floats.

    ``indent=None`` emits a compact single line (no trailing newline).
    """
    if indent is None:
        return _emit_compact(obj)
    return "".join(_emit(obj, indent, 0)) + "\n"


def _emit_compact(obj: Any) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _format_float(float(obj))
    if isinstance(obj, str):
        return f'"{_escape(obj)}"'
    if isinstance(obj, dict):
        inner = ",".join(f'"{_escape(k)}":{_emit_compact(v)}' for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ",".join(_emit_compact(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj)} into a report")


def _emit(obj: Any, indent: int, level: int):
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        yield "null"
    elif isinstance(obj, bool):
        yield "true" if obj else "false"
    elif isinstance(obj, (int, np.integer)):
        yield str(int(obj))
    elif isinstance(obj, (float, np.floating)):
        yield _format_float(float(obj))
    elif isinstance(obj, str):
        yield f'"{_escape(obj)}"'
    elif isinstance(obj, dict):
        if not obj:
            yield "{}"
            return
        yield "{\n"
        for i, (key, val) in enumerate(obj.items()):
            if not isinstance(key, str):
                raise TypeError(f"report keys must be strings, got {type(key)}")
            yield f'{pad_in}"{_escape(key)}": '
            yield from _emit(val, indent, level + 1)
            yield ",\n" if i < len(obj) - 1 else "\n"
        yield pad + "}"
    elif isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            yield "[]"
            return
        yield "[\n"
        for i, val in enumerate(seq):
            yield pad_in
            yield from _emit(val, indent, level + 1)
            yield ",\n" if i < len(seq) - 1 else "\n"
        yield pad + "]"
    else:
        raise TypeError(f"cannot serialize {type(obj)} into a report")
