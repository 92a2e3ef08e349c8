"""Verification reports and the identity-checking harness used by every checker."""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .exactmath import Field, LinComb, label


@dataclass
class AxiomResult:
    axiom: str
    passed: bool
    checked: int = 0
    witness: tuple | None = None
    lhs: Any = None
    rhs: Any = None
    failures: list = field(default_factory=list)
    note: str = ""

    def describe(self, fld: Field | None = None) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.axiom} ({self.checked} tuples)"
        if self.note:
            line += f" [{self.note}]"
        if not self.passed and self.witness is not None:
            line += (
                f" witness={format_witness(self.witness)}"
                f" lhs={format_value(self.lhs, fld)} rhs={format_value(self.rhs, fld)}"
            )
        return line

    def to_json(self, fld: Field | None = None) -> dict:
        out = {"axiom": self.axiom, "status": "PASS" if self.passed else "FAIL", "checked": self.checked}
        if self.note:
            out["note"] = self.note
        if not self.passed and self.witness is not None:
            out["witness"] = [label(x) for x in self.witness]
            out["lhs"] = format_value(self.lhs, fld)
            out["rhs"] = format_value(self.rhs, fld)
        return out


@dataclass
class VerificationReport:
    subject: str
    window: str = "complete"
    results: list[AxiomResult] = field(default_factory=list)
    field: Field | None = None

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self):
        return self.ok

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def __contains__(self, axiom: str) -> bool:
        return any(r.axiom == axiom for r in self.results)

    def axioms(self) -> list[str]:
        return [r.axiom for r in self.results]

    def failed(self) -> list[AxiomResult]:
        return [r for r in self.results if not r.passed]

    def add(self, result: AxiomResult) -> AxiomResult:
        self.results.append(result)
        return result

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for r in other.results:
            if prefix:
                r = AxiomResult(**{**r.__dict__, "axiom": prefix + r.axiom})
            self.results.append(r)

    def text(self) -> str:
        scope = "verified completely" if self.window == "complete" else f"verified on window {self.window}"
        head = f"{'PASS' if self.ok else 'FAIL'} {self.subject} ({scope})"
        return "\n".join([head] + ["  " + r.describe(self.field) for r in self.results])

    def jsonl(self) -> str:
        lines = []
        for r in self.results:
            rec = {"subject": self.subject, "window": self.window, **r.to_json(self.field)}
            lines.append(json.dumps(rec, sort_keys=True, separators=(",", ":")))
        return "\n".join(lines)


def format_witness(w: tuple) -> str:
    return "(" + ", ".join(label(x) for x in w) + ")"


def format_value(v, fld: Field | None) -> str:
    if isinstance(v, LinComb):
        return v.format(fld)
    if fld is not None:
        try:
            return fld.format(v)
        except Exception:
            pass
    return str(v)


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HOPF_THREADS", "1")))
    except ValueError:
        return 1


def _equal(lhs, rhs) -> bool:
    if isinstance(lhs, LinComb) or isinstance(rhs, LinComb):
        if not isinstance(lhs, LinComb):
            lhs = LinComb() if not lhs else lhs
        if not isinstance(rhs, LinComb):
            rhs = LinComb() if not rhs else rhs
        return lhs == rhs
    return lhs == rhs


def check_identity(
    axiom: str,
    tuples: Iterable[tuple],
    lhs: Callable[..., Any],
    rhs: Callable[..., Any],
    *,
    full: bool = False,
    note: str = "",
) -> AxiomResult:
    """Compare lhs(*t) and rhs(*t) for every tuple t.

    Tuples are visited in the given order; the first failure becomes the
    witness.  With ``full`` every failure is collected.  When HOPF_THREADS > 1
    tuples are evaluated in parallel chunks but the result is identical.
    """
    tuples = list(tuples)

    def evaluate(chunk: Sequence[tuple]):
        bad = []
        for t in chunk:
            left = lhs(*t)
            right = rhs(*t)
            if not _equal(left, right):
                bad.append((t, left, right))
                if not full:
                    break
        return bad

    workers = worker_count()
    if workers > 1 and len(tuples) > 64:
        size = -(-len(tuples) // (workers * 4))
        chunks = [tuples[i : i + size] for i in range(0, len(tuples), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            bad = [b for part in pool.map(evaluate, chunks) for b in part]
    else:
        bad = evaluate(tuples)

    result = AxiomResult(axiom, passed=not bad, checked=len(tuples), note=note)
    if bad:
        result.witness, result.lhs, result.rhs = bad[0]
        if full:
            result.failures = bad
    return result
