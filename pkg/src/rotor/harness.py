"""Verification harness: run groundstates, compare with predictions and the
reference rows, and serialise reports.

JSON report schema (one object per run; optional keys are omitted, never
written as zero or null)::

    bc             "closed" | "periodic" | "identified"
    n              system size
    dimension      number of two-colour states
    components     [{"value": int, "multiplicity": int}, ...] by decreasing value
    sum            sum of the primitive groundstate
    min            smallest primitive entry
    predicted_sum  conjectured sum (optional)
    predicted_min  conjectured smallest entry, closed odd N only (optional)
    scale          factor taking the primitive vector to the conjecture's
                   normalisation (optional, closed odd N only)
    normalized_sum scale * sum (optional, closed odd N only)
    sum_match      bool (optional, present with predicted_sum)
    min_match      bool (optional, present with predicted_min)
    golden_match   "match" | "mismatch" | "no-fixture"
    stats          solver statistics (method, dimension, reduced_dimension,
                   initial_nnz, fill_in, max_bits, elapsed)

CSV output has the header ``bc,n,value,multiplicity`` and one row per
distinct component.
"""

from __future__ import annotations

import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable

from .enumerations import predicted_min, predicted_sum
from .errors import BudgetExceededError, RotorError
from .hamiltonian import BoundaryCondition
from .kernel import groundstate
from .linkpattern import affine_dimension, disk_dimension, line_dimension

GOLDEN_MATCH = ("match", "mismatch", "no-fixture")

CONJECTURE_BC = {
    1: BoundaryCondition.CLOSED,
    2: BoundaryCondition.PERIODIC,
    3: BoundaryCondition.IDENTIFIED,
}


# -- reference rows -----------------------------------------------------------


@dataclass(frozen=True)
class GoldenRow:
    bc: BoundaryCondition
    n: int
    values: tuple[int, ...]
    multiplicities: tuple[int, ...]
    total: int
    source: str = ""

    @property
    def components(self) -> list[tuple[int, int]]:
        return list(zip(self.values, self.multiplicities))

    def consistent(self) -> bool:
        return (
            len(self.values) == len(self.multiplicities)
            and list(self.values) == sorted(self.values, reverse=True)
            and sum(v * m for v, m in self.components) == self.total
        )


@lru_cache(maxsize=None)
def load_golden() -> dict[tuple[BoundaryCondition, int], GoldenRow]:
    raw = json.loads(resources.files("rotor").joinpath("data/golden.json").read_text())
    rows = {}
    for r in raw["rows"]:
        bc = BoundaryCondition.parse(r["bc"])
        rows[bc, r["n"]] = GoldenRow(
            bc, r["n"], tuple(r["values"]), tuple(r["multiplicities"]), r["sum"], r.get("source", "")
        )
    return rows


# -- reports --------------------------------------------------------------------


@dataclass
class RunReport:
    bc: BoundaryCondition
    n: int
    dimension: int
    components: list[tuple[int, int]]
    sum: int
    min: int
    predicted_sum: int | None = None
    predicted_min: int | None = None
    scale: int | None = None
    normalized_sum: int | None = None
    sum_match: bool | None = None
    min_match: bool | None = None
    golden_match: str = "no-fixture"
    stats: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return (
            self.golden_match != "mismatch"
            and self.sum_match is not False
            and self.min_match is not False
        )

    def consistent(self) -> bool:
        return (
            sum(v * m for v, m in self.components) == self.sum
            and sum(m for _, m in self.components) == self.dimension
        )

    def as_dict(self) -> dict:
        d: dict = {
            "bc": self.bc.value,
            "n": self.n,
            "dimension": self.dimension,
            "components": [{"value": v, "multiplicity": m} for v, m in self.components],
            "sum": self.sum,
            "min": self.min,
        }
        for key in (
            "predicted_sum", "predicted_min", "scale", "normalized_sum", "sum_match", "min_match"
        ):
            value = getattr(self, key)
            if value is not None:
                d[key] = value
        d["golden_match"] = self.golden_match
        d["stats"] = dict(self.stats)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> RunReport:
        return cls(
            bc=BoundaryCondition.parse(d["bc"]),
            n=d["n"],
            dimension=d["dimension"],
            components=[(c["value"], c["multiplicity"]) for c in d["components"]],
            sum=d["sum"],
            min=d["min"],
            predicted_sum=d.get("predicted_sum"),
            predicted_min=d.get("predicted_min"),
            scale=d.get("scale"),
            normalized_sum=d.get("normalized_sum"),
            sum_match=d.get("sum_match"),
            min_match=d.get("min_match"),
            golden_match=d.get("golden_match", "no-fixture"),
            stats=dict(d.get("stats", {})),
        )


def state_dimension(bc: BoundaryCondition | str, n: int) -> int:
    bc = BoundaryCondition.parse(bc)
    bc.validate(n)
    if bc is BoundaryCondition.CLOSED:
        d = line_dimension(n)
    elif bc is BoundaryCondition.PERIODIC:
        d = affine_dimension(n)
    else:
        d = disk_dimension(n)
    return d * d


def run_groundstate(
    bc: BoundaryCondition | str, n: int, method: str = "fraction-free", reduce: bool = True
) -> RunReport:
    bc = BoundaryCondition.parse(bc)
    gs = groundstate(n, bc, method=method, reduce=reduce)
    report = RunReport(
        bc=bc,
        n=n,
        dimension=gs.dimension,
        components=gs.components,
        sum=gs.total,
        min=gs.minimum,
        stats=gs.stats.as_dict(),
    )
    report.predicted_sum = predicted_sum(bc, n)
    report.predicted_min = predicted_min(bc, n)
    if report.predicted_min is not None:
        # the conjecture fixes the smallest entry; the primitive vector may be
        # a proper divisor of that normalisation
        ratio = Fraction(report.predicted_min, report.min)
        report.min_match = ratio.denominator == 1
        if report.min_match:
            report.scale = ratio.numerator
            report.normalized_sum = report.scale * report.sum
            report.sum_match = report.normalized_sum == report.predicted_sum
        else:
            report.sum_match = False
    else:
        report.sum_match = report.sum == report.predicted_sum

    golden = load_golden().get((bc, n))
    if golden is not None:
        same = golden.components == report.components and golden.total == report.sum
        report.golden_match = "match" if same else "mismatch"
    return report


# -- conjecture sweeps ----------------------------------------------------------


@dataclass
class Budget:
    max_dimension: int = 20000
    max_seconds: float = 3600.0

    @classmethod
    def from_env(cls) -> Budget:
        return cls(
            max_dimension=int(os.environ.get("ROTOR_MAX_DIM", cls.max_dimension)),
            max_seconds=float(os.environ.get("ROTOR_MAX_SECONDS", cls.max_seconds)),
        )


@dataclass
class ConjectureResult:
    conjecture: int
    max_n: int
    reports: list[RunReport]
    complete: bool = True
    skipped: list[int] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.complete and not self.errors and all(
            r.sum_match and r.golden_match != "mismatch" and r.min_match is not False
            for r in self.reports
        )


def conjecture_sizes(k: int, max_n: int) -> list[int]:
    if k not in CONJECTURE_BC:
        raise ValueError(f"conjecture must be 1, 2 or 3, got {k}")
    if k == 3:
        return list(range(2, max_n + 1, 2))
    return list(range(1, max_n + 1))


def _job(args: tuple[str, int, str]) -> RunReport:
    bc, n, method = args
    return run_groundstate(bc, n, method)


def verify_conjecture(
    k: int,
    max_n: int,
    budget: Budget | None = None,
    method: str = "fraction-free",
    jobs: int = 1,
) -> ConjectureResult:
    """Run every applicable size up to ``max_n`` and compare with predictions.

    Sizes whose state space exceeds ``budget.max_dimension`` are skipped and
    the result is flagged incomplete; the wall-clock budget is checked
    between sizes.
    """
    budget = budget or Budget()
    sizes = conjecture_sizes(k, max_n)
    bc = CONJECTURE_BC[k]
    result = ConjectureResult(k, max_n, [])
    runnable = []
    for n in sizes:
        if state_dimension(bc, n) > budget.max_dimension:
            result.skipped.append(n)
            result.complete = False
        else:
            runnable.append(n)

    start = time.monotonic()
    if jobs > 1 and len(runnable) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(_job, [(bc.value, n, method) for n in runnable]))
        result.reports = sorted(reports, key=lambda r: r.n)
    else:
        for n in runnable:
            if time.monotonic() - start > budget.max_seconds:
                result.skipped.append(n)
                result.complete = False
                continue
            try:
                result.reports.append(run_groundstate(bc, n, method))
            except RotorError as exc:
                result.errors.append(f"{bc.value} N={n}: {exc}")
    if time.monotonic() - start > budget.max_seconds:
        result.complete = False
    return result


def require_budget(bc: BoundaryCondition | str, n: int, budget: Budget) -> None:
    dim = state_dimension(bc, n)
    if dim > budget.max_dimension:
        raise BudgetExceededError(
            f"state dimension {dim} exceeds the budget of {budget.max_dimension}"
        )


# -- output -----------------------------------------------------------------------


def _tuple(xs: Iterable[int]) -> str:
    return "(" + ",".join(str(x) for x in xs) + ")"


def format_text(report: RunReport) -> str:
    values = [v for v, _ in report.components]
    mults = [m for _, m in report.components]
    line = f"N={report.n}  psi0={_tuple(values)}  mult={_tuple(mults)}  S={report.sum}"
    extra = []
    if report.scale is not None and report.scale != 1:
        extra.append(f"scaled x{report.scale}: S={report.normalized_sum}")
    if report.predicted_sum is not None:
        extra.append(f"predicted={report.predicted_sum} [{'ok' if report.sum_match else 'MISMATCH'}]")
    if report.predicted_min is not None:
        extra.append(f"min={report.min} predicted_min={report.predicted_min}")
    extra.append(f"golden={report.golden_match}")
    return line + "  " + "  ".join(extra)


def text_header(bc: BoundaryCondition | str) -> str:
    bc = BoundaryCondition.parse(bc)
    lines = [f"# rotor groundstates, {bc.value} boundaries (primitive integer normalisation)"]
    if bc is BoundaryCondition.PERIODIC:
        lines.append(
            "# odd N = 2m+1 predicted as 3^(3m) A_V(2m+1;3)^2; "
            "the N = 2m-1 reading of the same formula disagrees with the data"
        )
    if bc is BoundaryCondition.CLOSED:
        lines.append(
            "# odd N = 2m-1: sums compared after scaling the minimum to A_V(2m-1;3)"
        )
    return "\n".join(lines)


def emit(report: RunReport, fmt: str = "text") -> str:
    if fmt == "text":
        return format_text(report)
    if fmt == "json":
        return json.dumps(report.as_dict(), indent=2)
    if fmt == "csv":
        return emit_many([report], "csv")
    raise ValueError(f"unknown format {fmt!r}")


def emit_many(reports: list[RunReport], fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps([r.as_dict() for r in reports], indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["bc", "n", "value", "multiplicity"])
        for r in reports:
            for v, m in r.components:
                writer.writerow([r.bc.value, r.n, v, m])
        return buf.getvalue()
    if fmt == "text":
        out = []
        seen = set()
        for r in reports:
            if r.bc not in seen:
                out.append(text_header(r.bc))
                seen.add(r.bc)
            out.append(format_text(r))
        return "\n".join(out)
    raise ValueError(f"unknown format {fmt!r}")

