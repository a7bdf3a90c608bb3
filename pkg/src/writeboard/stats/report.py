"""Batch analysis over participant scores: descriptives plus group tests.

Input is either a flat CSV (one row per participant: group label, seven
criterion levels, knowledge score) or a directory of exported session event
logs. Output is a JSON report plus an aligned plain-text table.

Per measure: mean/SD/N per group. The seven criterion levels and their sum
get a pooled two-sample t-test; the knowledge score gets Levene's test and
Mann-Whitney U (the distributional comparison used when variances differ).
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable, Sequence

from writeboard.errors import DegenerateVariance, InsufficientData
from writeboard.rubric.engine import RubricCriterion, total_score
from writeboard.stats.inference import (
    GroupSample,
    levene_test,
    mann_whitney,
    pooled_t_test,
)

SIGNIFICANCE_ALPHA = 0.05

# CSV column name per criterion, in rubric order.
CRITERION_COLUMNS: dict[RubricCriterion, str] = {
    RubricCriterion.INTRODUCTORY_STATEMENT: "introductory_statement",
    RubricCriterion.PURPOSE: "purpose",
    RubricCriterion.METHODOLOGICAL_APPROACH: "methodological_approach",
    RubricCriterion.FINDINGS: "findings",
    RubricCriterion.CONTRIBUTION_TO_DISCIPLINE: "contribution_to_discipline",
    RubricCriterion.PROFESSIONAL_WRITING: "professional_writing",
    RubricCriterion.LENGTH: "length",
}

SUM_MEASURE = "sum_score"
KNOWLEDGE_MEASURE = "knowledge"


class ParticipantRow:
    """One participant's measures: criterion levels, their sum, optional knowledge score."""

    def __init__(self, group: str, levels: dict[str, int], knowledge: int | None = None):
        self.group = group
        self.levels = levels
        self.knowledge = knowledge
        named = {name: levels[name] for _, name in CRITERION_COLUMNS.items()}
        self.sum_score = total_score(
            {criterion: named[column] for criterion, column in CRITERION_COLUMNS.items()}
        ).total


def load_scores_csv(path: Path | str) -> list[ParticipantRow]:
    """Read the flat per-participant scores file."""
    rows: list[ParticipantRow] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        for record in reader:
            levels = {name: int(record[name]) for name in CRITERION_COLUMNS.values()}
            knowledge = record.get(KNOWLEDGE_MEASURE)
            rows.append(
                ParticipantRow(
                    group=record["group"].strip(),
                    levels=levels,
                    knowledge=int(knowledge) if knowledge not in (None, "") else None,
                )
            )
    return rows


def load_session_exports(directory: Path | str) -> list[ParticipantRow]:
    """Derive one row per exported session that carries a rubric judgement.

    The session's condition is used as the group label; knowledge scores are
    not part of session logs, so that measure is absent.
    """
    from writeboard.service.events import read_log  # local import: stats stays service-free otherwise

    rows: list[ParticipantRow] = []
    for log_path in sorted(Path(directory).glob("*.jsonl")):
        session = read_log(log_path)
        if session.rubric_levels is None:
            continue
        levels = {
            CRITERION_COLUMNS[RubricCriterion(name)]: level
            for name, level in session.rubric_levels.items()
        }
        rows.append(ParticipantRow(group=session.condition.value, levels=levels))
    return rows


def _two_groups(rows: Sequence[ParticipantRow]) -> list[str]:
    labels: list[str] = []
    for row in rows:
        if row.group not in labels:
            labels.append(row.group)
    if len(labels) != 2:
        raise InsufficientData(f"need exactly two groups, found {len(labels)}: {labels}")
    return labels


def _samples(rows: Iterable[ParticipantRow], labels: Sequence[str], measure: str) -> list[GroupSample]:
    per_label: dict[str, list[float]] = {label: [] for label in labels}
    for row in rows:
        if measure == SUM_MEASURE:
            value: int | None = row.sum_score
        elif measure == KNOWLEDGE_MEASURE:
            value = row.knowledge
        else:
            value = row.levels[measure]
        if value is not None:
            per_label[row.group].append(float(value))
    samples = [GroupSample(label, tuple(per_label[label])) for label in labels]
    for sample in samples:
        if sample.n < 2:
            raise InsufficientData(
                f"measure {measure!r}: group {sample.label!r} has {sample.n} observations"
            )
    return samples


def _descriptives(samples: Sequence[GroupSample]) -> dict:
    return {
        s.label: {"mean": s.mean, "sd": s.sd, "n": s.n}
        for s in samples
    }


def analyze_groups(rows: Sequence[ParticipantRow]) -> dict:
    """Full two-group report over every available measure."""
    if not rows:
        raise InsufficientData("no participant rows")
    labels = _two_groups(rows)
    measures: dict[str, dict] = {}

    for measure in list(CRITERION_COLUMNS.values()) + [SUM_MEASURE]:
        a, b = _samples(rows, labels, measure)
        entry: dict = {"descriptives": _descriptives((a, b))}
        try:
            result = pooled_t_test(a, b)
            entry["t_test"] = {
                "t": result.t,
                "df": result.df,
                "p": result.p,
                "significant": result.p < SIGNIFICANCE_ALPHA,
            }
        except DegenerateVariance as err:
            entry["t_test"] = {"error": err.code, "detail": str(err)}
        measures[measure] = entry

    if all(row.knowledge is not None for row in rows):
        a, b = _samples(rows, labels, KNOWLEDGE_MEASURE)
        entry = {"descriptives": _descriptives((a, b))}
        try:
            lev = levene_test(a, b)
            entry["levene"] = {"F": lev.F, "df1": lev.df1, "df2": lev.df2, "p": lev.p}
        except DegenerateVariance as err:
            entry["levene"] = {"error": err.code, "detail": str(err)}
        mw = mann_whitney(a, b)
        entry["mann_whitney"] = {
            "U": mw.U,
            "W": mw.W,
            "p": mw.p,
            "significant": mw.p < SIGNIFICANCE_ALPHA,
        }
        measures[KNOWLEDGE_MEASURE] = entry

    return {"groups": labels, "measures": measures}


def render_table(report: dict) -> str:
    """Aligned plain-text view of the report."""
    label_a, label_b = report["groups"]
    header = (
        f"{'measure':<28}{label_a + ' M (SD)':>20}{label_b + ' M (SD)':>20}"
        f"{'test':>16}{'p':>10}"
    )
    lines = [header, "-" * len(header)]
    for measure, entry in report["measures"].items():
        desc = entry["descriptives"]
        cell_a = f"{desc[label_a]['mean']:.2f} ({desc[label_a]['sd']:.2f})"
        cell_b = f"{desc[label_b]['mean']:.2f} ({desc[label_b]['sd']:.2f})"
        if "t_test" in entry:
            test = entry["t_test"]
            if "error" in test:
                stat, p_text = test["error"], "-"
            else:
                stat = f"t({test['df']})={test['t']:.3f}"
                p_text = f"{test['p']:.3f}"
            lines.append(f"{measure:<28}{cell_a:>20}{cell_b:>20}{stat:>16}{p_text:>10}")
        else:
            lev = entry.get("levene", {})
            if "error" in lev:
                stat, p_text = lev["error"], "-"
            else:
                stat = f"F({lev['df1']},{lev['df2']})={lev['F']:.3f}"
                p_text = f"{lev['p']:.3f}"
            lines.append(f"{measure:<28}{cell_a:>20}{cell_b:>20}{stat:>16}{p_text:>10}")
            mw = entry["mann_whitney"]
            stat = f"W={mw['W']:.1f}"
            p_text = f"{mw['p']:.3f}" + (" *" if mw["significant"] else "")
            lines.append(f"{'  (rank test)':<28}{'':>20}{'':>20}{stat:>16}{p_text:>10}".rstrip())
    return "\n".join(lines)


def write_report(report: dict, out_path: Path | str) -> Path:
    """Write the JSON report and its plain-text table (same path, .txt suffix added)."""
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(json.dumps(report, indent=2) + "\n", encoding="utf-8")
    table_path = out.with_name(out.name + ".txt")
    table_path.write_text(render_table(report) + "\n", encoding="utf-8")
    return out


def analyze_path(in_path: Path | str) -> dict:
    """Analyze a scores CSV file or a directory of exported session logs."""
    path = Path(in_path)
    rows = load_session_exports(path) if path.is_dir() else load_scores_csv(path)
    return analyze_groups(rows)
