"""Group-comparison tests over small samples: pooled t, Levene, Mann-Whitney.

All statistics are computed directly from the defining formulas (no
statistics library); tail probabilities come from ``writeboard.stats.special``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

from writeboard.errors import DegenerateVariance, InsufficientData, LengthMismatch
from writeboard.stats.special import f_survival, normal_survival, student_t_two_sided_p


@dataclass(frozen=True)
class GroupSample:
    """A labelled list of real-valued observations."""

    label: str
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def mean(self) -> float:
        if not self.values:
            raise InsufficientData(f"group {self.label!r} is empty")
        return sum(self.values) / self.n

    @property
    def sd(self) -> float:
        """Sample standard deviation (n-1 denominator)."""
        if self.n < 2:
            raise InsufficientData(f"group {self.label!r} needs >= 2 values for a deviation")
        m = self.mean
        return math.sqrt(sum((v - m) ** 2 for v in self.values) / (self.n - 1))


@dataclass(frozen=True)
class TTestResult:
    t: float
    df: int
    p: float
    mean_a: float
    mean_b: float
    sd_a: float
    sd_b: float


@dataclass(frozen=True)
class LeveneResult:
    F: float
    df1: int
    df2: int
    p: float


@dataclass(frozen=True)
class MannWhitneyResult:
    U: float
    W: float
    p: float


def _require_min_n(a: GroupSample, b: GroupSample, minimum: int) -> None:
    for group in (a, b):
        if group.n < minimum:
            raise InsufficientData(
                f"group {group.label!r} has {group.n} observations, needs >= {minimum}"
            )


def pooled_t_test(a: GroupSample, b: GroupSample) -> TTestResult:
    """Student's two-sample t with pooled variance; two-sided p, df = n_a + n_b - 2."""
    _require_min_n(a, b, 2)
    df = a.n + b.n - 2
    pooled_var = ((a.n - 1) * a.sd**2 + (b.n - 1) * b.sd**2) / df
    if pooled_var <= 0.0:
        raise DegenerateVariance("pooled variance is zero; every value identical")
    se = math.sqrt(pooled_var * (1.0 / a.n + 1.0 / b.n))
    t = (a.mean - b.mean) / se
    return TTestResult(
        t=t,
        df=df,
        p=student_t_two_sided_p(t, df),
        mean_a=a.mean,
        mean_b=b.mean,
        sd_a=a.sd,
        sd_b=b.sd,
    )


def levene_test(a: GroupSample, b: GroupSample) -> LeveneResult:
    """Levene's homogeneity-of-variances test (mean-centered absolute deviations).

    One-way ANOVA F over z_ij = |x_ij - mean_j|, with df1 = 1 and
    df2 = n_a + n_b - 2 for two groups.
    """
    _require_min_n(a, b, 2)
    groups = (a, b)
    z = [tuple(abs(v - g.mean) for v in g.values) for g in groups]
    group_means = [sum(zg) / len(zg) for zg in z]
    n_total = a.n + b.n
    grand_mean = sum(sum(zg) for zg in z) / n_total
    df1 = len(groups) - 1
    df2 = n_total - len(groups)
    ss_between = sum(g.n * (zm - grand_mean) ** 2 for g, zm in zip(groups, group_means))
    ss_within = sum(
        sum((v - zm) ** 2 for v in zg) for zg, zm in zip(z, group_means)
    )
    if ss_within <= 0.0:
        raise DegenerateVariance("absolute deviations carry no within-group spread")
    f_stat = (ss_between / df1) / (ss_within / df2)
    return LeveneResult(F=f_stat, df1=df1, df2=df2, p=f_survival(f_stat, df1, df2))


def midranks(values: Sequence[float]) -> list[float]:
    """Ascending ranks with ties sharing the mean of their rank positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        shared = (i + j) / 2.0 + 1.0  # mean of 1-based positions i..j
        for k in range(i, j + 1):
            ranks[order[k]] = shared
        i = j + 1
    return ranks


def mann_whitney(a: GroupSample, b: GroupSample) -> MannWhitneyResult:
    """Mann-Whitney U via midranks; p from the tie-corrected normal approximation.

    U is the first group's statistic (equivalently the pair count of
    a_i > b_j plus half the ties), and W reports the same rank-sum-derived
    value, matching how two-sample rank tests are conventionally printed.
    """
    _require_min_n(a, b, 1)
    pooled = list(a.values) + list(b.values)
    ranks = midranks(pooled)
    rank_sum_a = sum(ranks[: a.n])
    u_a = rank_sum_a - a.n * (a.n + 1) / 2.0
    n_total = a.n + b.n
    mu = a.n * b.n / 2.0

    # variance with tie correction (n_total >= 2 because both groups are nonempty)
    tie_term = 0.0
    for _, group in itertools.groupby(sorted(pooled)):
        t = len(list(group))
        tie_term += t**3 - t
    variance = (a.n * b.n / 12.0) * ((n_total + 1) - tie_term / (n_total * (n_total - 1)))

    if variance <= 0.0:
        p = 1.0  # every observation tied; no evidence of a shift
    else:
        diff = u_a - mu
        # continuity correction pulls the statistic half a unit toward the mean
        if diff > 0:
            diff -= 0.5
        elif diff < 0:
            diff += 0.5
        z = diff / math.sqrt(variance)
        p = min(1.0, 2.0 * normal_survival(abs(z)))
    return MannWhitneyResult(U=u_a, W=u_a, p=p)


def mann_whitney_exact_p(a: GroupSample, b: GroupSample) -> float:
    """Exact two-sided p by enumerating group assignments; only for n_a + n_b <= 12."""
    n_total = a.n + b.n
    if n_total > 12:
        raise ValueError("exact enumeration limited to 12 total observations")
    _require_min_n(a, b, 1)
    pooled = list(a.values) + list(b.values)
    ranks = midranks(pooled)
    mu = a.n * b.n / 2.0
    observed = abs(mann_whitney(a, b).U - mu)
    extreme = 0
    count = 0
    for combo in itertools.combinations(range(n_total), a.n):
        rank_sum = sum(ranks[i] for i in combo)
        u = rank_sum - a.n * (a.n + 1) / 2.0
        count += 1
        if abs(u - mu) >= observed - 1e-12:
            extreme += 1
    return extreme / count


def score_knowledge_test(answers: Sequence[str], key: Sequence[str]) -> int:
    """Ten questions, ten points each."""
    if len(answers) != 10 or len(key) != 10:
        raise LengthMismatch(
            f"expected 10 answers and 10 key entries, got {len(answers)} and {len(key)}"
        )
    return 10 * sum(1 for got, want in zip(answers, key) if got == want)


@dataclass(frozen=True)
class KnowledgeTestPaper:
    """One graded multiple-choice paper; the score is always 10 x (number correct)."""

    answers: tuple[str, ...]
    key: tuple[str, ...]
    score: int

    @classmethod
    def grade(cls, answers: Sequence[str], key: Sequence[str]) -> "KnowledgeTestPaper":
        return cls(
            answers=tuple(answers),
            key=tuple(key),
            score=score_knowledge_test(answers, key),
        )


def moment_matched_sample(mean: float, sd: float, n: int) -> GroupSample:
    """Synthesize n values with exactly the given mean and sample SD.

    Useful for validating summary-statistic formulas against published
    moments when raw data are unavailable.
    """
    if n < 2:
        raise InsufficientData("need n >= 2 to fix a standard deviation")
    base = [float(i) for i in range(n)]
    base_mean = sum(base) / n
    base_sd = math.sqrt(sum((v - base_mean) ** 2 for v in base) / (n - 1))
    values = [mean + sd * (v - base_mean) / base_sd for v in base]
    return GroupSample(label=f"synthetic(m={mean}, sd={sd}, n={n})", values=tuple(values))
