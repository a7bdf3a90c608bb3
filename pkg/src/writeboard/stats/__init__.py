from writeboard.stats.inference import (
    GroupSample,
    KnowledgeTestPaper,
    LeveneResult,
    MannWhitneyResult,
    TTestResult,
    levene_test,
    mann_whitney,
    mann_whitney_exact_p,
    midranks,
    moment_matched_sample,
    pooled_t_test,
    score_knowledge_test,
)
from writeboard.stats.special import (
    f_survival,
    normal_survival,
    regularized_incomplete_beta,
    student_t_two_sided_p,
)

__all__ = [
    "GroupSample",
    "KnowledgeTestPaper",
    "LeveneResult",
    "MannWhitneyResult",
    "TTestResult",
    "f_survival",
    "levene_test",
    "mann_whitney",
    "mann_whitney_exact_p",
    "midranks",
    "moment_matched_sample",
    "normal_survival",
    "pooled_t_test",
    "regularized_incomplete_beta",
    "score_knowledge_test",
    "student_t_two_sided_p",
]
