from __future__ import annotations

from enum import Enum


class Stage(str, Enum):
    LOADING = "LOADING"
    DEGREE = "DEGREE"
    COMMUNITIES = "COMMUNITIES"
    EFFICIENCY = "EFFICIENCY"
    TESTS = "TESTS"
    WRITING = "WRITING"
    DONE = "DONE"
    FAILED = "FAILED"


# Stage -> (progress at start, progress at end)
STAGE_PROGRESS = {
    Stage.LOADING: (0.0, 0.1),
    Stage.DEGREE: (0.1, 0.2),
    Stage.COMMUNITIES: (0.2, 0.6),
    Stage.EFFICIENCY: (0.6, 0.85),
    Stage.TESTS: (0.85, 0.95),
    Stage.WRITING: (0.95, 0.99),
}
