"""Exhaustive and stochastic searches for SDS / PCS witnesses."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, fields

from ..formats import sds_from_dict, sds_to_dict
from ..sds import ParameterSet, SdsFamily

FOUND = "found"
EXHAUSTED_NONE = "exhausted-none"
BUDGET_EXHAUSTED = "budget-exhausted"

EXHAUSTIVE = "exhaustive"
STOCHASTIC = "stochastic"


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for both search modes.

    `max_evaluations` counts difference-profile computations, a full profile
    or one incremental move evaluation each, so budgets do not depend on the
    machine.  `time_limit` (seconds) is an extra wall-clock cap; leaving it
    unset keeps runs reproducible.
    """

    mode: str = EXHAUSTIVE
    max_evaluations: int = 10_000_000
    time_limit: float | None = None
    seed: int = 0
    population: int = 12
    mutation_rate: float = 0.3
    crossover_rate: float = 0.7
    restart_after: int = 40
    local_steps: int = 2000
    tabu_tenure: tuple[int, int] = (5, 15)
    islands: int = 1
    prune: bool = True
    progress_interval: int = 0

    def __post_init__(self):
        if self.mode not in (EXHAUSTIVE, STOCHASTIC):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.max_evaluations <= 0:
            raise ValueError("max_evaluations must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time_limit must be positive")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")
        for name in ("population", "restart_after", "local_steps", "islands"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        for name in ("mutation_rate", "crossover_rate"):
            if not 0 < getattr(self, name) <= 1:
                raise ValueError(f"{name} must be in (0, 1]")
        lo, hi = self.tabu_tenure
        if not 0 < lo <= hi:
            raise ValueError("tabu_tenure must be 0 < lo <= hi")
        if self.progress_interval < 0:
            raise ValueError("progress_interval must be >= 0")
        object.__setattr__(self, "tabu_tenure", (int(lo), int(hi)))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["tabu_tenure"] = list(self.tabu_tenure)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SearchConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config fields {sorted(unknown)}")
        d = dict(d)
        if "tabu_tenure" in d:
            d["tabu_tenure"] = tuple(d["tabu_tenure"])
        return cls(**d)


@dataclass
class SearchStats:
    evaluations: int = 0
    prunes: int = 0
    generations: int = 0
    best_fitness: int | None = None
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self) -> dict:
        # elapsed is wall-clock and would break byte-identical output
        return {
            "evaluations": self.evaluations,
            "prunes": self.prunes,
            "generations": self.generations,
            "best_fitness": self.best_fitness,
        }


@dataclass
class ParameterOutcome:
    parameters: ParameterSet
    status: str
    count: int


@dataclass
class SearchOutcome:
    status: str
    witnesses: list[SdsFamily]
    stats: SearchStats
    config: SearchConfig
    target: str = ""
    per_parameter: list[ParameterOutcome] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == FOUND

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "status": self.status,
            "config": self.config.to_dict(),
            "stats": self.stats.to_dict(),
            "per_parameter": [
                {"parameters": str(o.parameters), "status": o.status, "count": o.count}
                for o in self.per_parameter
            ],
            "witnesses": [sds_to_dict(w) for w in self.witnesses],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SearchOutcome":
        stats = SearchStats(**d["stats"])
        return cls(
            status=d["status"],
            witnesses=[sds_from_dict(w) for w in d["witnesses"]],
            stats=stats,
            config=SearchConfig.from_dict(d["config"]),
            target=d.get("target", ""),
            per_parameter=[
                ParameterOutcome(ParameterSet.parse(o["parameters"]), o["status"], o["count"])
                for o in d.get("per_parameter", [])
            ],
        )


from .exhaustive import exhaustive_base, exhaustive_golay, exhaustive_pcs, exhaustive_sds  # noqa: E402
from .stochastic import fitness, stochastic_sds  # noqa: E402

__all__ = [
    "BUDGET_EXHAUSTED",
    "EXHAUSTED_NONE",
    "FOUND",
    "ParameterOutcome",
    "SearchConfig",
    "SearchOutcome",
    "SearchStats",
    "exhaustive_base",
    "exhaustive_golay",
    "exhaustive_pcs",
    "exhaustive_sds",
    "fitness",
    "stochastic_sds",
]
