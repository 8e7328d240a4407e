# execution/sweep_engine.py

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

from core.errors import ClockRGError
from execution.commands import run_command
from execution.run_config import SweepSpec

logger = logging.getLogger(__name__)

STATUS_OK = "ok"
STATUS_ERROR = "error"


@dataclass
class SweepOutcome:
    spec: SweepSpec
    columns: Tuple[str, ...]
    rows: List[Dict[str, Any]]          # grid order
    documents: List[Dict[str, Any]] = field(default_factory=list)   # aggregation == none
    n_failed: int = 0

    @property
    def n_points(self) -> int:
        return len(self.rows)

    @property
    def failure_fraction(self) -> float:
        return self.n_failed / self.n_points if self.n_points else 0.0

    def to_dict(self) -> dict:
        out = {
            "sweep": self.spec.to_dict(),
            "n_points": self.n_points,
            "n_failed": self.n_failed,
            "rows": self.rows,
        }
        if self.spec.aggregation == "none":
            out["points"] = self.documents
        return out


def evaluate_point(task: Tuple[str, Dict[str, Any]]) -> Dict[str, Any]:
    """
    One grid point. Failures are returned, not raised, so one bad point
    never stops the sweep.
    """
    command, params = task
    try:
        result = run_command(command, params)
        return {"status": STATUS_OK, "error": "", "summary": result.summary, "document": result.document}
    except ClockRGError as exc:
        return {"status": STATUS_ERROR, "error": exc.code, "summary": {}, "document": exc.to_dict()}
    except (ArithmeticError, ValueError) as exc:
        return {"status": STATUS_ERROR, "error": type(exc).__name__, "summary": {},
                "document": {"error": type(exc).__name__, "message": str(exc)}}


class SweepEngine:
    def __init__(self, workers: int = 1):
        self.workers = max(1, int(workers))

    def run(self, spec: SweepSpec) -> SweepOutcome:
        points = list(spec.points())
        tasks = [(spec.point_command, p) for p in points]
        logger.info("sweep: %s over %d points, workers=%d", spec.point_command, len(tasks), self.workers)

        # map() yields results in submission order, so rows follow the grid
        if self.workers > 1 and len(tasks) > 1:
            with ProcessPoolExecutor(max_workers=self.workers) as executor:
                results = list(executor.map(evaluate_point, tasks))
        else:
            results = [evaluate_point(t) for t in tasks]

        axis_names = spec.axis_names
        columns: List[str] = ["index", *axis_names, "status", "error"]
        rows = []
        n_failed = 0
        for index, (point, res) in enumerate(zip(points, results)):
            row = {"index": index}
            row.update({name: point[name] for name in axis_names})
            row["status"] = res["status"]
            row["error"] = res["error"]
            for key, value in res["summary"].items():
                if key not in columns:
                    columns.append(key)
                row[key] = value
            if res["status"] == STATUS_ERROR:
                n_failed += 1
                logger.warning("sweep: point %d %s failed (%s)", index, point, res["error"])
            rows.append(row)

        documents = []
        if spec.aggregation == "none":
            documents = [{"index": i, "status": r["status"], "document": r["document"]}
                         for i, r in enumerate(results)]
        return SweepOutcome(spec=spec, columns=tuple(columns), rows=rows, documents=documents,
                            n_failed=n_failed)
