# execution/execution_engine.py

import logging
import time

from core.errors import ClockRGError, SweepError
from execution.artifact_writer import ArtifactWriter
from execution.commands import run_command
from execution.execution_config import (
    EXIT_CODES,
    EXIT_NUMERIC,
    EXIT_OK,
    EXIT_SWEEP,
    SWEEP_FAILURE_FRACTION,
)
from execution.run_config import RunConfig
from execution.sweep_engine import SweepEngine

logger = logging.getLogger(__name__)


def exit_code_for(error: ClockRGError) -> int:
    return EXIT_CODES.get(error.family, EXIT_NUMERIC)


class ExecutionEngine:
    def __init__(self, writer_factory=ArtifactWriter, sweep_engine_factory=SweepEngine):
        self.writer_factory = writer_factory
        self.sweep_engine_factory = sweep_engine_factory

    def run(self, cfg: RunConfig) -> int:
        """
        Execute one configured command and write its artifacts.
        Returns the process exit code; module errors end up in error.json.
        """
        started = time.perf_counter()
        writer = self.writer_factory(cfg.output_dir)
        summary = {}
        try:
            if cfg.sweep is not None:
                exit_code, summary = self._handle_sweep(cfg, writer)
            else:
                exit_code, summary = self._handle_command(cfg, writer)
        except ClockRGError as exc:
            exit_code = exit_code_for(exc)
            logger.error("%s failed: %s (%s)", cfg.command, exc.message, exc.code)
            writer.write_error(exc.to_dict(), exit_code)
            writer.write_manifest(cfg.to_dict(), time.perf_counter() - started, exit_code,
                                  summary, error=exc.to_dict())
            return exit_code

        writer.write_manifest(cfg.to_dict(), time.perf_counter() - started, exit_code, summary)
        logger.info("%s finished with exit code %d", cfg.command, exit_code)
        return exit_code

    def _handle_command(self, cfg: RunConfig, writer: ArtifactWriter):
        result = run_command(cfg.command, cfg.parameters, workers=cfg.workers)
        writer.write_table(cfg.command, result.columns, result.rows)
        writer.write_json(cfg.command, result.document)
        if cfg.gnuplot and result.plot is not None:
            writer.write_gnuplot(cfg.command, result.plot)
        return EXIT_OK, result.summary

    def _handle_sweep(self, cfg: RunConfig, writer: ArtifactWriter):
        outcome = self.sweep_engine_factory(cfg.workers).run(cfg.sweep)
        if cfg.sweep.aggregation == "table":
            writer.write_table("sweep", outcome.columns, outcome.rows)
        writer.write_json("sweep", outcome.to_dict())

        summary = {"n_points": outcome.n_points, "n_failed": outcome.n_failed}
        if outcome.failure_fraction > SWEEP_FAILURE_FRACTION:
            raise SweepError("more than half of the sweep points failed",
                             n_failed=outcome.n_failed, n_points=outcome.n_points)
        if outcome.n_failed:
            logger.warning("sweep: %d of %d points failed", outcome.n_failed, outcome.n_points)
            return EXIT_SWEEP, summary
        return EXIT_OK, summary
