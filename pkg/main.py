# main.py

import logging
import os
import sys
from typing import Optional, Sequence

from core.errors import ClockRGError
from execution.artifact_writer import ArtifactWriter
from execution.execution_config import OUTPUT_DIR_ENV
from execution.execution_engine import ExecutionEngine, exit_code_for
from execution.run_config import parse_config
from utils.formatting import dump_json
from utils.logging_setup import configure_logging

logger = logging.getLogger(__name__)


def _fallback_output_dir(argv: Sequence[str]) -> Optional[str]:
    """Best-effort output directory when the config itself is invalid."""
    for i, arg in enumerate(argv):
        if arg == "--output-dir" and i + 1 < len(argv):
            return argv[i + 1]
        if arg.startswith("--output-dir="):
            return arg.split("=", 1)[1]
    return os.environ.get(OUTPUT_DIR_ENV)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_config(argv)
    except ClockRGError as exc:
        configure_logging()
        exit_code = exit_code_for(exc)
        logger.error("invalid configuration: %s (%s)", exc.message, exc.code)
        payload = dict(exc.to_dict(), exit_code=exit_code)
        sys.stderr.write(dump_json(payload))
        output_dir = _fallback_output_dir(argv)
        if output_dir:
            ArtifactWriter(output_dir).write_error(exc.to_dict(), exit_code)
        return exit_code

    configure_logging(cfg.log_level)
    return ExecutionEngine().run(cfg)


if __name__ == "__main__":
    sys.exit(main())
