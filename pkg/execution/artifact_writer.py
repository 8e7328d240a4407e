# execution/artifact_writer.py

import logging
import os
import platform
from typing import Any, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from execution.execution_config import ERROR_FILE, MANIFEST_FILE, PROJECT_NAME, VERSION
from utils.formatting import dump_json, format_float

logger = logging.getLogger(__name__)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    return str(value)


def library_versions() -> Dict[str, str]:
    return {
        PROJECT_NAME: VERSION,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "pandas": pd.__version__,
    }


class ArtifactWriter:
    """
    Owns every file in one output directory. Only the calling process
    writes; sweep workers hand their rows back instead.
    """

    def __init__(self, output_dir: str):
        self.output_dir = output_dir
        self.written: List[str] = []
        os.makedirs(self.output_dir, exist_ok=True)
        stale = os.path.join(self.output_dir, ERROR_FILE)
        if os.path.exists(stale):
            os.remove(stale)

    def _path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def _write_text(self, name: str, text: str) -> str:
        path = self._path(name)
        with open(path, mode="w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        if name not in self.written:
            self.written.append(name)
        logger.debug("artifact: wrote %s", path)
        return path

    def write_table(self, name: str, columns: Sequence[str], rows: Sequence[Dict[str, Any]]) -> str:
        """
        CSV with a header row even when empty; floats in shortest
        round-trip form, booleans as true/false, missing cells empty.
        """
        frame = pd.DataFrame(
            [[_cell(row.get(c)) for c in columns] for row in rows],
            columns=list(columns),
            dtype=object,
        )
        text = frame.to_csv(index=False, lineterminator="\n")
        return self._write_text(f"{name}.csv", text)

    def write_json(self, name: str, document: Dict[str, Any]) -> str:
        return self._write_text(f"{name}.json", dump_json(document))

    def write_gnuplot(self, name: str, script: str) -> str:
        return self._write_text(f"{name}.gp", script)

    def write_error(self, error: Dict[str, Any], exit_code: int) -> str:
        payload = dict(error)
        payload["exit_code"] = exit_code
        return self._write_text(ERROR_FILE, dump_json(payload))

    def write_manifest(
        self,
        config: Dict[str, Any],
        wall_time_s: float,
        exit_code: int,
        summary: Optional[Dict[str, Any]] = None,
        error: Optional[Dict[str, Any]] = None,
    ) -> str:
        manifest = {
            "project": PROJECT_NAME,
            "config": config,
            "versions": library_versions(),
            "wall_time_s": wall_time_s,
            "exit_code": exit_code,
            "artifacts": sorted(self.written),
            "summary": summary or {},
        }
        if error is not None:
            manifest["error"] = error
        return self._write_text(MANIFEST_FILE, dump_json(manifest))
