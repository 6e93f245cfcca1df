"""
Output store
Owns the run's output directory and writes every table/report atomically
"""

import json
import os
from pathlib import Path
from typing import Any, Sequence

import mpmath
import pandas as pd

from utils.util import DOUBLE_DIGITS, format_significant, log_info


CSV_FLOAT_FORMAT = "%.15g"


class OutputStore:
    def __init__(self, output_dir: str | Path, precision: int = 15):
        """
        Initialize the store. Creates the directory if it does not exist.

        Args:
            output_dir: Directory receiving all outputs
            precision: Configured precision in decimal digits
        """
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.precision = precision

    def path(self, file_name: str) -> Path:
        return self.output_dir / file_name

    def encode_number(self, value: Any) -> Any:
        """
        JSON-ready number. Above double precision numbers become strings:
        mpmath values with `precision` significant digits, doubles with the
        digits they actually carry.
        """
        if isinstance(value, bool) or value is None:
            return value
        if isinstance(value, int):
            return value
        if self.precision > DOUBLE_DIGITS:
            return format_significant(value, self.precision)
        return float(value)

    def encode_tree(self, payload: Any) -> Any:
        """encode_number applied to every real number inside nested dicts and lists."""
        if isinstance(payload, dict):
            return {key: self.encode_tree(value) for key, value in payload.items()}
        if isinstance(payload, (list, tuple)):
            return [self.encode_tree(value) for value in payload]
        if isinstance(payload, (float, mpmath.mpf)):
            return self.encode_number(payload)
        return payload

    def write_csv(self, file_name: str, rows: Sequence[dict[str, Any]], columns: list[str]) -> Path:
        """
        Write rows as CSV with a fixed column order and 15 significant digits.

        Args:
            file_name: Name inside the output directory
            rows: Records (dicts keyed by column)
            columns: Column order

        Returns:
            Path of the written file
        """
        frame = pd.DataFrame.from_records(list(rows), columns=columns)
        target = self.path(file_name)

        def dump(handle) -> None:
            frame.to_csv(handle, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")

        self._atomic_write(target, dump)
        log_info("Output", f"Wrote {len(frame)} rows to {target}")
        return target

    def write_json(self, file_name: str, payload: Any) -> Path:
        target = self.path(file_name)

        def dump(handle) -> None:
            json.dump(payload, handle, ensure_ascii=False, indent=2)
            handle.write("\n")

        self._atomic_write(target, dump)
        log_info("Output", f"Wrote {target}")
        return target

    def _atomic_write(self, target: Path, dump) -> None:
        """Write through a temp file and swap it in; the old file survives any failure."""
        temp_path = str(target) + ".tmp"
        try:
            with open(temp_path, "w", encoding="utf-8", newline="") as f:
                dump(f)
                f.flush()
                os.fsync(f.fileno())
            os.replace(temp_path, target)
        except Exception:
            if os.path.exists(temp_path):
                try:
                    os.remove(temp_path)
                except OSError:
                    pass
            raise
