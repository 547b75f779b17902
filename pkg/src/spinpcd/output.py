"""Self-describing CSV/JSON result files.

Every file embeds the full run configuration on a "#"-prefixed metadata
line, so re-running with the embedded config reproduces the payload
byte for byte.  Payload rows are plain numeric CSV (comment lines carry
everything else), which keeps the files directly loadable by plotting
tools.  Numbers are written with 17 significant digits and round-trip
exactly to 64-bit floats.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field

_CONFIG_PREFIX = "# config: "


def fmt(x) -> str:
    """17-significant-digit decimal form (lossless for float64)."""
    if isinstance(x, (int,)) and not isinstance(x, bool):
        return str(x)
    return format(float(x), ".17g")


@dataclass
class OutputRecord:
    """One emitted table: config echo, diagnostics header, numeric payload."""

    config: dict
    columns: list[str]
    rows: list[list[float]]
    diagnostics: dict = field(default_factory=dict)

    def payload_lines(self) -> list[str]:
        return [",".join(fmt(v) for v in row) for row in self.rows]

    def csv_text(self) -> str:
        lines = [_CONFIG_PREFIX + json.dumps(self.config, sort_keys=True)]
        for key, val in self.diagnostics.items():
            lines.append(f"# {key}: {val if isinstance(val, str) else fmt(val)}")
        lines.append("# columns: " + ",".join(self.columns))
        lines.extend(self.payload_lines())
        return "\n".join(lines) + "\n"

    def json_text(self) -> str:
        doc = {
            "config": self.config,
            "diagnostics": self.diagnostics,
            "columns": self.columns,
            "rows": self.rows,
        }
        return json.dumps(doc, sort_keys=True, indent=1) + "\n"

    def write(self, path: str | None, as_json: bool = False) -> None:
        text = self.json_text() if as_json else self.csv_text()
        if path is None or path == "-":
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)


def read_config(path: str) -> dict:
    """Recover the embedded config from a CSV result file."""
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith(_CONFIG_PREFIX):
                return json.loads(line[len(_CONFIG_PREFIX):])
    raise ValueError(f"{path} carries no embedded config line")


def read_payload_lines(path: str) -> list[str]:
    """Numeric payload rows of a CSV result file (comment lines skipped)."""
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh if line.strip() and not line.startswith("#")]
