"""Line-delimited JSON reports with a fixed field order."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .counts import Rational

SCHEMA_VERSION = "1"


def rational(value) -> dict:
    """Serialize a rational as ``{"num", "den"}``; Rationals stay unreduced."""
    if isinstance(value, Rational):
        return value.as_dict()
    f = Fraction(value)
    return {"num": f.numerator, "den": f.denominator}


@dataclass
class CliReport:
    command: str
    inputs: dict
    result: dict
    timings: dict | None = None
    schema_version: str = SCHEMA_VERSION

    def to_dict(self) -> dict:
        out = {"schema_version": self.schema_version, "command": self.command,
               "inputs": self.inputs, "result": self.result}
        if self.timings is not None:
            out["timings"] = self.timings
        return out

    def to_line(self) -> str:
        return dumps(self.to_dict())

    @classmethod
    def from_line(cls, line: str) -> "CliReport":
        data = json.loads(line)
        return cls(command=data["command"], inputs=data["inputs"],
                   result=data["result"], timings=data.get("timings"),
                   schema_version=data["schema_version"])


def dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "), ensure_ascii=True)


def record_line(record, timings: bool = True) -> str:
    """One bench record as a schema-versioned JSON line (no trailing newline)."""
    return dumps({"schema_version": SCHEMA_VERSION, **record.to_dict(timings)})
