"""JSON Schemas (draft 2020-12) for every CLI subcommand's JSON output."""

from __future__ import annotations

import json
from importlib import resources

COMMANDS = (
    "classify",
    "orbit",
    "typestring",
    "stability",
    "witness",
    "scan",
    "verify-modp",
    "verify-ff",
    "pell",
    "ljunggren",
)


def load_schema(command: str) -> dict:
    if command not in COMMANDS:
        raise KeyError(f"no schema for command {command!r}")
    text = resources.files(__name__).joinpath(f"{command}.json").read_text(encoding="utf-8")
    return json.loads(text)
