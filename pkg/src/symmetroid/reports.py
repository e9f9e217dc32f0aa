"""Schema-versioned JSON report envelopes for the CLI."""

from __future__ import annotations

import json
import sys

SCHEMA_VERSION = "symmetroid-report/1"


def make_report(subcommand, inputs, result, status="ok"):
    return {
        "schema": SCHEMA_VERSION,
        "subcommand": subcommand,
        "status": status,            # "ok" | "inconclusive" | "error"
        "inputs": inputs,
        "result": result,
    }


def emit(report, out=None, pretty=False):
    text = json.dumps(report, indent=2 if pretty else None, sort_keys=True)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def summary(line):
    sys.stderr.write(line.rstrip() + "\n")
