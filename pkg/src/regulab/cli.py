"""Command-line driver: ``regulab list`` and ``regulab run <descriptor.json>``.

Exit codes: 0 when every non-skipped check passes, 1 when a check fails,
2 when the descriptor cannot be read or does not validate.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from functools import lru_cache
from importlib import resources
from pathlib import Path

import jsonschema

from .polylog import default_precision
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_SCHEMA = 0, 1, 2
FLOAT_FORMAT = ".17g"


@lru_cache(maxsize=1)
def descriptor_schema() -> dict:
    with resources.files("regulab.data").joinpath("schemas/descriptor.json").open() as fh:
        return json.load(fh)


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return format(x, FLOAT_FORMAT)


def canonical_json(obj, indent: int = 1, _level: int = 0) -> str:
    """Deterministic JSON: sorted keys, floats as %.17g, non-finite floats as strings."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None or isinstance(obj, bool):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=True)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {canonical_json(obj[k], indent, _level + 1)}" for k in sorted(obj, key=str)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(canonical_json(v) for v in obj) + "]"
        items = [pad + canonical_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def validate(descriptor) -> list[str]:
    """Schema diagnostics (empty when the descriptor is valid)."""
    v = jsonschema.Draft202012Validator(descriptor_schema())
    return [f"{'/'.join(map(str, e.absolute_path)) or '<root>'}: {e.message}" for e in sorted(v.iter_errors(descriptor), key=str)]


def list_suites() -> str:
    return "\n".join(f"{name:<14}{desc}" for name, (_, desc) in SUITES.items())


def run(path: str, output: str | None = None) -> tuple[dict | None, int]:
    try:
        descriptor = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot read descriptor {path}: {exc}", file=sys.stderr)
        return None, EXIT_SCHEMA
    errors = validate(descriptor)
    if errors:
        for e in errors:
            print(f"schema error: {e}", file=sys.stderr)
        return None, EXIT_SCHEMA
    precision = descriptor.get("precision", default_precision())
    report = run_suite(
        descriptor["kind"],
        descriptor.get("params", {}),
        descriptor.get("seed", 0),
        precision,
        descriptor.get("record_timing", False),
    )
    text = canonical_json(report) + "\n"
    target = output or descriptor.get("output")
    if target:
        Path(target).write_text(text)
    else:
        sys.stdout.write(text)
    for rec in report["records"]:
        print(f"{rec['status'].upper():<5} {rec['name']}", file=sys.stderr)
    return report, EXIT_OK if report["passed"] else EXIT_FAIL


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="regulab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="print the available suites")
    p_run = sub.add_parser("run", help="run the suite named by a descriptor file")
    p_run.add_argument("descriptor")
    p_run.add_argument("-o", "--output", help="report path (overrides the descriptor's output field)")
    args = parser.parse_args(argv)
    if args.command == "list":
        print(list_suites())
        return EXIT_OK
    _, code = run(args.descriptor, args.output)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
