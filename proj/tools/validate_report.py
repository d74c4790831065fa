#!/usr/bin/env python3
"""Validate a collapse JSON report against the schema named in its header."""
import json
import pathlib
import sys

import jsonschema

SCHEMA_DIR = pathlib.Path(__file__).resolve().parent.parent / "schema"


def main(argv):
    if len(argv) < 2:
        print("usage: validate_report.py REPORT.json [...]", file=sys.stderr)
        return 2
    for path in argv[1:]:
        report = json.loads(pathlib.Path(path).read_text())
        name = report.get("schema", "")
        schema_file = SCHEMA_DIR / (name.removeprefix("collapse.") + ".schema.json")
        schema = json.loads(schema_file.read_text())
        jsonschema.Draft7Validator.check_schema(schema)
        jsonschema.Draft7Validator(schema).validate(report)
        print(f"{path}: valid {name} {report['schema_version']}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
