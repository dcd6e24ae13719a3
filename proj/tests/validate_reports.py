#!/usr/bin/env python3
"""Run each subcommand once and validate the JSON report against the shipped schema."""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["params", "--q", "100", "--gamma", "0.95"],
    ["params", "--q", "100", "--gamma", "0.9"],
    ["convergents", "--alpha", "sqrt:2", "--q-max", "1000"],
    ["convergents", "--alpha", "22/7"],
    ["ps-count", "--X", "100000", "--dual"],
    ["expsum", "--alpha", "sqrt:2", "--X", "100000"],
    ["theta", "--N1", "1000", "--N2", "5000", "--h", "2", "--m", "1"],
    ["vaughan", "--N1", "400", "--N2", "2000", "--v", "5"],
    ["lemma-check", "weyl", "--trials", "200", "--seed", "7"],
    ["lemma-check", "psi", "--trials", "1000"],
    ["gamma", "--mode", "desk", "--N", "100000", "--gamma", "0.95", "--alpha", "sqrt:2", "--delta", "0.05"],
    ["gamma", "--ladder", "1e4,1e5", "--delta", "0.01"],
    ["--with-timings", "search", "--N", "100000"],
]


def main():
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([exe, *args], capture_output=True, text=True)
        if proc.returncode != 0:
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        errors = sorted(validator.iter_errors(json.loads(proc.stdout)), key=str)
        if errors:
            failures += 1
            print(f"FAIL {' '.join(args)}: {errors[0].message}")
        else:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
