# Copyright 2026 The nhzm Authors
# SPDX-License-Identifier: Apache-2.0
"""Checks the scenario schema with the reference jsonschema implementation and
compares its verdicts with those of the nhzm executable."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

GOOD = [
    {"task": "spectrum"},
    {"task": "bands", "options": {"gammas": [0.0, 0.5]}},
    {"task": "sweep", "options": {"gamma": {"start": 0, "stop": 1, "num": 3}}},
    {"task": "mode-profile", "options": {"mode": 3}},
    {"task": "ensemble", "options": {"n": 2, "periods": 0.01, "normalization": "l2"}},
]

BAD = [
    {},
    {"task": ""},
    {"task": "spectrum", "lattice": {"gamm": 1}},
    {"task": "spectrum", "lattice": {"gamma": -1}},
    {"task": "spectrum", "lattice": {"n_system": 0}},
    {"task": "sweep"},
    {"task": "sweep", "options": {"gamma": {"start": 0, "stop": 1, "num": 1}}},
    {"task": "bands", "options": {"n_k": 1}},
    {"task": "ensemble", "options": {"sigma": -0.1}},
    {"task": "ensemble", "options": {"normalization": "max2"}},
    {"task": "mode-profile", "options": {"mode": -1}},
    {"task": "spectrum", "extra": 1},
]


def main() -> int:
    schema_path, scenario_dir, exe = sys.argv[1], pathlib.Path(sys.argv[2]), sys.argv[3]
    schema = json.loads(pathlib.Path(schema_path).read_text())
    jsonschema.Draft7Validator.check_schema(schema)
    validator = jsonschema.Draft7Validator(schema)
    failures = 0

    for path in sorted(scenario_dir.glob("*.json")):
        errors = list(validator.iter_errors(json.loads(path.read_text())))
        if errors:
            print(f"FAIL {path.name}: {errors[0].message}")
            failures += 1

    with tempfile.TemporaryDirectory() as tmp:
        for label, docs, want_valid in (("good", GOOD, True), ("bad", BAD, False)):
            for i, doc in enumerate(docs):
                ref_valid = validator.is_valid(doc)
                path = pathlib.Path(tmp) / f"{label}{i}.json"
                path.write_text(json.dumps(doc))
                proc = subprocess.run([exe, "run", str(path), "--out", str(pathlib.Path(tmp) / f"o{label}{i}")],
                                      capture_output=True, text=True)
                cli_valid = proc.returncode != 2
                if ref_valid != want_valid or cli_valid != want_valid:
                    print(f"FAIL {label}{i} {doc}: jsonschema={ref_valid} nhzm={cli_valid} ({proc.stderr.strip()})")
                    failures += 1

    print(f"schema check: {failures} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
