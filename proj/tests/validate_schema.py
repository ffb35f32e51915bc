"""Validates `arith-harmonics verify` JSON output against schema/report.schema.json."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["franel-sawtooth", "--r-max", "6"],
    ["besicovitch", "--k", "4", "--s", "2"],
    ["ramanujan-point", "--k", "5", "--s", "1", "--n-terms", "100000"],
    ["mu-tail-bound"],
    ["gram-eigs", "--s", "2", "--n", "50"],
    ["biorth", "--n", "8"],
    ["lerch"],
    ["mikolas", "--s", "1.5+0.5i"],
]


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failed = 0
    for case in CASES:
        proc = subprocess.run([exe, "verify", *case], capture_output=True, text=True)
        doc = json.loads(proc.stdout)
        errors = list(validator.iter_errors(doc))
        if errors or doc["summary"]["exit_code"] != proc.returncode:
            failed += 1
            print("invalid:", " ".join(case), [e.message for e in errors])
        else:
            print("valid:", " ".join(case))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
