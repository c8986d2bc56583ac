"""Runs each subcommand with json output and validates the report against the shipped schema."""

import json
import subprocess
import sys

import jsonschema

tool, schema_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)

runs = [
    (["repcheck", "--dmax", "5"], 0),
    (["verify", "--d", "3", "--spin", "scalar", "--npoints", "5"], 0),
    (["verify", "--d", "3", "--spin", "one", "--tamper", "--npoints", "5"], 2),
    (["spectrum", "--d", "3", "--l", "1", "--nmax", "1", "--numeric", "--format", "json"], 0),
    (["spectrum", "--d", "3", "--nmax", "0", "--numeric", "--tol", "1e-300", "--format", "json"], 2),
    (["radial", "--d", "3", "--spin", "half", "--j", "1/2", "--format", "json"], 0),
    (["radial", "--d", "3", "--spin", "half", "--j", "1/2", "--grid-points", "400", "--format", "json"], 3),
    (["radial", "--d", "4", "--spin", "one", "--l", "1", "--grid-points", "600", "--format", "json"], 0),
    (["forbidden", "--d", "4", "--lmax", "1"], 0),
    (["forbidden", "--d", "3"], 0),
    (["eval-specfun", "--function", "kummer", "--n", "3", "--b", "5/2", "--x", "1.5"], 1),
    (["eval-specfun", "--function", "kummer", "--n", "3", "--b", "2.5", "--x", "1.5"], 0),
]

failed = 0
for args, expected in runs:
    p = subprocess.run([tool, *args], capture_output=True, text=True)
    if p.returncode != expected:
        print(f"FAIL exit {p.returncode} (expected {expected}): {' '.join(args)}\n{p.stderr}")
        failed += 1
        continue
    if expected in (1, 3):
        continue
    errors = list(validator.iter_errors(json.loads(p.stdout)))
    for e in errors[:3]:
        print(f"FAIL schema: {' '.join(args)}: {e.message} at {list(e.absolute_path)}")
    failed += bool(errors)
    if not errors:
        print(f"ok: {' '.join(args)}")
sys.exit(1 if failed else 0)
