"""Validate qes JSON output against the schemas in schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema

binary, root = sys.argv[1], pathlib.Path(sys.argv[2])
schemas = {n: json.loads((root / "schemas" / f"{n}.schema.json").read_text()) for n in ("spectrum", "eigenfunction", "verify")}


def reject(token):
    raise ValueError(f"non-finite number {token}")


cases = [
    ("spectrum", ["spectrum", "--potential", "v1", "--l", "2", "--k2", "0.5", "--family", "ring5"]),
    ("spectrum", ["spectrum", "--potential", "v2", "--l", "-0.5", "--k2", "0.5"]),
    ("spectrum", ["spectrum", "--potential", "v1", "--l", "0.3", "--k2", "0.5"]),
    ("spectrum", ["spectrum", "--potential", "v1", "--l", "-1.5", "--k2", "0.5", "--family", "bold5"]),
    ("eigenfunction", ["eigenfunction", "--potential", "v1", "--l", "3", "--k2", "0.5", "--family", "ring6", "--format", "json"]),
    ("eigenfunction", ["eigenfunction", "--potential", "v2", "--l", "0.3", "--k2", "0.25", "--format", "json"]),
    ("verify", ["verify", "--potential", "v1", "--l", "0", "--k2", "0.5"]),
    ("verify", ["verify", "--potential", "v2", "--l", "2.5", "--k2", "0.5", "--family", "bar5"]),
    ("verify", ["verify", "--potential", "v1", "--l", "0", "--k2", "0.5", "--energy-override", "1.0"]),
]

failed = 0
for kind, args in cases:
    proc = subprocess.run([binary, *args], capture_output=True, text=True)
    try:
        doc = json.loads(proc.stdout, parse_constant=reject)
        jsonschema.validate(doc, schemas[kind])
        print("ok  ", " ".join(args))
    except Exception as e:  # noqa: BLE001
        failed += 1
        print("FAIL", " ".join(args), "\n     ", str(e).splitlines()[0])
sys.exit(1 if failed else 0)
