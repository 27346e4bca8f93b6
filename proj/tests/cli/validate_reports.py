"""Runs each subcommand and validates its JSON report against the published schema."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema


def main() -> int:
    cli, schema_path = sys.argv[1], Path(sys.argv[2])
    schema = json.loads(schema_path.read_text())
    validator = jsonschema.Draft202012Validator(schema)

    tmp = Path(tempfile.mkdtemp(prefix="qdist_schema_"))
    (tmp / "rho.json").write_text('{"re": [[0.7, 0.1], [0.1, 0.3]], "im": [[0, 0.05], [-0.05, 0]]}')
    (tmp / "p1.json").write_text('{"re": [[1, 0], [0, 0]]}')
    (tmp / "p2.json").write_text('{"re": [[0, 0], [0, 1]]}')
    (tmp / "H.json").write_text('{"re": [[0, 0.2, 0], [0.2, 1, 0], [0, 0, 2]]}')
    (tmp / "h.json").write_text('{"re": [[0.5, 0, 0], [0, 1, 0.3], [0, 0.3, 2]]}')
    (tmp / "state.json").write_text('{"re": [0.8, 0.6], "im": [0, 0]}')
    (tmp / "free.json").write_text('{"re": [0.8, 0.6], "labels": [-1, 2]}')

    runs = [
        ["gauss-distance", "--theta1", "1,0", "--theta2", "1,2", "--audit"],
        ["fr-metric", "--family", "gauss", "--at", "1.5,0.2", "--form", "hessian"],
        ["fr-metric", "--family", "ho:2", "--at", "1,2"],
        ["ho-manifold", "--n-max", "6"],
        ["sphere-metric", "--system", "ho", "--state", str(tmp / "state.json"), "--t", "0.4"],
        ["sphere-metric", "--system", "ho", "--state", str(tmp / "state.json"), "--t", "0.4",
         "--mode", "paper-diagonal"],
        ["sphere-metric", "--system", "free", "--state", str(tmp / "free.json"), "--t", "0.3"],
        ["rel-entropy", "--rho", str(tmp / "rho.json"), "--sigma", str(tmp / "rho.json")],
        ["rel-entropy", "--rho", str(tmp / "p1.json"), "--sigma", str(tmp / "p2.json")],
        ["thermal", "--H", str(tmp / "H.json"), "--beta", "0.7", "--b", "1.3"],
        ["thermal", "--H", str(tmp / "H.json"), "--rho-H", str(tmp / "h.json"), "--beta", "0.7", "--b", "1.3"],
        ["scalar-field", "--V", "1", "--b", "1", "--beta", "2"],
        ["scalar-field-distance", "--e1", "1", "--e2", "2", "--V", "3"],
        ["audit"],
    ]
    failures = 0
    for args in runs:
        proc = subprocess.run([cli, *args], capture_output=True, text=True)
        label = " ".join(args[:1])
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(report), key=str)
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failures += 1
        else:
            print(f"ok   {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
