"""End-to-end checks of the cvgauss executable.

Usage: cli_checks.py <check> <path-to-cvgauss> <schema> <scratch-dir>
"""

import json
import pathlib
import subprocess
import sys

import jsonschema


def run(exe, *args):
    return subprocess.run([exe, *args], capture_output=True)


def expect(condition, message):
    if not condition:
        raise SystemExit(f"FAIL: {message}")


def exit_codes(exe, _schema, _scratch):
    cases = [
        (0, ["separability"]),
        (0, ["--help"]),
        (0, ["check-state", "--gamma", "1,0,0,1"]),
        (2, []),
        (2, ["no-such-command"]),
        (2, ["separability", "--no-such-flag"]),
        (2, ["fidelity-sweep", "--format", "xml"]),
        (2, ["entanglement-sweep", "--log-base", "10"]),
        (2, ["fidelity-sweep", "--zeta", "1,0.5,2"]),
        (2, ["fidelity-sweep", "--zeta", "0:1"]),
        (2, ["separability", "--t2", "1.2"]),
        (2, ["check-state", "--gamma", "1,0,0"]),
        (2, ["entanglement-sweep", "--config", "/nonexistent/config.ini"]),
        (3, ["check-state", "--gamma", "0.5,0,0,0.5"]),
        (3, ["teleport", "--gamma", "0.5,0.5,0"]),
    ]
    for code, args in cases:
        got = run(exe, *args).returncode
        expect(got == code, f"{args}: exit {got}, expected {code}")


def deterministic(exe, _schema, scratch):
    args = ["teleport", "--zeta", "0:2:5", "--t2", "0.8", "--nth", "0.05", "--mean", "0.5,0.5", "--samples", "300",
            "--seed", "11"]
    for fmt in ("csv", "json"):
        a = scratch / f"first.{fmt}"
        b = scratch / f"second.{fmt}"
        for path in (a, b):
            expect(run(exe, *args, "--format", fmt, "--out", str(path)).returncode == 0, "teleport failed")
        expect(a.read_bytes() == b.read_bytes(), f"{fmt} reruns differ")
    stdout = run(exe, *args).stdout
    expect(stdout == (scratch / "first.csv").read_bytes(), "--out and stdout differ")
    expect(b"\r" not in stdout, "CSV must use LF line endings")
    other = run(exe, *args[:-1], "12").stdout
    expect(other != stdout, "the seed has no effect")


def config_precedence(exe, _schema, scratch):
    config = scratch / "sweep.ini"
    config.write_text("zeta=0.5,1\nlength=0:1:3\nlog-base=2\n")
    from_config = run(exe, "entanglement-sweep", "--config", str(config)).stdout.decode()
    explicit = run(exe, "entanglement-sweep", "--zeta", "0.5,1", "--length", "0:1:3", "--log-base", "2").stdout.decode()
    expect(from_config == explicit, "config values differ from the same flags")
    expect("[bit]" in from_config.splitlines()[0], "config log base ignored")

    overridden = run(exe, "entanglement-sweep", "--config", str(config), "--zeta", "2", "--log-base", "e").stdout.decode()
    rows = overridden.splitlines()[1:]
    expect(len(rows) == 3, "config length grid lost under a flag override")
    expect(all(r.startswith("2,") for r in rows), "flag did not override the config zeta")
    expect("[nat]" in overridden.splitlines()[0], "flag did not override the config log base")

    defaults = run(exe, "entanglement-sweep").stdout.decode().splitlines()
    expect(len(defaults) == 32 and defaults[1].startswith("inf,"), "defaults changed")

    typo = scratch / "typo.ini"
    typo.write_text("zetta=1\n")
    expect(run(exe, "entanglement-sweep", "--config", str(typo)).returncode == 2, "unknown config key accepted")


def json_schema(exe, schema_path, _scratch):
    schema = json.loads(schema_path.read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    commands = [
        ["entanglement-sweep"],
        ["entanglement-sweep", "--zeta", "0.5,inf", "--log-base", "2"],
        ["fidelity-sweep", "--zeta", "0,1,inf"],
        ["separability", "--zeta", "0,0.5,inf", "--nth", "0,0.2"],
        ["teleport", "--eta", "0.5", "--samples", "50"],
        ["check-state", "--gamma", "1,0,0,1"],
        ["check-state", "--gamma", "0.5,0,0,0.5"],
        ["check-state", "--gamma", "1,0,0,0,0,1,0,0,0,0,1,0,0,0,0,1"],
    ]
    for args in commands:
        out = run(exe, *args, "--format", "json")
        expect(out.returncode in (0, 3), f"{args} failed: {out.stderr.decode()}")
        doc = json.loads(out.stdout)
        errors = list(validator.iter_errors(doc))
        expect(not errors, f"{args}: {errors[0].message if errors else ''}")
        names = [c["name"] for c in doc["columns"]]
        for row in doc["rows"]:
            expect(all(n in row for n in names), f"{args}: row misses a column")
            for key, flag in row.items():
                if key.endswith("_infinite") and flag:
                    expect(row[key[: -len("_infinite")]] is None, f"{args}: infinite value not null")

    # The schema is not vacuous.
    bad = json.loads(run(exe, "separability", "--format", "json").stdout)
    bad["rows"][0]["nth_crit"] = "inf"
    expect(not validator.is_valid(bad), "schema accepts a string cell")
    bad["rows"][0]["nth_crit"] = 0.3
    bad["rows"][0]["nth_crit_infinite"] = 1
    expect(not validator.is_valid(bad), "schema accepts a numeric flag")

    # The infinite separability length of a zero-temperature row is flagged.
    doc = json.loads(run(exe, "separability", "--nth", "0", "--format", "json").stdout)
    row = doc["rows"][0]
    expect(row["separability_length"] is None and row["separability_length_infinite"], "l_S = inf not flagged")


CHECKS = {
    "exit_codes": exit_codes,
    "deterministic": deterministic,
    "config_precedence": config_precedence,
    "json_schema": json_schema,
}

if __name__ == "__main__":
    name, exe, schema, scratch = sys.argv[1:5]
    scratch_dir = pathlib.Path(scratch) / name
    scratch_dir.mkdir(parents=True, exist_ok=True)
    CHECKS[name](exe, pathlib.Path(schema), scratch_dir)
    print(f"{name}: ok")
