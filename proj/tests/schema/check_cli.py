"""Run every CLI subcommand and validate its JSON output against docs/schemas."""

import json
import os
import random
import subprocess
import sys

from jsonschema import Draft202012Validator


def main():
    cli, schema_dir, work = sys.argv[1:4]
    os.makedirs(work, exist_ok=True)
    schemas = {}
    for name in ("selection_trace", "curve", "benchmark_report", "discretization_model"):
        with open(os.path.join(schema_dir, name + ".schema.json")) as f:
            schema = json.load(f)
        Draft202012Validator.check_schema(schema)
        schemas[name] = Draft202012Validator(schema)

    failures = []

    def run(args, expect=0):
        proc = subprocess.run([cli] + args, capture_output=True, text=True)
        if proc.returncode != expect:
            failures.append(f"{' '.join(args)}: exit {proc.returncode}, stderr {proc.stderr.strip()}")
        return proc

    def check(args, artifact):
        proc = run(args)
        if proc.returncode != 0:
            return None
        doc = json.loads(proc.stdout)
        errors = sorted(schemas[artifact].iter_errors(doc), key=lambda e: list(e.path))
        for e in errors[:5]:
            failures.append(f"{' '.join(args)}: {list(e.path)}: {e.message}")
        if doc.get("artifact") != artifact:
            failures.append(f"{' '.join(args)}: artifact {doc.get('artifact')!r}")
        return doc

    data = {}
    for name in ("planted", "xor", "duplicate"):
        data[name] = os.path.join(work, name + ".csv")
        run(["synth", name, "--seed", "5", "--output", data[name]])

    rng = random.Random(11)
    numeric = os.path.join(work, "numeric.csv")
    with open(numeric, "w") as f:
        f.write("height,weight,colour,label\n")
        for i in range(90):
            cls = i % 3
            height = "?" if i == 7 else f"{cls * 3 + rng.random() * 2:.4f}"
            f.write(f"{height},{rng.random() * 50:.3f},{rng.choice(['red', 'blue'])},g{cls}\n")

    for method in ("rcdfs", "mim", "mrmr", "cmim", "fcbf", "relieff"):
        doc = check(["select", "--input", data["planted"], "--method", method, "--delta", "6"], "selection_trace")
        if doc and method != "fcbf" and len(doc["trace"]["selected"]) != 6:
            failures.append(f"select {method}: expected 6 picks")
    check(["select", "--input", data["xor"], "--method", "rcdfs", "--delta", "4", "--verbose"], "selection_trace")
    check(["select", "--input", data["xor"], "--method", "rcdfs", "--delta", "4", "--reference"], "selection_trace")

    model_doc = check(["discretize", "--input", numeric], "discretization_model")
    if model_doc:
        model_path = os.path.join(work, "model.json")
        with open(model_path, "w") as f:
            json.dump(model_doc, f)
        check(["select", "--input", numeric, "--model", model_path, "--method", "mrmr", "--delta", "2"],
              "selection_trace")

    check(["curve", "--input", data["planted"], "--method", "cmim", "--m", "8", "--repeats", "2"], "curve")
    check(["curve", "--input", data["duplicate"], "--method", "fcbf", "--m", "3", "--classifier", "nbc"], "curve")
    check(["compare", "--input", data["planted"], "--method", "rcdfs,mim,relieff", "--repeats", "3"],
          "benchmark_report")
    check(["compare", "--input", data["duplicate"], "--method", "mrmr,rcdfs", "--repeats", "1", "--folds", "5",
           "--sample-mode", "fold"], "benchmark_report")

    proc = run(["select", "--input", os.path.join(work, "missing.csv")], expect=2)
    try:
        if "error" not in json.loads(proc.stderr):
            failures.append("error output lacks an error object")
    except json.JSONDecodeError:
        failures.append(f"error output is not JSON: {proc.stderr!r}")

    for f in failures:
        print("FAIL", f)
    print(f"{len(failures)} failure(s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
