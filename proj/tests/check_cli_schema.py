#!/usr/bin/env python3
"""Runs every subcommand with --json and validates the output against the schema."""

import json
import subprocess
import sys

import jsonschema

# (arguments, expected exit code, $defs entry the result must match)
CASES = [
    (["eval", "(1+eps)^2"], 0, "eval"),
    (["--precision", "3", "eval", "1/(1+eps)"], 0, "eval"),
    (["eval", "x^3", "--at", "1/2"], 0, "eval"),
    (["classify", "w - 5"], 0, "classify"),
    (["classify", "x", "--at", "0"], 0, "classify"),
    (["compare", "eps", "0"], 0, "compare"),
    (["compare", "w", "2*w", "--galaxy"], 0, "compare"),
    (["shadow", "3 + 2*eps"], 0, "shadow"),
    (["diff", "x^2", "--at", "3"], 0, "diff"),
    (["diff", "abs(x)", "--at", "0"], 0, "diff"),
    (["diff", "1/x", "--at", "0"], 0, "diff"),
    (["limit", "(x^2-1)/(x-1)", "--to", "1"], 0, "limit"),
    (["limit", "1/x", "--to", "0", "--side", "right"], 0, "limit"),
    (["limit", "x^2", "--to", "-inf"], 0, "limit"),
    (["seq-limit", "(2*n^2+1)/(n^2+3)"], 0, "limit"),
    (["continuity", "abs(x)", "--at", "0"], 0, "continuity"),
    (["filters", "enumerate", "--size", "3"], 0, "filters_enumerate"),
    (["filters", "enumerate", "--size", "7", "--mode", "generator"], 0, "filters_enumerate"),
    (["filters", "classify", "[[0,1,2]]", "--size", "3"], 0, "report"),
    (["filters", "classify", "[[],[0],[1],[0,1]]", "--size", "2"], 0, "report"),
    (["filters", "generate", "[[0],[1]]", "--size", "3"], 0, "filters_generate"),
    (["transfer", "check", "x in N", "--structure", "N"], 0, "transfer"),
    (["transfer", "check", "forall K subset N, empty in K", "--structure", "N"], 0, "transfer"),
    (["transfer", "star", "forall x in N, x+1 in N", "--structure", "N"], 0, "transfer"),
    (["transfer", "transferable", "forall n in *N, |*s(n)| <= omega"], 0, "transfer"),
    (["transfer", "transferable", "forall x in R, x < x + 1", "--direction", "forward"], 0,
     "transfer"),
    (["transfer", "weaken", "forall n in *N, |*s(n)| <= omega"], 0, "transfer"),
    (["hilbert", "classify", "[eps, eps]"], 0, "hilbert_classify"),
    (["hilbert", "inner", "[1, i]", "[2, i]"], 0, "hilbert_inner"),
    (["hilbert", "norm", "[w + 1, w]"], 0, "hilbert_norm"),
    (["hilbert", "standard-part", "[1 + eps, 2*i - eps^2]"], 0, "hilbert_standard_part"),
    # errors
    (["eval", "1/0"], 1, None),
    (["eval", "1 +"], 1, None),
    (["shadow", "w"], 1, None),
    (["transfer", "star", "x in N"], 1, None),
    (["hilbert", "inner", "[1]", "[1, 2]"], 1, None),
    (["hilbert", "standard-part", "[w]"], 1, None),
    (["filters", "enumerate"], 2, None),
    (["filters", "enumerate", "--size", "6", "--mode", "exhaustive"], 1, None),
    (["--precision", "0", "eval", "1"], 2, None),
    (["no-such-command"], 2, None),
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as fh:
        schema = json.load(fh)
    validator_cls = jsonschema.validators.validator_for(schema)
    validator_cls.check_schema(schema)
    envelope = validator_cls(schema)
    failures = 0
    for args, code, definition in CASES:
        proc = subprocess.run([binary, "--json", *args], capture_output=True, text=True, check=False)
        label = " ".join(args)
        try:
            doc = json.loads(proc.stdout)
            envelope.validate(doc)
            if proc.returncode != code:
                raise ValueError(f"exit code {proc.returncode}, expected {code}")
            if definition is not None:
                specific = {"$ref": f"#/$defs/{definition}", "$defs": schema["$defs"]}
                validator_cls(specific).validate(doc["result"])
            elif doc["ok"]:
                raise ValueError("expected an error envelope")
        except (ValueError, KeyError, jsonschema.ValidationError) as exc:
            failures += 1
            print(f"FAIL {label}: {exc}\n  stdout: {proc.stdout.strip()}")
            continue
        print(f"ok   {label}")
    print(f"{len(CASES) - failures}/{len(CASES)} outputs valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
