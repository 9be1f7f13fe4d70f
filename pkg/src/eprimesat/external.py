"""Invoking an external SAT solver binary and parsing what it prints.

Two output conventions are accepted: the competition format (`s
SATISFIABLE` with `v` literal lines) and the result-file style (`SAT`
on one line, literals on the following ones). Anything else comes back
as UNKNOWN with the captured output as diagnostics.
"""

from __future__ import annotations

import shlex
import subprocess
import time


def run_external(binary, dimacs_path, options=None):
    """-> (status in {SAT, UNSAT, UNKNOWN}, model dict var->bool | None,
    elapsed seconds, diagnostics string)."""
    cmd = [binary]
    if options:
        cmd.extend(shlex.split(options))
    cmd.append(dimacs_path)
    t0 = time.monotonic()
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True)
    except OSError as e:
        return "UNKNOWN", None, time.monotonic() - t0, str(e)
    elapsed = time.monotonic() - t0
    status, model = parse_solver_output(proc.stdout)
    diag = ""
    if status == "UNKNOWN":
        diag = (f"exit code {proc.returncode}; stdout: "
                f"{proc.stdout[:500]!r}; stderr: {proc.stderr[:500]!r}")
    return status, model, elapsed, diag


def parse_solver_output(text):
    status = None
    lits = []
    bare_model = False  # literals on untagged lines after a SAT line
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("s "):
            word = line[2:].strip().upper()
            if word == "SATISFIABLE":
                status = "SAT"
            elif word == "UNSATISFIABLE":
                status = "UNSAT"
            continue
        if line.startswith("v "):
            lits.extend(int(t) for t in line[2:].split())
            continue
        upper = line.upper()
        if status is None and upper in ("SAT", "SATISFIABLE"):
            status = "SAT"
            bare_model = True
            continue
        if status is None and upper in ("UNSAT", "UNSATISFIABLE"):
            status = "UNSAT"
            continue
        if bare_model:
            try:
                lits.extend(int(t) for t in line.split())
            except ValueError:
                pass
    if status == "SAT":
        model = {abs(l): l > 0 for l in lits if l != 0}
        if not model:
            return "UNKNOWN", None
        return "SAT", model
    if status == "UNSAT":
        return "UNSAT", None
    return "UNKNOWN", None
