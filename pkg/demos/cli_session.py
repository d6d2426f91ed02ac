"""
An evaluation session on the command line
=========================================

Everything the library does is reachable without writing Python: score a
file, build the full matrix from a manifest, correlate with a ratings
CSV.  This script stages a tiny corpus in a temporary directory and
replays a realistic terminal session against it, echoing each command
before its output.  Run me with ``python3 demos/cli_session.py``.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

workdir = Path(tempfile.mkdtemp(prefix="mtqual_demo_"))
print("staging corpus under", workdir)
print()

# ---------------------------------------------------------------------
# Files on disk: one segment per line, positionally aligned.  The
# manifest ties candidate and reference files to documents.
# ---------------------------------------------------------------------
files = {
    "weather.good.txt": [
        "a cold front reaches the coast tonight",
        "snow is expected on higher ground",
    ],
    "weather.rough.txt": [
        "cold front coast tonight arrive",
        "snow high ground maybe expect",
    ],
    "weather.ref1.txt": [
        "a cold front reaches the coast tonight",
        "snow is expected on higher ground",
    ],
    "weather.ref2.txt": [
        "tonight a cold front arrives at the coast",
        "higher ground can expect snow",
    ],
}
for name, lines in files.items():
    (workdir / name).write_text("\n".join(lines) + "\n", encoding="utf-8")

manifest = {
    "documents": [
        {
            "id": "weather",
            "systems": {"good": "weather.good.txt", "rough": "weather.rough.txt"},
            "references": ["weather.ref1.txt", "weather.ref2.txt"],
        }
    ]
}
(workdir / "manifest.json").write_text(json.dumps(manifest, indent=2), encoding="utf-8")

# Ratings as they would come back from two judges (three parameters each).
ratings_rows = ["judge_id,system_id,document,segment_index,parameter,rating"]
for judge in ("j1", "j2"):
    for seg in (0, 1):
        for param in (1, 6, 10):
            ratings_rows.append(f"{judge},good,weather,{seg},{param},5")
            ratings_rows.append(f"{judge},rough,weather,{seg},{param},2")
(workdir / "ratings.csv").write_text("\n".join(ratings_rows) + "\n", encoding="utf-8")


def run(*args: str) -> None:
    """Echo and execute one CLI invocation, exactly like a terminal would."""
    print("$ mtqual", " ".join(args))
    result = subprocess.run(
        [sys.executable, "-m", "mtqual.cli", *args],
        capture_output=True,
        text=True,
        cwd=workdir,
    )
    print(result.stdout, end="" if result.stdout.endswith("\n") else "\n")
    if result.returncode != 0:
        print(result.stderr, end="")
        print(f"(exit {result.returncode})")
    print()


# ---------------------------------------------------------------------
# 1. Score one candidate file with one metric.  Repeating --ref adds
#    reference versions; every metric takes the same file arguments.
# ---------------------------------------------------------------------
run("score", "--metric", "bleu",
    "--candidate", "weather.rough.txt",
    "--ref", "weather.ref1.txt", "--ref", "weather.ref2.txt")

# Sentence level emits one block per line instead of one pooled score.
run("score", "--metric", "gtm", "--level", "sentence",
    "--candidate", "weather.rough.txt",
    "--ref", "weather.ref1.txt", "--ref", "weather.ref2.txt")

# ---------------------------------------------------------------------
# 2. The full matrix from the manifest, as a markdown report.  The same
#    command with --format csv (or an --out report.csv) feeds spreadsheets.
# ---------------------------------------------------------------------
run("matrix", "--manifest", "manifest.json",
    "--metrics", "bleu,ter",
    "--format", "md", "--include-combined", "--include-corpus")

# ---------------------------------------------------------------------
# 3. Correlate the metric scores with the judges' CSV.  The report says,
#    per metric, whether ranking the systems by that metric reproduces
#    the human ranking.
# ---------------------------------------------------------------------
run("correlate", "--manifest", "manifest.json", "--ratings", "ratings.csv")

# ---------------------------------------------------------------------
# 4. Bad input is an exit code, not a stack trace: missing files exit 2
#    with a one-line error on stderr.
# ---------------------------------------------------------------------
run("score", "--metric", "bleu",
    "--candidate", "no_such_file.txt", "--ref", "weather.ref1.txt")

print("session complete; corpus left in", workdir, "for poking at")
