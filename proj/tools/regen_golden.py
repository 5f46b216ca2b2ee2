#!/usr/bin/env python3
"""Regenerate the expected CLI outputs listed in tests/golden/cli/manifest.txt."""
import argparse
import pathlib
import shlex
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kha", default=str(ROOT / "build" / "kha"))
    args = parser.parse_args()
    for line in (GOLDEN / "cli" / "manifest.txt").read_text().splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        name, cmd = (part.strip() for part in line.split("|", 1))
        proc = subprocess.run([args.kha, *shlex.split(cmd)], cwd=GOLDEN, capture_output=True)
        if proc.returncode != 0:
            sys.stderr.write(f"{name}: exit {proc.returncode}: {proc.stderr.decode()}")
            return 1
        (GOLDEN / "cli" / f"{name}.out").write_bytes(proc.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
