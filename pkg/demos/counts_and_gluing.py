"""Signed virtual counts and a gluing check, driven through the command line.

Run from the repository root with ``python3 demos/counts_and_gluing.py``.
"""

import pathlib

from dmanifold.cli import run

DOCS = pathlib.Path(__file__).parent / "documents"


def main():
    code, report = run("count", str(DOCS / "counts.json"))
    for name, entry in report["counts"].items():
        print(f"{name:<9} count {entry['count']:>2}")
    print("exit code", code)

    for doc in ("glue_identity.json", "glue_corrupt.json"):
        code, report = run("glue", str(DOCS / doc))
        for name, entry in report["glue"].items():
            failing = [c["condition"] for c in entry["conditions"] if not c["ok"]]
            print(f"{doc}: valid = {entry['valid']}, failing = {failing or 'none'}")


if __name__ == "__main__":
    main()
