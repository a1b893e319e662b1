#!/usr/bin/env python3
"""Regenerate the bundled orbifold input files under inputs/."""

import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from orbifock.examples import BUNDLED
from orbifock.schema import parse_orbifold_input


def main():
    root = pathlib.Path(__file__).resolve().parents[1] / "inputs"
    root.mkdir(exist_ok=True)
    for name, build in BUNDLED.items():
        data = build()
        parse_orbifold_input(data)  # must validate before shipping
        path = root / f"{name}.json"
        path.write_text(json.dumps(data, indent=2) + "\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
