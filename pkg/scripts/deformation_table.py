#!/usr/bin/env python3
"""Print the dynamical deformation of a Bianchi algebra along the flow.

Thin wrapper over `oplax deform`, kept as a script so the table can be
produced without installing the console entry point:

    python3 scripts/deformation_table.py --label VIIa --a 0.5 --steps 8
"""

import sys

from oplax.cli import main

if __name__ == "__main__":
    raise SystemExit(main(["deform"] + sys.argv[1:]))
