"""Freeze brute-force r, m, i, MaxDim and subgroup counts for small catalog groups.

Run from the repository root: python3 tests/oracle_data/make_brute_oracle.py
Only generator images are taken from the package; every value is computed by
tests/oracles.py.
"""

import json
import sys
import time
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parent))

from oracles import Brute  # noqa: E402

from gendim.catalog import catalog  # noqa: E402

MAX_ORDER = int(sys.argv[1]) if len(sys.argv) > 1 else 48

out = {}
for e in catalog():
    G = e.group()
    gens = [list(g.images) for g in G.gens]
    b = Brute([tuple(g) for g in gens], G.degree)
    row = {"order": len(b.G)}
    if len(b.G) <= MAX_ORDER:
        t = time.time()
        r, m, i = b.search()
        row.update(r=r, m=m, i=i, maxdim=b.maxdim(), subgroups=len(b.subgroups()))
        print(e.name, row, f"{time.time() - t:.1f}s", flush=True)
    out[e.name] = row
(HERE / "brute_values.json").write_text(json.dumps(out, indent=1, sort_keys=True) + "\n")
