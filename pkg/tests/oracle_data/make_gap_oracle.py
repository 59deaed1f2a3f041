"""Regenerate gap_values.json by running GAP on every catalog group.

Usage: python make_gap_oracle.py /path/to/gap [-l gap-root]
GAP is used only as an external reference; the package never calls it.
"""

import json
import subprocess
import sys
from pathlib import Path

from gendim.catalog import catalog

HERE = Path(__file__).parent

SCRIPT = r"""
Report := function(name, G)
  local classes, maxes, fr;
  classes := ConjugacyClassesSubgroups(G);
  maxes := ConjugacyClassesMaximalSubgroups(G);
  fr := FrattiniSubgroup(G);
  Print("ROW\t", name, "\t", Size(G), "\t", Sum(classes, Size), "\t", Length(classes), "\t",
        Sum(maxes, Size), "\t", Size(fr), "\t", Size(DerivedSubgroup(G)), "\t",
        Length(MinimalGeneratingSet(G)), "\t", IsNilpotentGroup(G), "\t", IsSupersolvableGroup(G), "\t",
        IsSolvableGroup(G), "\t", AbelianInvariants(G), "\n");
end;
"""


def main(gap, extra):
    lines = [SCRIPT]
    for e in catalog():
        G = e.group()
        gens = ", ".join(f"PermList([{','.join(str(x + 1) for x in g.images)}])" for g in G.gens) or "()"
        lines.append(f'Report("{e.name}", Group([{gens}], ()));')
    lines.append("QUIT;")
    src = HERE / "_oracle.g"
    src.write_text("\n".join(lines) + "\n")
    out = subprocess.run([gap, *extra, "-q", "-A", str(src)], capture_output=True, text=True,
                         stdin=subprocess.DEVNULL, env={"TERM": "xterm"}).stdout
    src.unlink()
    rows = {}
    for line in out.replace("\\\n", "").splitlines():
        if not line.startswith("ROW"):
            continue
        _, name, order, nsub, ncls, nmax, fr, der, d, nil, ss, sol, inv = line.split("\t")
        rows[name] = {"order": int(order), "subgroups": int(nsub), "subgroup_classes": int(ncls),
                      "maximal_subgroups": int(nmax), "frattini_order": int(fr), "derived_order": int(der),
                      "r": int(d), "nilpotent": nil == "true", "supersolvable": ss == "true",
                      "solvable": sol == "true", "abelian_invariants": json.loads(inv.replace(" ", ""))}
    (HERE / "gap_values.json").write_text(json.dumps(rows, indent=1, sort_keys=True) + "\n")
    print(f"{len(rows)} groups")


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2:])
