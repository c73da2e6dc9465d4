"""Survey every rank-2 diagram and print one row per (diagram, Delta0).

Each row shows whether a balanced metric exists and whether the default
complex structure admits a pluriclosed one, so the mutual exclusion of the
two properties is visible at a glance.
"""
from hermvogan import construct_default_ell, decide_balanced, decide_pluriclosed, enumerate_delta0, enumerate_vogan, make_structure
from hermvogan.dsl import diagram_text
from hermvogan.rootsys import cartan_of_types, semisimple_types

rows = []
for types in [t for t in semisimple_types(2) if sum(n for _, n in t) == 2]:
    for vd in enumerate_vogan(cartan_of_types(types), dedup=True):
        for d0 in enumerate_delta0(vd):
            st = make_structure(vd, d0, construct_default_ell(vd, d0))
            b = decide_balanced(st).balanced
            p = decide_pluriclosed(st)
            rows.append((diagram_text(vd, d0), b, p.yes, p.reason.value if p.reason else ""))

width = max(len(r[0]) for r in rows)
print(f"{'diagram':<{width}}  balanced  pluriclosed  reason")
for text, b, p, why in rows:
    print(f"{text:<{width}}  {str(b):<8}  {str(p):<11}  {why}")
print("both at once:", sum(1 for r in rows if r[1] and r[2]))
