"""Projections, extension lists, and the pruning bounds.

Shows how a pattern's projection is grown one item at a time, what its
extension list records, and how the four look-ahead bounds (SWU, PEU, RSU,
TRSU) compare on concrete candidates.
"""

from huspmine import (I_EXTENSION, S_EXTENSION, extend_projection,
                      parse_database, peu_of_pattern, project_root, rsu,
                      swu_table, trsu)
from huspmine.bounds import peu_of_projection
from huspmine.seqstore import reduce_remaining

SEQUENCES = """\
1:2 2:2 -1 6:1 -1 1:1 4:1 -2
2:1 -1 4:1 6:1 -1 5:1 -1 4:2 -2
1:2 2:2 4:1 -1 4:1 -1 1:1 4:2 5:1 -2
3:2 -1 4:2 -1 5:1 -1 3:2 -1 6:1 -2
"""
UTILITIES = "1:3\n2:1\n3:2\n4:1\n5:1\n6:1\n"
NAMES = {1: "a", 2: "b", 3: "c", 4: "d", 5: "e", 6: "f"}

db = parse_database(SEQUENCES.splitlines(), UTILITIES.splitlines())

print("Single-item screening")
print("=" * 40)
print("SWU per item (whole-sequence utility of every carrier):")
for item, value in sorted(swu_table(db).items()):
    print(f"  {NAMES[item]}: {value}")
print("A 0.5 threshold needs 23.5, so item c (SWU 12) can never participate.")
print()

###############################################################################
# Growing a projection
# --------------------
# Start from the root (the empty pattern has one virtual entry per sequence)
# and grow <{b}>, then look at its extension lists: (acu, index) pairs, where
# acu is the exact best utility of an instance ending at that index.

root = project_root(db)
pb = [p for p in (extend_projection(q, 2, S_EXTENSION) for q in root) if p]
for proj in pb:
    print(f"<{{b}}> in S{proj.sa.sid + 1}: entries {proj.entries()}, "
          f"u = {proj.u}, PEU = {peu_of_projection(proj)}")
print()

###############################################################################
# RSU versus TRSU on the same candidate
# -------------------------------------
# Growing <{b}> with a later e: RSU keeps each carrier's full PEU, while TRSU
# additionally discounts the utility sitting between b and the first e, which
# no extension of <{b},{e}> can ever use.

print(f"RSU(<{{b}},{{e}}>)  = {rsu(pb, 5, S_EXTENSION)}")
print(f"TRSU(<{{b}},{{e}}>) = {trsu(pb, 5, S_EXTENSION)}")
print()

###############################################################################
# Branch overlays
# ---------------
# Inside the <{a}> branch, items e and f cannot reach the threshold (their
# RSU is 16 and 13), so irrelevant-item pruning zeroes them out for the whole
# branch. Every bound shrinks accordingly.

pa = [p for p in (extend_projection(q, 1, S_EXTENSION) for q in root) if p]
print(f"PEU(<{{a}}>) before pruning: {peu_of_pattern(pa)}")
dropped = frozenset({5, 6})
for proj in pa:
    if not dropped.isdisjoint(proj.sa.item_indices):
        proj.eff_rem = reduce_remaining(proj.sa, proj.eff_rem, dropped)
        proj.peu = peu_of_projection(proj)
    proj.removed = dropped
print(f"PEU(<{{a}}>) after removing e, f: {peu_of_pattern(pa)}")
print()
print("bounds for the surviving extensions of <{a}>:")
for label, item, ext in (("<{a b}>", 2, I_EXTENSION), ("<{a d}>", 4, I_EXTENSION),
                         ("<{a},{a}>", 1, S_EXTENSION), ("<{a},{d}>", 4, S_EXTENSION)):
    print(f"  {label:10} TRSU = {trsu(pa, item, ext):2}   RSU = {rsu(pa, item, ext):2}")
print()
print("At threshold 23.5 early pruning discards <{a},{a}> before its")
print("projection is ever built; the rest are evaluated exactly.")
