"""Quantitative sequence databases from the ground up.

Builds the small running-example database used throughout the test suite,
then walks through the utility arithmetic: occurrence utilities, sequence
utilities, the database total, and the flattened seq-array storage the miner
works on.
"""

from huspmine import (build_seq_array, item_utility, parse_database,
                      sequence_utility)

SEQUENCES = """\
1:2 2:2 -1 6:1 -1 1:1 4:1 -2
2:1 -1 4:1 6:1 -1 5:1 -1 4:2 -2
1:2 2:2 4:1 -1 4:1 -1 1:1 4:2 5:1 -2
3:2 -1 4:2 -1 5:1 -1 3:2 -1 6:1 -2
"""

UTILITIES = "1:3\n2:1\n3:2\n4:1\n5:1\n6:1\n"

NAMES = {1: "a", 2: "b", 3: "c", 4: "d", 5: "e", 6: "f"}

print("Parsing the running example")
print("=" * 40)
db = parse_database(SEQUENCES.splitlines(), UTILITIES.splitlines())
print(f"{len(db.sequences)} sequences, total utility u(D) = {db.total_utility}")
print()

###############################################################################
# Per-sequence structure and utilities
# ------------------------------------
# Each line became one q-sequence of elements; every (item, quantity) pair
# contributes external_utility * quantity.

for seq in db.sequences:
    rendered = ", ".join(
        "{" + " ".join(f"{NAMES[i]}:{q}" for i, q in e.entries) + "}"
        for e in seq.elements)
    print(f"S{seq.sid + 1} = <{rendered}>  u = {sequence_utility(seq, db.utilities)}")
print()

s1 = db.sequences[0]
print("occurrence utilities inside S1:")
print(f"  u(a, element 1) = {item_utility(1, 1, s1, db.utilities)}  (3 per unit x 2)")
print(f"  u(f, element 2) = {item_utility(6, 2, s1, db.utilities)}")
print()

###############################################################################
# The seq-array
# -------------
# The miner flattens each sequence into parallel arrays: item ids, occurrence
# utilities, remaining utility after each index, and element bookkeeping.
# Remaining utilities telescope: rem[q] = rem[q+1] + util[q+1].

print("seq-array of S1:")
print(build_seq_array(s1, db.utilities).dump())
