"""Utility upper bounds driving search-space pruning: SWU, PEU, RSU, TRSU.

All bounds answer the same question for a pattern ``t`` projected on a
database: how much utility could ``t`` or any of its extensions still reach?

* SWU  whole-sequence utility summed over sequences containing an item; the
  classic coarse filter for single items.
* PEU  per extension position, the pattern's utility there plus everything
  remaining after it; the per-sequence maximum bounds every descendant of the
  pattern, so it gates how deep the search recurses.
* RSU  for a one-item growth candidate, the parent's PEU restricted to
  sequences that still contain the grown pattern.
* TRSU a tighter RSU: when the parent's PEU is realized at its first
  extension position, the utility gap between the nearest extension position
  and the candidate item's first reachable occurrence can be discounted,
  because nothing in that gap can take part in any instance of the grown
  pattern ending at or after that occurrence. Each per-sequence value is kept
  at or above the best achievable extension through any single position
  (``acu + eff_rem`` just before the first compatible occurrence), which
  preserves the upper-bound guarantee while staying at or below RSU.

Every remaining-utility read goes through the projection's branch overlay, so
bounds shrink as irrelevant items are pruned from a branch.
"""

from bisect import bisect_left
from enum import Enum

from .qsdb import QSDB, sequence_utility
from .seqstore import Ext, ProjectedDB, SeqProjection, S_EXTENSION


class BoundKind(str, Enum):
    SWU = "swu"
    PEU = "peu"
    RSU = "rsu"
    TRSU = "trsu"


def swu_table(db: QSDB) -> dict[int, int]:
    """Sequence-weighted utilization of every item occurring in the database."""
    table: dict[int, int] = {}
    for seq in db.sequences:
        su = sequence_utility(seq, db.utilities)
        distinct = {item for element in seq.elements for item in element.items()}
        for item in distinct:
            table[item] = table.get(item, 0) + su
    return table


def peu_of_projection(proj: SeqProjection) -> int:
    """Recompute PEU of one projection from its entries and overlay."""
    eff = proj.eff_rem
    return max(a + eff[x] for a, x in zip(proj.acu, proj.ext_idx))


def peu_of_pattern(pdb: ProjectedDB) -> int:
    """PEU of the projected pattern over the whole database."""
    return sum(peu_of_projection(p) for p in pdb)


def _first_compatible(proj: SeqProjection, occurrences: list[int], ext: Ext) -> int | None:
    """Index of the first occurrence that can extend some entry, or None."""
    elem = proj.sa.elem
    ext_idx = proj.ext_idx
    n = len(ext_idx)
    if ext == S_EXTENSION:
        first_after = proj.sa.elem_end[ext_idx[0]]
        for x in occurrences:
            if x > first_after:
                return x
        return None
    j = 0
    for x in occurrences:
        ex = elem[x]
        while j < n and elem[ext_idx[j]] < ex:
            j += 1
        if j == n:
            return None
        if elem[ext_idx[j]] == ex and ext_idx[j] < x:
            return x
    return None


def _trsu_term(proj: SeqProjection, occurrences: list[int], ext: Ext) -> int | None:
    """Per-sequence TRSU of the pattern grown by the item with ``occurrences``.

    Returns None when the grown pattern is not contained in the sequence.
    The result never exceeds the projection's PEU and never falls below the
    best single-position extension value, which keeps the bound sound.
    """
    elem = proj.sa.elem
    eff = proj.eff_rem
    acu = proj.acu
    ext_idx = proj.ext_idx
    n = len(ext_idx)
    m = len(occurrences)
    path_best = -1
    x_first = None
    p = 0
    if ext == S_EXTENSION:
        for e in range(n):
            boundary = elem[ext_idx[e]]
            while p < m and elem[occurrences[p]] <= boundary:
                p += 1
            if p == m:
                break
            x = occurrences[p]
            if x_first is None:
                x_first = x
            value = acu[e] + eff[x - 1]
            if value > path_best:
                path_best = value
    else:
        for e in range(n):
            ei = ext_idx[e]
            while p < m and occurrences[p] <= ei:
                p += 1
            if p == m:
                break
            x = occurrences[p]
            if elem[x] == elem[ei]:
                if x_first is None:
                    x_first = x
                value = acu[e] + eff[x - 1]
                if value > path_best:
                    path_best = value
    if x_first is None:
        return None
    peu = proj.peu
    if peu == acu[0] + eff[ext_idx[0]]:
        # PEU realized at the first position: discount the gap between the
        # nearest extension position below x_first and x_first itself.
        nearest = ext_idx[bisect_left(ext_idx, x_first) - 1]
        term = peu - (eff[nearest] - eff[x_first - 1])
    else:
        term = peu
    return term if term >= path_best else path_best


def rsu(pdb: ProjectedDB, item: int, ext: Ext) -> int:
    """RSU of the pattern grown by ``item`` from the projected pattern."""
    total = 0
    for proj in pdb:
        occurrences = proj.sa.item_indices.get(item)
        if occurrences and _first_compatible(proj, occurrences, ext) is not None:
            total += proj.peu
    return total


def trsu(pdb: ProjectedDB, item: int, ext: Ext) -> int:
    """TRSU of the pattern grown by ``item`` from the projected pattern."""
    total = 0
    for proj in pdb:
        occurrences = proj.sa.item_indices.get(item)
        if occurrences:
            term = _trsu_term(proj, occurrences, ext)
            if term is not None:
                total += term
    return total
