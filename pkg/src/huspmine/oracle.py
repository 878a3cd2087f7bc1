"""Brute-force reference miner for validating the main search on small inputs.

Everything here works directly on the QSDB model: containment, instance
enumeration, and utilities are recomputed from scratch, sharing nothing with
the projection machinery it is used to check. Pattern enumeration exists in
two independent flavors (instance embeddings and one-item extensions) so the
oracle can also cross-check itself.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .miner import Pattern
from .qsdb import QSDB, QSequence


@dataclass(frozen=True)
class OracleLimits:
    """Input sizes beyond which full enumeration is refused."""

    max_sequences: int = 8
    max_distinct_items: int = 8
    max_sequence_length: int = 10
    max_pattern_length: int = 10


class OracleLimitError(ValueError):
    pass


def check_limits(db: QSDB, limits: OracleLimits) -> None:
    if len(db.sequences) > limits.max_sequences:
        raise OracleLimitError(f"more than {limits.max_sequences} sequences")
    distinct = {item for seq in db.sequences
                for element in seq.elements for item in element.items()}
    if len(distinct) > limits.max_distinct_items:
        raise OracleLimitError(f"more than {limits.max_distinct_items} distinct items")
    for seq in db.sequences:
        if seq.length > limits.max_sequence_length:
            raise OracleLimitError(
                f"sequence {seq.sid} longer than {limits.max_sequence_length}")


def _element_maps(seq: QSequence, db: QSDB) -> list[dict[int, int]]:
    table = db.utilities
    return [{item: table[item] * qty for item, qty in element.entries}
            for element in seq.elements]


def _itemset_utility(itemset: tuple[int, ...], element: dict[int, int]):
    total = 0
    for item in itemset:
        value = element.get(item)
        if value is None:
            return None
        total += value
    return total


def max_instance_utility(pattern: Pattern, seq: QSequence, db: QSDB):
    """Maximum utility over all instances of ``pattern`` in ``seq``, or None."""
    elements = _element_maps(seq, db)
    itemsets = pattern.itemsets
    n = len(elements)
    m = len(itemsets)
    memo: dict[tuple[int, int], object] = {}

    def best(pi: int, j: int):
        if pi == m:
            return 0
        if n - j < m - pi:
            return None
        key = (pi, j)
        if key in memo:
            return memo[key]
        result = best(pi, j + 1)
        here = _itemset_utility(itemsets[pi], elements[j])
        if here is not None:
            rest = best(pi + 1, j + 1)
            if rest is not None and (result is None or here + rest > result):
                result = here + rest
        memo[key] = result
        return result

    return best(0, 0) if m else None


def exact_utility(pattern: Pattern, db: QSDB) -> int:
    """Sum over sequences of the maximum instance utility (0 if absent)."""
    total = 0
    for seq in db.sequences:
        value = max_instance_utility(pattern, seq, db)
        if value is not None:
            total += value
    return total


def contains(seq: QSequence, pattern: Pattern) -> bool:
    """Greedy earliest-match subsequence containment."""
    sets = [set(element.items()) for element in seq.elements]
    j = 0
    for itemset in pattern.itemsets:
        need = set(itemset)
        while j < len(sets) and not need <= sets[j]:
            j += 1
        if j == len(sets):
            return False
        j += 1
    return True


def _patterns_by_embedding(db: QSDB, max_length: int) -> set[tuple]:
    found: set[tuple] = set()
    for seq in db.sequences:
        elements = [sorted(element.items()) for element in seq.elements]

        def grow(start: int, prefix: tuple, length: int) -> None:
            for j in range(start, len(elements)):
                items = elements[j]
                budget = max_length - length
                for size in range(1, min(len(items), budget) + 1):
                    for subset in combinations(items, size):
                        grown = prefix + (subset,)
                        found.add(grown)
                        if length + size < max_length:
                            grow(j + 1, grown, length + size)

        grow(0, (), 0)
    return found


def _patterns_by_extension(db: QSDB, max_length: int) -> set[tuple]:
    items_all = sorted({item for seq in db.sequences
                        for element in seq.elements for item in element.items()})
    found: set[tuple] = set()

    def grow(pattern: Pattern, carriers: list[QSequence]) -> None:
        found.add(pattern.itemsets)
        if pattern.length >= max_length:
            return
        last = pattern.itemsets[-1][-1]
        for item in items_all:
            if item > last:
                child = pattern.i_extend(item)
                sub = [s for s in carriers if contains(s, child)]
                if sub:
                    grow(child, sub)
        for item in items_all:
            child = pattern.s_extend(item)
            sub = [s for s in carriers if contains(s, child)]
            if sub:
                grow(child, sub)

    for item in items_all:
        single = Pattern(((item,),))
        carriers = [s for s in db.sequences if contains(s, single)]
        if carriers:
            grow(single, carriers)
    return found


def enumerate_patterns(db: QSDB, limits: OracleLimits = OracleLimits(),
                       method: str = "extension") -> list[Pattern]:
    """Every distinct pattern contained in the database, in canonical order."""
    check_limits(db, limits)
    if method == "extension":
        raw = _patterns_by_extension(db, limits.max_pattern_length)
    elif method == "embedding":
        raw = _patterns_by_embedding(db, limits.max_pattern_length)
    else:
        raise ValueError(f"unknown enumeration method {method!r}")
    return [Pattern(itemsets) for itemsets in sorted(raw)]


def pattern_utilities(db: QSDB, limits: OracleLimits = OracleLimits()
                      ) -> list[tuple[Pattern, int]]:
    """Exact utility of every contained pattern, in canonical order."""
    return [(p, exact_utility(p, db)) for p in enumerate_patterns(db, limits)]


def mine_bruteforce(db: QSDB, predicate: Callable[[int], bool],
                    limits: OracleLimits = OracleLimits()) -> list[tuple[Pattern, int]]:
    """All patterns whose exact utility passes the predicate, canonical order."""
    return [(p, u) for p, u in pattern_utilities(db, limits) if predicate(u)]
