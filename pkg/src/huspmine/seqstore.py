"""Compact per-sequence storage and projected databases for pattern growth.

Each q-sequence is flattened into a set of parallel arrays (a seq-array)
indexed by the 1-based position of every item occurrence. A candidate
pattern's view of one sequence is a SeqProjection: a reference to the shared
seq-array plus an extension list of (acu, extension index) pairs, one per
element where an instance of the pattern ends. ``acu`` is the exact maximum
utility over instances ending at that position, so the pattern's utility in
the sequence is the largest acu and look-ahead bounds can be read off the
remaining-utility array without rescanning the sequence.

Projections also carry a branch overlay: a set of items ruled out for the
current search branch, realized as an adjusted remaining-utility array
(``eff_rem``). Seq-arrays are immutable and shared; each search branch owns
its projections, and sibling branches never observe each other's overlays.
"""

from dataclasses import dataclass
from itertools import accumulate
from typing import Literal, Optional

from .qsdb import QSDB, QSequence, UtilityTable

I_EXTENSION: "Ext" = "i"
S_EXTENSION: "Ext" = "s"
Ext = Literal["i", "s"]


class SeqArray:
    """Parallel-array encoding of one q-sequence.

    All arrays have length ``k + 1``; slot 0 is a sentinel standing for the
    virtual position before the first item, which lets the empty pattern be
    projected like any other. For an item index ``q`` in 1..k:

    * ``items[q]``    item id
    * ``util[q]``     occurrence utility (external utility * quantity)
    * ``rem[q]``      utility of everything after index q (``rem[0]`` is the
                      whole sequence utility, ``rem[k]`` is 0)
    * ``elem[q]``     1-based ordinal of the element containing q
    * ``elem_end[q]`` index of the last item of that element

    ``item_indices`` maps each distinct item to its ascending occurrence
    indices.
    """

    __slots__ = ("sid", "length", "items", "util", "rem", "elem", "elem_end",
                 "item_indices")

    def __init__(self, sid, length, items, util, rem, elem, elem_end, item_indices):
        self.sid = sid
        self.length = length
        self.items = items
        self.util = util
        self.rem = rem
        self.elem = elem
        self.elem_end = elem_end
        self.item_indices = item_indices

    def dump(self) -> str:
        """One line per array, for debugging and tests."""
        lines = [
            f"sid      {self.sid}",
            f"item     {self.items[1:]}",
            f"util     {self.util[1:]}",
            f"rem      {self.rem[1:]}",
            f"elem     {self.elem[1:]}",
            f"elem_end {self.elem_end[1:]}",
            f"indices  {dict(sorted(self.item_indices.items()))}",
        ]
        return "\n".join(lines)


def build_seq_array(seq: QSequence, table: UtilityTable) -> SeqArray:
    """Flatten a q-sequence into its seq-array."""
    items = [0]
    util = [0]
    elem = [0]
    elem_end = [0]
    item_indices: dict[int, list[int]] = {}
    idx = 0
    for ordinal, element in enumerate(seq.elements, start=1):
        start = idx + 1
        for item, qty in element.entries:
            idx += 1
            items.append(item)
            util.append(table[item] * qty)
            elem.append(ordinal)
            item_indices.setdefault(item, []).append(idx)
        end = idx
        elem_end.extend(end for _ in range(start, end + 1))
    k = idx
    rem = [0] * (k + 1)
    for q in range(k - 1, -1, -1):
        rem[q] = rem[q + 1] + util[q + 1]
    return SeqArray(seq.sid, k, items, util, rem, elem, elem_end, item_indices)


def remaining_utility(sa: SeqArray, index: int, removed: frozenset = frozenset()) -> int:
    """Utility of everything after ``index``, with removed items counting as 0."""
    if not 0 <= index <= sa.length:
        raise IndexError(f"index {index} out of range 0..{sa.length}")
    value = sa.rem[index]
    for item in removed:
        for x in sa.item_indices.get(item, ()):
            if x > index:
                value -= sa.util[x]
    return value


def reduce_remaining(sa: SeqArray, eff_rem: list[int], dropped: frozenset) -> list[int]:
    """A new effective remaining-utility array with ``dropped`` items zeroed out.

    ``eff_rem`` itself is never mutated; sibling branches may still share it.
    """
    items = sa.items
    util = sa.util
    # suffix[q] = total utility of dropped occurrences strictly after index q
    losses = [util[q] if items[q] in dropped else 0
              for q in range(sa.length, 0, -1)]
    suffix = list(accumulate(losses))
    suffix.reverse()
    suffix.append(0)
    return [e - s for e, s in zip(eff_rem, suffix)]


@dataclass(slots=True)
class SeqProjection:
    """One pattern's view of one q-sequence.

    ``acu[j]`` is the pattern's exact utility at extension index ``ext_idx[j]``
    (indices strictly ascending, one entry per element holding an instance
    end). ``u`` is the pattern utility in this sequence (max acu) and ``peu``
    the look-ahead value max(acu + eff_rem[ext index]).
    """

    sa: SeqArray
    acu: list[int]
    ext_idx: list[int]
    eff_rem: list[int]
    removed: frozenset
    peu: int
    u: int

    def entries(self) -> list[tuple[int, int]]:
        return list(zip(self.acu, self.ext_idx))


ProjectedDB = list[SeqProjection]


def project_root(db: QSDB) -> ProjectedDB:
    """Projection of the empty pattern: one virtual entry (acu 0, index 0) per sequence."""
    pdb = []
    for seq in db.sequences:
        sa = build_seq_array(seq, db.utilities)
        pdb.append(SeqProjection(sa, [0], [0], sa.rem, frozenset(), sa.rem[0], 0))
    return pdb


def extend_projection(proj: SeqProjection, item: int, ext: Ext) -> Optional[SeqProjection]:
    """Project ``proj`` onto the pattern grown by ``item``.

    For an S-extension an occurrence of ``item`` extends the best entry in any
    strictly earlier element; for an I-extension it extends the entry of its
    own element, provided the entry lies before it (which implies the item id
    exceeds the pattern's current extension item). Returns None when the grown
    pattern is not contained in the sequence.
    """
    sa = proj.sa
    occurrences = sa.item_indices.get(item)
    if not occurrences:
        return None
    acu = proj.acu
    ext_idx = proj.ext_idx
    elem = sa.elem
    util = sa.util
    n = len(ext_idx)
    new_acu: list[int] = []
    new_idx: list[int] = []
    if ext == S_EXTENSION:
        best = -1
        j = 0
        for x in occurrences:
            ex = elem[x]
            while j < n and elem[ext_idx[j]] < ex:
                if acu[j] > best:
                    best = acu[j]
                j += 1
            if best >= 0:
                new_acu.append(best + util[x])
                new_idx.append(x)
    else:
        j = 0
        for x in occurrences:
            ex = elem[x]
            while j < n and elem[ext_idx[j]] < ex:
                j += 1
            if j < n and elem[ext_idx[j]] == ex and ext_idx[j] < x:
                new_acu.append(acu[j] + util[x])
                new_idx.append(x)
    if not new_idx:
        return None
    eff = proj.eff_rem
    u = max(new_acu)
    peu = max(a + eff[x] for a, x in zip(new_acu, new_idx))
    return SeqProjection(sa, new_acu, new_idx, eff, proj.removed, peu, u)
