"""Depth-first high-utility sequential pattern search.

The miner grows patterns one item at a time over a lexicographic tree:
within a node, itemset growth (I-extension, ascending item ids) is explored
before sequence growth (S-extension, ascending item ids). Pruning happens at
three levels, each individually switchable:

* a one-off SWU prefilter drops items whose sequence-weighted utilization
  cannot meet the threshold, rebuilding the working database;
* irrelevant-item pruning (IIP) removes, per branch, extension items whose
  RSU fails the threshold, shrinking every remaining-utility read below;
* early pruning (EP) discards candidate extensions whose TRSU (or RSU,
  per configuration) fails the threshold before their projection is built;
* recursion stops whenever a pattern's PEU falls below the threshold.

A pattern's exact utility is always computed and checked before the PEU
recursion gate, so reported results never depend on pruning configuration.
Thresholds given as a ratio are resolved with exact rational arithmetic.
"""

import json
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from fractions import Fraction
from time import perf_counter
from typing import Callable, Optional, Union

from .bounds import BoundKind, _trsu_term, swu_table
from .qsdb import QSDB, QElement, QSequence, database_utility
from .seqstore import (I_EXTENSION, S_EXTENSION, Ext, ProjectedDB,
                       SeqProjection, extend_projection, project_root,
                       reduce_remaining)


@dataclass(frozen=True)
class Pattern:
    """An ordered tuple of itemsets, each holding ascending item ids."""

    itemsets: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def of(cls, *itemsets) -> "Pattern":
        packed = tuple(tuple(sorted(s)) for s in itemsets)
        for s in packed:
            if not s:
                raise ValueError("empty itemset")
            if len(set(s)) != len(s):
                raise ValueError("repeated item within an itemset")
        return cls(packed)

    @property
    def length(self) -> int:
        return sum(len(s) for s in self.itemsets)

    @property
    def size(self) -> int:
        return len(self.itemsets)

    def i_extend(self, item: int) -> "Pattern":
        return Pattern(self.itemsets[:-1] + (self.itemsets[-1] + (item,),))

    def s_extend(self, item: int) -> "Pattern":
        return Pattern(self.itemsets + ((item,),))

    def extend(self, item: int, ext: Ext) -> "Pattern":
        return self.i_extend(item) if ext == I_EXTENSION else self.s_extend(item)

    def encode(self) -> str:
        """Canonical text form: items, -1 between itemsets, -2 at the end."""
        parts: list[str] = []
        for j, itemset in enumerate(self.itemsets):
            if j:
                parts.append("-1")
            parts.extend(str(i) for i in itemset)
        parts.append("-2")
        return " ".join(parts)

    def render(self, names: Optional[dict[int, str]] = None) -> str:
        """Readable form like ``<{a b},{d}>``; falls back to numeric ids."""
        def show(i):
            return names.get(i, str(i)) if names else str(i)
        inner = ",".join("{" + " ".join(show(i) for i in s) + "}" for s in self.itemsets)
        return "<" + inner + ">"


@dataclass
class MinerConfig:
    """Mining parameters. Exactly one of ``ratio`` and ``min_utility`` is set.

    ``ratio`` is kept exact: strings like "0.01" are interpreted as decimal
    fractions, never as floats.
    """

    ratio: Union[str, Fraction, None] = None
    min_utility: Optional[int] = None
    bound: BoundKind = BoundKind.TRSU
    iip: bool = True
    ep: bool = True
    peu_depth_prune: bool = True
    swu_prefilter: bool = True
    max_pattern_length: Optional[int] = None
    threads: int = 1


@dataclass
class MineStats:
    """Search counters plus wall time and a structure-size memory estimate."""

    candidates: int = 0
    husps: int = 0
    iip_removed: int = 0
    ep_discarded: int = 0
    peu_stopped: int = 0
    runtime_ms: int = 0
    mem_bytes: int = 0

    def to_dict(self) -> dict[str, int]:
        return {
            "candidates": self.candidates,
            "husps": self.husps,
            "iip_removed": self.iip_removed,
            "ep_discarded": self.ep_discarded,
            "peu_stopped": self.peu_stopped,
            "runtime_ms": self.runtime_ms,
            "mem_bytes": self.mem_bytes,
        }


@dataclass
class HUSPResult:
    """All high-utility sequential patterns with exact utilities, plus stats."""

    patterns: list[tuple[Pattern, int]]
    stats: MineStats

    def lines(self) -> list[str]:
        return [f"{p.encode()} #UTIL: {u}" for p, u in self.patterns]

    def as_set(self) -> set[tuple[tuple[tuple[int, ...], ...], int]]:
        return {(p.itemsets, u) for p, u in self.patterns}


@dataclass(frozen=True)
class UtilityPredicate:
    """The exact test ``utility >= threshold`` with an integer floor.

    For integer utilities, ``u >= ratio * total`` is equivalent to
    ``u >= ceil(ratio * total)``, so one integer comparison suffices.
    """

    min_utility: int

    def __call__(self, utility: int) -> bool:
        return utility >= self.min_utility


def _validate_config(cfg: MinerConfig) -> None:
    if (cfg.ratio is None) == (cfg.min_utility is None):
        raise ValueError("exactly one of ratio and min_utility must be set")
    if cfg.min_utility is not None and cfg.min_utility < 0:
        raise ValueError("min_utility must be non-negative")
    if cfg.bound not in (BoundKind.TRSU, BoundKind.RSU):
        raise ValueError("bound must be TRSU or RSU")
    if cfg.threads < 1:
        raise ValueError("threads must be >= 1")


def exact_minimum_utility(cfg: MinerConfig, db: QSDB) -> int:
    """Integer utility floor equivalent to the configured threshold."""
    if cfg.min_utility is not None:
        return cfg.min_utility
    ratio = Fraction(cfg.ratio)
    if not 0 < ratio <= 1:
        raise ValueError(f"ratio {cfg.ratio} outside (0, 1]")
    scaled = ratio.numerator * db.total_utility
    return -(-scaled // ratio.denominator)


def resolve_threshold(cfg: MinerConfig, db: QSDB) -> UtilityPredicate:
    """The exact high-utility test for this configuration and database."""
    return UtilityPredicate(exact_minimum_utility(cfg, db))


def swu_prefilter(db: QSDB, predicate: Callable[[int], bool]) -> QSDB:
    """Drop every item whose SWU fails the predicate; rebuild the database.

    Emptied elements and sequences are dropped as well. The filtered database
    keeps its own recomputed total utility; thresholds must be resolved
    against the original database before filtering.
    """
    swu = swu_table(db)
    keep = {item for item, value in swu.items() if predicate(value)}
    sequences = []
    for seq in db.sequences:
        elements = []
        for element in seq.elements:
            entries = tuple(pair for pair in element.entries if pair[0] in keep)
            if entries:
                elements.append(QElement(entries))
        if elements:
            sequences.append(QSequence(seq.sid, tuple(elements)))
    filtered = QSDB(tuple(sequences), db.utilities, 0)
    return QSDB(filtered.sequences, db.utilities, database_utility(filtered))


def _pdb_bytes(pdb: ProjectedDB) -> int:
    return 56 + sum(16 * len(p.acu) + 64 for p in pdb)


def _base_bytes(pdb: ProjectedDB) -> int:
    total = 0
    for proj in pdb:
        sa = proj.sa
        total += 8 * (4 * (sa.length + 1)
                      + sum(len(v) + 1 for v in sa.item_indices.values()))
    return total


class _Search:
    """One depth-first search run; owns its counters and result sink."""

    def __init__(self, minutil: int, cfg: MinerConfig):
        self.minutil = minutil
        self.cfg = cfg
        self.stats = MineStats()
        self.results: dict[Pattern, int] = {}
        self.live = 0
        self.peak = 0

    # -- node scanning ------------------------------------------------------

    def _scan_projection(self, proj: SeqProjection):
        """First reachable occurrence of every candidate item, per extension kind."""
        sa = proj.sa
        items = sa.items
        elem_end = sa.elem_end
        removed = proj.removed
        ext_idx = proj.ext_idx
        imap: dict[int, int] = {}
        smap: dict[int, int] = {}
        first = imap.setdefault
        later = smap.setdefault
        if removed:
            for x in ext_idx:
                for y, it in enumerate(items[x + 1:elem_end[x] + 1], x + 1):
                    if it not in removed:
                        first(it, y)
            start = elem_end[ext_idx[0]] + 1
            for y, it in enumerate(items[start:], start):
                if it not in removed:
                    later(it, y)
        else:
            for x in ext_idx:
                for y, it in enumerate(items[x + 1:elem_end[x] + 1], x + 1):
                    first(it, y)
            start = elem_end[ext_idx[0]] + 1
            for y, it in enumerate(items[start:], start):
                later(it, y)
        return imap, smap

    def apply_iip(self, pdb: ProjectedDB, scans) -> int:
        """Remove extension items whose RSU fails the threshold, branch-wide.

        An item is removed only when it fails considering reachability through
        either extension kind. Returns the byte estimate of the overlay arrays
        this node now owns.
        """
        rsu_any: dict[int, int] = defaultdict(int)
        for proj, (imap, smap) in zip(pdb, scans):
            peu = proj.peu
            for it in imap:
                rsu_any[it] += peu
            for it in smap:
                if it not in imap:
                    rsu_any[it] += peu
        minutil = self.minutil
        dropped = frozenset(it for it, value in rsu_any.items() if value < minutil)
        if not dropped:
            return 0
        self.stats.iip_removed += len(dropped)
        merged = pdb[0].removed | dropped
        extra = 0
        for proj in pdb:
            sa = proj.sa
            if not dropped.isdisjoint(sa.item_indices):
                proj.eff_rem = reduce_remaining(sa, proj.eff_rem, dropped)
                eff = proj.eff_rem
                proj.peu = max(a + eff[x] for a, x in zip(proj.acu, proj.ext_idx))
                extra += 8 * len(eff)
            proj.removed = merged
        return extra

    def scan_extensions(self, pdb: ProjectedDB, scans) -> tuple[list, list]:
        """Surviving (item, carrier projections) per extension kind, ascending.

        A carrier list holds exactly the projections whose sequence contains
        the grown pattern, so later projection building skips the rest of the
        database. Early pruning drops candidates whose configured bound fails
        the threshold.
        """
        use_trsu = self.cfg.bound is BoundKind.TRSU
        minutil = self.minutil
        out: list[list[tuple[int, list[SeqProjection]]]] = []
        for which, ext in ((0, I_EXTENSION), (1, S_EXTENSION)):
            carriers: dict[int, list[SeqProjection]] = defaultdict(list)
            for proj, maps in zip(pdb, scans):
                removed = proj.removed
                for it in maps[which]:
                    if it not in removed:
                        carriers[it].append(proj)
            if not self.cfg.ep:
                out.append([(it, carriers[it]) for it in sorted(carriers)])
                continue
            kept: list[tuple[int, list[SeqProjection]]] = []
            for it in sorted(carriers):
                bucket = carriers[it]
                if use_trsu:
                    bound = 0
                    for proj in bucket:
                        bound += _trsu_term(proj, proj.sa.item_indices[it], ext)
                else:
                    bound = sum(proj.peu for proj in bucket)
                if bound >= minutil:
                    kept.append((it, bucket))
                else:
                    self.stats.ep_discarded += 1
            out.append(kept)
        return out[0], out[1]

    # -- growth -------------------------------------------------------------

    def pattern_growth(self, prefix: Pattern, pdb: ProjectedDB) -> None:
        scans = [self._scan_projection(p) for p in pdb]
        overlay_bytes = self.apply_iip(pdb, scans) if self.cfg.iip else 0
        if overlay_bytes:
            self.live += overlay_bytes
            if self.live > self.peak:
                self.peak = self.live
        ilist, slist = self.scan_extensions(pdb, scans)
        del scans
        for item, carriers in ilist:
            self.utility_calculation(prefix.i_extend(item), carriers, item, I_EXTENSION)
        for item, carriers in slist:
            self.utility_calculation(prefix.s_extend(item), carriers, item, S_EXTENSION)
        self.live -= overlay_bytes

    def utility_calculation(self, pattern: Pattern, carriers: ProjectedDB,
                            item: int, ext: Ext) -> None:
        """Build the grown pattern's projection over its carrier sequences."""
        self.stats.candidates += 1
        child: ProjectedDB = []
        utility = 0
        peu = 0
        for proj in carriers:
            grown = extend_projection(proj, item, ext)
            if grown is not None:
                child.append(grown)
                utility += grown.u
                peu += grown.peu
        # The exact-utility check must run before any recursion gate.
        if utility >= self.minutil:
            self.results[pattern] = utility
        cap = self.cfg.max_pattern_length
        if cap is not None and pattern.length >= cap:
            return
        if self.cfg.peu_depth_prune and peu < self.minutil:
            self.stats.peu_stopped += 1
            return
        if child:
            size = _pdb_bytes(child)
            self.live += size
            if self.live > self.peak:
                self.peak = self.live
            self.pattern_growth(pattern, child)
            self.live -= size


def _run_branch(minutil: int, cfg: MinerConfig, carriers: ProjectedDB,
                item: int, ext: Ext) -> _Search:
    branch = _Search(minutil, cfg)
    branch.utility_calculation(Pattern().extend(item, ext), carriers, item, ext)
    return branch


def mine(db: QSDB, cfg: MinerConfig) -> HUSPResult:
    """All high-utility sequential patterns of ``db`` under ``cfg``.

    The reported pattern set and utilities are those of the original
    database, whatever pruning configuration is used. Output is sorted by
    canonical pattern order and is deterministic, including under
    ``cfg.threads > 1``.
    """
    _validate_config(cfg)
    started = perf_counter()
    minutil = exact_minimum_utility(cfg, db)
    working = swu_prefilter(db, UtilityPredicate(minutil)) if cfg.swu_prefilter else db
    pdb = project_root(working)
    search = _Search(minutil, cfg)
    search.live = _base_bytes(pdb) + _pdb_bytes(pdb)
    search.peak = search.live
    if cfg.threads > 1 and pdb:
        _grow_root_parallel(search, pdb)
    elif pdb:
        search.pattern_growth(Pattern(), pdb)
    patterns = sorted(search.results.items(), key=lambda kv: kv[0].itemsets)
    stats = search.stats
    stats.husps = len(patterns)
    stats.mem_bytes = search.peak
    stats.runtime_ms = int((perf_counter() - started) * 1000)
    return HUSPResult([(p, u) for p, u in patterns], stats)


def _grow_root_parallel(search: _Search, pdb: ProjectedDB) -> None:
    """Process first-level branches concurrently; output equals sequential mode.

    Root-level IIP and candidate scanning run once up front; afterwards the
    root projections are only read. Every branch owns its statistics and
    results, merged in candidate order.
    """
    scans = [search._scan_projection(p) for p in pdb]
    overlay_bytes = search.apply_iip(pdb, scans) if search.cfg.iip else 0
    search.live += overlay_bytes
    ilist, slist = search.scan_extensions(pdb, scans)
    del scans
    tasks = ([(item, carriers, I_EXTENSION) for item, carriers in ilist]
             + [(item, carriers, S_EXTENSION) for item, carriers in slist])
    branch_cfg = replace(search.cfg, threads=1)
    with ThreadPoolExecutor(max_workers=search.cfg.threads) as pool:
        futures = [pool.submit(_run_branch, search.minutil, branch_cfg, carriers, item, ext)
                   for item, carriers, ext in tasks]
        branches = [f.result() for f in futures]
    deepest = 0
    for branch in branches:
        search.results.update(branch.results)
        stats = search.stats
        sub = branch.stats
        stats.candidates += sub.candidates
        stats.iip_removed += sub.iip_removed
        stats.ep_discarded += sub.ep_discarded
        stats.peu_stopped += sub.peu_stopped
        if branch.peak > deepest:
            deepest = branch.peak
    # Identical to the sequential estimate: branches are accounted one at a time.
    search.peak = max(search.peak, search.live + deepest)
    search.live -= overlay_bytes


def stats_document(cfg: MinerConfig, stats: MineStats, *, data: str = "",
                   utils: str = "", out: str = "") -> str:
    """Stable-keyed JSON document echoing the configuration and counters."""
    doc = {
        "data": data,
        "utils": utils,
        "out": out,
        "ratio": str(cfg.ratio) if cfg.ratio is not None else None,
        "min_utility": cfg.min_utility,
        "bound": cfg.bound.value,
        "iip": cfg.iip,
        "ep": cfg.ep,
        "peu_depth_prune": cfg.peu_depth_prune,
        "swu_prefilter": cfg.swu_prefilter,
        "max_pattern_length": cfg.max_pattern_length,
        "threads": cfg.threads,
    }
    doc.update(stats.to_dict())
    return json.dumps(doc, sort_keys=True)
