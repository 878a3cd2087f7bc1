"""Quantitative sequence databases: model, parsing, and utility arithmetic.

A q-sequence is an ordered list of elements (itemsets). Every item occurrence
carries a positive integer quantity, and every distinct item has a positive
per-unit (external) utility shared database-wide. The utility of an occurrence
is ``external_utility * quantity``; element, sequence, and database utilities
are sums of occurrence utilities.

Text formats (UTF-8, line oriented; ``#`` starts a comment line and blank
lines are ignored):

* sequence file: one q-sequence per line, written as ``item:quantity`` tokens
  separated by single spaces, with ``-1`` between elements and ``-2`` closing
  the line, e.g. ``1:2 2:2 -1 6:1 -1 1:1 4:1 -2``
* utility file: one ``item:externalUtility`` token per line
* optional name file: one ``item:name`` token per line, used only for
  rendering items with readable names

Parsing is strict: input that would not re-serialize to the same structure
(unsorted or repeated items inside an element, empty elements, missing
terminators, non-positive numbers, items without an external utility, stray
whitespace) is rejected with a ParseError carrying the line and column.
"""

from dataclasses import dataclass
from typing import Iterable, Iterator

ItemId = int

ELEMENT_SEPARATOR = "-1"
SEQUENCE_TERMINATOR = "-2"


class ParseError(ValueError):
    """Malformed database text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class QElement:
    """One itemset of a q-sequence: (item, quantity) pairs, item ids ascending."""

    entries: tuple[tuple[ItemId, int], ...]

    def __len__(self) -> int:
        return len(self.entries)

    def items(self) -> tuple[ItemId, ...]:
        return tuple(item for item, _ in self.entries)

    def quantity_of(self, item: ItemId) -> int:
        for it, qty in self.entries:
            if it == item:
                return qty
        raise KeyError(item)


@dataclass(frozen=True)
class QSequence:
    """A q-sequence with its identifier."""

    sid: int
    elements: tuple[QElement, ...]

    @property
    def length(self) -> int:
        """Total number of item occurrences."""
        return sum(len(e) for e in self.elements)

    @property
    def size(self) -> int:
        """Number of elements."""
        return len(self.elements)


@dataclass(frozen=True)
class UtilityTable:
    """Per-unit (external) utility of every distinct item."""

    eu: dict[ItemId, int]

    def __getitem__(self, item: ItemId) -> int:
        return self.eu[item]

    def __contains__(self, item: ItemId) -> bool:
        return item in self.eu


@dataclass(frozen=True)
class QSDB:
    """An immutable quantitative sequence database.

    ``total_utility`` is the sum of all sequence utilities and is fixed at
    construction time. Instances are safe to share across threads.
    """

    sequences: tuple[QSequence, ...]
    utilities: UtilityTable
    total_utility: int


def element_utility(element: QElement, table: UtilityTable) -> int:
    return sum(table[item] * qty for item, qty in element.entries)


def item_utility(item: ItemId, elem_index: int, seq: QSequence, table: UtilityTable) -> int:
    """Utility of one occurrence of ``item`` in the 1-based element ``elem_index``."""
    element = seq.elements[elem_index - 1]
    return table[item] * element.quantity_of(item)


def sequence_utility(seq: QSequence, table: UtilityTable) -> int:
    return sum(element_utility(e, table) for e in seq.elements)


def database_utility(db: QSDB) -> int:
    return sum(sequence_utility(s, db.utilities) for s in db.sequences)


def make_database(raw_sequences: Iterable[Iterable[Iterable[tuple[int, int]]]],
                  eu: dict[ItemId, int]) -> QSDB:
    """Build and validate a QSDB from nested (item, quantity) pair lists.

    Sequence ids are assigned in order starting from 0.
    """
    table = UtilityTable(dict(eu))
    sequences = []
    for sid, raw_seq in enumerate(raw_sequences):
        elements = tuple(QElement(tuple((int(i), int(q)) for i, q in raw_elem))
                         for raw_elem in raw_seq)
        sequences.append(QSequence(sid, elements))
    db = QSDB(tuple(sequences), table, 0)
    total = database_utility(db)
    db = QSDB(db.sequences, table, total)
    validate(db)
    return db


def validate(db: QSDB) -> None:
    """Check every structural invariant; raise ValueError on the first violation."""
    for item, eu in db.utilities.eu.items():
        if item < 1:
            raise ValueError(f"item id {item} must be >= 1")
        if eu < 1:
            raise ValueError(f"external utility of item {item} must be >= 1")
    seen_sids = set()
    for seq in db.sequences:
        if seq.sid < 0:
            raise ValueError(f"sequence id {seq.sid} must be >= 0")
        if seq.sid in seen_sids:
            raise ValueError(f"duplicate sequence id {seq.sid}")
        seen_sids.add(seq.sid)
        if not seq.elements:
            raise ValueError(f"sequence {seq.sid} has no elements")
        for j, element in enumerate(seq.elements, start=1):
            if not element.entries:
                raise ValueError(f"sequence {seq.sid} element {j} is empty")
            prev = 0
            for item, qty in element.entries:
                if item <= prev:
                    raise ValueError(
                        f"sequence {seq.sid} element {j}: items not strictly increasing")
                prev = item
                if qty < 1:
                    raise ValueError(
                        f"sequence {seq.sid} element {j}: quantity of item {item} must be >= 1")
                if item not in db.utilities:
                    raise ValueError(
                        f"sequence {seq.sid} element {j}: item {item} has no external utility")
    if db.total_utility != database_utility(db):
        raise ValueError("stored total utility does not match recomputation")


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _tokens(line: str, line_no: int) -> Iterator[tuple[str, int]]:
    """Yield (token, 1-based column) pairs; reject doubled or trailing spaces."""
    col = 1
    for token in line.split(" "):
        if token == "":
            raise ParseError("empty token (check spacing)", line_no, col)
        yield token, col
        col += len(token) + 1


def _parse_pair(token: str, line_no: int, col: int, what: str) -> tuple[int, int]:
    left, sep, right = token.partition(":")
    if not sep:
        raise ParseError(f"expected {what} pair 'a:b', got {token!r}", line_no, col)
    try:
        first, second = int(left), int(right)
    except ValueError:
        raise ParseError(f"non-integer value in {what} pair {token!r}", line_no, col) from None
    return first, second


def _content_lines(lines: Iterable[str]) -> Iterator[tuple[str, int]]:
    for line_no, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line or line.startswith("#"):
            continue
        yield line, line_no


def parse_utilities(lines: Iterable[str]) -> UtilityTable:
    """Parse a utility file: one ``item:externalUtility`` per line."""
    eu: dict[int, int] = {}
    for line, line_no in _content_lines(lines):
        toks = list(_tokens(line, line_no))
        if len(toks) != 1:
            raise ParseError("expected a single item:utility pair", line_no, toks[1][1])
        token, col = toks[0]
        item, value = _parse_pair(token, line_no, col, "item:utility")
        if item < 1:
            raise ParseError(f"item id {item} must be >= 1", line_no, col)
        if value < 1:
            raise ParseError(f"external utility {value} must be >= 1", line_no, col)
        if item in eu:
            raise ParseError(f"duplicate external utility for item {item}", line_no, col)
        eu[item] = value
    return UtilityTable(eu)


def parse_sequences(lines: Iterable[str], table: UtilityTable) -> tuple[QSequence, ...]:
    """Parse a sequence file against an already-parsed utility table."""
    sequences: list[QSequence] = []
    for line, line_no in _content_lines(lines):
        elements: list[QElement] = []
        pairs: list[tuple[int, int]] = []
        terminated = False
        for token, col in _tokens(line, line_no):
            if terminated:
                raise ParseError("tokens after sequence terminator", line_no, col)
            if token == ELEMENT_SEPARATOR or token == SEQUENCE_TERMINATOR:
                if not pairs:
                    raise ParseError("empty element", line_no, col)
                elements.append(QElement(tuple(pairs)))
                pairs = []
                terminated = token == SEQUENCE_TERMINATOR
                continue
            item, qty = _parse_pair(token, line_no, col, "item:quantity")
            if item < 1:
                raise ParseError(f"item id {item} must be >= 1", line_no, col)
            if qty < 1:
                raise ParseError(f"quantity {qty} must be >= 1", line_no, col)
            if item not in table:
                raise ParseError(f"item {item} has no external utility", line_no, col)
            if pairs and item <= pairs[-1][0]:
                raise ParseError(
                    f"items within an element must be strictly increasing (saw {item})",
                    line_no, col)
            pairs.append((item, qty))
        if not terminated:
            raise ParseError("missing sequence terminator -2", line_no, len(line) + 1)
        sequences.append(QSequence(len(sequences), tuple(elements)))
    return tuple(sequences)


def parse_database(sequence_lines: Iterable[str], utility_lines: Iterable[str]) -> QSDB:
    """Parse and validate a full database from sequence and utility text."""
    table = parse_utilities(utility_lines)
    sequences = parse_sequences(sequence_lines, table)
    db = QSDB(sequences, table, 0)
    db = QSDB(sequences, table, database_utility(db))
    validate(db)
    return db


def load_database(sequence_path, utility_path) -> QSDB:
    """Parse a database from two files on disk."""
    with open(utility_path, "r", encoding="utf-8") as fh:
        table = parse_utilities(fh)
    with open(sequence_path, "r", encoding="utf-8") as fh:
        sequences = parse_sequences(fh, table)
    db = QSDB(sequences, table, 0)
    db = QSDB(sequences, table, database_utility(db))
    validate(db)
    return db


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def sequence_line(seq: QSequence) -> str:
    parts: list[str] = []
    for j, element in enumerate(seq.elements):
        if j:
            parts.append(ELEMENT_SEPARATOR)
        parts.extend(f"{item}:{qty}" for item, qty in element.entries)
    parts.append(SEQUENCE_TERMINATOR)
    return " ".join(parts)


def serialize_sequences(db: QSDB) -> str:
    return "".join(sequence_line(s) + "\n" for s in db.sequences)


def serialize_utilities(db: QSDB) -> str:
    return "".join(f"{item}:{eu}\n" for item, eu in sorted(db.utilities.eu.items()))


# ---------------------------------------------------------------------------
# item names (optional, display only)
# ---------------------------------------------------------------------------

def parse_item_names(lines: Iterable[str]) -> dict[ItemId, str]:
    """Parse an ``item:name`` map used to render items with readable names."""
    names: dict[int, str] = {}
    for line, line_no in _content_lines(lines):
        toks = list(_tokens(line, line_no))
        if len(toks) != 1:
            raise ParseError("expected a single item:name pair", line_no, toks[1][1])
        token, col = toks[0]
        left, sep, name = token.partition(":")
        if not sep or not name:
            raise ParseError(f"expected item:name pair, got {token!r}", line_no, col)
        try:
            item = int(left)
        except ValueError:
            raise ParseError(f"non-integer item id in {token!r}", line_no, col) from None
        if item in names:
            raise ParseError(f"duplicate name for item {item}", line_no, col)
        names[item] = name
    return names
