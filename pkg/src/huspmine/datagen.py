"""Deterministic synthetic quantitative sequence databases.

Two generators: ``generate`` produces scale-test databases around configured
average element counts and sizes, with a skewed item distribution (a few
frequent items, a long tail); ``small_random_qsdb`` produces the tiny
databases used for randomized equivalence testing against the brute-force
reference. Both are pure functions of their parameters: a fixed seed fixes
the output bytes on every platform.
"""

import math
from dataclasses import dataclass
from random import Random

from .qsdb import QSDB, make_database


@dataclass(frozen=True)
class GenParams:
    """Knobs for the scale generator.

    ``avg_elements`` and ``avg_items_per_element`` steer Poisson-like draws
    clamped to at least 1, so realized averages sit slightly above the
    configured values.
    """

    sequence_count: int
    avg_elements: float = 6.0
    avg_items_per_element: float = 4.0
    distinct_items: int = 1000
    max_quantity: int = 5
    eu_range: tuple[int, int] = (1, 10)
    seed: int = 0


def _validate(params: GenParams) -> None:
    if params.sequence_count < 1:
        raise ValueError("sequence_count must be >= 1")
    if params.avg_elements <= 0 or params.avg_items_per_element <= 0:
        raise ValueError("averages must be positive")
    if params.distinct_items < 1:
        raise ValueError("distinct_items must be >= 1")
    if params.max_quantity < 1:
        raise ValueError("max_quantity must be >= 1")
    lo, hi = params.eu_range
    if not 1 <= lo <= hi:
        raise ValueError("eu_range must satisfy 1 <= low <= high")


def _poisson(rng: Random, lam: float) -> int:
    # Knuth's product method; fine for the small rates used here.
    threshold = math.exp(-lam)
    k = 0
    p = 1.0
    while True:
        p *= rng.random()
        if p <= threshold:
            return k
        k += 1


def _skewed_item(rng: Random, n: int) -> int:
    # Squaring concentrates mass on low ids: few frequent items, many rare.
    return int(n * rng.random() ** 2) + 1


def _distinct_items(rng: Random, n: int, size: int) -> list[int]:
    chosen: set[int] = set()
    attempts = 0
    while len(chosen) < size and attempts < 20 * size:
        chosen.add(_skewed_item(rng, n))
        attempts += 1
    item = 1
    while len(chosen) < size:
        if item not in chosen:
            chosen.add(item)
        item += 1
    return sorted(chosen)


def generate(params: GenParams) -> QSDB:
    """A reproducible synthetic database matching the configured profile."""
    _validate(params)
    rng = Random(params.seed)
    lo, hi = params.eu_range
    eu = {item: rng.randint(lo, hi) for item in range(1, params.distinct_items + 1)}
    sequences = []
    for _ in range(params.sequence_count):
        n_elements = max(1, _poisson(rng, params.avg_elements))
        elements = []
        for _ in range(n_elements):
            size = min(params.distinct_items,
                       max(1, _poisson(rng, params.avg_items_per_element)))
            items = _distinct_items(rng, params.distinct_items, size)
            elements.append([(item, rng.randint(1, params.max_quantity))
                             for item in items])
        sequences.append(elements)
    return make_database(sequences, eu)


def small_random_qsdb(seed: int, *, max_sequences: int = 8, max_items: int = 8,
                      max_sequence_length: int = 10, max_quantity: int = 5,
                      max_eu: int = 10) -> QSDB:
    """A tiny random database within brute-force limits, fixed by ``seed``."""
    rng = Random(seed)
    n_items = rng.randint(1, max_items)
    eu = {item: rng.randint(1, max_eu) for item in range(1, n_items + 1)}
    sequences = []
    for _ in range(rng.randint(1, max_sequences)):
        budget = rng.randint(1, max_sequence_length)
        elements = []
        while budget > 0:
            size = rng.randint(1, min(3, budget, n_items))
            items = sorted(rng.sample(range(1, n_items + 1), size))
            elements.append([(item, rng.randint(1, max_quantity)) for item in items])
            budget -= size
        sequences.append(elements)
    return make_database(sequences, eu)
