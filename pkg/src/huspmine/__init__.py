"""High-utility sequential pattern mining on quantitative sequence databases.

The package is organized by layer:

* ``qsdb``     data model, parsing, serialization, utility arithmetic
* ``seqstore`` per-sequence arrays and projected databases
* ``bounds``   the SWU, PEU, RSU, and TRSU pruning bounds
* ``miner``    the depth-first search with configurable pruning
* ``oracle``   brute-force reference miner for verification
* ``datagen``  deterministic synthetic data
* ``cli``      command-line front end (mine, verify, gen, bench)
"""

from .bounds import BoundKind, peu_of_pattern, rsu, swu_table, trsu
from .datagen import GenParams, generate, small_random_qsdb
from .miner import (HUSPResult, MinerConfig, MineStats, Pattern, mine,
                    resolve_threshold, swu_prefilter)
from .oracle import (OracleLimits, enumerate_patterns, exact_utility,
                     mine_bruteforce)
from .qsdb import (ParseError, QSDB, QElement, QSequence, UtilityTable,
                   database_utility, item_utility, load_database,
                   make_database, parse_database, sequence_utility,
                   serialize_sequences, serialize_utilities, validate)
from .seqstore import (I_EXTENSION, S_EXTENSION, SeqArray, SeqProjection,
                       build_seq_array, extend_projection, project_root,
                       remaining_utility)

__version__ = "0.1.0"

__all__ = [
    "BoundKind", "GenParams", "HUSPResult", "I_EXTENSION", "MineStats",
    "MinerConfig", "OracleLimits", "ParseError", "Pattern", "QElement",
    "QSDB", "QSequence", "S_EXTENSION", "SeqArray", "SeqProjection",
    "UtilityTable", "build_seq_array", "database_utility",
    "enumerate_patterns", "exact_utility", "extend_projection", "generate",
    "item_utility", "load_database", "make_database", "mine",
    "mine_bruteforce", "parse_database", "peu_of_pattern", "project_root",
    "remaining_utility", "resolve_threshold", "rsu", "sequence_utility",
    "serialize_sequences", "serialize_utilities", "small_random_qsdb",
    "swu_prefilter", "swu_table", "trsu", "validate",
]
