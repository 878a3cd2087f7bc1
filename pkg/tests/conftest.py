import pytest

from huspmine import parse_database

# Running example: items 1..6 stand for a..f.
FIXTURE_SEQ = """\
# four q-sequences
1:2 2:2 -1 6:1 -1 1:1 4:1 -2
2:1 -1 4:1 6:1 -1 5:1 -1 4:2 -2
1:2 2:2 4:1 -1 4:1 -1 1:1 4:2 5:1 -2
3:2 -1 4:2 -1 5:1 -1 3:2 -1 6:1 -2
"""

FIXTURE_EU = """\
1:3
2:1
3:2
4:1
5:1
6:1
"""

A, B, C, D, E, F = 1, 2, 3, 4, 5, 6


def fixture_db():
    return parse_database(FIXTURE_SEQ.splitlines(), FIXTURE_EU.splitlines())


@pytest.fixture(name="db")
def db_fixture():
    return fixture_db()


@pytest.fixture(scope="session")
def fixture_files(tmp_path_factory):
    root = tmp_path_factory.mktemp("fixture")
    seq = root / "fixture.seq"
    eu = root / "fixture.eu"
    seq.write_text(FIXTURE_SEQ)
    eu.write_text(FIXTURE_EU)
    return str(seq), str(eu)
