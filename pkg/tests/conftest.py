import json
from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


def parse_terms(d, symbol="y"):
    from clusterscatter.poly import LaurentPoly

    terms = {tuple(int(a) for a in k.split(",")): v for k, v in d.items()}
    n = len(next(iter(terms)))
    return LaurentPoly(n, terms, symbol)


@pytest.fixture(scope="session")
def oracle():
    return json.loads((DATA / "oracle.json").read_text())


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
