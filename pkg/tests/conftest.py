import json

import pytest

from hooklab import parse_oracle


def catalan(n: int) -> int:
    """Catalan numbers by the additive recurrence, independent of any
    tree code."""
    c = [1]
    for i in range(n):
        c.append(sum(c[j] * c[i - j] for j in range(i + 1)))
    return c[n]


def odd_double_factorial(k: int) -> int:
    """1*3*5*...*k for odd k; 1 when k < 1."""
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


MIXED_ORACLE_TABLE = {"": 2, "0": 3, "1": 1, "default": "const:2"}


@pytest.fixture
def mixed_oracle(tmp_path):
    """Infinite tree with 2 root children, 3 under the first, 1 under the
    second, 2 everywhere else."""
    path = tmp_path / "oracle.json"
    path.write_text(json.dumps(MIXED_ORACLE_TABLE))
    return parse_oracle(f"file:{path}")
