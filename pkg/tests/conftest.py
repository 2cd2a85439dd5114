from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import strategies as st

from ineqlab.core import LinForm, full_set

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_entropies(table) -> list[float]:
    """Independent oracle: entropy of every marginal by summing atoms in a dict."""
    table = np.asarray(table)
    n = table.ndim
    out = []
    for mask in range(1, full_set(n) + 1):
        keep = [i for i in range(n) if mask >> i & 1]
        acc: dict = {}
        for idx in product(*(range(k) for k in table.shape)):
            key = tuple(idx[i] for i in keep)
            acc[key] = acc.get(key, 0.0) + float(table[idx])
        out.append(-sum(q * np.log2(q) for q in acc.values() if q > 0))
    return out


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def linforms(draw, n=None, max_n=5):
    n = n or draw(st.integers(1, max_n))
    masks = st.integers(1, full_set(n))
    coeffs = draw(st.dictionaries(masks, rationals, max_size=6))
    return LinForm(n, coeffs)


@pytest.fixture
def xor_table():
    t = np.zeros((2, 2, 2))
    for a, b in product(range(2), repeat=2):
        t[a, b, a ^ b] = 0.25
    return t


def F(x) -> Fraction:
    return Fraction(x)
