import os
import sys

import pytest
from hypothesis import settings, strategies as st

from garside import normal_form as nf
from garside.stats import RandomBraidSpec, sample_random_braid

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

B7_WORD = "n=7; 2 1 3 2 5 2 5 6 2 6 5 2 5 4 6 5"


@st.composite
def braid_words(draw, n_min=2, n_max=7, max_len=40):
    n = draw(st.integers(n_min, n_max))
    letters = draw(st.lists(
        st.one_of(
            st.integers(1, n - 1),
            st.integers(-(n - 1), -1),
            st.sampled_from([nf.DELTA, nf.DELTA_INV]),
        ),
        max_size=max_len,
    ))
    return nf.BraidWord(n, tuple(letters))


@st.composite
def braid_triples(draw, n_min=3, n_max=7, max_len=40):
    n = draw(st.integers(n_min, n_max))
    return tuple(draw(braid_words(n, n, max_len)) for _ in range(3))


def random_braids(n, k, count, seed):
    return [sample_random_braid(RandomBraidSpec(n, k, seed=seed, trial=t))[0] for t in range(count)]


@pytest.fixture(scope="session")
def b7():
    return nf.word_to_braid(B7_WORD)


# ---------------------------------------------------------------------------
# acceptance report: one PASS/FAIL line per criterion, printed after the run

ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[c]
        status = "PASS" if all(ok for ok, _ in parts) else "FAIL"
        terminalreporter.write_line(f"criterion {c}: {status}  " + "; ".join(d for _, d in parts))
