import hypothesis
import hypothesis.strategies as st
import pytest

from qeuclid.algebra import AlgElem
from qeuclid.calculus import calculus
from qeuclid.scalars import QS, Scalar

hypothesis.settings.register_profile("default", deadline=None, max_examples=40)
hypothesis.settings.load_profile("default")

# denominators without rational roots other than 0
SAFE_DENOMS = ([1], [0, 1], [1, 0, 1], [2, 0, 1], [1, 0, 1, 0, 1], [0, 0, 1])

small_ints = st.integers(-4, 4)


@st.composite
def scalars(draw):
    num = draw(st.lists(small_ints, min_size=1, max_size=4))
    return Scalar(num, draw(st.sampled_from(SAFE_DENOMS)))


nonzero_scalars = scalars().filter(bool)


@st.composite
def laurent(draw):
    acc = QS.zero
    for _ in range(draw(st.integers(1, 2))):
        acc = acc + QS.coerce(draw(st.integers(-3, 3).filter(bool))) * QS.s_pow(draw(st.integers(-2, 2)))
    return acc if acc else QS.one


@st.composite
def monomials(draw, extended=True):
    if extended:
        return (draw(st.integers(-1, 1)), draw(st.integers(-1, 1)), draw(st.integers(0, 2)),
                draw(st.integers(-1, 2)), draw(st.integers(0, 2)))
    return (0, 0, draw(st.integers(0, 2)), draw(st.integers(0, 2)), draw(st.integers(0, 2)))


@st.composite
def elements(draw, extended=True, max_terms=3):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        m = draw(monomials(extended))
        terms[m] = terms.get(m, QS.zero) + draw(laurent())
    return AlgElem(terms, QS)


@pytest.fixture(scope="session")
def calc():
    return calculus(QS)


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
