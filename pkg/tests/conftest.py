import random

from hypothesis import settings, strategies as st

from algograph.model import Tape

# runs are exhaustive searches; their time varies more than hypothesis expects
settings.register_profile("default", deadline=None)
settings.load_profile("default")

symbols = st.sampled_from(["0", "1", "*"])


@st.composite
def tapes(draw, max_window=20):
    cells = draw(st.lists(symbols, max_size=max_window))
    origin = draw(st.integers(-3, max_window + 3))
    return Tape.make(cells, origin)


def random_tape(rng: random.Random, max_window: int = 20) -> Tape:
    n = rng.randint(0, max_window)
    return Tape.make([rng.choice("01*") for _ in range(n)], rng.randint(-2, n + 2))


# acceptance results, filled by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
