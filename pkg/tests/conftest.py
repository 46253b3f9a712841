import numpy as np
import pytest
from hypothesis import strategies as st

from ptinvis.core import SlabConfig

#: acceptance lines collected during the session, printed at the end
ACCEPTANCE_LINES: list[str] = []


def random_configs(n: int, seed: int = 12345, im_max: float = 1e-3):
    """Admissible slabs: 1 <= Re n <= 5, |Im n| <= im_max."""
    rng = np.random.default_rng(seed)
    re = rng.uniform(1.0, 5.0, size=(n, 2))
    im = rng.uniform(-im_max, im_max, size=(n, 2))
    return [SlabConfig(complex(r[0], i[0]), complex(r[1], i[1])) for r, i in zip(re, im)]


real_part = st.floats(1.0, 5.0, allow_nan=False)
imag_part = st.floats(-1e-3, 1e-3, allow_nan=False)
wavenumber = st.floats(1.0, 3000.0, allow_nan=False)


@st.composite
def admissible_configs(draw):
    return SlabConfig(
        complex(draw(real_part), draw(imag_part)),
        complex(draw(real_part), draw(imag_part)),
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def golden_pt():
    k = -0.003421628027759
    return SlabConfig(complex(3.4, k), complex(3.4, -k)), 2000.1475516262
