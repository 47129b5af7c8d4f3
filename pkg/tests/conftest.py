import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import gf  # noqa: E402

from summatroid.sumrank_code import SumRankCode  # noqa: E402

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"

OMEGA = 2  # the class of x in GF(4) = GF(2)[x]/(x^2+x+1)


@pytest.fixture
def gf4():
    """GF(4) over GF(2), one block."""
    return gf(2, 2, [1])


@pytest.fixture
def repetition():
    """[3,1] repetition code over GF(2), Hamming profile."""
    return SumRankCode(gf(2, 1, [1, 1, 1]), [1, 1, 1], [[1, 1, 1]])


@pytest.fixture
def mrd21():
    """span{(1, w)} in GF(4)^2 with K = GF(2), one block of length 2."""
    return SumRankCode(gf(2, 2, [1]), [2], [[1, OMEGA]])


@pytest.fixture
def mixed_code():
    """A profile-(2,1) code over GF(4): GF(2)^2 block and a GF(4)^1 block."""
    return SumRankCode(gf(2, 2, [1, 2]), [2, 1], [[1, OMEGA, 3]])


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
