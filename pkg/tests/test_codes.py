"""Linear-code model, parity checks, minimum distance and GV asymptotics."""

import math
from itertools import product

import numpy as np
import pytest

from ildec.codes import (
    LinearCode,
    entropy_q,
    gv_relative_distance,
    min_distance_bruteforce,
    parity_check,
    random_code,
    syndrome,
)
from ildec.errors import DomainError, RankDeficient, TooLarge
from ildec.gfq import PrimeField
from ildec.matq import MatFq, rank

F2 = PrimeField(2)
F3 = PrimeField(3)
F7 = PrimeField(7)

HAMMING_7_4 = MatFq(
    F2,
    [
        [1, 0, 0, 0, 0, 1, 1],
        [0, 1, 0, 0, 1, 0, 1],
        [0, 0, 1, 0, 1, 1, 0],
        [0, 0, 0, 1, 1, 1, 1],
    ],
)


def test_parity_check_properties_random():
    rng = np.random.default_rng(0)
    for F in (F2, F3, F7):
        for _ in range(15):
            n = int(rng.integers(4, 12))
            k = int(rng.integers(1, n))
            code = random_code(n, k, F, rng)
            H = code.H
            assert H.rows == n - k and H.cols == n
            assert rank(H) == n - k
            assert (code.G @ H.transpose()).is_zero()


def test_parity_check_rank_deficient_rejected():
    with pytest.raises(RankDeficient):
        parity_check(MatFq(F2, [[1, 0, 1], [1, 0, 1]]))


def test_random_code_full_rank_and_shape():
    rng = np.random.default_rng(1)
    code = random_code(10, 4, F7, rng)
    assert code.n == 10 and code.k == 4 and code.rate == 0.4
    assert rank(code.G) == 4
    with pytest.raises(DomainError):
        random_code(5, 5, F7, rng)
    with pytest.raises(DomainError):
        random_code(5, 0, F7, rng)


def test_syndrome_zero_exactly_on_codewords():
    code = LinearCode(7, 4, F2, HAMMING_7_4)
    words = {tuple((m @ HAMMING_7_4.a) % 2) for m in map(np.array, product([0, 1], repeat=4))}
    for x in product([0, 1], repeat=7):
        s = syndrome(MatFq.row_vector(F2, x), code.H)
        assert s.is_zero() == (x in words)


def test_min_distance_hamming_code():
    code = LinearCode(7, 4, F2, HAMMING_7_4)
    assert min_distance_bruteforce(code) == 3


def test_min_distance_matches_direct_enumeration():
    rng = np.random.default_rng(2)
    for F in (F2, F3):
        code = random_code(8, 3, F, rng)
        best = min(
            int(np.count_nonzero((np.array(m) @ code.G.a) % F.q))
            for m in product(range(F.q), repeat=3)
            if any(m)
        )
        assert min_distance_bruteforce(code) == best


def test_min_distance_budget():
    rng = np.random.default_rng(3)
    code = random_code(40, 30, F2, rng)
    with pytest.raises(TooLarge):
        min_distance_bruteforce(code, budget=1 << 20)


def test_entropy_q_values():
    assert entropy_q(0.0, 2) == 0.0
    assert entropy_q(1.0, 2) == 0.0
    assert entropy_q(0.5, 2) == pytest.approx(1.0)
    for q in (3, 7):
        assert entropy_q((q - 1) / q, q) == pytest.approx(1.0)
        # binary entropy plus the alphabet term, checked at one point
        x = 0.3
        expected = (
            x * math.log(q - 1) - x * math.log(x) - (1 - x) * math.log(1 - x)
        ) / math.log(q)
        assert entropy_q(x, q) == pytest.approx(expected)
    with pytest.raises(DomainError):
        entropy_q(-0.1, 2)
    with pytest.raises(DomainError):
        entropy_q(1.1, 2)


def test_gv_relative_distance_inverts_entropy():
    for q in (2, 3, 7):
        for R in (0.1, 0.25, 0.5, 0.75, 0.9):
            d = gv_relative_distance(R, q)
            assert 0 <= d <= (q - 1) / q
            assert entropy_q(d, q) == pytest.approx(1 - R, abs=1e-9)
    # classical binary value at rate 1/2
    assert gv_relative_distance(0.5, 2) == pytest.approx(0.110027, abs=1e-6)
    assert gv_relative_distance(1.0, 2) == pytest.approx(0.0, abs=1e-9)
