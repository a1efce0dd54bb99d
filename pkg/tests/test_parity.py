import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqgc.parity import (
    Observability,
    crosscheck_cycle,
    observable_probability,
    observable_set,
    reduce_cyclic,
)


def _bits(s: str) -> list[int]:
    return [int(c) for c in s]


def test_reduce_known_observables():
    assert reduce_cyclic(_bits("111")).observable
    assert reduce_cyclic(_bits("000101")).observable
    assert not reduce_cyclic(_bits("11")).observable


def test_reduce_terminal_table():
    assert reduce_cyclic(_bits("00")).observable
    assert not reduce_cyclic(_bits("0")).observable
    assert not reduce_cyclic(_bits("01")).observable
    assert not reduce_cyclic(_bits("10")).observable
    assert reduce_cyclic(_bits("1")).observable
    # all-ones leftovers follow the "2 mod 4" rule
    assert reduce_cyclic(_bits("1111")).observable
    assert not reduce_cyclic(_bits("111111")).observable


def test_reduce_probability_values():
    assert reduce_cyclic(_bits("111")).probability == pytest.approx(1 / 4)
    assert reduce_cyclic(_bits("000101")).probability == pytest.approx(1 / 16)
    assert reduce_cyclic(_bits("011")) == Observability(False, 0.0)


def test_reduce_rejects_bad_input():
    with pytest.raises(ValueError):
        reduce_cyclic([])
    with pytest.raises(ValueError):
        reduce_cyclic([0, 2])


def test_observable_set_n3():
    assert observable_set(3) == {0b001, 0b010, 0b100, 0b111}


def test_observable_set_n6():
    def rotations(s):
        return {int(s[i:] + s[:i], 2) for i in range(len(s))}

    expected = {0} | rotations("000101") | rotations("001111") | rotations("101101")
    got = observable_set(6)
    assert got == expected
    assert len(got) == 16


def test_observable_set_cardinality_law():
    for n in range(3, 13):
        expected = 2 ** (n - 1) if n % 2 else 2 ** (n - 2)
        assert len(observable_set(n)) == expected


def test_parity_law():
    for n in range(3, 11):
        for index in observable_set(n):
            assert bin(index).count("1") % 2 == n % 2


def test_rotation_and_reflection_closure():
    for n in (5, 6, 7):
        obs = observable_set(n)
        for index in obs:
            s = format(index, f"0{n}b")
            assert int(s[1:] + s[0], 2) in obs
            assert int(s[::-1], 2) in obs


def test_choice_independence_exhaustive():
    rng = np.random.default_rng(0)

    def random_choice(bits):
        zeros = [i for i, b in enumerate(bits) if b == 0]
        return zeros[rng.integers(len(zeros))]

    for n in range(1, 11):
        for index in range(2**n):
            bits = [(index >> (n - 1 - i)) & 1 for i in range(n)]
            base = reduce_cyclic(bits).observable
            assert reduce_cyclic(bits, zero_choice="rightmost").observable == base
            assert reduce_cyclic(bits, zero_choice=random_choice).observable == base


def test_crosscheck_cycles():
    for n in (3, 4, 5, 6, 7):
        assert crosscheck_cycle(n)


def test_crosscheck_bounds():
    with pytest.raises(ValueError):
        crosscheck_cycle(2)
    with pytest.raises(ValueError):
        observable_set(21)


def test_probability_helper():
    assert observable_probability(5, True) == 1 / 16
    assert observable_probability(6, True) == 1 / 16
    assert observable_probability(9, False) == 0.0


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=1, max_size=14))
def test_reduce_terminates_and_is_choice_stable(bits):
    left = reduce_cyclic(bits, zero_choice="leftmost")
    right = reduce_cyclic(bits, zero_choice="rightmost")
    assert left.observable == right.observable
    assert left.probability == right.probability
