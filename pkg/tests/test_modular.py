import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ggl.errors import CapError
from ggl.modular import (
    count_cyclic_modular,
    cyclic_reduce_modular,
    enumerate_cyclic_modular,
    eta,
    i_upper_bound,
    inverse_modular,
    is_cyclically_reduced_modular,
    is_reduced_modular,
    j_lower_bound,
    k_formula,
    orbits,
    reduce_modular,
    tuple_canonical,
    tuple_orbits,
    word_canonical,
)

# faithful images in PSL(2, Z): a of order 2, b of order 3
MATS = {
    "a": np.array([[0, -1], [1, 0]]),
    "b": np.array([[0, -1], [1, 1]]),
}
MATS["B"] = np.array([[1, 1], [-1, 0]])


def matrix(w):
    m = np.eye(2, dtype=np.int64)
    for ch in w:
        m = m @ MATS[ch]
    return m


def same_element(u, v):
    x, y = matrix(u), matrix(v)
    return np.array_equal(x, y) or np.array_equal(x, -y)


def rotate(w, i):
    return w[i:] + w[:i]


strings = st.text(alphabet="abB", max_size=20)


def test_generator_orders():
    assert same_element("aa", "") and same_element("bbb", "") and same_element("bB", "")
    assert not same_element("a", "") and not same_element("b", "")


def test_examples():
    assert reduce_modular("aab") == "b"
    assert inverse_modular("ab") == "Ba"
    assert eta("abaB") == "aBab"
    assert reduce_modular("bb") == "B"
    with pytest.raises(ValueError):
        reduce_modular("abc")


@given(strings)
def test_reduction_preserves_the_element(s):
    r = reduce_modular(s)
    assert is_reduced_modular(r)
    assert same_element(r, s)
    assert reduce_modular(r) == r
    # reduced nonempty words are nontrivial
    assert (r == "") == same_element(s, "")


@given(strings)
def test_cyclic_reduction_is_conjugate(s):
    c = cyclic_reduce_modular(s)
    assert is_cyclically_reduced_modular(c)
    assert abs(np.trace(matrix(c))) == abs(np.trace(matrix(s)))


@given(strings)
def test_inverse(s):
    assert same_element(reduce_modular(s + inverse_modular(s)), "")


def test_small_counts():
    assert sorted(enumerate_cyclic_modular(2)) == sorted(["ab", "aB", "ba", "Ba"])
    assert count_cyclic_modular(2) == 4
    assert count_cyclic_modular(4) == 8
    assert count_cyclic_modular(3) == 0
    assert list(enumerate_cyclic_modular(3)) == []
    assert sorted(enumerate_cyclic_modular(1)) == sorted(ALPHA for ALPHA in "abB")


@pytest.mark.parametrize("n", range(0, 19))
def test_enumeration_matches_count(n):
    words = list(enumerate_cyclic_modular(n))
    assert len(words) == len(set(words)) == count_cyclic_modular(n)


def test_symmetries_exhaustive():
    for t in range(1, 6):
        for w in enumerate_cyclic_modular(2 * t):
            assert eta(eta(w)) == w
            assert inverse_modular(inverse_modular(w)) == w
            assert eta(inverse_modular(w)) == inverse_modular(eta(w))
            for i in range(len(w)):
                r = rotate(w, i)
                assert word_canonical(eta(r)) == word_canonical(eta(w))
                assert word_canonical(inverse_modular(r)) == word_canonical(inverse_modular(w))


def test_single_word_orbits():
    assert tuple_orbits(1, 1) == 1
    assert tuple_orbits(1, 2) == 2
    reps = orbits(1, 2)
    classes = {}
    for w in enumerate_cyclic_modular(4):
        classes.setdefault(tuple_canonical((w,)), set()).add(w)
    assert sorted(map(sorted, classes.values())) == sorted(
        [sorted(["abab", "baba", "aBaB", "BaBa"]), sorted(["abaB", "baBa", "aBab", "Baba"])]
    )
    assert len(reps) == 2


@pytest.mark.parametrize("t", range(1, 9))
def test_canonical_matches_burnside(t):
    assert tuple_orbits(1, t) == tuple_orbits(1, t, mode="burnside")


def brute_orbits(m, t):
    """Orbit count by flood fill over the generating moves."""
    words = list(enumerate_cyclic_modular(2 * t))
    seen = set()
    count = 0
    for start in itertools.product(words, repeat=m):
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            cur = stack.pop()
            nxt = [tuple(eta(w) for w in cur)]
            for i in range(m):
                nxt.append(cur[:i] + (rotate(cur[i], 1),) + cur[i + 1:])
                nxt.append(cur[:i] + (inverse_modular(cur[i]),) + cur[i + 1:])
            for i, j in itertools.combinations(range(m), 2):
                swapped = list(cur)
                swapped[i], swapped[j] = swapped[j], swapped[i]
                nxt.append(tuple(swapped))
            for u in nxt:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
    return count


@pytest.mark.parametrize("m, t", [(1, 3), (1, 5), (2, 1), (2, 2), (2, 3), (3, 2)])
def test_canonical_matches_flood_fill(m, t):
    assert tuple_orbits(m, t) == brute_orbits(m, t)


def test_orbit_cap_and_validation():
    with pytest.raises(CapError):
        tuple_orbits(3, 10, cap=10**6)
    with pytest.raises(ValueError):
        tuple_orbits(2, 3, mode="burnside")
    with pytest.raises(ValueError):
        tuple_orbits(0, 3)


def test_bound_arithmetic():
    assert math.exp(k_formula(1, 10)) == pytest.approx(25.6)
    assert math.exp(k_formula(2, 6)) == pytest.approx(2**14 / (2 * 2 * 24**2))
    jb = j_lower_bound(0.1, 100)
    assert jb.log2_value == pytest.approx(2**10 * (97 - 10 - math.log2(100)))
    assert jb.log2_value == pytest.approx(8.23e4, rel=1e-3)
    assert jb.valid and jb.constant == "log2(C)"
    assert not j_lower_bound(0.9, 5).valid
    for n in range(6):
        assert i_upper_bound(2, n) == pytest.approx(math.log2(math.log2(2 ** (3**n))))


def necklace_orbits(t):
    """Orbits of t-bit strings under rotation, reversal-with-complement and complement.

    Up to rotation a cyclic modular word of length 2t is the necklace of its
    b/B choices; inversion reverses and complements it, eta complements it.
    """
    mask = (1 << t) - 1

    def rot(x, s):
        return ((x << s) | (x >> (t - s))) & mask if s else x

    fixed = 0
    for x in range(1 << t):
        r = int(format(x, f"0{t}b")[::-1], 2)
        for s in range(t):
            for y in (rot(x, s), rot(r, s)):
                fixed += (y == x) + ((y ^ mask) == x)
    return fixed // (4 * t)


@pytest.mark.parametrize("t", range(1, 13))
def test_canonical_matches_necklace_count(t):
    assert tuple_orbits(1, t) == necklace_orbits(t)


def test_orbit_ratio_tends_to_one():
    ratios = [necklace_orbits(t) * 4 * t / 2**t for t in (14, 16, 18)]
    assert ratios == sorted(ratios, reverse=True)
    assert all(1 < r < 1.25 for r in ratios)
