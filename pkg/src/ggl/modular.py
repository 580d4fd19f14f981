"""Words in the modular group M = <a, b | a^2 = b^3 = 1> and relator-tuple orbits.

Words are strings over ``a``, ``b`` and ``B`` (B = b^-1).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .errors import CapError, enum_cap

ALPHABET = "abB"
_ORDER = {"a": "0", "b": "1", "B": "2"}
_INV = {"a": "a", "b": "B", "B": "b"}
_ETA = str.maketrans("bB", "Bb")
_FORBIDDEN = {"aa", "bb", "BB", "bB", "Bb"}


def _check(letters: str) -> None:
    bad = set(letters) - set(ALPHABET)
    if bad:
        raise ValueError(f"invalid modular letters {sorted(bad)}; use a, b, B")


def _combine(x: str, y: str) -> str | None:
    """Product of two adjacent letters if they rewrite, else None."""
    if x == "a" and y == "a":
        return ""
    if {x, y} == {"b", "B"}:
        return ""
    if x == y == "b":
        return "B"
    if x == y == "B":
        return "b"
    return None


def reduce_modular(letters: str) -> str:
    _check(letters)
    stack: list[str] = []
    for ch in letters:
        pending = ch
        while pending and stack:
            merged = _combine(stack[-1], pending)
            if merged is None:
                break
            stack.pop()
            pending = merged
        if pending:
            stack.append(pending)
    return "".join(stack)


def is_reduced_modular(w: str) -> bool:
    return all(w[i:i + 2] not in _FORBIDDEN for i in range(len(w) - 1))


def is_cyclically_reduced_modular(w: str) -> bool:
    if len(w) <= 1:
        return True
    return is_reduced_modular(w) and (w[-1] + w[0]) not in _FORBIDDEN


def cyclic_reduce_modular(letters: str) -> str:
    w = reduce_modular(letters)
    while len(w) > 1:
        merged = _combine(w[-1], w[0])
        if merged is None:
            break
        # conjugate by the first letter, then re-reduce
        w = reduce_modular(w[1:-1] + merged) if len(w) > 2 else reduce_modular(merged)
    return w


def inverse_modular(w: str) -> str:
    _check(w)
    return "".join(_INV[ch] for ch in reversed(w))


def eta(w: str) -> str:
    """Relabelling automorphism a -> a, b -> b^-1."""
    _check(w)
    return w.translate(_ETA)


def enumerate_cyclic_modular(n: int) -> Iterator[str]:
    """Cyclically reduced words of length n, by depth-first search over reduced words."""
    if n == 0:
        yield ""
        return

    def grow(prefix: str) -> Iterator[str]:
        if len(prefix) == n:
            if is_cyclically_reduced_modular(prefix):
                yield prefix
            return
        for ch in ALPHABET:
            if not prefix or (prefix[-1] + ch) not in _FORBIDDEN:
                yield from grow(prefix + ch)

    yield from grow("")


def count_cyclic_modular(n: int) -> int:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    if n == 1:
        return 3
    if n % 2:
        return 0
    return 2 * 2 ** (n // 2)


# --- orbits --------------------------------------------------------------------


def _key(w: str) -> str:
    return "".join(_ORDER[ch] for ch in w)


def word_canonical(w: str) -> str:
    """Least rotation of w or w^-1 in the order a < b < B."""
    best = None
    for u in (w, inverse_modular(w)):
        for i in range(max(len(u), 1)):
            r = u[i:] + u[:i]
            if best is None or _key(r) < _key(best):
                best = r
    return best


@dataclass(frozen=True)
class TupleOrbit:
    representative: tuple[str, ...]
    m: int
    length: int


def tuple_canonical(ws: tuple[str, ...]) -> tuple[str, ...]:
    """Sorted per-word canonical forms, minimized over a global eta flip."""
    options = []
    for flip in (False, True):
        forms = sorted((word_canonical(eta(w) if flip else w) for w in ws), key=_key)
        options.append(tuple(forms))
    return min(options, key=lambda t: tuple(_key(w) for w in t))


def _burnside_single(t: int) -> int:
    words = list(enumerate_cyclic_modular(2 * t))
    n = 2 * t
    fixed = 0
    for shift, invert, flip in itertools.product(range(n), (False, True), (False, True)):
        for w in words:
            u = eta(w) if flip else w
            u = inverse_modular(u) if invert else u
            u = u[shift:] + u[:shift]
            fixed += u == w
    group_order = 8 * t
    if fixed % group_order:
        raise AssertionError("Burnside sum is not divisible by the group order")
    return fixed // group_order


def tuple_orbits(m: int, t: int, mode: str = "canonical", cap: int | None = None) -> int:
    """Number of classes of m-tuples of cyclic words of length 2t.

    Two tuples are equivalent when, after reordering, each entry is a cyclic
    permutation of the matching entry of the other (or of its inverse), with
    one eta applied globally or not at all.
    """
    if m < 1 or t < 1:
        raise ValueError("need m >= 1 and t >= 1")
    if mode == "burnside":
        if m != 1:
            raise ValueError("burnside mode counts single words only (m = 1)")
        return _burnside_single(t)
    if mode != "canonical":
        raise ValueError(f"mode must be 'canonical' or 'burnside', got {mode!r}")
    cap = enum_cap() if cap is None else cap
    total = count_cyclic_modular(2 * t) ** m
    if total > cap:
        raise CapError(f"{total} tuples exceed the enumeration cap {cap}")
    words = list(enumerate_cyclic_modular(2 * t))
    return len({tuple_canonical(ws) for ws in itertools.product(words, repeat=m)})


def orbits(m: int, t: int) -> list[TupleOrbit]:
    words = list(enumerate_cyclic_modular(2 * t))
    reps = {tuple_canonical(ws) for ws in itertools.product(words, repeat=m)}
    return [TupleOrbit(r, m, 2 * t) for r in sorted(reps, key=lambda r: tuple(_key(w) for w in r))]


# --- bound arithmetic ----------------------------------------------------------


def k_formula(m: int, t: int) -> float:
    """Natural log of the asymptotic orbit count 2^(m(t+1)) / (2 m! (4t)^m)."""
    if m < 1 or t < 1:
        raise ValueError("need m >= 1 and t >= 1")
    return m * (t + 1) * math.log(2) - math.log(2) - math.lgamma(m + 1) - m * math.log(4 * t)


@dataclass
class JBound:
    log2_value: float
    valid: bool
    constant: str = "log2(C)"


def j_lower_bound(epsilon: float, t: int) -> JBound:
    """Dominant term 2^(t eps) log2(2^(t+1) / (16 2^(t eps) t)) of the log2 lower bound.

    The additive constant log2(C) is existential and is left symbolic.
    """
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    if t < 1:
        raise ValueError("t must be >= 1")
    m_log2 = t * epsilon
    inner_log2 = (t + 1) - 4 - m_log2 - math.log2(t)
    return JBound(2.0**m_log2 * inner_log2, inner_log2 > 0)


def i_upper_bound(k: int, n: int) -> float:
    """log2 log2 of 2^((2k-1)^n), the subset count of the radius-n ball."""
    if k < 2 or n < 0:
        raise ValueError("need k >= 2 and n >= 0")
    return n * math.log2(2 * k - 1)
