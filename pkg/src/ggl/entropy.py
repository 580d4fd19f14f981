"""Genericity entropy of word predicates and tuple-fraction threshold arithmetic."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .cancellation import Presentation, is_c_prime
from .errors import CapError, enum_cap
from .readability import ReadabilityParams, count_readable, is_good, is_mu_readable, is_muL_readable
from .words import (
    Automaton,
    Word,
    as_rng,
    check_rank,
    count_cyclic,
    count_with_prefix_constraint,
    enumerate_cyclic,
    sample_cyclic,
)


@dataclass
class PredicateHandle:
    """Named membership test on cyclically reduced words.

    ``exact_complement(n, k)``, when present, returns the exact number of
    words of length n that fail the predicate.
    """

    name: str
    params: dict
    evaluator: Callable[[Word], bool]
    exact_complement: Callable[[int, int], int] | None = None

    @property
    def has_exact_count(self) -> bool:
        return self.exact_complement is not None

    def __call__(self, w: Word) -> bool:
        return self.evaluator(w)


def constant_predicate(value: bool) -> PredicateHandle:
    return PredicateHandle(
        "always" if value else "never",
        {},
        lambda w: value,
        lambda n, k: 0 if value else count_cyclic(n, k),
    )


def a_head_machine(n: int) -> Automaton:
    """Accepts words whose first ceil(n/2) letters all equal a_1 or all equal a_1^-1."""
    head = math.ceil(n / 2)

    def step(state, x):
        sign, pos = state
        if pos >= head:
            return state
        if abs(x) != 1 or (sign and x != sign):
            return None
        return (x, pos + 1)

    return Automaton(start=(0, 0), step=step, accept=lambda s: s[1] >= head)


def _a_head_member(w: Word) -> bool:
    head = math.ceil(len(w) / 2)
    prefix = w[:head]
    return not (prefix and (all(x == 1 for x in prefix) or all(x == -1 for x in prefix)))


def calibration_predicate_a_head(k: int) -> PredicateHandle:
    """Synthetic predicate whose complement has entropy 1/2 by construction."""
    check_rank(k)
    return PredicateHandle(
        "a-head",
        {"k": k},
        _a_head_member,
        lambda n, kk: count_with_prefix_constraint(n, kk, a_head_machine(n)),
    )


def non_mu_readable(mu: float, k: int) -> PredicateHandle:
    params = ReadabilityParams(mu, k)
    return PredicateHandle(
        "non-mu-readable",
        {"mu": mu},
        lambda w: not is_mu_readable(w, params).readable,
        lambda n, kk: count_readable(n, ReadabilityParams(mu, kk)),
    )


def non_muL_readable(mu: float, L: int, k: int) -> PredicateHandle:
    params = ReadabilityParams(mu, k, L)
    return PredicateHandle(
        "non-muL-readable",
        {"mu": mu, "L": L},
        lambda w: not is_muL_readable(w, params).readable,
        lambda n, kk: count_readable(n, ReadabilityParams(mu, kk, L)),
    )


def good_predicate(mu: float, L: int, k: int) -> PredicateHandle:
    params = ReadabilityParams(mu, k, L)
    return PredicateHandle("good", {"mu": mu, "L": L}, lambda w: is_good(w, params))


def c_prime_predicate(lam: float, k: int) -> PredicateHandle:
    """Single relator satisfies C'(lam); its complement holds the self-overlapping words."""
    return PredicateHandle(
        "c-prime",
        {"lambda": lam},
        lambda w: is_c_prime(Presentation(k, (w,)), lam).satisfied,
    )


PREDICATES = ("non-mu-readable", "non-muL-readable", "good", "c-prime-complement", "a-head")


def make_predicate(name: str, k: int, mu: float = 0.3, L: int = 2, lam: float = 1 / 6) -> PredicateHandle:
    if name == "non-mu-readable":
        return non_mu_readable(mu, k)
    if name == "non-muL-readable":
        return non_muL_readable(mu, L, k)
    if name == "good":
        return good_predicate(mu, L, k)
    if name == "c-prime-complement":
        return c_prime_predicate(lam, k)
    if name == "a-head":
        return calibration_predicate_a_head(k)
    raise ValueError(f"unknown predicate {name!r}; choose from {PREDICATES}")


# --- counting ----------------------------------------------------------------


@dataclass
class CountEstimate:
    value: float | int
    ci_lo: float | int
    ci_hi: float | int
    exact: bool
    samples: int = 0


def wilson_interval(successes: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    if trials == 0:
        return 0.0, 1.0
    p = successes / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def count_complement(
    pred: PredicateHandle,
    n: int,
    k: int,
    mode: str = "exact",
    samples: int = 10_000,
    seed=None,
    cap: int | None = None,
) -> CountEstimate:
    """Number of cyclically reduced words of length n failing ``pred``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = count_cyclic(n, k)
    if mode == "exact":
        if pred.has_exact_count:
            c = pred.exact_complement(n, k)
        else:
            cap = enum_cap() if cap is None else cap
            if total > cap:
                raise CapError(f"{total} words of length {n} exceed the enumeration cap {cap}")
            c = sum(1 for w in enumerate_cyclic(n, k) if not pred(w))
        return CountEstimate(c, c, c, True)
    if mode != "mc":
        raise ValueError(f"mode must be 'exact' or 'mc', got {mode!r}")
    rng = as_rng(seed)
    failing = sum(1 for _ in range(samples) if not pred(sample_cyclic(n, k, rng)))
    lo, hi = wilson_interval(failing, samples)
    return CountEstimate(total * failing / samples, total * lo, total * hi, False, samples)


@dataclass
class EntropyProfile:
    """Finite-n entropy samples; these are estimates at finite n, not limits."""

    k: int
    ns: list[int]
    counts: list[CountEstimate]
    t_hat: list[float | None] = field(default_factory=list)

    @property
    def window(self) -> tuple[int, int]:
        return (min(self.ns), max(self.ns))

    @property
    def sentinel(self) -> list[bool]:
        return [t is None for t in self.t_hat]

    @property
    def sup(self) -> float | None:
        vals = [t for t in self.t_hat if t is not None]
        return max(vals) if vals else None

    @property
    def inf(self) -> float | None:
        vals = [t for t in self.t_hat if t is not None]
        return min(vals) if vals else None


def t_hat(count: float, n: int, k: int) -> float | None:
    if count <= 0:
        return None
    return math.log(count) / (n * math.log(2 * k - 1))


def entropy_profile(
    pred: PredicateHandle,
    k: int,
    ns: Sequence[int],
    mode: str = "exact",
    samples: int = 10_000,
    seed=None,
) -> EntropyProfile:
    rng = as_rng(seed)
    counts = [count_complement(pred, n, k, mode, samples, rng) for n in ns]
    return EntropyProfile(k, list(ns), counts, [t_hat(c.value, n, k) for c, n in zip(counts, ns)])


# --- tuple fractions -----------------------------------------------------------


def relator_count(k: int, n: int, d: float) -> float:
    """m_n = max(1, floor((2k-1)^(d n))); a float, possibly inf for huge values."""
    exponent = d * n * math.log(2 * k - 1)
    if exponent > 700:
        return math.inf
    return float(max(1, math.floor(math.exp(exponent) + 1e-9)))


def log_tuple_fraction(m: float, gamma_p: int, gamma_c: int) -> float:
    if gamma_c <= 0:
        raise ValueError("gamma_C must be positive")
    if not 0 <= gamma_p <= gamma_c:
        raise ValueError("need 0 <= gamma_P <= gamma_C")
    bar = gamma_c - gamma_p
    if bar == 0:
        return 0.0
    if gamma_p == 0:
        return -math.inf
    return m * math.log1p(-(bar / gamma_c))


def tuple_fraction(k: int, n: int, d: float, gamma_p: int, gamma_c: int) -> float:
    """(gamma_P / gamma_C)^m_n evaluated in the log domain."""
    if not 0 < d < 1:
        raise ValueError("d must lie in (0, 1)")
    return math.exp(log_tuple_fraction(relator_count(k, n, d), gamma_p, gamma_c))


def _words_up_to(n: int, k: int):
    for length in range(1, n + 1):
        yield from enumerate_cyclic(length, k)


def ao_fraction(pred: PredicateHandle, k: int, m: int, n: int, cap: int | None = None) -> float:
    """Fraction of m-tuples with all |r_i| <= n whose entries all satisfy ``pred``.

    Enumerates the tuples and checks the result against the power of the
    single-word fraction, which must agree for a per-word predicate.
    """
    cap = enum_cap() if cap is None else cap
    total_words = sum(count_cyclic(length, k) for length in range(1, n + 1))
    if total_words**m > cap:
        raise CapError(f"{total_words}^{m} tuples exceed the enumeration cap {cap}")
    member = np.array([pred(w) for w in _words_up_to(n, k)], dtype=bool)
    good = 0
    for combo in itertools.product(member, repeat=m):
        good += all(combo)
    fraction = good / total_words**m
    single = member.sum() / total_words
    if not math.isclose(fraction, single**m, rel_tol=1e-9, abs_tol=1e-15):
        raise AssertionError("tuple fraction does not factor over coordinates")
    return fraction


# --- closed-form entropy bounds ----------------------------------------------


def bound_prop_read(k: int) -> float:
    """Lower bound log(2k-3)/log(2k-1) on the entropy of non-readable words."""
    check_rank(k)
    return math.log(2 * k - 3) / math.log(2 * k - 1)


def remark_H_bound(k: int, L: int) -> float:
    """log((2k-1)^(3L) - 1/2) / (3L log(2k-1)), computed without overflow."""
    check_rank(k)
    base = math.log(2 * k - 1)
    e = 3 * L
    return (e * base + math.log1p(-0.5 * math.exp(-e * base))) / (e * base)
