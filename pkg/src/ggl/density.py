"""Random presentations in the density model and predicate-suite experiments."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from .cancellation import (
    Presentation,
    StreamingCPrime,
    covers_all_generators,
    is_c_prime,
    is_primitive,
    is_proper_power,
    lambda_bound,
)
from .entropy import relator_count, wilson_interval
from .errors import CapError
from .readability import ReadabilityParams, bound_lemma_ML, is_good
from .words import Word, as_rng, check_rank, sample_cyclic

log = logging.getLogger(__name__)

DEFAULT_RELATOR_CAP = 10**6


@dataclass(frozen=True)
class DensityParams:
    k: int
    n: int
    d: float
    seed: object = 0

    def __post_init__(self):
        check_rank(self.k)
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 < self.d < 1:
            raise ValueError(f"d must lie in (0, 1), got {self.d}")

    @property
    def m(self) -> float:
        return relator_count(self.k, self.n, self.d)


def _relator_stream(k: int, n: int, rng: np.random.Generator) -> Iterator[Word]:
    while True:
        yield sample_cyclic(n, k, rng)


def sample_presentation(params: DensityParams, cap: int = DEFAULT_RELATOR_CAP) -> Presentation:
    """Tuple of m_n independent uniform cyclically reduced words of length n."""
    m = params.m
    if m > cap:
        raise CapError(f"m_n = {m:.4g} relators exceeds the relator cap {cap}")
    rng = as_rng(params.seed)
    stream = _relator_stream(params.k, params.n, rng)
    return Presentation(params.k, tuple(next(stream) for _ in range(int(m))))


# --- suites ------------------------------------------------------------------


@dataclass
class SuiteConfig:
    cprime: float | None = None
    goodness: tuple[float, int] | None = None
    coverage: bool = False
    noproperpower: bool = False
    noprimitive: bool = False

    @property
    def checks(self) -> list[str]:
        out = []
        if self.cprime is not None:
            out.append("cprime")
        if self.goodness is not None:
            out.append("goodness")
        for name in ("coverage", "noproperpower", "noprimitive"):
            if getattr(self, name):
                out.append(name)
        return out


def parse_suite(text: str) -> SuiteConfig:
    """Parse ``cprime=0.1666,goodness:mu=0.2:L=2,coverage,noproperpower``."""
    cfg = SuiteConfig()
    for item in filter(None, (part.strip() for part in text.split(","))):
        if item.startswith("cprime"):
            _, _, value = item.partition("=")
            cfg.cprime = float(value) if value else 1 / 6
        elif item.startswith("goodness"):
            opts = dict(part.split("=", 1) for part in item.split(":")[1:])
            try:
                cfg.goodness = (float(opts["mu"]), int(opts["L"]))
            except KeyError as exc:
                raise ValueError(f"goodness needs mu and L, got {item!r}") from exc
        elif item in ("coverage", "noproperpower", "noprimitive"):
            setattr(cfg, item, True)
        else:
            raise ValueError(f"unknown suite item {item!r}")
    return cfg


@dataclass
class PresentationReport:
    results: dict[str, bool] = field(default_factory=dict)
    parameters: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(self.results.values())


def _word_checks(cfg: SuiteConfig, k: int) -> dict:
    checks = {}
    if cfg.goodness is not None:
        params = ReadabilityParams(cfg.goodness[0], k, cfg.goodness[1])
        checks["goodness"] = lambda r: is_good(r, params)
    if cfg.coverage:
        checks["coverage"] = lambda r: covers_all_generators(r, k)
    if cfg.noproperpower:
        checks["noproperpower"] = lambda r: not is_proper_power(r)
    if cfg.noprimitive:
        checks["noprimitive"] = lambda r: not is_primitive(r, k)
    return checks


def run_suite(p: Presentation, cfg: SuiteConfig) -> PresentationReport:
    report = PresentationReport(parameters={"k": p.k, "m": len(p.relators)})
    if cfg.cprime is not None:
        report.results["cprime"] = is_c_prime(p, cfg.cprime).satisfied
        report.parameters["lambda"] = cfg.cprime
    if cfg.goodness is not None:
        report.parameters["mu"], report.parameters["L"] = cfg.goodness
    for name, check in _word_checks(cfg, p.k).items():
        report.results[name] = all(check(r) for r in p.relators)
    return report


def _streaming_trial(k: int, n: int, m: float, cfg: SuiteConfig, rng, cap: int) -> bool:
    """All-pass verdict for one trial, sampling relators lazily.

    Stops at the first failing relator, so trials with astronomically many
    relators finish as soon as a violation shows up. Reaching the cap with
    no violation is an error rather than a guess.
    """
    cprime = StreamingCPrime(cfg.cprime, n) if cfg.cprime is not None else None
    checks = list(_word_checks(cfg, k).values())
    if cprime is None and not checks:
        return True
    target = m if m <= cap else None
    count = 0
    for r in _relator_stream(k, n, rng):
        if target is not None and count >= target:
            return True
        if count >= cap:
            raise CapError(f"no violation within the relator cap {cap} (m_n = {m:.4g})")
        count += 1
        if cprime is not None and not cprime.add(r):
            return False
        if not all(check(r) for check in checks):
            return False
    raise AssertionError("unreachable")


@dataclass
class SweepRow:
    d: float
    pass_fraction: float
    ci_lo: float
    ci_hi: float
    trials: int


def density_sweep(
    k: int,
    n: int,
    d_grid: Sequence[float],
    trials: int,
    cfg: SuiteConfig,
    seed: int = 0,
    cap: int = DEFAULT_RELATOR_CAP,
) -> list[SweepRow]:
    """Pass fraction of the suite over random presentations for each density.

    Trial j at grid index i draws from the generator seeded by (seed, i, j).
    """
    rows = []
    for i, d in enumerate(d_grid):
        if not 0 < d < 1:
            raise ValueError(f"density values must lie in (0, 1), got {d}")
        m = relator_count(k, n, d)
        passed = 0
        for j in range(trials):
            rng = np.random.default_rng([seed, i, j])
            passed += _streaming_trial(k, n, m, cfg, rng, cap)
        lo, hi = wilson_interval(passed, trials)
        log.info("d=%s: %d/%d presentations pass", d, passed, trials)
        rows.append(SweepRow(d, passed / trials, lo, hi, trials))
    return rows


# --- rank and density thresholds for good-word suites ------------------------


@dataclass
class MLThresholds:
    k0: int
    d0: float | None
    lam: float


def thm_ML_pipeline(L: int, mu: float, nu: float, d_small: Mapping[int, float] | None = None) -> MLThresholds:
    """Least rank k0 > L where the good-word entropy bound drops to nu, and d0.

    ``d_small`` supplies the densities d(k) for 2 <= k < k0; they are outside
    inputs. Without it ``d0`` is left undetermined.
    """
    if not (mu + 1) / 2 < nu < 1:
        raise ValueError(f"nu must lie in ((mu+1)/2, 1) = ({(mu + 1) / 2}, 1), got {nu}")
    lam, ok = lambda_bound(mu, L)
    if not ok:
        raise ValueError("lambda bound exceeds 1/6")
    # bound_lemma_ML(k) <= nu  <=>  log(2k-1) >= log(6L) / (2 nu - mu - 1)
    threshold = math.log(6 * L) / (2 * nu - mu - 1)
    k0 = max(L + 1, math.ceil((math.exp(threshold) + 1) / 2))
    while k0 > max(2, L + 1) and bound_lemma_ML(k0 - 1, mu, L) <= nu:
        k0 -= 1
    while bound_lemma_ML(k0, mu, L) > nu:
        k0 += 1
    d0 = None
    if d_small is not None:
        missing = [k for k in range(2, k0) if k not in d_small]
        if missing:
            raise ValueError(f"d_small lacks d(k) for k = {missing[:5]}...")
        d0 = min([d_small[k] for k in range(2, k0)] + [1 - nu])
    return MLThresholds(k0, d0, lam)
