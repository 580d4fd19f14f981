from collections import Counter

import pytest

from ggl.cancellation import Presentation
from ggl.density import (
    DensityParams,
    SuiteConfig,
    density_sweep,
    parse_suite,
    run_suite,
    sample_presentation,
    thm_ML_pipeline,
)
from ggl.errors import CapError
from ggl.readability import bound_lemma_ML
from ggl.words import enumerate_cyclic, parse_word


def test_relator_counts():
    assert DensityParams(2, 10, 0.5).m == 243
    assert DensityParams(2, 10, 1e-6).m == 1
    assert len(sample_presentation(DensityParams(2, 10, 0.5, seed=1)).relators) == 243
    with pytest.raises(ValueError):
        DensityParams(2, 10, 1.0)


def test_sampling_is_deterministic():
    p = DensityParams(3, 12, 0.3, seed=99)
    assert sample_presentation(p) == sample_presentation(p)
    assert sample_presentation(p) != sample_presentation(DensityParams(3, 12, 0.3, seed=100))


def test_relator_cap():
    with pytest.raises(CapError):
        sample_presentation(DensityParams(2, 40, 0.9), cap=1000)


def test_presentation_marginals_uniform():
    words = list(enumerate_cyclic(3, 2))
    params = [DensityParams(2, 3, 0.67, seed=s) for s in range(3000)]
    draws = [sample_presentation(p).relators for p in params]
    m = len(draws[0])
    assert m == 9
    expected = len(draws) / len(words)
    for i in range(m):
        counts = Counter(d[i] for d in draws)
        chi2 = sum((counts.get(w, 0) - expected) ** 2 / expected for w in words)
        # 27 degrees of freedom; p = 0.001 at 55.48
        assert chi2 < 55.48


def test_parse_suite():
    cfg = parse_suite("cprime=0.25,goodness:mu=0.2:L=2,coverage,noproperpower,noprimitive")
    assert cfg.cprime == 0.25 and cfg.goodness == (0.2, 2)
    assert cfg.checks == ["cprime", "goodness", "coverage", "noproperpower", "noprimitive"]
    assert parse_suite("cprime").cprime == pytest.approx(1 / 6)
    assert parse_suite("").checks == []
    for bad in ("bogus", "goodness:mu=0.2"):
        with pytest.raises(ValueError):
            parse_suite(bad)


def test_run_suite_examples():
    commutator = Presentation(2, (parse_word("abAB", 2),))
    assert run_suite(commutator, SuiteConfig(cprime=1 / 3)).results == {"cprime": True}
    power = Presentation(2, (parse_word("abab", 2),))
    assert run_suite(power, SuiteConfig(noproperpower=True)).results == {"noproperpower": False}
    empty = run_suite(commutator, SuiteConfig())
    assert empty.results == {} and empty.all_pass


def test_run_suite_reproducible():
    p = sample_presentation(DensityParams(2, 16, 0.2, seed=5))
    cfg = parse_suite("cprime=0.2,goodness:mu=0.3:L=2,coverage,noproperpower,noprimitive")
    assert run_suite(p, cfg) == run_suite(p, cfg)


def test_constant_suites():
    rows = density_sweep(2, 10, [0.1, 0.5, 0.9], 10, SuiteConfig(), seed=1)
    assert [r.pass_fraction for r in rows] == [1.0, 1.0, 1.0]
    # a single letter never involves both generators
    rows = density_sweep(2, 1, [0.1, 0.5], 10, SuiteConfig(coverage=True), seed=1)
    assert [r.pass_fraction for r in rows] == [0.0, 0.0]


def test_sweep_rows_and_determinism():
    cfg = parse_suite("cprime=0.25,noproperpower")
    rows = density_sweep(2, 20, [0.05, 0.2], 15, cfg, seed=3)
    assert rows == density_sweep(2, 20, [0.05, 0.2], 15, cfg, seed=3)
    for r in rows:
        assert r.trials == 15 and r.ci_lo <= r.pass_fraction <= r.ci_hi


def test_c_prime_dies_at_high_density():
    rows = density_sweep(2, 100, [0.02, 0.4], 100, SuiteConfig(cprime=1 / 6), seed=7)
    assert rows[0].pass_fraction > rows[1].pass_fraction


def test_cap_reached_without_violation():
    with pytest.raises(CapError):
        density_sweep(2, 20, [0.9], 1, SuiteConfig(noproperpower=True), cap=5)


def test_thm_ML_pipeline():
    t = thm_ML_pipeline(2, 0.2, 0.9)
    assert t.k0 == 32 and t.d0 is None
    assert bound_lemma_ML(31, 0.2, 2) > 0.9 >= bound_lemma_ML(32, 0.2, 2)
    assert t.lam == pytest.approx(0.006536, abs=1e-5)
    t = thm_ML_pipeline(2, 0.2, 0.9, d_small={k: 0.5 for k in range(2, 32)})
    assert t.d0 == pytest.approx(0.1)
    ks = [thm_ML_pipeline(2, 0.2, nu).k0 for nu in (0.8, 0.9, 0.95, 0.99, 0.999)]
    assert ks == sorted(ks, reverse=True)
    least = next(k for k in range(3, 1000) if bound_lemma_ML(k, 0.2, 2) < 1)
    assert ks[-1] >= least
    with pytest.raises(ValueError):
        thm_ML_pipeline(2, 0.2, 0.5)
    with pytest.raises(ValueError):
        thm_ML_pipeline(2, 0.2, 0.9, d_small={2: 0.5})
