import math

import numpy as np
import pytest

from cliquellt import (
    CliqueSpec,
    DomainError,
    LatticeSpec,
    MCConfig,
    empirical_chf,
    empirical_chf_grid,
    empirical_distribution,
    mean,
    sample_clique_counts,
    sample_gnp,
    sample_kappa,
)


def test_mcconfig_validation_and_quotas():
    with pytest.raises(DomainError):
        MCConfig(seed=0, samples=0)
    with pytest.raises(DomainError):
        MCConfig(seed=0, samples=10, workers=0)
    mc = MCConfig(seed=0, samples=10, workers=3)
    assert mc.worker_quotas() == [4, 3, 3]
    assert sum(mc.worker_quotas()) == 10
    assert len(mc.worker_rngs()) == 3


def test_sample_gnp_edge_count_mean():
    rng = np.random.default_rng(1234)
    n, p, reps = 50, 0.3, 10_000
    m = n * (n - 1) // 2
    counts = np.array([sample_gnp(n, p, rng).edge_count() for _ in range(reps)])
    se = math.sqrt(m * p * (1 - p) / reps)
    assert abs(float(np.mean(counts)) - p * m) <= 4 * se


def test_sample_gnp_deterministic():
    g1 = sample_gnp(10, 0.5, np.random.default_rng(7))
    g2 = sample_gnp(10, 0.5, np.random.default_rng(7))
    assert g1.bits == g2.bits


def test_clique_counts_reproducible_bit_identical():
    spec = CliqueSpec(n=12, r=3, p=0.4)
    for workers in (1, 3):
        mc = MCConfig(seed=99, samples=2000, workers=workers)
        a = sample_clique_counts(spec, mc)
        b = sample_clique_counts(spec, mc)
        assert np.array_equal(a, b)


def test_clique_counts_r3_matches_general_path():
    # the vectorized triangle path and the bitset path must agree sample-by-sample
    from cliquellt.cliques import count_cliques
    from cliquellt.ground import EdgeGround, GraphAssignment

    spec = CliqueSpec(n=8, r=3, p=0.5)
    mc = MCConfig(seed=5, samples=200)
    counts = sample_clique_counts(spec, mc)
    ground = EdgeGround(8)
    rngs = mc.worker_rngs()
    bits = (rngs[0].random((200, ground.size)) < 0.5).astype(np.float64)
    redo = []
    for row in bits:
        mask = 0
        for idx in np.nonzero(row)[0]:
            mask |= 1 << int(idx)
        redo.append(count_cliques(GraphAssignment(ground, mask), 3))
    assert np.array_equal(counts, np.array(redo))


def test_triangle_count_mean_agreement():
    spec = CliqueSpec(n=20, r=3, p=0.5)
    mc = MCConfig(seed=21, samples=20_000, workers=2)
    counts = sample_clique_counts(spec, mc)
    se = float(np.std(counts, ddof=1) / math.sqrt(counts.size))
    assert abs(float(np.mean(counts)) - mean(spec)) <= 4 * se


def test_sample_kappa_standardized():
    spec = CliqueSpec(n=15, r=3, p=0.5)
    mc = MCConfig(seed=3, samples=50_000, workers=4)
    kap = sample_kappa(spec, mc)
    assert abs(float(np.mean(kap))) <= 4.0 / math.sqrt(kap.size) * float(np.std(kap)) + 1e-9
    assert float(np.std(kap, ddof=1)) == pytest.approx(1.0, abs=0.05)


def test_empirical_chf_basics():
    vals = np.full(100, 2.0)
    est = empirical_chf(vals, 0.7)
    assert est.value == pytest.approx(complex(math.cos(1.4), math.sin(1.4)))
    assert est.stderr == pytest.approx(0.0, abs=1e-15)
    est0 = empirical_chf(np.random.default_rng(0).normal(size=500), 0.0)
    assert est0.value == pytest.approx(1.0 + 0.0j)
    with pytest.raises(DomainError):
        empirical_chf(np.array([1.0]), 1.0)


def test_empirical_chf_grid_and_symmetry():
    vals = np.random.default_rng(8).normal(size=2000)
    ests = empirical_chf_grid(vals, [0.5, -0.5])
    assert ests[0].value == pytest.approx(ests[1].value.conjugate())
    assert abs(ests[0].value) <= 1.0


def test_empirical_distribution_exact_counts():
    vals = np.array([0.0, 1.0, 1.0, 3.0])
    d = empirical_distribution(vals, LatticeSpec(0.0, 1.0))
    assert d.prob(1.0) == 0.5
    assert d.prob(0.0) == 0.25
    assert d.total() == pytest.approx(1.0)
