import cmath
import math

import numpy as np
import pytest

from cliquellt import (
    CliqueSpec,
    DomainError,
    EmpiricalDistribution,
    LatticeMismatchError,
    LatticeSpec,
    discrete_gaussian,
    exact_distribution,
    l1_distance,
    lattice_inversion,
    linf_distance,
)


def test_lattice_basics():
    lat = LatticeSpec(0.5, 0.25)
    assert lat.contains(0.75)
    assert not lat.contains(0.8)
    assert lat.snap(0.75 + 1e-12) == pytest.approx(0.75)
    assert lat.point(2) == 1.0
    assert lat.compatible(LatticeSpec(0.25, 0.25))
    assert not lat.compatible(LatticeSpec(0.5, 0.5))
    with pytest.raises(DomainError):
        LatticeSpec(0.0, 0.0)


def test_distribution_moments_and_prob():
    lat = LatticeSpec(0.0, 1.0)
    d = EmpiricalDistribution(lat, {0.0: 0.25, 1.0: 0.5, 2.0: 0.25})
    assert d.total() == pytest.approx(1.0)
    assert d.mean() == pytest.approx(1.0)
    assert d.variance() == pytest.approx(0.5)
    assert d.prob(1.0) == 0.5
    assert d.prob(0.5) == 0.0


def test_distribution_chf_properties():
    lat = LatticeSpec(0.0, 1.0)
    d = EmpiricalDistribution(lat, {0.0: 0.3, 1.0: 0.7})
    assert d.chf(0.0) == pytest.approx(d.total())
    for t in (0.3, 1.7):
        assert d.chf(-t) == pytest.approx(d.chf(t).conjugate())
        assert abs(d.chf(t)) <= 1.0 + 1e-12


def test_csv_round_trip():
    lat = LatticeSpec(0.0, 1.0)
    d = EmpiricalDistribution(lat, {0.0: 1.0 / 3.0, 2.0: 2.0 / 3.0})
    text = d.to_csv()
    assert text.splitlines()[0] == "value,probability"
    d2 = EmpiricalDistribution.from_csv(text, lat)
    assert d2.mass == d.mass


def test_rescale():
    lat = LatticeSpec(0.0, 1.0)
    d = EmpiricalDistribution(lat, {0.0: 0.5, 2.0: 0.5})
    r = d.rescale(1.0, 2.0)
    assert r.lattice.h == pytest.approx(0.5)
    assert r.mean() == pytest.approx(0.0)
    assert r.prob(-0.5) == 0.5 and r.prob(0.5) == 0.5


def test_discrete_gaussian_mass_and_symmetry():
    lat = LatticeSpec(0.0, 1.0)
    for sigma in (10.0, 25.0):
        g = discrete_gaussian(lat, 0.0, sigma)
        assert abs(g.total() - 1.0) < 1e-6  # h/sigma <= 0.1
        for k in (1, 3, 7):
            assert g.prob(float(k)) == pytest.approx(g.prob(float(-k)), rel=1e-12)
    # not renormalized: coarse lattice total deviates visibly from 1
    coarse = discrete_gaussian(LatticeSpec(0.5, 1.0), 0.0, 0.3)
    assert abs(coarse.total() - 1.0) > 1e-4


def test_discrete_gaussian_matches_density():
    lat = LatticeSpec(0.0, 1.0)
    g = discrete_gaussian(lat, 2.0, 40.0)
    x = 10.0
    expect = math.exp(-((x - 2.0) ** 2) / (2 * 40.0**2)) / (math.sqrt(2 * math.pi) * 40.0)
    assert g.prob(x) == pytest.approx(expect, rel=1e-12)


def test_distances():
    lat = LatticeSpec(0.0, 1.0)
    d = EmpiricalDistribution(lat, {0.0: 1.0})
    e = EmpiricalDistribution(lat, {1.0: 1.0})
    assert linf_distance(d, d) == 0.0
    assert l1_distance(d, d) == 0.0
    assert linf_distance(d, e) == 1.0
    assert l1_distance(d, e) == 2.0
    with pytest.raises(LatticeMismatchError):
        linf_distance(d, EmpiricalDistribution(LatticeSpec(0.5, 1.0), {0.5: 1.0}))


def test_inversion_point_mass():
    c = 3.0
    lat = LatticeSpec(0.0, 1.0)
    chf = lambda t: np.exp(1j * np.asarray(t) * c)
    assert lattice_inversion(chf, lat, c) == pytest.approx(1.0, abs=1e-8)
    assert lattice_inversion(chf, lat, c + 1) == pytest.approx(0.0, abs=1e-8)
    assert lattice_inversion(chf, lat, c - 1) == pytest.approx(0.0, abs=1e-8)


def test_inversion_bernoulli():
    p = 0.3
    lat = LatticeSpec(0.0, 1.0)
    chf = lambda t: (1 - p) + p * np.exp(1j * np.asarray(t))
    assert lattice_inversion(chf, lat, 0.0) == pytest.approx(1 - p, abs=1e-8)
    assert lattice_inversion(chf, lat, 1.0) == pytest.approx(p, abs=1e-8)
    assert lattice_inversion(chf, lat, 2.0) == pytest.approx(0.0, abs=1e-8)


def test_inversion_scalar_callable():
    p = 0.4
    lat = LatticeSpec(0.0, 1.0)
    chf = lambda t: (1 - p) + p * cmath.exp(1j * t)
    assert lattice_inversion(chf, lat, 1.0) == pytest.approx(p, abs=1e-8)


def test_inversion_exact_triangle_law():
    spec = CliqueSpec(n=4, r=3, p=0.5)
    dist = exact_distribution(spec)
    lat = dist.lattice
    hint = max(abs(x) for x in dist.mass)
    for x in dist.mass:
        got = lattice_inversion(dist.chf, lat, x, freq_hint=hint)
        assert got == pytest.approx(dist.mass[x], abs=1e-8)


def test_inversion_off_lattice_rejected():
    lat = LatticeSpec(0.0, 1.0)
    with pytest.raises(DomainError):
        lattice_inversion(lambda t: 1.0 + 0j, lat, 0.5)
