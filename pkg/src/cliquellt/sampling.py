"""Seeded G(n,p) sampling, Monte Carlo clique counts, and empirical
characteristic functions with deterministic parallel substreams."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cliques import CliqueSpec, count_cliques
from .distributions import EmpiricalDistribution, LatticeSpec
from .errors import DomainError
from .ground import EdgeGround, GraphAssignment


@dataclass(frozen=True)
class MCConfig:
    """Identical (seed, samples, workers) must give bit-identical results."""

    seed: int
    samples: int
    workers: int = 1

    def __post_init__(self):
        if self.samples < 1:
            raise DomainError("need at least one sample")
        if self.workers < 1:
            raise DomainError("need at least one worker")

    def worker_rngs(self) -> list[np.random.Generator]:
        children = np.random.SeedSequence(self.seed).spawn(self.workers)
        return [np.random.default_rng(c) for c in children]

    def worker_quotas(self) -> list[int]:
        base, extra = divmod(self.samples, self.workers)
        return [base + (1 if w < extra else 0) for w in range(self.workers)]


@dataclass(frozen=True)
class ChfEstimate:
    t: float
    value: complex
    stderr: float
    samples: int


def sample_gnp(n: int, p: float, rng: np.random.Generator) -> GraphAssignment:
    """One G(n,p) graph: each edge i.i.d. Bernoulli(p) from the given stream."""
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0,1), got {p}")
    ground = EdgeGround(n)
    draws = rng.random(ground.size) < p
    bits = 0
    for idx in np.nonzero(draws)[0]:
        bits |= 1 << int(idx)
    return GraphAssignment(ground, bits)


def _edge_vertex_indices(n: int) -> tuple[np.ndarray, np.ndarray]:
    """0-based (i, j) endpoint arrays in canonical edge order."""
    iu = np.triu_indices(n, k=1)
    return iu[0], iu[1]


def _triangle_counts_from_edges(edge_bits: np.ndarray, n: int) -> np.ndarray:
    """Triangle count per sample from a (batch, C(n,2)) 0/1 array: tr(A^3)/6."""
    batch = edge_bits.shape[0]
    ii, jj = _edge_vertex_indices(n)
    adj = np.zeros((batch, n, n), dtype=np.float64)
    adj[:, ii, jj] = edge_bits
    adj[:, jj, ii] = edge_bits
    a2 = adj @ adj
    tri = np.einsum("bij,bij->b", a2, adj) / 6.0
    return np.rint(tri).astype(np.int64)


def sample_clique_counts(spec: CliqueSpec, mc: MCConfig, *, chunk: int = 4096) -> np.ndarray:
    """Monte Carlo clique counts: i.i.d. G(n,p) draws, one count per sample.

    Work is split across deterministic per-worker substreams spawned from the
    seed; output order is (worker, sample-within-worker), independent of timing.
    """
    n, r, p = spec.n, spec.r, spec.p
    m = EdgeGround(n).size
    out: list[np.ndarray] = []
    for rng, quota in zip(mc.worker_rngs(), mc.worker_quotas()):
        done = 0
        while done < quota:
            q = min(chunk, quota - done)
            bits = (rng.random((q, m)) < p).astype(np.float64)
            if r == 3:
                out.append(_triangle_counts_from_edges(bits, n))
            else:
                ground = EdgeGround(n)
                counts = np.empty(q, dtype=np.int64)
                for s in range(q):
                    mask = 0
                    for idx in np.nonzero(bits[s])[0]:
                        mask |= 1 << int(idx)
                    counts[s] = count_cliques(GraphAssignment(ground, mask), r)
                out.append(counts)
            done += q
    return np.concatenate(out)


def sample_kappa(spec: CliqueSpec, mc: MCConfig) -> np.ndarray:
    """Samples of kappa = (f_r - mu)/sigma."""
    counts = sample_clique_counts(spec, mc)
    return (counts - spec.mu) / spec.sigma


def empirical_chf(values: np.ndarray, t: float) -> ChfEstimate:
    """(1/N) sum e^{itx_j} with a componentwise standard-error bound."""
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    if n < 2:
        raise DomainError("need at least two samples for an empirical chf")
    z = np.exp(1j * t * values)
    value = complex(np.mean(z))
    se_re = float(np.std(z.real, ddof=1) / math.sqrt(n))
    se_im = float(np.std(z.imag, ddof=1) / math.sqrt(n))
    return ChfEstimate(t=t, value=value, stderr=math.hypot(se_re, se_im), samples=n)


def empirical_chf_grid(values: np.ndarray, ts: np.ndarray) -> list[ChfEstimate]:
    return [empirical_chf(values, float(t)) for t in np.asarray(ts, dtype=np.float64)]


def empirical_distribution(values: np.ndarray, lattice: LatticeSpec) -> EmpiricalDistribution:
    """Exact counts/N masses on the given lattice."""
    values = np.asarray(values, dtype=np.float64)
    n = values.size
    uniq, counts = np.unique(values, return_counts=True)
    mass = {float(x): int(c) / n for x, c in zip(uniq, counts)}
    return EmpiricalDistribution(lattice, mass)
