"""The r-clique counting statistic on G(n,p): exact counts, closed-form moments,
Fourier profile, and exact small-n distributions."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .distributions import EmpiricalDistribution, LatticeSpec
from .errors import CapacityError, DomainError
from .ground import EdgeGround, GraphAssignment, binom
from .pbf import PBFunction, popcount_array

EXACT_DISTRIBUTION_EDGE_CAP = 21
LOG_SPACE_VERTEX_THRESHOLD = 1000


@dataclass(frozen=True)
class CliqueSpec:
    """Parameters of the r-clique count on G(n,p), plus the fixed constant tau."""

    n: int
    r: int
    p: float
    tau: float = 0.05

    def __post_init__(self):
        if self.r < 3:
            raise DomainError(f"clique size must be >= 3, got r={self.r}")
        if not (0.0 < self.p < 1.0):
            raise DomainError(f"p must lie in (0,1), got {self.p}")
        hi = min(1.0 / 12.0, 1.0 / (2 * self.r))
        if not (0.0 < self.tau < hi):
            raise DomainError(f"tau must lie in (0, {hi:.6g}), got {self.tau}")

    @property
    def lam(self) -> float:
        return min(self.p, 1.0 - self.p)

    @property
    def ground(self) -> EdgeGround:
        return EdgeGround(self.n)

    @property
    def mu(self) -> float:
        return mean(self)

    @property
    def sigma2(self) -> float:
        return variance(self)

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)


@dataclass(frozen=True)
class CliqueMoments:
    mu: float
    sigma2: float
    sigma: float
    weight_deg1: float
    weight_tail: float


def mean(spec: CliqueSpec) -> float:
    """E[f_r] = p^C(r,2) * C(n,r), in log space for very large n."""
    edges = binom(spec.r, 2)
    if spec.n > LOG_SPACE_VERTEX_THRESHOLD:
        log_mu = edges * math.log(spec.p) + _log_binom(spec.n, spec.r)
        return math.exp(log_mu)
    return spec.p**edges * binom(spec.n, spec.r)


def _log_binom(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


@lru_cache(maxsize=None)
def covering_edge_subsets(t: int, m: int) -> int:
    """Number of m-edge subsets of K_t whose vertex support is all t vertices.

    Inclusion-exclusion over the vertices missed by the subset.
    """
    if t < 2:
        raise DomainError(f"need t >= 2, got {t}")
    if m < 0 or m > binom(t, 2):
        raise DomainError(f"m={m} out of range for K_{t}")
    return sum((-1) ** j * binom(t, j) * binom(binom(t - j, 2), m) for j in range(t + 1))


def fourier_coeff_fr(spec: CliqueSpec, edges: Iterable[int]) -> float:
    """Fourier coefficient of f_r at edge set S.

    Nonzero exactly when |supp(S)| <= r (any r-superset of the support spans a
    clique containing S): p^C(r,2) * ((1-p)/p)^{|S|/2} * C(n - s, r - s).
    """
    S = frozenset(edges)
    ground = spec.ground
    verts: set[int] = set()
    for idx in S:
        i, j = ground.edge(idx)
        verts.add(i)
        verts.add(j)
    s = len(verts)
    if s > spec.r:
        return 0.0
    ratio = (1.0 - spec.p) / spec.p
    return spec.p ** binom(spec.r, 2) * ratio ** (len(S) / 2.0) * binom(spec.n - s, spec.r - s)


def variance(spec: CliqueSpec) -> float:
    """sigma^2 = sum over nonempty S of f_r_hat(S)^2, grouped by (|supp|, |S|)."""
    if spec.n < spec.r:
        return 0.0
    total = 0.0
    base = spec.p ** binom(spec.r, 2)
    ratio = (1.0 - spec.p) / spec.p
    for t in range(2, spec.r + 1):
        cnr = binom(spec.n - t, spec.r - t)
        if cnr == 0:
            continue
        inner = 0.0
        for m in range(1, binom(t, 2) + 1):
            ncov = covering_edge_subsets(t, m)
            if ncov:
                inner += ncov * (base * ratio ** (m / 2.0) * cnr) ** 2
        total += binom(spec.n, t) * inner
    return total


def variance_leading_coefficient(r: int, p: float) -> float:
    """Coefficient of n^{2r-2} in sigma^2: p^{r(r-1)-1}(1-p) / (2 ((r-2)!)^2)."""
    return p ** (r * (r - 1) - 1) * (1.0 - p) / (2.0 * math.factorial(r - 2) ** 2)


def kappa_coeff(spec: CliqueSpec, edges: Iterable[int]) -> float:
    """Fourier coefficient of kappa = (f_r - mu)/sigma: 0 at the empty set."""
    S = frozenset(edges)
    if not S:
        return 0.0
    return fourier_coeff_fr(spec, S) / spec.sigma


def weight_profile(spec: CliqueSpec) -> tuple[float, float]:
    """(W^1, W^{>1}) of kappa: degree-1 Parseval weight and its complement."""
    w1 = binom(spec.n, 2) * kappa_coeff(spec, [0]) ** 2
    return w1, 1.0 - w1


def moments(spec: CliqueSpec) -> CliqueMoments:
    w1, wtail = weight_profile(spec)
    s2 = variance(spec)
    return CliqueMoments(mean(spec), s2, math.sqrt(s2), w1, wtail)


# -- exact clique counting ------------------------------------------------


def count_cliques(g: GraphAssignment, r: int) -> int:
    """Number of r-vertex subsets inducing a complete subgraph.

    Ordered backtracking over neighbor bitsets with intersection pruning.
    """
    if r < 3:
        raise DomainError(f"clique size must be >= 3, got r={r}")
    n = g.ground.n
    if r > n:
        return 0
    adj = g.adjacency_masks()

    def extend(cand: int, need: int) -> int:
        if need == 0:
            return 1
        total = 0
        while cand:
            if cand.bit_count() < need:
                break
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            total += extend(cand & adj[v], need - 1)
        return total

    full = ((1 << (n + 1)) - 1) & ~1  # vertices 1..n
    return extend(full, r)


def count_triangles_bitset(g: GraphAssignment) -> int:
    """Triangle count via row intersections; must agree with count_cliques(g, 3)."""
    n = g.ground.n
    adj = g.adjacency_masks()
    total = 0
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            if (adj[i] >> j) & 1:
                above = ~((1 << (j + 1)) - 1)
                total += (adj[i] & adj[j] & above).bit_count()
    return total


# -- exhaustive enumeration ------------------------------------------------


def clique_edge_masks(ground: EdgeGround, r: int) -> list[int]:
    """Edge bitmask of every r-clique of K_n (one per r-subset of vertices)."""
    masks = []
    for verts in combinations(range(1, ground.n + 1), r):
        mask = 0
        for a, b in combinations(verts, 2):
            mask |= 1 << ground.index(a, b)
        masks.append(mask)
    return masks


def counts_over_all_graphs(n: int, r: int) -> np.ndarray:
    """f_r(g) for every assignment bitmask g in [0, 2^C(n,2))."""
    ground = EdgeGround(n)
    m = ground.size
    if m > EXACT_DISTRIBUTION_EDGE_CAP:
        raise CapacityError(
            f"exhaustive enumeration capped at {EXACT_DISTRIBUTION_EDGE_CAP} edges, got {m}"
        )
    graphs = np.arange(1 << m, dtype=np.uint32)
    counts = np.zeros(1 << m, dtype=np.int64)
    for mask in clique_edge_masks(ground, r):
        counts += (graphs & np.uint32(mask)) == np.uint32(mask)
    return counts


def exact_distribution(spec: CliqueSpec) -> EmpiricalDistribution:
    """Exact law of f_r under G(n,p), on the integer lattice (b=0, h=1)."""
    counts = counts_over_all_graphs(spec.n, spec.r)
    m = spec.ground.size
    pops = popcount_array(m)
    probs = spec.p**pops * (1.0 - spec.p) ** (m - pops)
    mass_by_count = np.bincount(counts, weights=probs)
    lattice = LatticeSpec(0.0, 1.0)
    mass = {float(c): float(w) for c, w in enumerate(mass_by_count) if w > 0.0}
    return EmpiricalDistribution(lattice, mass)


# -- Fourier expansion as an explicit PBFunction (small n) -----------------


def fr_function(spec: CliqueSpec) -> PBFunction:
    """f_r as a sparse PBFunction, from the closed-form coefficients."""
    ground = spec.ground
    coeffs = {frozenset(): mean(spec)}
    for t in range(2, spec.r + 1):
        for verts in combinations(range(1, spec.n + 1), t):
            all_edges = [ground.index(a, b) for a, b in combinations(verts, 2)]
            for msize in range(1, len(all_edges) + 1):
                for S in combinations(all_edges, msize):
                    vs: set[int] = set()
                    for idx in S:
                        a, b = ground.edge(idx)
                        vs.add(a)
                        vs.add(b)
                    if len(vs) != t:
                        continue  # counted at its own support size
                    coeffs[frozenset(S)] = fourier_coeff_fr(spec, S)
    return PBFunction(ground, spec.p, coeffs)


def kappa_function(spec: CliqueSpec) -> PBFunction:
    """kappa = (f_r - mu)/sigma as a sparse PBFunction."""
    f = fr_function(spec)
    sigma = spec.sigma
    coeffs = {S: c / sigma for S, c in f.coeffs.items() if S}
    return PBFunction(f.ground, spec.p, coeffs)
