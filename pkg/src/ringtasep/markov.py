"""The multi-type TASEP on a ring as an exact Markov chain.

States are ring words; a transition picks a particle uniformly at random
and lets it try to jump left (into a vacancy, or swapping with a strictly
larger label).  Everything here is exact: transition matrices hold
Fractions, stationary distributions are computed by fraction-free
elimination and verified against the defining equations.

The ring dynamics commute with rotation, so stationary solves may be done
on the rotation quotient and lifted; the lift is always re-verified on
the full chain.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import VACANT, RingWord, TypeVector, cyclic_canonical
from .mlq import _claim_labels


@dataclass(frozen=True)
class RationalMatrix:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def row_sums(self) -> tuple[Fraction, ...]:
        return tuple(sum(r) for r in self.rows)

    def is_row_stochastic(self) -> bool:
        return all(s == 1 for s in self.row_sums()) and all(
            x >= 0 for r in self.rows for x in r
        )

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(
            tuple(
                tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)
            )
        )


def enumerate_states(t: TypeVector) -> list[tuple[int, ...]]:
    """All words of the given type, lexicographic (vacancy sorts first)."""
    symbols = [(VACANT, t.N - t.particles)] + [(i + 1, t.m[i]) for i in range(t.n)]
    symbols = [(s, c) for s, c in symbols if c > 0]
    out = []

    def rec(prefix, remaining):
        if len(prefix) == t.N:
            out.append(tuple(prefix))
            return
        for idx, (s, c) in enumerate(remaining):
            if c == 0:
                continue
            remaining[idx] = (s, c - 1)
            prefix.append(s)
            rec(prefix, remaining)
            prefix.pop()
            remaining[idx] = (s, c)

    rec([], sorted(symbols))
    return out


def state_count(t: TypeVector) -> int:
    total = comb(t.N, t.N - t.particles)
    rest = t.particles
    for mi in t.m:
        total *= comb(rest, mi)
        rest -= mi
    return total


def _step_tuple(sites: tuple[int, ...], site: int) -> tuple[int, ...]:
    """Fire the bell at an occupied site; caller guarantees occupancy."""
    N = len(sites)
    left = (site - 1) % N
    mover = sites[site]
    neighbor = sites[left]
    if neighbor == VACANT or neighbor > mover:
        out = list(sites)
        out[left], out[site] = mover, neighbor
        return tuple(out)
    return sites


def tasep_step(w: RingWord, site: int) -> RingWord:
    """The chosen particle tries to jump left (cyclically).

    It moves into a vacancy, swaps with a strictly larger label, and
    otherwise stays put.
    """
    if w[site] == VACANT:
        raise ValueError(f"site {site} is vacant")
    return RingWord(_step_tuple(w.sites, site))


def transition_matrix(t: TypeVector, cap: int = 2000):
    """Dense transition matrix of the chain, with its state list.

    Each of the K particles is chosen with probability 1/K.  Raises when
    the state space exceeds the cap.
    """
    size = state_count(t)
    if size > cap:
        raise ValueError(f"state space has {size} states, above cap {cap}")
    states = enumerate_states(t)
    index = {s: i for i, s in enumerate(states)}
    K = t.particles
    p = Fraction(1, K)
    rows = []
    for s in states:
        row = [Fraction(0)] * len(states)
        for site, label in enumerate(s):
            if label == VACANT:
                continue
            row[index[_step_tuple(s, site)]] += p
        rows.append(tuple(row))
    return states, RationalMatrix(tuple(rows))


def _int_kernel(rows: list[list[int]]) -> list[Fraction]:
    """One-dimensional kernel of an integer matrix via fraction-free
    (Bareiss) elimination; raises if the kernel dimension is not 1."""
    m = [row[:] for row in rows]
    n_rows, n_cols = len(m), len(m[0])
    pivots = []  # (row, col)
    rank = 0
    prev = 1
    for col in range(n_cols):
        sel = -1
        for r in range(rank, n_rows):
            if m[r][col] != 0:
                sel = r
                break
        if sel < 0:
            continue
        m[rank], m[sel] = m[sel], m[rank]
        piv = m[rank][col]
        for r in range(rank + 1, n_rows):
            factor = m[r][col]
            for c in range(col, n_cols):
                m[r][c] = (m[r][c] * piv - factor * m[rank][c]) // prev
        pivots.append((rank, col))
        prev = piv
        rank += 1
    free = [c for c in range(n_cols) if c not in {c for _, c in pivots}]
    if len(free) != 1:
        raise ValueError(f"kernel dimension is {len(free)}, expected 1 (chain reducible?)")
    x = [Fraction(0)] * n_cols
    x[free[0]] = Fraction(1)
    for r, c in reversed(pivots):
        s = Fraction(0)
        for c2 in range(c + 1, n_cols):
            if m[r][c2]:
                s += m[r][c2] * x[c2]
        x[c] = -s / m[r][c]
    return x


def stationary_exact(P: RationalMatrix) -> tuple[Fraction, ...]:
    """Exact stationary distribution of a row-stochastic matrix.

    Solves pi P = pi with sum(pi) = 1 by fraction-free elimination on the
    integer-cleared system; the result is verified against P before being
    returned and must be strictly positive.
    """
    if not P.is_row_stochastic():
        raise ValueError("matrix is not row-stochastic")
    n = P.n_rows
    # Rows of (P^T - I), with denominators cleared row by row.
    int_rows = []
    for i in range(n):
        row = [P.rows[j][i] - (1 if i == j else 0) for j in range(n)]
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        int_rows.append([int(x * lcm) for x in row])
    x = _int_kernel(int_rows)
    total = sum(x)
    if total == 0:
        raise ValueError("degenerate kernel")
    pi = tuple(v / total for v in x)
    if any(p <= 0 for p in pi):
        raise ValueError("stationary vector not strictly positive (chain not irreducible)")
    for j in range(n):
        if sum(pi[i] * P.rows[i][j] for i in range(n)) != pi[j]:
            raise RuntimeError("stationarity verification failed")
    return pi


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _canon(sites: tuple[int, ...]) -> tuple[int, ...]:
    return cyclic_canonical(RingWord(sites))[0].sites


def _quotient_stationary(reps, step_targets) -> dict[tuple, Fraction]:
    """Solve the chain on rotation classes and lift uniformly to words.

    reps: canonical class representatives; step_targets(rep) yields
    (probability, target word) pairs.  The lifted distribution is exact.
    """
    index = {r: i for i, r in enumerate(reps)}
    n = len(reps)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for i, rep in enumerate(reps):
        for p, target in step_targets(rep):
            rows[i][index[_canon(target)]] += p
    pi_q = stationary_exact(RationalMatrix(tuple(tuple(r) for r in rows)))
    out = {}
    for i, rep in enumerate(reps):
        orbit = {rep[k:] + rep[:k] for k in range(len(rep))}
        share = pi_q[i] / len(orbit)
        for w in orbit:
            out[w] = share
    return out


def _verify_stationary(dist: dict[tuple, Fraction], step_targets):
    flow: dict[tuple, Fraction] = {w: Fraction(0) for w in dist}
    for w, p in dist.items():
        for q, target in step_targets(w):
            flow[target] += p * q
    if flow != dist:
        raise RuntimeError("stationarity verification failed on the full chain")


def _particle_steps(K: int):
    p = Fraction(1, K)

    def targets(w: tuple[int, ...]):
        for site, label in enumerate(w):
            if label != VACANT:
                yield p, _step_tuple(w, site)

    return targets


def tasep_stationary(t: TypeVector) -> dict[tuple[int, ...], Fraction]:
    """Exact stationary distribution of the TASEP, solved on the rotation
    quotient and verified on the full chain."""
    states = enumerate_states(t)
    reps = sorted({_canon(s) for s in states})
    targets = _particle_steps(t.particles)
    dist = _quotient_stationary(reps, targets)
    _verify_stationary(dist, targets)
    return dist


def k_tasep_step(w: RingWord, S) -> RingWord:
    """Fire a TASEP bell at every position of S, deterministically.

    Within a run of cyclically consecutive positions the leftmost bell
    fires first; bells at non-adjacent positions commute, so the result
    does not depend on anything else.  When S is the whole ring no valid
    order exists and the run is cut at position 0 (documented convention).
    """
    sites = tuple(w)
    N = len(sites)
    S = set(S)
    if not S <= set(range(N)):
        raise ValueError("subset out of range")
    for pos in _bell_order(S, N):
        if sites[pos] != VACANT:
            sites = _step_tuple(sites, pos)
    return RingWord(sites)


def _bell_order(S: set, N: int) -> list[int]:
    if len(S) == N:
        return list(range(N))
    order = []
    starts = sorted(p for p in S if (p - 1) % N not in S)
    for start in starts:
        p = start
        while p in S:
            order.append(p)
            p = (p + 1) % N
    return order


def _subset_steps(N: int, k: int):
    total = comb(N, k)
    p = Fraction(1, total)

    def targets(w: tuple[int, ...]):
        for S in itertools.combinations(range(N), k):
            sites = w
            for pos in _bell_order(set(S), N):
                if sites[pos] != VACANT:
                    sites = _step_tuple(sites, pos)
            yield p, sites

    return targets


def k_tasep_stationary(t: TypeVector, k: int) -> dict[tuple[int, ...], Fraction]:
    """Stationary distribution of the k-subset chain.

    For k < N the dynamics commute with rotation and the quotient solver
    applies; k = N breaks rotation covariance (the forced cut), so that
    case is solved on the full state space.
    """
    if not 1 <= k <= t.N:
        raise ValueError(f"need 1 <= k <= {t.N}")
    states = enumerate_states(t)
    targets = _subset_steps(t.N, k)
    if k < t.N:
        reps = sorted({_canon(s) for s in states})
        dist = _quotient_stationary(reps, targets)
    else:
        index = {s: i for i, s in enumerate(states)}
        rows = [[Fraction(0)] * len(states) for _ in states]
        for i, s in enumerate(states):
            for p, target in targets(s):
                rows[i][index[target]] += p
        pi = stationary_exact(RationalMatrix(tuple(tuple(r) for r in rows)))
        dist = {s: pi[i] for i, s in enumerate(states)}
    _verify_stationary(dist, targets)
    return dist


def push_through_last_row(dist: dict[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
    """Apply the process of the last row to a distribution on words.

    A uniformly random set of as many boxes as there are particles is
    drawn, the word's labels claim them, and the relabelled word is the
    new state.  Used to check that the stationary distribution is fixed.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for w, prob in dist.items():
        N = len(w)
        sources = sorted((label, pos) for pos, label in enumerate(w) if label != VACANT)
        K = len(sources)
        share = prob / comb(N, K)
        for boxes in itertools.combinations(range(N), K):
            labels, _, _ = _claim_labels(sources, boxes, 0)
            sites = [VACANT] * N
            for pos, label in zip(boxes, labels):
                sites[pos] = label
            key = tuple(sites)
            out[key] = out.get(key, Fraction(0)) + share
    return out


def mc_stationary(t: TypeVector, burn_in: int, samples: int, seed: int, thin: int = 1):
    """Monte Carlo estimate of the stationary distribution.

    Runs a single chain, records every `thin`-th state after burn-in, and
    reports per-state frequencies with naive binomial standard errors.
    Reproducible for a fixed (seed, thin).
    """
    if samples < 1:
        raise ValueError("need samples >= 1")
    rng = random.Random(seed)
    state = enumerate_states(t)[0]
    K = t.particles
    N = t.N

    def advance(s):
        occupied = [i for i, x in enumerate(s) if x != VACANT]
        return _step_tuple(s, occupied[rng.randrange(K)])

    for _ in range(burn_in):
        state = advance(state)
    counts: dict[tuple, int] = {}
    for _ in range(samples):
        for _ in range(thin):
            state = advance(state)
        counts[state] = counts.get(state, 0) + 1
    out = {}
    for w, c in sorted(counts.items()):
        f = c / samples
        out[w] = {"freq": f, "stderr": (f * (1 - f) / samples) ** 0.5, "count": c}
    return out
