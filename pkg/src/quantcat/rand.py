"""Deterministic pseudo-randomness and instance generators.

The generator is splitmix64 (Steele/Lea/Vigna), fixed here by its two
constants so fuzz runs replay bit-for-bit on any platform:

    state += 0x9E3779B97F4B7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)
"""

from __future__ import annotations

import numpy as np

from .qcat import QCategory
from .qdist import QDistributor, compose, identity_dist, dist_join

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4B7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return (z ^ (z >> 31)) & _MASK

    def below(self, n: int) -> int:
        """Uniform in [0, n) by rejection, so results do not depend on n's
        binary length."""
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (_MASK // n) * n
        while True:
            v = self.next()
            if v < limit:
                return v % n

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def fork(self) -> "SplitMix64":
        return SplitMix64(self.next())


def random_relation(rng: SplitMix64, X: QCategory, Y: QCategory) -> QDistributor:
    """Uniform entrywise relation (not necessarily a distributor)."""
    Q = X.Q
    mat = np.zeros((X.n, Y.n), dtype=np.int32)
    for i in range(X.n):
        for j in range(Y.n):
            ids = Q.hom_ids[(int(X.types[i]), int(Y.types[j]))]
            mat[i, j] = ids[rng.below(len(ids))]
    return QDistributor(X, Y, mat, validated=False, name="r")


def random_distributor(rng: SplitMix64, X: QCategory, Y: QCategory) -> QDistributor:
    """b . r . a for a uniform relation r: always a distributor."""
    r = random_relation(rng, X, Y)
    out = compose(compose(identity_dist(X), r), identity_dist(Y))
    out.validated = True
    out.name = "phi"
    return out


def random_monoid(rng: SplitMix64, X: QCategory) -> QDistributor:
    """Reflexive transitive closure of (hom | r): a monoid in the
    distributor quantaloid by construction."""
    alpha = dist_join([identity_dist(X), random_relation(rng, X, X)])
    while True:
        step = dist_join([alpha, compose(alpha, alpha)])
        if np.array_equal(step.mat, alpha.mat):
            break
        alpha = step
    alpha.validated = True
    alpha.name = "alpha"
    return alpha
