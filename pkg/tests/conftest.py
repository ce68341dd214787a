from __future__ import annotations

import random
from fractions import Fraction

import pytest

from hyperobs import DynamicsSpec, UniformHypergraph


@pytest.fixture
def triangle() -> UniformHypergraph:
    """Single hyperedge {1,2,3}: dx1 = x2 x3, dx2 = x1 x3, dx3 = x1 x2."""
    return UniformHypergraph(3, 3, [(1, 2, 3)])


@pytest.fixture
def triangle_dyn(triangle) -> DynamicsSpec:
    return DynamicsSpec(triangle)


def rational_point(n: int, rng: random.Random) -> list[Fraction]:
    """Small nonzero integer coordinates as exact rationals."""
    return [Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])) for _ in range(n)]


def int_point(n: int, rng: random.Random) -> list[int]:
    return [rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]) for _ in range(n)]


def random_uniform_hypergraph(
    n: int, k: int, rng: random.Random, density: float = 0.5
) -> UniformHypergraph:
    from itertools import combinations

    pool = list(combinations(range(1, n + 1), k))
    edges = [e for e in pool if rng.random() < density]
    if not edges:
        edges = [pool[rng.randrange(len(pool))]]
    return UniformHypergraph(n, k, edges)
