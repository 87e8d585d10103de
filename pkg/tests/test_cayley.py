import random
from itertools import product as iproduct
from math import comb

import pytest

from steklov import cayley, groups

Z1, Z2, Z3 = groups.lattice(1), groups.lattice(2), groups.lattice(3)
H3 = groups.heisenberg()


def lattice_ball_enumeration(d, n):
    """Independent oracle: all points of Z^d with l1 norm <= n."""
    return {p for p in iproduct(range(-n, n + 1), repeat=d) if sum(abs(c) for c in p) <= n}


def delannoy_count(d, n):
    return sum(2**k * comb(d, k) * comb(n, k) for k in range(d + 1))


def dfs_word_enumeration(spec, n):
    """Independent oracle: depth-limited DFS over generator words."""
    gens = groups.standard_generators(spec)
    seen = {groups.identity(spec)}

    def walk(x, depth):
        if depth == 0:
            return
        for s in gens:
            y = groups.multiply(spec, x, s)
            seen.add(y)
            walk(y, depth - 1)

    walk(groups.identity(spec), n)
    return seen


def test_ball_radius_zero():
    ball = cayley.generate_ball(Z2, 0)
    assert ball.n_vertices == 1
    assert ball.n_edges == 0
    assert ball.vertices[0] == (0, 0)


def test_small_ball_counts():
    assert cayley.generate_ball(Z2, 1).n_vertices == 5
    assert cayley.generate_ball(H3, 1).n_vertices == 5


@pytest.mark.parametrize("d", [1, 2, 3])
def test_lattice_ball_matches_enumeration_oracle(d):
    spec = groups.lattice(d)
    n = 6 if d < 3 else 4
    ball = cayley.generate_ball(spec, n)
    assert set(ball.vertices) == lattice_ball_enumeration(d, n)


@pytest.mark.parametrize("d", [2, 3])
def test_growth_sandwich_closed_form(d):
    table = cayley.growth_table(groups.lattice(d), 10 if d == 2 else 8)
    for n, count in zip(table.radii, table.counts):
        assert count == delannoy_count(d, n)


def test_growth_table_examples():
    assert cayley.growth_table(Z2, 3).counts == [1, 5, 13, 25]
    assert cayley.growth_table(Z1, 3).counts == [1, 3, 5, 7]


def test_heisenberg_ball_matches_dfs_oracle():
    for n in range(1, 4):
        ball = cayley.generate_ball(H3, n)
        assert set(ball.vertices) == dfs_word_enumeration(H3, n)
    # hand-verified count at radius 2
    assert cayley.growth_table(H3, 2).counts == [1, 5, 17]


def test_growth_counts_strictly_increasing():
    for spec in (Z2, H3):
        table = cayley.growth_table(spec, 6)
        assert all(a < b for a, b in zip(table.counts, table.counts[1:]))


def test_estimate_growth_order():
    assert 1.8 <= cayley.estimate_growth_order(cayley.growth_table(Z2, 20), 4) <= 2.2
    assert 2.8 <= cayley.estimate_growth_order(cayley.growth_table(Z3, 14), 4) <= 3.2
    assert 3.5 <= cayley.estimate_growth_order(cayley.growth_table(H3, 12), 4) <= 4.5


def test_estimate_growth_order_needs_points():
    with pytest.raises(ValueError):
        cayley.estimate_growth_order(cayley.growth_table(Z2, 4), 2)


def test_neighbors():
    assert cayley.neighbors(Z2, (0, 0)) == [(-1, 0), (0, -1), (0, 1), (1, 0)]
    assert set(cayley.neighbors(H3, (1, 0, 0))) == {(2, 0, 0), (0, 0, 0), (1, 1, 1), (1, -1, -1)}
    assert cayley.neighbors(Z1, (5,)) == [(4,), (6,)]


@pytest.mark.parametrize("spec", [Z2, Z3, H3], ids=lambda s: s.describe())
def test_neighbor_count_equals_generator_count(spec):
    rng = random.Random(2)
    n_gens = len(groups.standard_generators(spec))
    for _ in range(100):
        x = tuple(rng.randint(-6, 6) for _ in range(spec.dimension))
        assert len(cayley.neighbors(spec, x)) == n_gens


def test_ball_structure_invariants():
    for spec in (Z2, H3):
        ball = cayley.generate_ball(spec, 4)
        n_gens = len(groups.standard_generators(spec))
        assert ball.dist_from_e[0] == 0
        for i, adj in enumerate(ball.adjacency):
            assert i not in adj  # no loops
            assert len(adj) <= n_gens
            if ball.dist_from_e[i] < ball.radius:
                assert len(adj) == n_gens  # interior regularity
            for j in adj:
                assert i in ball.adjacency[j]  # symmetry
                assert abs(ball.dist_from_e[i] - ball.dist_from_e[j]) <= 1
            assert ball.dist_from_e[i] <= ball.radius


def test_ball_ordering_layered_lexicographic():
    ball = cayley.generate_ball(Z2, 2)
    dists = ball.dist_from_e
    assert dists == sorted(dists)
    for layer in range(3):
        verts = [v for v, d in zip(ball.vertices, dists) if d == layer]
        assert verts == sorted(verts)


def test_ball_determinism():
    a = cayley.generate_ball(H3, 3)
    b = cayley.generate_ball(H3, 3)
    assert a.vertices == b.vertices
    assert a.adjacency == b.adjacency


def test_ball_cap():
    with pytest.raises(cayley.BallCapExceededError):
        cayley.generate_ball(Z2, 10, ball_cap=50)


def test_growth_csv():
    csv = cayley.growth_table(Z1, 2).to_csv()
    assert csv == "n,V\n0,1\n1,3\n2,5\n"
