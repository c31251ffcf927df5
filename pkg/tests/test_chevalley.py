import itertools
import random

import pytest

from chevjordan.chevalley import algebra


def _add(x, y, s=1):
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + s * v
    return {k: v for k, v in out.items() if v}


def jacobi(alg, i, j, k):
    x, y, z = {i: 1}, {j: 1}, {k: 1}
    b = alg.bracket
    tot = _add(_add(b(x, b(y, z)), b(y, b(z, x))), b(z, b(x, y)))
    return tot


@pytest.mark.parametrize("g", ["G2", "F4"])
def test_jacobi_exhaustive(g):
    alg = algebra(g)
    bad = [t for t in itertools.combinations(range(alg.dim), 3) if jacobi(alg, *t)]
    assert not bad


@pytest.mark.parametrize("g", ["E6", "E7", "E8"])
def test_jacobi_sampled(g):
    alg = algebra(g)
    rng = random.Random(g)
    for _ in range(3000):
        t = rng.sample(range(alg.dim), 3)
        assert not jacobi(alg, *t), t


@pytest.mark.parametrize("g", ["G2", "F4", "E6", "E7", "E8"])
def test_antisymmetry_and_integrality(g):
    alg = algebra(g)
    rng = random.Random(1)
    for _ in range(500):
        i, j = rng.sample(range(alg.dim), 2)
        xy = alg.bracket({i: 1}, {j: 1})
        yx = alg.bracket({j: 1}, {i: 1})
        assert _add(xy, yx) == {}
        assert all(isinstance(v, int) for v in xy.values())


def test_extraspecial_signs_positive():
    alg = algebra("E8")
    assert len(alg.extraspecial) == alg.rs.n_positive - alg.rank
    for xi, (a, b) in alg.extraspecial.items():
        assert tuple(x + y for x, y in zip(a, b)) == xi
        assert alg.structure_constant(a, b) > 0


def test_structure_constants_match_root_strings():
    # |N_{a,b}| = p + 1, p the largest integer with b - p a a root
    alg = algebra("G2")
    rs = alg.rs
    for a in rs.positive_roots:
        for b in rs.positive_roots:
            s = tuple(x + y for x, y in zip(a, b))
            if rs.is_root(s):
                p = 0
                while rs.is_root(tuple(y - (p + 1) * x for x, y in zip(a, b))):
                    p += 1
                assert abs(alg.structure_constant(a, b)) == p + 1


def test_sl2_triples():
    alg = algebra("F4")
    for i in range(1, 5):
        a = alg.rs.simple_root(i)
        h = alg.bracket(alg.e(a), alg.f(a))
        assert alg.bracket(h, alg.e(a)) == alg.e(a, 2)
