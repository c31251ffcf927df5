import random

import numpy as np
import pytest

from chevjordan.modules import MIN_DIMS, embedding_for, module_action


@pytest.mark.parametrize("g,dim", MIN_DIMS.items())
def test_minimal_dims(g, dim):
    assert module_action(g, "minimal").dim == dim


@pytest.mark.parametrize("g", ["G2", "F4", "E6", "E7"])
def test_module_law(g):
    """rho([x, y]) = rho(x) rho(y) - rho(y) rho(x), on random basis pairs."""
    ma = module_action(g, "minimal")
    alg = ma.algebra
    rng = random.Random(g)
    n = 1000 if g in ("G2", "F4") else 300
    mats = {}

    def rho(i):
        if i not in mats:
            mats[i] = ma.matrix_of({i: 1})
        return mats[i]

    for _ in range(n):
        i, j = rng.randrange(alg.dim), rng.randrange(alg.dim)
        lhs = ma.matrix_of(alg.bracket({i: 1}, {j: 1}))
        rhs = rho(i).dot(rho(j)) - rho(j).dot(rho(i))
        assert (lhs == rhs).all(), (i, j)


def test_module_law_random_elements():
    ma = module_action("F4", "minimal")
    alg = ma.algebra
    rng = random.Random(2)
    for _ in range(50):
        x = {rng.randrange(alg.dim): rng.randint(-2, 2) for _ in range(3)}
        y = {rng.randrange(alg.dim): rng.randint(-2, 2) for _ in range(3)}
        a, b = ma.matrix_of(x), ma.matrix_of(y)
        assert (ma.matrix_of(alg.bracket(x, y)) == a.dot(b) - b.dot(a)).all()


@pytest.mark.parametrize("g", ["G2", "F4", "E6", "E7"])
def test_embedding_is_homomorphism(g):
    emb = embedding_for(g)
    emb.check_homomorphism()


def test_fixed_vector_quotient():
    for g in ("G2", "F4"):
        ma = module_action(g, "minimal")
        assert ma.fixed_vector is not None
        assert len(ma.span_labels) == ma.dim + 1
        assert any(abs(x) == 1 for x in ma.fixed_vector)


def test_adjoint_is_ad():
    ma = module_action("G2", "adjoint")
    alg = ma.algebra
    m = ma.matrix_of({0: 1})
    for j in range(alg.dim):
        col = np.zeros(alg.dim, dtype=object)
        for k, v in alg.bracket({0: 1}, {j: 1}).items():
            col[k] = v
        assert (m[:, j] == col).all()


def test_simple_root_vector_rank_E6():
    ma = module_action("E6", "minimal")
    m = ma.matrix_of({0: 1})
    from chevjordan.linalg import rank_over_Q
    assert rank_over_Q(m) == 6
