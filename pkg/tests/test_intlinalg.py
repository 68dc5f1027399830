import random

import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from isoschubert import intlinalg


def random_matrix(rng, m, k, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(k)] for _ in range(m)]


def sympy_invariants(a):
    d = smith_normal_form(Matrix(a), domain=ZZ)
    return [abs(int(d[i, i])) for i in range(min(d.shape)) if d[i, i] != 0]


@pytest.mark.parametrize("seed", range(40))
def test_smith_against_sympy(seed):
    rng = random.Random(seed)
    m, k = rng.randint(1, 5), rng.randint(1, 5)
    a = random_matrix(rng, m, k)
    if seed % 5 == 0 and m > 1:
        a[-1] = [2 * v for v in a[0]]  # force a rank drop
    assert intlinalg.smith_invariants(a) == sympy_invariants(a)


@pytest.mark.parametrize("seed", range(30))
def test_solve_integer(seed):
    rng = random.Random(100 + seed)
    m, k = rng.randint(1, 5), rng.randint(1, 5)
    a = random_matrix(rng, m, k, -3, 3)
    x0 = [rng.randint(-4, 4) for _ in range(k)]
    b = [sum(r[j] * x0[j] for j in range(k)) for r in a]
    x = intlinalg.solve_integer(a, b)
    assert x is not None
    assert [sum(r[j] * x[j] for j in range(k)) for r in a] == b


def test_solve_integer_no_solution():
    assert intlinalg.solve_integer([[2, 0], [0, 2]], [1, 0]) is None
    assert intlinalg.solve_integer([[1], [1]], [1, 2]) is None


@pytest.mark.parametrize("seed", range(20))
def test_determinant(seed):
    rng = random.Random(seed)
    k = rng.randint(1, 5)
    a = random_matrix(rng, k, k)
    d = int(Matrix(a).det())
    assert intlinalg.determinant(a) == d
    assert intlinalg.det_mod2(a) == d % 2
    if d:
        inv = intlinalg.inverse(a)
        prod = [[sum(a[i][t] * inv[t][j] for t in range(k)) for j in range(k)] for i in range(k)]
        assert prod == [[int(i == j) for j in range(k)] for i in range(k)]
