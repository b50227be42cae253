"""Integer matrix normal forms and lattice arithmetic."""

import random

from ttsupport.smith import (
    identity,
    kernel_basis,
    lattice_basis,
    mat_mul,
    quotient_invariants,
    smith_normal_form,
    solve_int,
)


def _random_matrix(rng, rows, cols, bound=50):
    return [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]


def test_normal_form_postconditions_on_random_matrices():
    rng = random.Random(7)
    for _ in range(200):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        a = _random_matrix(rng, rows, cols)
        d, u, v = smith_normal_form(a)
        assert mat_mul(mat_mul(u, a), v) == d
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag) - 1):
            if diag[i] == 0:
                assert diag[i + 1] == 0
            else:
                assert diag[i + 1] % diag[i] == 0
        for i in range(rows):
            for j in range(cols):
                if i != j:
                    assert d[i][j] == 0


def test_normal_form_fixed_oracle():
    # [[2,4],[6,8]] has invariant factors 2 and 4 (det = -8, gcd = 2)
    d, _u, _v = smith_normal_form([[2, 4], [6, 8]])
    assert [d[0][0], d[1][1]] == [2, 4]


def test_kernel_basis_spans_the_kernel():
    a = [[1, 2, 3], [2, 4, 6]]
    basis = kernel_basis(a, 3)
    assert len(basis) == 2
    for vec in basis:
        assert all(sum(row[j] * vec[j] for j in range(3)) == 0 for row in a)


def test_solve_int_finds_integer_preimages():
    a = [[2, 0], [0, 3]]
    sol = solve_int(a, [[4, 9]])
    assert sol is not None
    assert solve_int(a, [[1, 0]]) is None


def test_quotient_invariants_of_standard_embeddings():
    # Z^2 / (2Z x 3Z) = Z/2 + Z/3
    k = [[1, 0], [0, 1]]
    l = [[2, 0], [0, 3]]
    factors, rank = quotient_invariants(k, l)
    assert rank == 0
    assert sorted(factors) == [2, 3] or factors == (6,)
    # Z^2 / Z(1,1): free of rank 1
    factors, rank = quotient_invariants(identity(2), [[1, 1]])
    assert factors == () and rank == 1
