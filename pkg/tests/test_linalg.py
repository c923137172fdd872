"""Elimination kernels checked against hand computations and independent oracles.

The hand-computed cases pin the *canonical* outputs (pivot order, free-variable
normalization), not just mathematical correctness.  The sympy cross-check works
because reduced row echelon form is unique, so any two correct implementations
must agree entry for entry.  Over small prime fields we can afford to enumerate
every vector and compare against the honest kernel.
"""

from fractions import Fraction
import itertools
import random

import pytest
import sympy

from abcat.errors import ShapeError
from abcat.fields import RATIONALS, prime_field
from abcat.linalg import (
    Matrix,
    left_nullspace_basis,
    nullspace_basis,
    rank,
    rref,
    solve,
    solve_matrix,
    solve_with_column_order,
)

Q = RATIONALS
GF2 = prime_field(2)
GF3 = prime_field(3)
GF7 = prime_field(7)


def qmat(rows, cols=None):
    return Matrix.from_int_rows(Q, rows, cols)


def gfmat(field, rows, cols=None):
    return Matrix.from_int_rows(field, rows, cols)


# -- shape discipline -------------------------------------------------------


def test_entry_count_must_match_shape():
    with pytest.raises(ShapeError):
        Matrix(2, 2, (Fraction(1),) * 3, Q)


def test_negative_shape_rejected():
    with pytest.raises(ShapeError):
        Matrix(-1, 2, (), Q)


def test_foreign_entries_rejected():
    with pytest.raises(ShapeError):
        Matrix(1, 1, (1,), Q)  # plain int is not a canonical rational scalar


def test_zero_row_and_zero_column_shapes():
    a = Matrix.zeros(Q, 0, 3)
    b = Matrix.zeros(Q, 3, 0)
    assert (a @ b).rows == 0 and (a @ b).cols == 0
    assert (b @ a).rows == 3 and (b @ a).cols == 3
    assert (b @ a).is_zero
    assert rank(a) == 0 and rank(b) == 0
    # kernel of a 0x3 map is everything, cokernel of a 3x0 map is everything
    assert nullspace_basis(a) == Matrix.identity(Q, 3)
    assert left_nullspace_basis(b) == Matrix.identity(Q, 3)


def test_hstack_vstack_shape_errors():
    with pytest.raises(ShapeError):
        qmat([[1]]).hstack(qmat([[1], [2]]))
    with pytest.raises(ShapeError):
        qmat([[1]]).vstack(qmat([[1, 2]]))


# -- hand-pinned eliminations ----------------------------------------------


def test_rref_rank_one_rational():
    # [[2,4],[1,2]] -> scale row 0 by 1/2, kill row 1
    r, pivots, rk = rref(qmat([[2, 4], [1, 2]]))
    assert r == qmat([[1, 2], [0, 0]])
    assert pivots == (0,)
    assert rk == 1


def test_rref_needs_row_swap():
    r, pivots, rk = rref(qmat([[0, 2], [3, 0]]))
    assert r == Matrix.identity(Q, 2)
    assert pivots == (0, 1)
    assert rk == 2


def test_rref_idempotent_on_fixed_case():
    m = qmat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    r1 = rref(m)[0]
    assert rref(r1)[0] == r1
    assert rank(m) == 2


def test_rref_gf7_rank_one():
    # det([[3,1],[1,5]]) = 14 = 0 mod 7; 3^-1 = 5 mod 7
    r, pivots, rk = rref(gfmat(GF7, [[3, 1], [1, 5]]))
    assert r == gfmat(GF7, [[1, 5], [0, 0]])
    assert pivots == (0,)
    assert rk == 1


def test_nullspace_canonical_normalization():
    # free column gets coefficient 1, pivots solved back
    n = nullspace_basis(qmat([[1, 1]], cols=2))
    assert n == qmat([[-1], [1]])
    n2 = nullspace_basis(qmat([[1, 2], [2, 4]]))
    assert n2 == qmat([[-2], [1]])


def test_nullspace_of_injective_map_is_empty():
    n = nullspace_basis(qmat([[1], [0]], cols=1))
    assert n.rows == 1 and n.cols == 0


def test_nullspace_gf7():
    n = nullspace_basis(gfmat(GF7, [[3, 1], [1, 5]]))
    # x0 = -5 x1 = 2 x1
    assert n == gfmat(GF7, [[2], [1]])


def test_left_nullspace_rows_in_rref_form():
    ln = left_nullspace_basis(qmat([[1, 2], [2, 4]]))
    assert ln.rows == 1 and ln.cols == 2
    assert ln.entry(0, 0) == Fraction(1)
    assert ln.entry(0, 1) == Fraction(-1, 2)
    ln2 = left_nullspace_basis(qmat([[1], [1]], cols=1))
    assert ln2 == qmat([[1, -1]])


def test_solve_zeroes_free_variables():
    x = solve(qmat([[1, 1]], cols=2), qmat([[2]], cols=1))
    assert x == qmat([[2], [0]])


def test_solve_inconsistent_returns_none():
    assert solve(qmat([[1], [0]], cols=1), qmat([[0], [1]], cols=1)) is None
    assert solve(qmat([[1, 2], [2, 4]]), qmat([[1], [1]], cols=1)) is None


def test_solve_matrix_multiple_columns():
    m = qmat([[1, 0], [0, 1], [1, 1]])
    b = m @ qmat([[3, -1], [2, 5]])
    x = solve_matrix(m, b)
    assert x is not None and m @ x == b


def test_solve_with_column_order_prefers_listed_columns():
    m = qmat([[1, 1]], cols=2)
    b = qmat([[2]], cols=1)
    assert solve_with_column_order(m, b, (0, 1)) == qmat([[2], [0]])
    assert solve_with_column_order(m, b, (1, 0)) == qmat([[0], [2]])


def test_solve_rejects_wide_rhs():
    with pytest.raises(ShapeError):
        solve(qmat([[1]]), qmat([[1, 2]]))


# -- independent oracles -----------------------------------------------------


def _random_qmat(rng, rows, cols):
    ents = [Fraction(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
            for _ in range(rows * cols)]
    return Matrix(rows, cols, tuple(ents), Q)


def test_rref_matches_sympy_over_rationals():
    rng = random.Random(20240817)
    for _ in range(120):
        rows = rng.randint(0, 5)
        cols = rng.randint(0, 5)
        m = _random_qmat(rng, rows, cols)
        got, pivots, rk = rref(m)
        sm = sympy.Matrix(rows, cols, [sympy.Rational(e) for e in m.entries])
        sref, spivots = sm.rref()
        assert pivots == spivots
        assert rk == len(spivots)
        flat = [Fraction(int(v.p), int(v.q)) for v in sref]
        assert list(got.entries) == flat


def test_nullspace_columns_annihilated_and_complete_sympy():
    rng = random.Random(99)
    for _ in range(60):
        m = _random_qmat(rng, rng.randint(1, 4), rng.randint(1, 4))
        n = nullspace_basis(m)
        assert (m @ n).is_zero
        sm = sympy.Matrix(m.rows, m.cols, [sympy.Rational(e) for e in m.entries])
        assert n.cols == m.cols - sm.rank()
        assert rank(n) == n.cols


def _brute_kernel(m):
    p = m.field.p
    vecs = []
    for tup in itertools.product(range(p), repeat=m.cols):
        x = Matrix.from_int_rows(m.field, [[v] for v in tup], cols=1)
        if (m @ x).is_zero:
            vecs.append(tup)
    return vecs


@pytest.mark.parametrize("field", [GF2, GF3])
def test_nullspace_matches_brute_force_enumeration(field):
    rng = random.Random(7 * field.p)
    for _ in range(40):
        rows = rng.randint(0, 3)
        cols = rng.randint(0, 3)
        m = Matrix.from_int_rows(
            field,
            [[rng.randrange(field.p) for _ in range(cols)] for _ in range(rows)],
            cols,
        )
        n = nullspace_basis(m)
        kernel = _brute_kernel(m)
        assert len(kernel) == field.p ** n.cols  # basis spans: count matches
        assert rank(n) == n.cols  # and is independent
        for j in range(n.cols):
            col = tuple(n.entry(i, j).value for i in range(n.rows))
            assert col in kernel


def test_left_nullspace_kills_rows_randomized():
    rng = random.Random(5)
    for _ in range(60):
        m = _random_qmat(rng, rng.randint(0, 4), rng.randint(0, 4))
        ln = left_nullspace_basis(m)
        assert (ln @ m).is_zero
        assert ln.rows == m.rows - rank(m)
        # rows already in reduced echelon form: rref is a no-op
        assert rref(ln)[0] == ln


def test_solve_agrees_with_membership_randomized():
    rng = random.Random(11)
    hits = 0
    for _ in range(120):
        m = _random_qmat(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = _random_qmat(rng, m.rows, 1)
        x = solve(m, b)
        sm = sympy.Matrix(m.rows, m.cols, [sympy.Rational(e) for e in m.entries])
        sb = sympy.Matrix(m.rows, 1, [sympy.Rational(e) for e in b.entries])
        solvable = sm.rank() == sm.row_join(sb).rank()
        assert (x is not None) == solvable
        if x is not None:
            hits += 1
            assert m @ x == b
    assert hits > 10  # the loop must exercise both branches


def test_matmul_associativity_spot_check():
    rng = random.Random(3)
    for _ in range(40):
        a = _random_qmat(rng, rng.randint(0, 3), rng.randint(0, 3))
        b = _random_qmat(rng, a.cols, rng.randint(0, 3))
        c = _random_qmat(rng, b.cols, rng.randint(0, 3))
        assert (a @ b) @ c == a @ (b @ c)


def test_transpose_involution_and_product_rule():
    a = qmat([[1, 2], [3, 4], [5, 6]])
    b = qmat([[1, 0, 2], [0, 1, 1]])
    assert a.transpose().transpose() == a
    assert (a @ b).transpose() == b.transpose() @ a.transpose()
