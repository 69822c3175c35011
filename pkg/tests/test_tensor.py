from fractions import Fraction as F

import pytest

from borderrank.arith import MultiPoly

from borderrank.linalg import LinearSubspace, rank
from borderrank.tensor import (
    SpaceError,
    Tensor,
    TensorSpace,
    apply_gl,
    apply_symmetry,
    bclrs_tensor,
    flatten,
    flattening_matrix,
    mat_mul_tensor,
    multilinear_ranks,
    symbolic_dual,
    target_tensor,
    zeroed_matmul_tensor,
)


def unit(n, i):
    return [int(k == i) for k in range(n)]


def test_matmul_222_entries():
    M = mat_mul_tensor(2, 2, 2)
    assert M.nnz == 8
    assert set(M.vector()) == {0, 1}


def test_matmul_111_single_entry():
    M = mat_mul_tensor(1, 1, 1)
    assert dict(M.items()) == {(0, 0, 0): 1}
    assert M.space.label("A", 0) == "x^1_1"


def test_matmul_333_flattening_ranks():
    M = mat_mul_tensor(3, 3, 3)
    assert M.nnz == 27
    assert multilinear_ranks(M) == (9, 9, 9)


@pytest.mark.parametrize("m, nnz, dims", [(2, 6, (3, 4, 4)), (3, 10, (5, 4, 6))])
def test_bclrs_sizes(m, nnz, dims):
    T = bclrs_tensor(m)
    assert T.nnz == nnz
    assert T.space.dims == dims


def test_bclrs_rejects_small_m():
    with pytest.raises(ValueError):
        bclrs_tensor(1)


def test_bclrs_is_matmul_minus_deleted_slot():
    full = mat_mul_tensor(3, 2, 2)
    T = bclrs_tensor(3)
    dropped = [key for key, _ in full.items() if key[0] == 0]
    assert len(dropped) == 2
    assert full.nnz - len(dropped) == T.nnz


def test_target_ids():
    assert target_tensor("bclrs(2)") == bclrs_tensor(2)
    assert target_tensor("zeroed(3,2,2)") == bclrs_tensor(3)
    assert target_tensor("matmul(2, 2, 2)") == mat_mul_tensor(2, 2, 2)
    with pytest.raises(ValueError):
        target_tensor("bogus(1)")


def test_symbolic_contraction_block_matrix():
    m = 3
    T = bclrs_tensor(m)
    mat = flatten(T, "B", symbolic_dual(T.space, "B"))
    # rows: A-coordinates x^1_2, x^2_1, x^2_2, x^3_1, x^3_2; columns: the 2m C-coordinates
    cols = [list(c) for c in zip(*mat)]
    assert (len(cols), len(cols[0])) == (2 * m, 2 * m - 1)
    y = {lab: MultiPoly.var(lab) for lab in ("y^1_1", "y^1_2", "y^2_1", "y^2_2")}

    def nonzero(row):
        return [x for x in row if x]

    assert nonzero(mat[0]) == [y["y^2_1"], y["y^2_2"]]
    for r in (1, 3):
        assert nonzero(mat[r]) == [y["y^1_1"], y["y^1_2"]]
        assert nonzero(mat[r + 1]) == [y["y^2_1"], y["y^2_2"]]


def test_contraction_against_unit_dual():
    M = mat_mul_tensor(2, 2, 2)
    assert rank(flatten(M, "A", unit(4, 0))) == 2


def test_zero_dual_gives_zero_matrix():
    M = mat_mul_tensor(2, 2, 2)
    assert all(x == 0 for row in flatten(M, "A", [0] * 4) for x in row)


def test_dual_length_checked():
    with pytest.raises(SpaceError):
        flatten(mat_mul_tensor(2, 2, 2), "A", [1, 0])


def test_multilinear_ranks():
    assert multilinear_ranks(mat_mul_tensor(2, 2, 2)) == (4, 4, 4)
    sp = TensorSpace.plain(2, 3, 2)
    assert multilinear_ranks(Tensor.outer(sp, [1, 2], [0, 1, 3], [5, 0])) == (1, 1, 1)
    assert len(flattening_matrix(mat_mul_tensor(2, 2, 2), "A")) == 4


def test_bclrs4_honest_points_lie_on_plane_times_point_times_point():
    from borderrank.catalog import load_entry
    from borderrank.verify import limit_points

    alg = load_entry("bclrs4-p8-t0")
    pts = [limit_points(alg)[alg.term_position(k)] for k in (3, 5, 6, 10)]
    dims = [LinearSubspace.span([p.factors()[n] for p in pts]).dim for n in range(3)]
    assert dims == [3, 1, 1]
    labels = [alg.space.labels("A")[i] for i, x in enumerate(pts[0].factors()[0]) if x]
    assert set(labels) <= {"x^1_2", "x^2_1", "x^2_2"}


def test_identity_action_is_trivial():
    M = mat_mul_tensor(2, 3, 2)
    I2 = [[1, 0], [0, 1]]
    I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert apply_gl(M, I2, I3, I2) == M


def test_gl_action_preserves_matmul():
    M = mat_mul_tensor(2, 2, 2)
    g = [[2, 1], [1, 1]]
    h = [[1, F(1, 3)], [0, 1]]
    assert apply_gl(M, g, h, g) == M


def test_singular_matrix_rejected():
    M = mat_mul_tensor(2, 2, 2)
    with pytest.raises(ValueError):
        apply_gl(M, [[1, 1], [1, 1]], [[1, 0], [0, 1]], [[1, 0], [0, 1]])


def test_gl_action_must_preserve_deleted_slot():
    T = bclrs_tensor(2)
    I = [[1, 0], [0, 1]]
    with pytest.raises(SpaceError):
        apply_gl(T, [[1, 1], [1, 2]], I, I)


def test_cyclic_symmetry():
    assert apply_symmetry(mat_mul_tensor(2, 3, 4), "cyclic") == mat_mul_tensor(3, 4, 2)


def test_transpose_cycle_is_involution():
    T = bclrs_tensor(3)
    twice = apply_symmetry(apply_symmetry(T, "transpose-cycle"), "transpose-cycle")
    assert twice == T
    assert apply_symmetry(mat_mul_tensor(2, 3, 4), "transpose-cycle") == mat_mul_tensor(3, 2, 4)


def test_symmetry_needs_structure():
    T = Tensor.outer(TensorSpace.plain(2, 2, 2), [1, 0], [1, 0], [1, 0])
    with pytest.raises(SpaceError):
        apply_symmetry(T, "cyclic")


def test_json_roundtrip():
    T = bclrs_tensor(2).scale(F(-7, 25))
    assert Tensor.from_json(T.space, T.to_json()) == T
    assert TensorSpace.from_json(T.space.to_json()) == T.space


def test_labels():
    sp = bclrs_tensor(2).space
    assert sp.labels("A") == ["x^1_2", "x^2_1", "x^2_2"]
    assert sp.parse_label("z^2_1") == ("C", sp.coord_index("C", (1, 0)))
    assert sp.coord_index("A", (0, 0)) is None
