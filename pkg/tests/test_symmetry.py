import random
from fractions import Fraction as F

import pytest

from borderrank.catalog import load_entry
from borderrank.complexity import glue
from borderrank.geometry import limit_plane
from borderrank.linalg import LinearSubspace
from borderrank.symmetry import (
    LieAlgebraSpec,
    apply_gl_to_algorithm,
    check_discrete_symmetry,
    is_diagonal,
    lie_act,
    parse_symmetry,
    plane_stabilizer,
    plane_stabilizer_dim,
    tensor_stabilizer_dim,
    transform_algorithm,
)
from borderrank.tensor import SpaceError, Tensor, TensorSpace, apply_gl, bclrs_tensor, mat_mul_tensor
from borderrank.verify import verify_border_rank


def algebra(text, T):
    return LieAlgebraSpec.for_space(text, T.space)


@pytest.mark.parametrize("kinds, dim", [("gl:gl:gl", 12), ("sl:sl:sl", 9), ("t:t:t", 3), ("tgl:0:sl", 5), ("gu:t:sl", 5)])
def test_algebra_dimensions(kinds, dim):
    assert LieAlgebraSpec.parse(kinds, (2, 2, 2)).dim == dim


def test_gu_block_structure():
    g = LieAlgebraSpec.parse("gu:0:0", (3, 2, 2))
    assert g.dim == 4  # two off-diagonal units in the lower block plus two traceless diagonals
    for XU, _, _ in g.basis:
        assert XU[0][1] == XU[0][2] == XU[1][0] == XU[2][0] == 0
        assert sum(XU[i][i] for i in range(3)) == 0


def test_bad_algebra_text():
    with pytest.raises(ValueError):
        LieAlgebraSpec.parse("sl:sl", (2, 2, 2))
    with pytest.raises(ValueError):
        LieAlgebraSpec.parse("sl:so:sl", (2, 2, 2))


def test_sl_annihilates_matmul():
    M = mat_mul_tensor(2, 2, 2)
    for X in algebra("sl:sl:sl", M).basis:
        assert not lie_act(X, M)


def test_scalars_act_trivially():
    # a scalar in U acts by -1 on A and +1 on C; the two cancel on every tensor
    T = bclrs_tensor(2)
    I, Z = [[1, 0], [0, 1]], [[0, 0], [0, 0]]
    for X in ((I, Z, Z), (Z, I, Z), (Z, Z, I), (I, [[-1, 0], [0, -1]], Z)):
        assert not lie_act(X, T)


def test_diagonal_acts_trivially_but_nilpotent_does_not():
    # x^i_j⊗y^j_k⊗z^k_i has weight (-u_i + v_j) + (-v_j + w_k) + (-w_k + u_i) = 0
    T = bclrs_tensor(2)
    X = ([[3, 0], [0, -1]], [[2, 0], [0, 5]], [[-4, 0], [0, 1]])
    assert not lie_act(X, T)
    Z = [[0, 0], [0, 0]]
    # the whole of sl(W) fixes T, but it moves a single matrix-multiplication term
    assert not lie_act((Z, Z, [[0, 0], [1, 0]]), T)
    p = Tensor.outer(T.space, [0, 1, 0], [1, 0, 0, 0], [1, 0, 0, 0])
    assert lie_act((Z, Z, [[0, 0], [1, 0]]), p)


def test_deleted_slot_must_be_preserved():
    T = bclrs_tensor(2)
    Z = [[0, 0], [0, 0]]
    with pytest.raises(SpaceError):
        lie_act(([[0, 0], [1, 0]], Z, Z), T)


def test_matmul_stabilizers():
    M = mat_mul_tensor(2, 2, 2)
    assert tensor_stabilizer_dim(M, algebra("sl:sl:sl", M)) == 9
    # all three scalar directions are in the kernel of the induced action
    assert tensor_stabilizer_dim(M, algebra("gl:gl:gl", M)) == 12
    assert tensor_stabilizer_dim(M, algebra("tgl:tgl:tgl", M)) == 6


def _random_tensor(dims, seed):
    rng = random.Random(seed)
    sp = TensorSpace.plain(*dims)
    return Tensor.from_vector(sp, [rng.randint(-9, 9) for _ in range(sp.ambient_dim)])


def test_generic_stabilizers_on_plain_spaces():
    # in C^2⊗C^2⊗C^2 a generic tensor is a1⊗b1⊗c1 + a2⊗b2⊗c2 up to GL, whose sl-stabilizer
    # is the diagonal triples with a + b + c = 0 in both slots
    sp = TensorSpace.plain(2, 2, 2)
    diag = Tensor.outer(sp, [1, 0], [1, 0], [1, 0]) + Tensor.outer(sp, [0, 1], [0, 1], [0, 1])
    g = LieAlgebraSpec.for_space("sl:sl:sl", sp)
    assert tensor_stabilizer_dim(diag, g) == 2
    for seed in range(3):
        assert tensor_stabilizer_dim(_random_tensor((2, 2, 2), seed), g) == 2
    T = _random_tensor((3, 3, 3), 1)
    assert tensor_stabilizer_dim(T, LieAlgebraSpec.for_space("sl:sl:sl", T.space)) == 0


def test_algebra_must_match_space():
    with pytest.raises(SpaceError):
        tensor_stabilizer_dim(bclrs_tensor(2), LieAlgebraSpec.parse("sl:sl:sl", (3, 2, 2)))


def test_ambient_plane_is_fixed(bclr):
    E = LinearSubspace.whole(bclr.space.ambient_dim)
    g = algebra("gu:t:sl", bclrs_tensor(2))
    assert plane_stabilizer_dim(E, bclr.space, g) == (g.dim, 0)


def test_glued_plane_orbit(bclr):
    alg = glue(bclr, bclr).algorithm
    rep = plane_stabilizer(limit_plane(alg), alg.space, LieAlgebraSpec.for_space("sl:sl:sl", alg.space))
    assert (rep.stab_dim, rep.orbit_dim) == (4, 10)
    assert rep.kernel_diagonal
    assert rep.to_dict()["stabDim"] == 4


def test_bclr_plane_stabilizer(bclr):
    # the limit plane is also fixed by the W-nilpotent that keeps z^2_1 and z^2_2 apart
    rep = plane_stabilizer(limit_plane(bclr), bclr.space, algebra("gu:t:sl", bclrs_tensor(2)))
    assert (rep.stab_dim, rep.orbit_dim) == (4, 1)
    assert not rep.kernel_diagonal
    nondiag = [X for X in rep.kernel if not is_diagonal(X)]
    assert len(nondiag) == 1 and nondiag[0][2] == [[0, 1], [0, 0]]


def test_bclr_plane_stabilizer_against_group(bclr):
    E = limit_plane(bclr)
    I = [[1, 0], [0, 1]]

    def moved(gW):
        return LinearSubspace.span(
            [apply_gl(Tensor.from_vector(bclr.space, v), I, I, gW).vector() for v in E.basis], E.ambient
        )

    assert moved([[1, 1], [0, 1]]) == E
    assert moved([[1, 0], [1, 1]]) != E


def test_bclr_z2_symmetry(bclr):
    steps = parse_symmetry("transpose-cycle,swap:W", bclr.space)
    rep = check_discrete_symmetry(bclr, steps, groups=[["p1", "p2"], ["p3", "p4"], ["p5"]])
    assert rep.level == "curve"
    assert rep.fixed_terms() == ["p5"]
    assert (("p1", "p2"), ("p3", "p4")) in rep.group_swaps()
    assert rep.fixed_groups() == [("p5",)]
    assert all(g.level == "exact" for g in rep.groups)


def test_identity_symmetry(bclr):
    rep = check_discrete_symmetry(bclr, [])
    assert rep.permutation == tuple(range(5))
    assert rep.level == "curve"


def test_m422_u_permutation(m422):
    steps = parse_symmetry("perm:U:3-4-1-2", m422.space)
    groups = [[1, 2, 3, 4, 5], [6, 7, 8, 9], [10, 11, 12, 13]]
    rep = check_discrete_symmetry(m422, steps, groups=groups)
    assert rep.level == "line"
    S, T = ("p6", "p7", "p8", "p9"), ("p10", "p11", "p12", "p13")
    assert set(rep.group_swaps()) == {(S, T), (T, S)}
    assert rep.fixed_groups() == [("p1", "p2", "p3", "p4", "p5")]
    tags = {m.members: m.image_members for m in rep.line_map}
    assert tags[("p2", "p5")] == ("p2", "p5")
    assert tags[("p3", "p4")] == ("p3", "p4")
    assert tags[("p6", "p7")] == ("p10", "p11")
    assert tags[("p8", "p9")] == ("p12", "p13")


def test_symmetry_parse_errors(bclr):
    with pytest.raises(ValueError):
        parse_symmetry("rotate", bclr.space)
    with pytest.raises(ValueError):
        parse_symmetry("perm:U:1-1", bclr.space)


def test_u_permutation_must_preserve_deleted_slot(bclr):
    with pytest.raises(SpaceError):
        transform_algorithm(bclr, parse_symmetry("perm:U:2-1", bclr.space))


def test_gl_transformed_algorithm_still_verifies(as3):
    gU = [[1, 0, 0], [0, 2, 1], [0, 1, 1]]
    gV = [[3, 0], [0, F(1, 2)]]
    gW = [[1, 1], [1, 2]]
    moved = apply_gl_to_algorithm(as3, gU, gV, gW)
    assert moved.target_value() == apply_gl(bclrs_tensor(3), gU, gV, gW)
    assert verify_border_rank(moved).passed
