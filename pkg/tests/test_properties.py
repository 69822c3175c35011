"""Property suites over randomly drawn small instances."""

from fractions import Fraction as F

from hypothesis import assume, given, strategies as st

from borderrank import linalg
from borderrank.arith import LaurentPoly
from borderrank.catalog import load_entry
from borderrank.catalog.model import BorderRankAlgorithm, RankOneCurve, expand_sum, generic_term_rank
from borderrank.complexity import BoundConfig, strassen_lower_bound
from borderrank.geometry import limit_plane
from borderrank.linalg import LinearSubspace
from borderrank.symmetry import KINDS, LieAlgebraSpec, apply_gl_to_algorithm, lie_act, plane_stabilizer
from borderrank.tensor import Tensor, TensorSpace, apply_gl, bclrs_tensor, mat_mul_tensor
from borderrank.verify import limit_points, verify_border_rank

small = st.integers(-4, 4)
nonzero = small.filter(bool)
rationals = st.builds(F, small, st.integers(1, 4))


@st.composite
def laurent(draw, lo=-3, hi=3, allow_zero=True):
    n = draw(st.integers(0 if allow_zero else 1, 4))
    coeffs = {draw(st.integers(lo, hi)): draw(rationals.filter(bool)) for _ in range(n)}
    p = LaurentPoly(coeffs)
    assume(allow_zero or not p.is_zero())
    return p


@given(laurent(allow_zero=False), laurent(allow_zero=False))
def test_valuation_is_additive(p, q):
    assert (p * q).valuation() == p.valuation() + q.valuation()


@given(laurent(), laurent(), rationals.filter(bool))
def test_ring_operations_commute_with_evaluation(p, q, x):
    assert (p * q).evaluate(x) == p.evaluate(x) * q.evaluate(x)
    assert (p + q).evaluate(x) == p.evaluate(x) + q.evaluate(x)
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


# ---------------------------------------------------------------------------
# expansion identity


@st.composite
def curve_vectors(draw, dim):
    vec = {}
    for n in range(dim):
        p = draw(laurent(lo=0, hi=2))
        if not p.is_zero():
            vec[n] = p
    assume(vec)
    return vec


@st.composite
def small_algorithms(draw, dims=(2, 2, 2), max_terms=4):
    sp = TensorSpace.plain(*dims)
    r = draw(st.integers(1, max_terms))
    terms = tuple(RankOneCurve(*(draw(curve_vectors(d)) for d in dims)) for _ in range(r))
    weights = tuple(draw(laurent(lo=-2, hi=1, allow_zero=False)) for _ in range(r))
    return BorderRankAlgorithm(sp, terms, weights, 0)


@given(small_algorithms(), rationals.filter(bool))
def test_expansion_matches_pointwise_evaluation(alg, t0):
    coeffs = expand_sum(alg)
    expanded = Tensor.zero(alg.space)
    for k, T in coeffs.items():
        expanded = expanded + T.scale(t0**k)
    direct = Tensor.zero(alg.space)
    for curve, w in zip(alg.terms, alg.weights):
        a, b, c = curve.evaluate(alg.space, t0)
        if any(a) and any(b) and any(c):
            direct = direct + Tensor.outer(alg.space, a, b, c).scale(w.evaluate(t0))
    assert expanded == direct


# ---------------------------------------------------------------------------
# GL invariance


def upper(a, b, c):
    return [[a, b], [0, c]]


def lower(a, b, c):
    return [[a, 0], [b, c]]


@st.composite
def bclrs_group_elements(draw):
    """Triples preserving the deleted x^1_1 slot: gU upper and gV lower triangular."""
    gU = upper(draw(nonzero), draw(small), draw(nonzero))
    gV = lower(draw(nonzero), draw(small), draw(nonzero))
    gW = [[draw(small) for _ in range(2)] for _ in range(2)]
    assume(gW[0][0] * gW[1][1] - gW[0][1] * gW[1][0] != 0)
    return gU, gV, gW


BCLR = load_entry("bclr")
BCLR_RAW = load_entry("bclr", errata=None)


@given(bclrs_group_elements())
def test_verification_status_is_gl_invariant(g):
    moved = apply_gl_to_algorithm(BCLR, *g)
    assert verify_border_rank(moved).passed
    broken = apply_gl_to_algorithm(BCLR_RAW, *g)
    rep = verify_border_rank(broken)
    assert not rep.passed
    assert rep.first_failure == 1 and rep.residual.nnz >= 1


T_BCLR = bclrs_tensor(2)
FAST = BoundConfig(trials=8)
BASE_BOUND = strassen_lower_bound(T_BCLR, FAST).bound


@given(bclrs_group_elements())
def test_strassen_bound_is_gl_invariant(g):
    assert strassen_lower_bound(apply_gl(T_BCLR, *g), FAST).bound == BASE_BOUND


# ---------------------------------------------------------------------------
# Lie algebra actions


M222 = mat_mul_tensor(2, 2, 2)


@st.composite
def planes(draw, space, max_dim=3):
    k = draw(st.integers(1, max_dim))
    vecs = []
    for _ in range(k):
        T = Tensor.zero(space)
        for _ in range(draw(st.integers(1, 2))):
            a = [draw(small) for _ in range(space.dims[0])]
            b = [draw(small) for _ in range(space.dims[1])]
            c = [draw(small) for _ in range(space.dims[2])]
            if any(a) and any(b) and any(c):
                T = T + Tensor.outer(space, a, b, c)
        vecs.append(T.vector())
    E = LinearSubspace.span(vecs, space.ambient_dim)
    assume(E.dim > 0)
    return E


kinds = st.sampled_from(KINDS)


@given(planes(M222.space), kinds, kinds, kinds)
def test_stabilizer_plus_orbit_is_algebra_dimension(E, k1, k2, k3):
    g = LieAlgebraSpec((k1, k2, k3), (2, 2, 2))
    rep = plane_stabilizer(E, M222.space, g)
    assert rep.stab_dim + rep.orbit_dim == g.dim
    # orbit dimension: rank of X -> (X e_i mod E), assembled independently
    tangent = []
    for X in g.basis:
        row = []
        for v in E.basis:
            row.extend(E.reduce(lie_act(X, Tensor.from_vector(M222.space, v)).vector()))
        tangent.append(row)
    assert rep.orbit_dim == (linalg.rank(tangent) if tangent else 0)
    for X in rep.kernel:
        for v in E.basis:
            assert E.contains(lie_act(X, Tensor.from_vector(M222.space, v)).vector())


@st.composite
def nilpotents(draw):
    """2x2 matrices with X^2 = 0."""
    a, b = draw(small), draw(small)
    return draw(st.sampled_from([upper(0, a, 0), lower(0, a, 0), [[a * b, -a * a], [b * b, -a * b]]]))


def _scaled(X, s):
    return [[1 + s * x if i == j else s * x for j, x in enumerate(row)] for i, row in enumerate(X)]


@given(nilpotents(), nilpotents(), nilpotents(), st.lists(small, min_size=64, max_size=64))
def test_lie_action_is_derivative_of_group_action(XU, XV, XW, entries):
    # with X^2 = 0, (I + sX)^-1 = I - sX, so s -> (I + sX) . T has degree <= 6 in s
    # and the seven-point central difference below is its exact slope at 0
    T = Tensor.from_vector(M222.space, entries)
    f = {s: apply_gl(T, _scaled(XU, s), _scaled(XV, s), _scaled(XW, s)) for s in (1, -1, 2, -2, 3, -3)}
    odd = {s: f[s] - f[-s] for s in (1, 2, 3)}
    slope = (odd[1].scale(45) - odd[2].scale(9) + odd[3]).scale(F(1, 60))
    assert slope == lie_act((XU, XV, XW), T)


# ---------------------------------------------------------------------------
# limit planes


@st.composite
def generic_algorithms(draw):
    """Curves a0 + t a1 with limit points that often coincide, so the reduction has work to do."""
    sp = TensorSpace.plain(2, 2, 2)
    r = draw(st.integers(1, 5))
    shared = [draw(st.lists(small, min_size=2, max_size=2).filter(any)) for _ in range(3)]
    terms = []
    for _ in range(r):
        vecs = []
        for f in range(3):
            base = shared[f] if draw(st.booleans()) else draw(st.lists(small, min_size=2, max_size=2))
            slope = draw(st.lists(small, min_size=2, max_size=2))
            vec = {n: LaurentPoly({0: base[n], 1: slope[n]}) for n in range(2)}
            vec = {n: p for n, p in vec.items() if not p.is_zero()}
            assume(vec)
            vecs.append(vec)
        terms.append(RankOneCurve(*vecs))
    one = LaurentPoly.const(1)
    alg = BorderRankAlgorithm(sp, tuple(terms), (one,) * r, 0)
    assume(generic_term_rank(alg) == r)
    return alg


@given(generic_algorithms())
def test_limit_plane_has_dimension_r(alg):
    E = limit_plane(alg)
    assert E.dim == alg.r
    for p in limit_points(alg):
        assert E.contains(p.tensor(alg.space).vector())
