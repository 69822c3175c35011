"""Small builders for expected values written in basis labels."""

from fractions import Fraction

from borderrank.tensor import RankOnePoint, Tensor


def vec(space, factor, terms):
    """``{"x^1_2": 1, "x^2_1": -1/2}`` style dict to a dense vector."""
    out = [Fraction(0)] * space.dim(factor)
    for label, c in terms.items():
        f, n = space.parse_label(label)
        assert f == factor, label
        out[n] += Fraction(c)
    return out


def point(space, a, b, c):
    return RankOnePoint(vec(space, "A", a), vec(space, "B", b), vec(space, "C", c)).normalized()


def outer(space, a, b, c):
    return Tensor.outer(space, vec(space, "A", a), vec(space, "B", b), vec(space, "C", c))


def total(space, *parts):
    T = Tensor.zero(space)
    for p in parts:
        T = T + outer(space, *p)
    return T
