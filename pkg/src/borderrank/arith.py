"""Exact scalar and polynomial arithmetic.

Scalars are :class:`fractions.Fraction`.  Two sparse polynomial types are
provided:

* :class:`LaurentPoly` -- one formal variable ``t``, integer (possibly
  negative) exponents.  ``{-6: 1, 0: 1}`` is ``t^-6 + 1``.
* :class:`MultiPoly` -- several named parameters (``s``, ``t``, ``sigma``,
  ``tau``, ...), non-negative exponents.

Both store only nonzero coefficients, so equality is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Union

Rational = Fraction
Scalar = Union[int, Fraction]


def rational(value) -> Fraction:
    """Coerce ``value`` to a Fraction; strings like ``"-7/25"`` are accepted."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except ValueError:
            raise ValueError(f"malformed rational {value!r}") from None
    if isinstance(value, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"`` or ``"p"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class LaurentPoly:
    """Finitely supported map ``exponent -> Fraction`` in one variable ``t``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | None = None):
        c = {}
        if coeffs:
            for k, v in coeffs.items():
                v = rational(v)
                if v:
                    c[int(k)] = v
        self._c = dict(sorted(c.items()))
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._c = dict(sorted(c.items()))
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw({})

    @classmethod
    def const(cls, value: Scalar) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def monomial(cls, exponent: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls({1: 1})

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "LaurentPoly":
        """Build from ``[[exponent, "p/q"], ...]``; repeated exponents add."""
        c: dict[int, Fraction] = {}
        for pair in pairs:
            k, v = pair
            if isinstance(k, bool) or not isinstance(k, int):
                raise ValueError(f"exponent must be an integer, got {k!r}")
            c[k] = c.get(k, Fraction(0)) + rational(v)
        return cls(c)

    def to_pairs(self) -> list:
        return [[k, format_rational(v)] for k, v in self._c.items()]

    # -- inspection ---------------------------------------------------------
    def items(self):
        return self._c.items()

    def exponents(self) -> list[int]:
        return list(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def valuation(self) -> float | int:
        """Smallest exponent with nonzero coefficient; ``math.inf`` for zero."""
        if not self._c:
            return math.inf
        return next(iter(self._c))

    def degree(self) -> float | int:
        if not self._c:
            return -math.inf
        return next(reversed(self._c))

    def coefficient(self, k: int) -> Fraction:
        return self._c.get(k, Fraction(0))

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            s = c.get(k, 0) + v
            if s:
                c[k] = s
            else:
                c.pop(k, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "LaurentPoly":
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly":
        return (-self) + other

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return LaurentPoly.zero()
            return LaurentPoly._raw({k: v * other for k, v in self._c.items()})
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        c: dict[int, Fraction] = {}
        for i, a in self._c.items():
            for j, b in other._c.items():
                c[i + j] = c.get(i + j, 0) + a * b
        return LaurentPoly._raw({k: v for k, v in c.items() if v})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials can be inverted")
            (k, v), = self._c.items()
            return LaurentPoly({k * n: Fraction(v) ** n})
        out = LaurentPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly._raw({k - 1: k * v for k, v in self._c.items() if k != 0})

    def evaluate(self, x: Scalar) -> Fraction:
        x = rational(x)
        if x == 0 and any(k < 0 for k in self._c):
            raise ZeroDivisionError("negative power evaluated at t=0")
        return sum((v * x**k for k, v in self._c.items()), Fraction(0))

    def truncate(self, max_exponent: int) -> "LaurentPoly":
        return LaurentPoly._raw({k: v for k, v in self._c.items() if k <= max_exponent})

    # -- protocol -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k, v in self._c.items():
            if k == 0:
                mono = format_rational(v)
            else:
                power = "t" if k == 1 else f"t^{k}"
                if v == 1:
                    mono = power
                elif v == -1:
                    mono = "-" + power
                else:
                    mono = f"{format_rational(v)}*{power}"
            parts.append(mono)
        return " + ".join(parts).replace("+ -", "- ")


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LaurentPoly.const(x)
    return NotImplemented


# ---------------------------------------------------------------------------
# Multivariate polynomials in named parameters.

Monomial = tuple  # sorted tuple of (name, exponent>0)


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    d = dict(m1)
    for name, e in m2:
        d[name] = d.get(name, 0) + e
    return tuple(sorted(d.items()))


class MultiPoly:
    """Sparse polynomial over named parameters with rational coefficients.

    Monomials are sorted tuples of ``(name, exponent)``; the empty tuple is the
    constant monomial.  Ordering is lexicographic by parameter name, which
    makes serialization deterministic.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[Monomial, Scalar] | None = None):
        c = {}
        for mono, v in (coeffs or {}).items():
            v = rational(v)
            if v:
                key = tuple(sorted((n, e) for n, e in mono if e))
                c[key] = c.get(key, 0) + v
        self._c = {k: v for k, v in sorted(c.items()) if v}

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): 1})

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        return cls({(): value})

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def variables(self) -> set[str]:
        return {n for mono in self._c for n, _ in mono}

    def __add__(self, other) -> "MultiPoly":
        other = _as_multi(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return MultiPoly(c)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = _as_multi(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        other = _as_multi(other)
        if other is NotImplemented:
            return other
        c: dict = {}
        for m1, a in self._c.items():
            for m2, b in other._c.items():
                m = _mono_mul(m1, m2)
                c[m] = c.get(m, 0) + a * b
        return MultiPoly(c)

    __rmul__ = __mul__

    def evaluate(self, assignment: Mapping[str, Scalar]) -> Fraction:
        """Exact value at a rational point.

        Raises ``KeyError`` naming the first parameter missing from
        ``assignment``.
        """
        total = Fraction(0)
        for mono, v in self._c.items():
            term = v
            for name, e in mono:
                if name not in assignment:
                    raise KeyError(f"parameter {name!r} missing from assignment")
                term *= rational(assignment[name]) ** e
            total += term
        return total

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._c == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(self._c.items()))

    def __repr__(self) -> str:
        if not self._c:
            return "MultiPoly(0)"
        terms = []
        for mono, v in self._c.items():
            names = "*".join(n if e == 1 else f"{n}^{e}" for n, e in mono)
            terms.append(f"{format_rational(v)}*{names}" if names else format_rational(v))
        return "MultiPoly(" + " + ".join(terms) + ")"


def _as_multi(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return MultiPoly.const(x)
    return NotImplemented


def poly_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    """Dispatch ``op`` in ``{"add", "sub", "mul", "neg"}``; ``neg`` ignores ``q``."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    raise ValueError(f"unknown operation {op!r}")
