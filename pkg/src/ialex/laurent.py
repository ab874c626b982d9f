"""Exact arithmetic and similarity classes in the ring Q[t, t^-1].

The ring of Laurent polynomials with rational coefficients is a principal
ideal domain whose units are the monomials q*t^k with q a nonzero rational.
Every nonzero element is similar (equal up to a unit) to exactly one
primitive integer polynomial with nonzero constant term and positive leading
coefficient.  :class:`LaurentPoly` is the general ring element;
:class:`PrimitiveRep` is that canonical representative, so similarity tests
reduce to structural equality.

All arithmetic is exact; coefficients are arbitrary-precision rationals and
no floating point is used anywhere.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

__all__ = [
    "BothZero",
    "DEFAULT_DEGREE_CAP",
    "DegreeCapExceeded",
    "LaurentPoly",
    "PolyLike",
    "PrimitiveRep",
    "ZeroPolynomial",
    "as_laurent",
    "divides",
    "exact_quotient",
    "factor",
    "gcd",
    "involute",
    "is_alexander_type",
    "multiplicity",
    "normalize",
    "parse",
    "similar",
]

DEFAULT_DEGREE_CAP = 64


class ZeroPolynomial(ValueError):
    """The zero polynomial was passed where a nonzero one is required."""


class BothZero(ValueError):
    """gcd(0, 0) is undefined."""


class DegreeCapExceeded(ValueError):
    """A factorization request exceeded the configured degree cap."""


def _fraction(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(value)


class LaurentPoly:
    """An element of Q[t, t^-1], stored as a sparse exponent-to-coefficient map.

    >>> p = LaurentPoly({1: 1, 0: -1})
    >>> print(p)
    t - 1
    >>> print(p * LaurentPoly({-1, 0}))
    Traceback (most recent call last):
        ...
    TypeError: terms must be a mapping or iterable of (exponent, coefficient)
    >>> print(p * LaurentPoly({-1: 1}))
    1 - t^-1
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[int, object], Iterable[tuple]] = ()):
        data: dict[int, Fraction] = {}
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            try:
                items = [(int(e), c) for e, c in terms]
            except (TypeError, ValueError):
                raise TypeError(
                    "terms must be a mapping or iterable of (exponent, coefficient)"
                ) from None
        for exp, coeff in items:
            c = _fraction(coeff)
            if c:
                e = int(exp)
                data[e] = data.get(e, Fraction(0)) + c
                if not data[e]:
                    del data[e]
        self._terms = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, value) -> "LaurentPoly":
        return cls({0: value})

    @classmethod
    def t_power(cls, k: int) -> "LaurentPoly":
        return cls({k: 1})

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, shift: int = 0) -> "LaurentPoly":
        """Build from a dense coefficient list, lowest exponent first."""
        return cls({shift + i: c for i, c in enumerate(coeffs)})

    # -- basic queries -------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_unit(self) -> bool:
        """True iff the element is a unit q*t^k of the ring."""
        return len(self._terms) == 1

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return min(self._terms)

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise ZeroPolynomial("zero polynomial has no exponents")
        return max(self._terms)

    @property
    def span(self) -> int:
        """Degree of the primitive representative (max_exp - min_exp)."""
        return self.max_exp - self.min_exp

    def coeff(self, exp: int) -> Fraction:
        return self._terms.get(exp, Fraction(0))

    def items(self) -> Iterator[tuple[int, Fraction]]:
        return iter(sorted(self._terms.items()))

    # -- ring operations -------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        data = dict(self._terms)
        for e, c in other._terms.items():
            data[e] = data.get(e, Fraction(0)) + c
        return LaurentPoly(data)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        data: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                data[e] = data.get(e, Fraction(0)) + c1 * c2
        return LaurentPoly(data)

    __rmul__ = __mul__

    def scale(self, value) -> "LaurentPoly":
        c = _fraction(value)
        return LaurentPoly({e: c * v for e, v in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by the unit t^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are defined only for units")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def evaluate(self, value) -> Fraction:
        """Evaluate at a nonzero rational point (exactly).

        >>> LaurentPoly({2: 1, 0: -1}).evaluate(2)
        Fraction(3, 1)
        """
        x = _fraction(value)
        if not x and self._terms and self.min_exp < 0:
            raise ZeroDivisionError("cannot evaluate negative exponents at 0")
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    def derivative(self) -> "LaurentPoly":
        """Formal derivative d/dt."""
        return LaurentPoly({e - 1: e * c for e, c in self._terms.items() if e})

    def involute(self) -> "LaurentPoly":
        """The ring involution t -> t^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    # -- comparison and presentation ------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return _format_terms(sorted(self._terms.items(), reverse=True))

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"


PolyLike = Union["LaurentPoly", "PrimitiveRep", int, str]


class PrimitiveRep:
    """The canonical representative of a nonzero similarity class.

    Coefficients are integers indexed from exponent 0 upward; the constant
    term is nonzero, the coefficient gcd is 1, and the leading coefficient is
    positive.  Two nonzero Laurent polynomials are similar exactly when their
    representatives are equal.

    >>> PrimitiveRep([-1, 1])
    PrimitiveRep('t - 1')
    >>> PrimitiveRep([2, 2])
    Traceback (most recent call last):
        ...
    ValueError: coefficients must have gcd 1
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int]):
        cs = tuple(int(c) for c in coeffs)
        if not cs:
            raise ZeroPolynomial("a primitive representative cannot be zero")
        if cs[0] == 0:
            raise ValueError("constant term must be nonzero")
        if cs[-1] <= 0:
            raise ValueError("leading coefficient must be positive")
        if math.gcd(*cs) != 1:
            raise ValueError("coefficients must have gcd 1")
        self._coeffs = cs

    @classmethod
    def one(cls) -> "PrimitiveRep":
        return cls((1,))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_one(self) -> bool:
        return self._coeffs == (1,)

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly.from_coeffs(self._coeffs)

    def evaluate_at_one(self) -> int:
        return sum(self._coeffs)

    def __mul__(self, other: "PrimitiveRep") -> "PrimitiveRep":
        if not isinstance(other, PrimitiveRep):
            return NotImplemented
        # A product of primitive integer polynomials is primitive (Gauss),
        # and the sign/offset normalizations are preserved, so the raw
        # convolution is already canonical.
        a, b = self._coeffs, other._coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return PrimitiveRep(out)

    def __pow__(self, n: int) -> "PrimitiveRep":
        if n < 0:
            raise ValueError("negative powers leave the ring")
        result = PrimitiveRep.one()
        for _ in range(n):
            result = result * self
        return result

    def sort_key(self) -> tuple:
        return (self.degree, self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PrimitiveRep):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __lt__(self, other: "PrimitiveRep") -> bool:
        return self.sort_key() < other.sort_key()

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __str__(self) -> str:
        return _format_terms(
            sorted(((i, Fraction(c)) for i, c in enumerate(self._coeffs) if c),
                   reverse=True))

    def __repr__(self) -> str:
        return f"PrimitiveRep({str(self)!r})"


# -- text form ---------------------------------------------------------

_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-]?)
    (?:
        (?P<coef>\d+(?:/\d+)?)\*?(?P<tc>t(?:\^(?P<expc>-?\d+))?)?
      | (?P<tv>t(?:\^(?P<expv>-?\d+))?)
    )
    """,
    re.VERBOSE,
)


def parse(text: str) -> LaurentPoly:
    """Parse the polynomial text grammar.

    Terms are ``c*t^e``, ``c``, ``t^e`` or ``t``, joined by ``+`` and ``-``;
    ``c`` is an integer or ``p/q`` rational and ``e`` a possibly negative
    integer.  Whitespace is ignored.

    >>> print(parse("3/2*t^-1 - 3/2"))
    -3/2 + 3/2*t^-1
    >>> parse("t^2-t+1") == LaurentPoly({2: 1, 1: -1, 0: 1})
    True
    >>> parse("0").is_zero
    True
    """
    compact = re.sub(r"\s+", "", text).replace("−", "-")
    if not compact:
        raise ValueError("empty polynomial text")
    terms: dict[int, Fraction] = {}
    pos = 0
    first = True
    while pos < len(compact):
        m = _TERM_RE.match(compact, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse polynomial at {compact[pos:]!r}")
        sign, coef = m.group("sign"), m.group("coef")
        tpart = m.group("tc") or m.group("tv")
        exp = m.group("expc") or m.group("expv")
        if sign and first and coef is None and tpart is None:
            raise ValueError(f"dangling sign in {text!r}")
        if not first and not sign:
            raise ValueError(f"missing operator before {compact[pos:]!r}")
        c = Fraction(coef) if coef is not None else Fraction(1)
        if sign == "-":
            c = -c
        e = int(exp) if exp is not None else (1 if tpart else 0)
        terms[e] = terms.get(e, Fraction(0)) + c
        pos = m.end()
        first = False
    return LaurentPoly(terms)


def _format_terms(items: list[tuple[int, Fraction]]) -> str:
    if not items:
        return "0"
    parts: list[str] = []
    for i, (exp, coeff) in enumerate(items):
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if exp == 0:
            body = str(mag)
        else:
            tpart = "t" if exp == 1 else f"t^{exp}"
            body = tpart if mag == 1 else f"{mag}*{tpart}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def as_laurent(value: PolyLike) -> LaurentPoly:
    """Coerce strings, integers and representatives to :class:`LaurentPoly`."""
    if isinstance(value, LaurentPoly):
        return value
    if isinstance(value, PrimitiveRep):
        return value.to_laurent()
    if isinstance(value, int):
        return LaurentPoly.constant(value)
    if isinstance(value, str):
        return parse(value)
    raise TypeError(f"cannot interpret {value!r} as a Laurent polynomial")


# -- similarity calculus ------------------------------------------------


def normalize(p: PolyLike) -> PrimitiveRep:
    """The canonical primitive representative of a nonzero element.

    >>> normalize(parse("3/2*t^-1 - 3/2"))
    PrimitiveRep('t - 1')
    >>> normalize(parse("t^2 - t"))
    PrimitiveRep('t - 1')
    >>> normalize(parse("2*t^2 + 2*t + 2"))
    PrimitiveRep('t^2 + t + 1')
    """
    q = as_laurent(p)
    if q.is_zero:
        raise ZeroPolynomial("the zero polynomial has no primitive representative")
    lo = q.min_exp
    coeffs = [q.coeff(e) for e in range(lo, q.max_exp + 1)]
    denom = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * denom) for c in coeffs]
    content = math.gcd(*ints)
    ints = [c // content for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return PrimitiveRep(ints)


def similar(p: PolyLike, q: PolyLike) -> bool:
    """Equality up to a unit of the ring; zero is similar only to zero.

    >>> similar(parse("t - 1"), parse("1 - t^-1"))
    True
    >>> similar(parse("t - 1"), parse("t + 1"))
    False
    >>> similar(parse("t^2 - t + 1"), parse("t^-2 - t^-1 + 1"))
    True
    """
    a, b = as_laurent(p), as_laurent(q)
    if a.is_zero or b.is_zero:
        return a.is_zero and b.is_zero
    return normalize(a) == normalize(b)


def involute(p: PolyLike) -> LaurentPoly:
    """The involution p(t) -> p(t^-1), exactly.

    >>> print(involute(parse("2*t - 1")))
    -1 + 2*t^-1
    >>> similar(involute(parse("2*t - 1")), parse("t - 2"))
    True
    """
    return as_laurent(p).involute()


def _poly_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Euclidean division a = q*b + r with r zero or of smaller span than b."""
    if b.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if a.is_zero:
        return LaurentPoly.zero(), LaurentPoly.zero()
    shift_a, shift_b = a.min_exp, b.min_exp
    da, db = a.span, b.span
    ca = [a.coeff(shift_a + i) for i in range(da + 1)]
    cb = [b.coeff(shift_b + i) for i in range(db + 1)]
    q = [Fraction(0)] * max(da - db + 1, 0)
    for i in range(da - db, -1, -1):
        f = ca[i + db] / cb[db]
        if f:
            q[i] = f
            for j in range(db + 1):
                ca[i + j] -= f * cb[j]
    quot = LaurentPoly.from_coeffs(q, shift=shift_a - shift_b)
    rem = LaurentPoly.from_coeffs(ca[:db], shift=shift_a)
    return quot, rem


def gcd(p: PolyLike, q: PolyLike) -> PrimitiveRep:
    """Greatest common divisor, as a canonical representative.

    >>> gcd(parse("t - 1"), parse("t + 1"))
    PrimitiveRep('1')
    >>> gcd(parse("t^2 - 1"), parse("t^3 - 3*t^2 + 3*t - 1"))
    PrimitiveRep('t - 1')
    >>> gcd(parse("t^2 - 1"), LaurentPoly.zero())
    PrimitiveRep('t^2 - 1')
    """
    a, b = as_laurent(p), as_laurent(q)
    if a.is_zero and b.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    return normalize(a)


def divides(d: PolyLike, p: PolyLike) -> bool:
    """True iff d divides p in the ring (up to units). Everything divides 0."""
    dd, pp = as_laurent(d), as_laurent(p)
    if pp.is_zero:
        return True
    if dd.is_zero:
        return False
    _, r = _poly_divmod(pp, dd)
    return r.is_zero


def exact_quotient(p: PolyLike, d: PolyLike) -> PrimitiveRep:
    """The canonical representative of p/d; raises if d does not divide p."""
    pp, dd = as_laurent(p), as_laurent(d)
    if dd.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if pp.is_zero:
        raise ZeroPolynomial("quotient of zero has no representative")
    q, r = _poly_divmod(pp, dd)
    if not r.is_zero:
        raise ValueError(f"{dd} does not divide {pp}")
    return normalize(q)


def multiplicity(prime: PolyLike, p: PolyLike) -> int:
    """The exact power to which a nonunit divisor appears in p.

    >>> multiplicity("t - 1", "t^3 - 3*t^2 + 3*t - 1")
    3
    """
    g = normalize(prime)
    if g.is_one:
        raise ValueError("multiplicity of a unit is not defined")
    current = as_laurent(p)
    if current.is_zero:
        raise ZeroPolynomial("multiplicity in the zero polynomial is not defined")
    glp = g.to_laurent()
    count = 0
    while True:
        q, r = _poly_divmod(current, glp)
        if not r.is_zero:
            return count
        current = q
        count += 1


def factor(p: PolyLike, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Factor into pairwise non-associate irreducibles with multiplicities.

    Returns a tuple of ``(prime, multiplicity)`` pairs in canonical order
    whose product is similar to ``p``; units factor into the empty tuple.
    Square-free parts are split off with the formal derivative, then each
    part is factored over the integers (reduction mod small primes, Hensel
    lifting and subset recombination, as implemented by sympy's integer
    polynomial factorizer).

    >>> factor("t^2 - 1")
    ((PrimitiveRep('t - 1'), 1), (PrimitiveRep('t + 1'), 1))
    >>> factor("7")
    ()
    >>> factor("t^5 - 3*t^4 + 5*t^3 - 5*t^2 + 3*t - 1")
    ((PrimitiveRep('t - 1'), 1), (PrimitiveRep('t^2 - t + 1'), 2))
    """
    rep = normalize(p)
    if rep.degree > degree_cap:
        raise DegreeCapExceeded(
            f"degree {rep.degree} exceeds the factorization cap {degree_cap}")
    if rep.degree == 0:
        return ()
    import sympy

    t = sympy.Symbol("t")
    poly = sympy.Poly(rep.coeffs[::-1], t, domain="ZZ")
    _, parts = poly.factor_list()
    found: list[tuple[PrimitiveRep, int]] = []
    for part, mult in parts:
        coeffs = [int(c) for c in reversed(part.all_coeffs())]
        prime = normalize(LaurentPoly.from_coeffs(coeffs))
        if prime.degree > 0:
            found.append((prime, int(mult)))
    return tuple(sorted(found, key=lambda pair: pair[0].sort_key()))


def is_alexander_type(p: PolyLike) -> bool:
    """True iff the primitive representative evaluates to +-1 at t = 1.

    >>> is_alexander_type("t^2 - t + 1")
    True
    >>> is_alexander_type("t - 1")
    False
    >>> is_alexander_type("3*t - 1")
    False
    """
    return normalize(p).evaluate_at_one() in (1, -1)
