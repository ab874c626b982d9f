"""Finitely generated modules over Q[t, t^-1] via presentation matrices.

A matrix presents its cokernel: rows are relations, columns are generators.
Smith normal form over the Euclidean domain (norm = span of the primitive
representative) reduces every module to the canonical shape
free rank + invariant-factor chain, which the classification theorem makes a
complete invariant.  On top of that normal form sit the order polynomial,
primary decomposition, conjugation, and the tensor/Tor calculus feeding the
Kunneth formula.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

from ialex.laurent import (
    LaurentPoly,
    PolyLike,
    PrimitiveRep,
    _poly_divmod,
    as_laurent,
    divides,
    factor,
    gcd,
    involute,
    multiplicity,
    normalize,
)

__all__ = [
    "FgGammaModule",
    "GammaMatrix",
    "NotPrime",
    "NotTorsion",
    "cokernel",
    "kernel_basis",
    "kunneth",
    "order_polynomial",
    "primary_component",
    "smith_normal_form",
    "snf_transforms",
    "solve_left",
    "tensor",
    "tor",
]


class NotTorsion(ValueError):
    """An operation needing a torsion module met positive free rank."""


class NotPrime(ValueError):
    """The polynomial passed as a prime is a unit or reducible."""


class GammaMatrix:
    """A dense matrix over Q[t, t^-1]; rows are relations, columns generators.

    >>> m = GammaMatrix([["t - 1", "1"], ["0", "t + 1"]])
    >>> m.rows, m.cols
    (2, 2)
    >>> print(m.entry(0, 1))
    1
    """

    __slots__ = ("_entries", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[PolyLike]], cols: int | None = None):
        grid = tuple(tuple(as_laurent(v) for v in row) for row in entries)
        if grid:
            widths = {len(row) for row in grid}
            if len(widths) != 1:
                raise ValueError("ragged rows in matrix")
            width = widths.pop()
            if cols is not None and cols != width:
                raise ValueError("cols does not match the entry grid")
            cols = width
        elif cols is None:
            cols = 0
        object.__setattr__(self, "_entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("GammaMatrix is immutable")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "GammaMatrix":
        z = LaurentPoly.zero()
        return cls([[z] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "GammaMatrix":
        one = LaurentPoly.one()
        z = LaurentPoly.zero()
        return cls([[one if i == j else z for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def diagonal(cls, values: Sequence[PolyLike], cols: int | None = None) -> "GammaMatrix":
        vals = [as_laurent(v) for v in values]
        n = len(vals)
        width = cols if cols is not None else n
        z = LaurentPoly.zero()
        return cls([[vals[i] if i == j else z for j in range(width)] for i in range(n)],
                   cols=width)

    @property
    def entries(self) -> tuple[tuple[LaurentPoly, ...], ...]:
        return self._entries

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self._entries[i][j]

    def row(self, i: int) -> tuple[LaurentPoly, ...]:
        return self._entries[i]

    def transpose(self) -> "GammaMatrix":
        return GammaMatrix(
            [[self._entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            cols=self.rows)

    def __mul__(self, other: "GammaMatrix") -> "GammaMatrix":
        if not isinstance(other, GammaMatrix):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} * "
                             f"{other.rows}x{other.cols}")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = LaurentPoly.zero()
                for k in range(self.cols):
                    a = self._entries[i][k]
                    if not a.is_zero:
                        acc = acc + a * other._entries[k][j]
                row.append(acc)
            out.append(row)
        return GammaMatrix(out, cols=other.cols)

    def scale(self, value: PolyLike) -> "GammaMatrix":
        f = as_laurent(value)
        return GammaMatrix([[f * e for e in row] for row in self._entries],
                           cols=self.cols)

    def stack(self, other: "GammaMatrix") -> "GammaMatrix":
        """Stack vertically: more relations on the same generators."""
        if self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return GammaMatrix(self._entries + other._entries, cols=self.cols)

    def augment(self, other: "GammaMatrix") -> "GammaMatrix":
        """Place side by side: the same relations on more generators."""
        if self.rows != other.rows:
            raise ValueError("row mismatch in augment")
        return GammaMatrix(
            [self._entries[i] + other._entries[i] for i in range(self.rows)],
            cols=self.cols + other.cols)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "GammaMatrix":
        return GammaMatrix(
            [[self._entries[i][j] for j in col_idx] for i in row_idx],
            cols=len(col_idx))

    def is_zero(self) -> bool:
        return all(e.is_zero for row in self._entries for e in row)

    def to_json(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self._entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]], cols: int | None = None) -> "GammaMatrix":
        return cls([[v for v in row] for row in data], cols=cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GammaMatrix):
            return NotImplemented
        return (self.rows, self.cols, self._entries) == (other.rows, other.cols, other._entries)

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._entries))

    def __str__(self) -> str:
        if not self._entries:
            return f"<empty {self.rows}x{self.cols}>"
        cells = [[str(e) for e in row] for row in self._entries]
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[ " + "  ".join(c.rjust(width) for c in row) + " ]"
                         for row in cells)

    def __repr__(self) -> str:
        return f"GammaMatrix({self.to_json()!r})"


# -- Smith normal form -------------------------------------------------------


class _Worker:
    """Mutable elimination state: S = U * A * V throughout."""

    def __init__(self, m: GammaMatrix, track: bool):
        self.s = [list(row) for row in m.entries]
        self.nr, self.nc = m.rows, m.cols
        self.track = track
        if track:
            one, zero = LaurentPoly.one(), LaurentPoly.zero()
            self.u = [[one if i == j else zero for j in range(self.nr)]
                      for i in range(self.nr)]
            self.v = [[one if i == j else zero for j in range(self.nc)]
                      for i in range(self.nc)]

    def swap_rows(self, a: int, b: int):
        if a == b:
            return
        self.s[a], self.s[b] = self.s[b], self.s[a]
        if self.track:
            self.u[a], self.u[b] = self.u[b], self.u[a]

    def swap_cols(self, a: int, b: int):
        if a == b:
            return
        for row in self.s:
            row[a], row[b] = row[b], row[a]
        if self.track:
            for row in self.v:
                row[a], row[b] = row[b], row[a]

    def add_row(self, dst: int, src: int, f: LaurentPoly):
        """row dst += f * row src"""
        self.s[dst] = [a + f * b for a, b in zip(self.s[dst], self.s[src])]
        if self.track:
            self.u[dst] = [a + f * b for a, b in zip(self.u[dst], self.u[src])]

    def add_col(self, dst: int, src: int, f: LaurentPoly):
        for row in self.s:
            row[dst] = row[dst] + f * row[src]
        if self.track:
            for row in self.v:
                row[dst] = row[dst] + f * row[src]

    def scale_row(self, i: int, f: LaurentPoly):
        """Multiply a row by a unit (content extraction)."""
        self.s[i] = [f * a for a in self.s[i]]
        if self.track:
            self.u[i] = [f * a for a in self.u[i]]


def _unit_quotient(value: LaurentPoly) -> LaurentPoly:
    """The unit u with u * value equal to value's primitive representative."""
    rep = normalize(value).to_laurent()
    q, r = _poly_divmod(value, rep)
    assert r.is_zero and q.is_unit
    exp = q.min_exp
    return LaurentPoly({-exp: 1 / q.coeff(exp)})


def _eliminate(w: _Worker) -> int:
    """Diagonalize in place with Euclidean pivoting; returns the rank."""
    k = 0
    limit = min(w.nr, w.nc)
    while k < limit:
        best = None
        for i in range(k, w.nr):
            for j in range(k, w.nc):
                e = w.s[i][j]
                if not e.is_zero and (best is None or e.span < best[0]):
                    best = (e.span, i, j)
        if best is None:
            break
        w.swap_rows(k, best[1])
        w.swap_cols(k, best[2])
        while True:
            # keep coefficients tame: make the pivot row primitive
            w.scale_row(k, _unit_quotient(w.s[k][k]))
            moved = False
            for i in range(w.nr):
                if i != k and not w.s[i][k].is_zero:
                    q, r = _poly_divmod(w.s[i][k], w.s[k][k])
                    w.add_row(i, k, -q)
                    if not r.is_zero:
                        w.swap_rows(i, k)
                        moved = True
                        break
            if moved:
                continue
            for j in range(w.nc):
                if j != k and not w.s[k][j].is_zero:
                    q, r = _poly_divmod(w.s[k][j], w.s[k][k])
                    w.add_col(j, k, -q)
                    if not r.is_zero:
                        w.swap_cols(j, k)
                        moved = True
                        break
            if not moved:
                break
        k += 1

    # repair the divisibility chain; each pass strictly reduces the gcd at
    # the earlier slot, so this terminates
    changed = True
    while changed:
        changed = False
        for i in range(k - 1):
            a, b = w.s[i][i], w.s[i + 1][i + 1]
            if not divides(a, b):
                w.add_row(i, i + 1, LaurentPoly.one())
                # re-clear the 2x2 block [[a, b], [0, b]]
                while True:
                    w.scale_row(i, _unit_quotient(w.s[i][i]))
                    q, r = _poly_divmod(w.s[i][i + 1], w.s[i][i])
                    w.add_col(i + 1, i, -q)
                    if w.s[i][i + 1].is_zero:
                        break
                    w.swap_cols(i, i + 1)
                if not w.s[i + 1][i].is_zero:
                    q, r = _poly_divmod(w.s[i + 1][i], w.s[i][i])
                    w.add_row(i + 1, i, -q)
                    assert r.is_zero and w.s[i + 1][i].is_zero
                changed = True
    for i in range(k):
        w.scale_row(i, _unit_quotient(w.s[i][i]))
    return k


def smith_normal_form(m: GammaMatrix) -> tuple[tuple[PrimitiveRep, ...], int]:
    """Invariant factors of a presentation matrix, plus the rank.

    The factors include unit pivots and form a divisibility chain; the second
    value (the matrix rank, equal to the number of factors) is what the
    column count loses when passing to the cokernel's free rank.

    >>> factors, rank = smith_normal_form(GammaMatrix([["t - 1", "1"], ["0", "t + 1"]]))
    >>> [str(f) for f in factors], rank
    (['1', 't^2 - 1'], 2)
    """
    w = _Worker(m, track=False)
    rank = _eliminate(w)
    factors = tuple(normalize(w.s[i][i]) for i in range(rank))
    return factors, rank


def snf_transforms(m: GammaMatrix) -> tuple[GammaMatrix, GammaMatrix, GammaMatrix]:
    """Invertible U, V and diagonal S with S = U * m * V."""
    w = _Worker(m, track=True)
    _eliminate(w)
    return (GammaMatrix(w.u, cols=m.rows),
            GammaMatrix(w.s, cols=m.cols),
            GammaMatrix(w.v, cols=m.cols))


def kernel_basis(m: GammaMatrix) -> GammaMatrix:
    """A basis of {v : v * m = 0}, one row per basis vector.

    Rows of U whose image row in S vanishes form a basis, because S = U*m*V
    with U, V invertible and a diagonal matrix kills exactly its zero rows.

    >>> k = kernel_basis(GammaMatrix([["t - 1"], ["t - 1"]]))
    >>> k.rows, k.cols
    (1, 2)
    """
    u, s, _ = snf_transforms(m)
    zero_rows = [i for i in range(m.rows)
                 if all(s.entry(i, j).is_zero for j in range(m.cols))]
    return GammaMatrix([u.row(i) for i in zero_rows], cols=m.rows)


def solve_left(m: GammaMatrix, b: GammaMatrix) -> GammaMatrix:
    """The X with X * m = b, when b's rows lie in m's row space.

    Raises ValueError when some row of b is not a Gamma-combination of the
    rows of m.
    """
    if b.cols != m.cols:
        raise ValueError("column mismatch in solve_left")
    u, s, v = snf_transforms(m)
    c = b * v
    rank = sum(1 for i in range(min(m.rows, m.cols)) if not s.entry(i, i).is_zero)
    ys = []
    for i in range(b.rows):
        yrow = [LaurentPoly.zero()] * m.rows
        for j in range(m.cols):
            target = c.entry(i, j)
            if j < rank:
                q, r = _poly_divmod(target, s.entry(j, j))
                if not r.is_zero:
                    raise ValueError("target is not in the row space (division fails)")
                yrow[j] = q
            elif not target.is_zero:
                raise ValueError("target is not in the row space")
        ys.append(yrow)
    return GammaMatrix(ys, cols=m.rows) * u


# -- canonical modules --------------------------------------------------------


class FgGammaModule:
    """A finitely generated module in canonical form.

    The canonical form is a free rank together with the invariant-factor
    chain of the torsion part; each factor is a nonunit primitive
    representative dividing the next.

    >>> FgGammaModule(0, ["t - 1", "t^2 - 1"])
    FgGammaModule(free=0, torsion=['t - 1', 't^2 - 1'])
    >>> FgGammaModule(0, ["t + 1", "t - 1"])
    Traceback (most recent call last):
        ...
    ValueError: torsion coefficients must form a divisibility chain
    """

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank: int, torsion: Iterable[Union[PrimitiveRep, str]] = ()):
        if free_rank < 0:
            raise ValueError("free rank must be non-negative")
        chain = tuple(t if isinstance(t, PrimitiveRep) else normalize(t)
                      for t in torsion)
        for t in chain:
            if t.degree < 1:
                raise ValueError("torsion coefficients must be nonunits")
        for a, b in zip(chain, chain[1:]):
            if not divides(a.to_laurent(), b.to_laurent()):
                raise ValueError("torsion coefficients must form a divisibility chain")
        object.__setattr__(self, "free_rank", free_rank)
        object.__setattr__(self, "torsion", chain)

    def __setattr__(self, name, value):
        raise AttributeError("FgGammaModule is immutable")

    @classmethod
    def zero(cls) -> "FgGammaModule":
        return cls(0)

    @classmethod
    def free(cls, rank: int) -> "FgGammaModule":
        return cls(rank)

    @classmethod
    def cyclic(cls, order: PolyLike) -> "FgGammaModule":
        """Gamma/(order); the zero module when the order is a unit."""
        rep = normalize(order)
        return cls(0) if rep.is_one else cls(0, [rep])

    @classmethod
    def from_summands(cls, free_rank: int, orders: Iterable[PolyLike]) -> "FgGammaModule":
        """Canonicalize a direct sum of cyclic pieces and a free part.

        The block-diagonal presentation of the sum is renormalized by Smith
        reduction, so the result is always a valid chain.
        """
        coeffs = [normalize(c) for c in orders]
        coeffs = [c for c in coeffs if not c.is_one]
        if not coeffs:
            return cls(free_rank)
        m = GammaMatrix.diagonal([c.to_laurent() for c in coeffs])
        factors, rank = smith_normal_form(m)
        chain = [f for f in factors if not f.is_one]
        return cls(free_rank + len(coeffs) - rank, chain)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def is_torsion(self) -> bool:
        return self.free_rank == 0

    @property
    def rank(self) -> int:
        """Number of generators in the canonical presentation."""
        return self.free_rank + len(self.torsion)

    def direct_sum(self, other: "FgGammaModule") -> "FgGammaModule":
        return FgGammaModule.from_summands(
            self.free_rank + other.free_rank,
            list(self.torsion) + list(other.torsion))

    def to_json(self) -> dict:
        return {"free": self.free_rank, "torsion": [str(t) for t in self.torsion]}

    @classmethod
    def from_json(cls, data: dict) -> "FgGammaModule":
        return cls(int(data.get("free", 0)), data.get("torsion", ()))

    def __eq__(self, other) -> bool:
        if not isinstance(other, FgGammaModule):
            return NotImplemented
        return (self.free_rank, self.torsion) == (other.free_rank, other.torsion)

    def __hash__(self) -> int:
        return hash((self.free_rank, self.torsion))

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"free^{self.free_rank}")
        parts.extend(f"({t})" for t in self.torsion)
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return (f"FgGammaModule(free={self.free_rank}, "
                f"torsion={[str(t) for t in self.torsion]!r})")


def cokernel(m: GammaMatrix) -> FgGammaModule:
    """The module presented by m: generators = columns, relations = rows.

    >>> cokernel(GammaMatrix([["t - 1", "1"], ["0", "t + 1"]]))
    FgGammaModule(free=0, torsion=['t^2 - 1'])
    >>> cokernel(GammaMatrix([], cols=3))
    FgGammaModule(free=3, torsion=[])
    """
    factors, rank = smith_normal_form(m)
    return FgGammaModule(m.cols - rank, [f for f in factors if not f.is_one])


def order_polynomial(m: FgGammaModule) -> PrimitiveRep:
    """Product of the torsion coefficients; 1 for the zero module.

    >>> order_polynomial(FgGammaModule(0, ["t - 1", "t^2 - 1"]))
    PrimitiveRep('t^3 - t^2 - t + 1')
    """
    if m.free_rank:
        raise NotTorsion("order polynomial requires a torsion module")
    out = PrimitiveRep.one()
    for t in m.torsion:
        out = out * t
    return out


def _require_prime(prime: PrimitiveRep) -> PrimitiveRep:
    rep = normalize(prime)
    if rep.is_one or factor(rep) != ((rep, 1),):
        raise NotPrime(f"{rep} is not irreducible")
    return rep


def primary_component(m: FgGammaModule, prime: PolyLike) -> FgGammaModule:
    """The direct summand supported at one prime.

    Each coefficient is replaced by the exact power of the prime it
    contains; the splitting is the coefficient-wise coprime factorization.

    >>> big = FgGammaModule(0, ["t^3 - t^2 - t + 1"])
    >>> primary_component(big, "t - 1")
    FgGammaModule(free=0, torsion=['t^2 - 2*t + 1'])
    """
    if m.free_rank:
        raise NotTorsion("primary decomposition requires a torsion module")
    rep = _require_prime(prime)
    parts = []
    for c in m.torsion:
        e = multiplicity(rep, c)
        if e:
            parts.append(rep**e)
    return FgGammaModule.from_summands(0, parts)


def support_primes(m: FgGammaModule) -> tuple[PrimitiveRep, ...]:
    """The primes dividing some torsion coefficient (largest one suffices)."""
    if not m.torsion:
        return ()
    return tuple(p for p, _ in factor(m.torsion[-1]))


def conjugate(m: FgGammaModule) -> FgGammaModule:
    """Apply the involution t -> t^-1 coefficient-wise.

    >>> conjugate(FgGammaModule(1, ["2*t - 1"]))
    FgGammaModule(free=1, torsion=['t - 2'])
    """
    return FgGammaModule(
        m.free_rank, [normalize(involute(t.to_laurent())) for t in m.torsion])


def tensor(a: FgGammaModule, b: FgGammaModule) -> FgGammaModule:
    """Tensor product over the ring.

    Free factors distribute; on cyclic pieces the result is cyclic on the
    gcd of the orders (zero when they are coprime).

    >>> tensor(FgGammaModule.cyclic("t^2 - 1"), FgGammaModule.cyclic("t^3 - 3*t^2 + 3*t - 1"))
    FgGammaModule(free=0, torsion=['t - 1'])
    """
    orders: list[PrimitiveRep] = []
    orders.extend(t for t in b.torsion for _ in range(a.free_rank))
    orders.extend(t for t in a.torsion for _ in range(b.free_rank))
    for x in a.torsion:
        for y in b.torsion:
            orders.append(gcd(x.to_laurent(), y.to_laurent()))
    return FgGammaModule.from_summands(a.free_rank * b.free_rank, orders)


def tor(a: FgGammaModule, b: FgGammaModule) -> FgGammaModule:
    """The torsion product; vanishes when either argument is free.

    >>> tor(FgGammaModule.cyclic("t - 1"), FgGammaModule.cyclic("t - 1"))
    FgGammaModule(free=0, torsion=['t - 1'])
    >>> tor(FgGammaModule.free(2), FgGammaModule.cyclic("t - 1")).is_zero
    True
    """
    orders = [gcd(x.to_laurent(), y.to_laurent())
              for x in a.torsion for y in b.torsion]
    return FgGammaModule.from_summands(0, orders)


def kunneth(left: Sequence[FgGammaModule], right: Sequence[FgGammaModule],
            i: int) -> FgGammaModule:
    """Degree-i homology of a product from the graded factors.

    The tensor terms live on the degree-i antidiagonal and the Tor terms on
    the degree-(i-1) one.

    >>> seq = [FgGammaModule.cyclic("t - 1")]
    >>> kunneth(seq, seq, 1)
    FgGammaModule(free=0, torsion=['t - 1'])
    """
    total = FgGammaModule.zero()
    for r, lmod in enumerate(left):
        for s, rmod in enumerate(right):
            if r + s == i:
                total = total.direct_sum(tensor(lmod, rmod))
            elif r + s == i - 1:
                total = total.direct_sum(tor(lmod, rmod))
    return total
