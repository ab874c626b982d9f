"""Simplicial homology with rank-one twisted coefficients over Q[t, t^-1].

A local system on a finite complex is stored as a unit of the ring on every
oriented edge, subject to the cocycle condition on triangles, together with
one coefficient module shared by all vertices.  Chains are stalk-valued
simplicial chains; the boundary picks up the edge unit on the face opposite
the leading vertex.  Homology stays inside the module toolkit: kernels come
from Smith normal form, images are divided out through a stacked relation
matrix, and the result is canonicalized.

On top of the homology sit the second-page tables of the neighborhood
spectral sequence: one row per coefficient degree of a link, with the cone
variant truncating the stalks, and the antidiagonal product that bounds the
order polynomial of whatever the pages converge to.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional, Sequence, Union

from ialex.bounds import E2Table
from ialex.engine import Perversity, cone_ih
from ialex.gmodule import (
    FgGammaModule,
    GammaMatrix,
    cokernel,
    kernel_basis,
    order_polynomial,
    solve_left,
)
from ialex.laurent import LaurentPoly, PolyLike, PrimitiveRep, as_laurent

__all__ = [
    "CocycleViolation",
    "EmptyComplex",
    "NotTorsionEntry",
    "TwistedComplex",
    "abutment_divisor_bound",
    "e2_cone_page",
    "e2_link_page",
    "twisted_homology",
]


class CocycleViolation(ValueError):
    """Edge units fail to compose along a triangle."""


class EmptyComplex(ValueError):
    """A complex with no simplices has no chain groups to speak of."""


class NotTorsionEntry(ValueError):
    """A page entry came out with positive free rank, so it has no order
    polynomial."""


def _unit_inverse(u: LaurentPoly) -> LaurentPoly:
    exp = u.min_exp
    return LaurentPoly({-exp: 1 / u.coeff(exp)})


def _edge_key(raw) -> tuple[int, int]:
    if isinstance(raw, str):
        u, _, v = raw.partition("-")
        return int(u), int(v)
    u, v = raw
    return int(u), int(v)


class TwistedComplex:
    """A finite simplicial complex with edge units and a coefficient module.

    Simplices are sorted tuples of non-negative integer vertices; the input
    list is closed under faces automatically.  The monodromy map assigns a
    unit q*t^k to each oriented edge, keyed "u-v" or (u, v); the reverse
    orientation is the inverse and absent edges carry 1.  Triangles must
    satisfy the cocycle condition, checked at construction.

    >>> circle = TwistedComplex([[0, 1], [1, 2], [0, 2]], {"0-1": "t"})
    >>> circle.dimension
    1
    >>> circle.transport(1, 0)
    LaurentPoly('t^-1')
    """

    __slots__ = ("simplices", "monodromy", "stalk")

    def __init__(self, simplices: Iterable[Iterable[int]],
                 monodromy: Optional[Mapping] = None,
                 stalk: FgGammaModule = FgGammaModule.free(1)):
        closure = set()
        for raw in simplices:
            simplex = tuple(sorted(int(v) for v in raw))
            if len(set(simplex)) != len(simplex):
                raise ValueError(f"repeated vertex in simplex {raw}")
            if simplex and simplex[0] < 0:
                raise ValueError("vertices must be non-negative integers")
            for mask in range(1, 1 << len(simplex)):
                closure.add(tuple(v for j, v in enumerate(simplex)
                                  if mask >> j & 1))
        if not closure:
            raise EmptyComplex("the complex has no simplices")
        object.__setattr__(self, "simplices",
                           tuple(sorted(closure, key=lambda s: (len(s), s))))

        edges = {s for s in closure if len(s) == 2}
        table: dict[tuple[int, int], LaurentPoly] = {}
        for raw_key, value in dict(monodromy or {}).items():
            u, v = _edge_key(raw_key)
            unit = as_laurent(value)
            if not unit.is_unit:
                raise ValueError(f"monodromy on edge ({u}, {v}) is not a unit")
            if u == v:
                raise ValueError("monodromy is defined on edges, not vertices")
            if u > v:
                u, v, unit = v, u, _unit_inverse(unit)
            if (u, v) not in edges:
                raise ValueError(f"({u}, {v}) is not an edge of the complex")
            if (u, v) in table and table[(u, v)] != unit:
                raise ValueError(f"inconsistent monodromy on edge ({u}, {v})")
            if unit != LaurentPoly.one():
                table[(u, v)] = unit
        object.__setattr__(self, "monodromy", table)
        if not isinstance(stalk, FgGammaModule):
            raise TypeError("stalk must be an FgGammaModule")
        object.__setattr__(self, "stalk", stalk)

        for tri in self.simplices_of_dim(2):
            u, v, w = tri
            if self.transport(u, v) * self.transport(v, w) != self.transport(u, w):
                raise CocycleViolation(
                    f"edge units around triangle {tri} do not compose")

    def __setattr__(self, name, value):
        raise AttributeError("TwistedComplex is immutable")

    @property
    def dimension(self) -> int:
        return len(self.simplices[-1]) - 1

    def simplices_of_dim(self, p: int) -> tuple:
        return tuple(s for s in self.simplices if len(s) == p + 1)

    def transport(self, u: int, v: int) -> LaurentPoly:
        """The unit carried by the oriented edge from u to v."""
        if u == v:
            return LaurentPoly.one()
        key = (min(u, v), max(u, v))
        unit = self.monodromy.get(key, LaurentPoly.one())
        return unit if u < v else _unit_inverse(unit)

    def with_stalk(self, stalk: FgGammaModule) -> "TwistedComplex":
        out = object.__new__(TwistedComplex)
        object.__setattr__(out, "simplices", self.simplices)
        object.__setattr__(out, "monodromy", self.monodromy)
        if not isinstance(stalk, FgGammaModule):
            raise TypeError("stalk must be an FgGammaModule")
        object.__setattr__(out, "stalk", stalk)
        return out

    def to_json(self) -> dict:
        return {
            "simplices": [list(s) for s in self.simplices],
            "monodromy": {f"{u}-{v}": str(unit)
                          for (u, v), unit in sorted(self.monodromy.items())},
            "stalk": self.stalk.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "TwistedComplex":
        stalk = data.get("stalk")
        return cls(data["simplices"], data.get("monodromy"),
                   FgGammaModule.free(1) if stalk is None
                   else FgGammaModule.from_json(stalk))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedComplex):
            return NotImplemented
        return (self.simplices, self.monodromy, self.stalk) == (
            other.simplices, other.monodromy, other.stalk)

    def __repr__(self) -> str:
        return (f"TwistedComplex({len(self.simplices)} simplices, "
                f"dim {self.dimension}, stalk {self.stalk})")


def _boundary_matrix(tc: TwistedComplex, p: int, copies: int) -> GammaMatrix:
    """The degree-p boundary on stalk-valued chains, one generator block per
    simplex; rows are sources, columns targets."""
    top = tc.simplices_of_dim(p)
    bottom = tc.simplices_of_dim(p - 1)
    index = {s: i for i, s in enumerate(bottom)}
    grid = [[LaurentPoly.zero()] * (len(bottom) * copies)
            for _ in range(len(top) * copies)]
    for si, simplex in enumerate(top):
        for j in range(p + 1):
            face = simplex[:j] + simplex[j + 1:]
            coeff = (tc.transport(simplex[0], simplex[1]) if j == 0
                     else LaurentPoly.one())
            if j % 2:
                coeff = -coeff
            fi = index[face]
            for g in range(copies):
                grid[si * copies + g][fi * copies + g] = coeff
    return GammaMatrix(grid, cols=len(bottom) * copies)


def _stalk_relations(stalk: FgGammaModule, copies: int) -> GammaMatrix:
    """Torsion relations of `copies` stalk copies, as rows over the chain
    generators."""
    gens = stalk.rank
    rows = []
    for c in range(copies):
        for g, tau in enumerate(stalk.torsion):
            row = [LaurentPoly.zero()] * (copies * gens)
            row[c * gens + stalk.free_rank + g] = tau.to_laurent()
            rows.append(row)
    return GammaMatrix(rows, cols=copies * gens)


def twisted_homology(tc: TwistedComplex) -> tuple[FgGammaModule, ...]:
    """Homology of the stalk-valued chain complex, degree by degree.

    Cycles in each degree are cut out by a stacked matrix (the boundary over
    the target's stalk relations); boundaries from one degree up and the
    stalk relations of the degree itself are then expressed in the cycle
    basis and divided out.

    >>> circle = TwistedComplex([[0, 1], [1, 2], [0, 2]], {"0-1": "t"})
    >>> twisted_homology(circle)
    (FgGammaModule(free=0, torsion=['t - 1']), FgGammaModule(free=0, torsion=[]))
    >>> twisted_homology(TwistedComplex([[0, 1], [1, 2], [0, 2]]))
    (FgGammaModule(free=1, torsion=[]), FgGammaModule(free=1, torsion=[]))
    """
    gens = tc.stalk.rank
    dim = tc.dimension
    if gens == 0:
        return tuple(FgGammaModule.zero() for _ in range(dim + 1))
    out = []
    for p in range(dim + 1):
        count = len(tc.simplices_of_dim(p))
        if p == 0:
            cycles = GammaMatrix.identity(count * gens)
        else:
            below = len(tc.simplices_of_dim(p - 1))
            stacked = _boundary_matrix(tc, p, gens).stack(
                _stalk_relations(tc.stalk, below))
            full = kernel_basis(stacked)
            cycles = full.submatrix(range(full.rows), range(count * gens))
        relations = _stalk_relations(tc.stalk, count)
        if p < dim:
            relations = relations.stack(_boundary_matrix(tc, p + 1, gens))
        out.append(cokernel(solve_left(cycles, relations)))
    return tuple(out)


def _family(base, length: int) -> list[TwistedComplex]:
    if isinstance(base, TwistedComplex):
        return [base] * length
    family = list(base)
    if len(family) < length:
        raise ValueError(
            f"need monodromy data for {length} coefficient degrees, "
            f"got {len(family)}")
    for tc in family[1:]:
        if tc.simplices != family[0].simplices:
            raise ValueError("the family must share one underlying complex")
    return family[:length]


def e2_link_page(base, link_modules: Sequence[FgGammaModule],
                 stratum_dim: int = 0) -> E2Table:
    """Second-page table of a stratum with link coefficients.

    Entry (stratum_dim, p, q) is the order polynomial of the degree-p
    homology of the base with stalk the degree-q link module, under the
    degree-q monodromy.  `base` is one TwistedComplex (shared monodromy) or
    a sequence of them sharing a complex, one per degree; their own stalks
    are ignored.

    >>> point = TwistedComplex([[0]])
    >>> page = e2_link_page(point, [FgGammaModule.cyclic("t - 1"),
    ...                             FgGammaModule.cyclic("t + 1")])
    >>> page.entry(0, 0, 1)
    PrimitiveRep('t + 1')
    """
    family = _family(base, len(link_modules))
    entries = {}
    for q, module in enumerate(link_modules):
        homology = twisted_homology(family[q].with_stalk(module))
        for p, h in enumerate(homology):
            if h.free_rank:
                raise NotTorsionEntry(
                    f"page entry (p={p}, q={q}) has free rank {h.free_rank}")
            entries[(stratum_dim, p, q)] = order_polynomial(h)
    return E2Table(entries)


def e2_cone_page(link_modules: Sequence[FgGammaModule], codim: int,
                 p: Perversity, base, stratum_dim: int = 0) -> E2Table:
    """Second-page table with cone coefficients: the link stalks truncated
    by the cone formula for a cone of the given codimension.

    >>> point = TwistedComplex([[0]])
    >>> links = [FgGammaModule.cyclic("t - 1"), FgGammaModule.cyclic("t + 1")]
    >>> page = e2_cone_page(links, 3, Perversity([0, 1]), point)
    >>> page.entry(0, 0, 1)
    PrimitiveRep('1')
    >>> page.entry(0, 0, 0)
    PrimitiveRep('t - 1')
    """
    coned = cone_ih(link_modules, codim, p)[:len(link_modules)]
    return e2_link_page(base, coned, stratum_dim)


def abutment_divisor_bound(table: E2Table, j: int) -> PrimitiveRep:
    """Product of the degree-j antidiagonal of a page.

    Whatever the page converges to has, in total degree j, an order
    polynomial dividing this product: limit entries are subquotients of the
    page entries, and the abutment's polynomial is the product over its
    filtration grades.

    >>> point = TwistedComplex([[0]])
    >>> page = e2_link_page(point, [FgGammaModule.cyclic("t^2 - 1")])
    >>> abutment_divisor_bound(page, 0)
    PrimitiveRep('t^2 - 1')
    >>> abutment_divisor_bound(page, 5)
    PrimitiveRep('1')
    """
    out = PrimitiveRep.one()
    for (_, p, q), poly in table.items():
        if p + q == j:
            out = out * poly
    return out
