"""Exact linear algebra over Q and over Q(eps): canonical subspaces,
generated-subalgebra components, Poincare series, and Grassmannian limits
of parametrized subspace families as eps -> 0.

A ``Subspace`` is a reduced row echelon basis over an explicit ambient
monomial list, so equality of subspaces is equality of matrices.  The field
is pluggable: the same elimination code runs over ``Fraction`` and over
``RatFunc`` (rational functions of the formal parameter).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Hashable, List, Sequence, Tuple

from .commpoly import CommPoly, Monomial
from .errors import BoundsError, TruncationError
from .scalars import RatFunc, SymPoly, sc_is_zero


def rref(rows: List[List]) -> List[List]:
    """Reduced row echelon form over any exact field; drops zero rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    out: List[List] = []
    pivot_cols: List[int] = []
    work = rows
    col = 0
    while work and col < ncols:
        piv = next((i for i, r in enumerate(work) if not sc_is_zero(r[col])), None)
        if piv is None:
            col += 1
            continue
        row = work.pop(piv)
        inv = row[col]
        row = [x / inv for x in row]
        for r in work:
            if not sc_is_zero(r[col]):
                f = r[col]
                for j in range(col, ncols):
                    r[j] = r[j] - f * row[j]
        out.append(row)
        pivot_cols.append(col)
        col += 1
    # back-substitute to reduced form
    for i in range(len(out) - 1, -1, -1):
        c = pivot_cols[i]
        for k in range(i):
            f = out[k][c]
            if not sc_is_zero(f):
                for j in range(c, ncols):
                    out[k][j] = out[k][j] - f * out[i][j]
    return out


def nullspace(rows: List[List[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of {x : M x = 0} for M given by rows."""
    R = rref(rows)
    pivots = []
    for r in R:
        c = next(j for j in range(ncols) if r[j] != 0)
        pivots.append(c)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -R[i][f]
        basis.append(v)
    return basis


class Subspace:
    """Subspace of a finite component, canonical RREF basis over Q."""

    __slots__ = ("ambient", "rows")

    def __init__(self, ambient: Sequence[Hashable], rows: List[List[Fraction]],
                 already_reduced: bool = False) -> None:
        self.ambient = tuple(ambient)
        if not already_reduced:
            rows = rref([[Fraction(x) for x in r] for r in rows])
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def span_of(cls, elements: Sequence[CommPoly], ambient: Sequence[Monomial]) -> "Subspace":
        """Span of polynomials inside an explicit monomial component."""
        index = {m: i for i, m in enumerate(ambient)}
        rows = []
        for p in elements:
            v = [Fraction(0)] * len(ambient)
            for m, c in p.terms.items():
                if m not in index:
                    raise BoundsError(f"element has monomial outside the component: {m}")
                v[index[m]] = Fraction(c)
            rows.append(v)
        return cls(ambient, rows)

    @classmethod
    def zero(cls, ambient: Sequence[Hashable]) -> "Subspace":
        return cls(ambient, [], already_reduced=True)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        v = [Fraction(x) for x in v]
        for row in self.rows:
            c = next(j for j in range(len(row)) if row[j] != 0)
            if v[c] != 0:
                f = v[c]
                v = [x - f * y for x, y in zip(v, row)]
        return all(x == 0 for x in v)

    def contains_poly(self, p: CommPoly) -> bool:
        index = {m: i for i, m in enumerate(self.ambient)}
        v = [Fraction(0)] * len(self.ambient)
        for m, c in p.terms.items():
            if m not in index:
                return False
            v[index[m]] = Fraction(c)
        return self.contains_vector(v)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient == other.ambient and self.rows == other.rows

    def __hash__(self):
        return hash((self.ambient, self.rows))

    def is_subspace_of(self, other: "Subspace") -> bool:
        assert self.ambient == other.ambient
        return all(other.contains_vector(r) for r in self.rows)

    def __add__(self, other: "Subspace") -> "Subspace":
        assert self.ambient == other.ambient
        return Subspace(self.ambient, [list(r) for r in self.rows + other.rows])

    def intersect(self, other: "Subspace") -> "Subspace":
        """Standard kernel construction on stacked bases."""
        assert self.ambient == other.ambient
        if not self.rows or not other.rows:
            return Subspace.zero(self.ambient)
        k1, k2 = len(self.rows), len(other.rows)
        n = len(self.ambient)
        # solve a*rows1 - b*rows2 = 0 columnwise
        mat = [[(self.rows[i][col] if i < k1 else -other.rows[i - k1][col])
                for i in range(k1 + k2)] for col in range(n)]
        combos = nullspace(mat, k1 + k2)
        vecs = []
        for c in combos:
            v = [Fraction(0)] * n
            for i in range(k1):
                if c[i] != 0:
                    for j in range(n):
                        v[j] += c[i] * self.rows[i][j]
            vecs.append(v)
        return Subspace(self.ambient, vecs)

    def basis_polys(self) -> List[CommPoly]:
        out = []
        for r in self.rows:
            out.append(CommPoly({self.ambient[j]: r[j]
                                 for j in range(len(r)) if r[j] != 0}))
        return out

    def witness_missing_from(self, other: "Subspace") -> List[Fraction] | None:
        """A basis vector of self not contained in other, if any."""
        for r in self.rows:
            if not other.contains_vector(r):
                return list(r)
        return None


# -- generated subalgebra components --------------------------------------------


def degree_multisets(degrees: List[int], total: int) -> List[Tuple[int, ...]]:
    """Index multisets I with sum(degrees[i] for i in I) == total."""
    out: List[Tuple[int, ...]] = []

    def rec(i: int, rem: int, acc: List[int]):
        if rem == 0:
            out.append(tuple(acc))
            return
        if i >= len(degrees):
            return
        rec(i + 1, rem, acc)
        if degrees[i] <= rem:
            acc.append(i)
            rec(i, rem - degrees[i], acc)
            acc.pop()

    rec(0, total, [])
    return out


def products_of_degree(gens: Sequence[Tuple[CommPoly, int]], d: int,
                       include_scalars: bool = True) -> List[CommPoly]:
    """All products of generators with total declared degree d.

    Generators must be homogeneous of their declared degrees for the result
    to span the degree-d component of the generated subalgebra.  d = 0 gives
    the scalars when ``include_scalars``.
    """
    if d == 0:
        return [CommPoly.const(1)] if include_scalars else []
    degs = [g[1] for g in gens]
    out = []
    for idxs in degree_multisets(degs, d):
        if not idxs:
            continue
        p = CommPoly.const(1)
        for i in idxs:
            p = p * gens[i][0]
        out.append(p)
    return out


def generated_subalgebra_component(gens: Sequence[Tuple[CommPoly, int]], d: int,
                                   ambient: Sequence[Monomial]) -> Subspace:
    """Degree-d component of the subalgebra generated by graded generators."""
    elems = [p for p in products_of_degree(gens, d) if not p.is_zero()]
    if not elems:
        return Subspace.zero(ambient)
    return Subspace.span_of(elems, ambient)


def poincare_series(gens: Sequence[Tuple[CommPoly, int]], cutoff: int,
                    ambient_fn: Callable[[int], Sequence[Monomial]]) -> List[int]:
    """Component dimensions of the generated subalgebra for degrees 0..cutoff."""
    return [generated_subalgebra_component(gens, d, ambient_fn(d)).dim
            for d in range(cutoff + 1)]


def free_series_coeffs(degree_multiset: Sequence[int], cutoff: int) -> List[int]:
    """Coefficients of prod_d (1 - q^d)^(-1) over the generator degree multiset."""
    coeffs = [1] + [0] * cutoff
    for d in degree_multiset:
        if d <= 0:
            raise BoundsError("generator degrees must be positive")
        for i in range(d, cutoff + 1):
            coeffs[i] += coeffs[i - d]
    return coeffs


def product_span(A: Subspace, B: Subspace, ambient: Sequence[Monomial]) -> Subspace:
    """Span of elementwise products of two polynomial components."""
    pa = A.basis_polys()
    pb = B.basis_polys()
    prods = [x * y for x in pa for y in pb]
    if not prods:
        return Subspace.zero(ambient)
    return Subspace.span_of(prods, ambient)


# -- filtered splitting ------------------------------------------------------------


def bigraded_block(vectors, ambient: Sequence[Hashable],
                   bideg_fn: Callable[[Hashable], Tuple[int, int]],
                   target: Tuple[int, int]) -> Subspace:
    """Associated-bigraded component of a doubly filtered span.

    For the two filtrations whose level-(i, j) space is spanned by basis
    labels with bidegree <= (i, j) componentwise, the (i, j) component of
    span(vectors) is the projection onto the bidegree-(i, j) block of the
    intersection with the level space.  ``vectors`` may be CommPoly or
    NCPoly (anything with a ``.terms`` dict over ambient labels).
    """
    i0, j0 = target
    index = {m: k for k, m in enumerate(ambient)}
    rows = []
    for p in vectors:
        v = [Fraction(0)] * len(ambient)
        for m, c in p.terms.items():
            v[index[m]] = Fraction(c)
        rows.append(v)
    base = rref(rows)
    eq = [k for k, m in enumerate(ambient) if bideg_fn(m) == (i0, j0)]
    if not base:
        return Subspace.zero([ambient[k] for k in eq])
    hi = [k for k, m in enumerate(ambient)
          if not (bideg_fn(m)[0] <= i0 and bideg_fn(m)[1] <= j0)]
    if hi:
        mat = [[base[r][c] for r in range(len(base))] for c in hi]
        combos = nullspace(mat, len(base))
    else:
        combos = [[Fraction(int(a == b)) for a in range(len(base))]
                  for b in range(len(base))]
    vecs = []
    for cvec in combos:
        v = [Fraction(0)] * len(eq)
        for r, cr in enumerate(cvec):
            if cr != 0:
                for idx, c in enumerate(eq):
                    v[idx] += cr * base[r][c]
        vecs.append(v)
    return Subspace([ambient[k] for k in eq], vecs)


# -- eps -> 0 limits -----------------------------------------------------------------


class EpsFamily:
    """Spanning vectors with entries in Q[eps] over a fixed ambient."""

    def __init__(self, ambient: Sequence[Monomial], vectors: Sequence[CommPoly],
                 symbol: str = "eps") -> None:
        self.ambient = tuple(ambient)
        self.symbol = symbol
        index = {m: i for i, m in enumerate(self.ambient)}
        self.rows: List[List[SymPoly]] = []
        zero = SymPoly(symbol, [])
        for p in vectors:
            v = [zero] * len(self.ambient)
            for m, c in p.terms.items():
                if m not in index:
                    raise BoundsError(f"element has monomial outside the component: {m}")
                v[index[m]] = c if isinstance(c, SymPoly) else SymPoly.const(symbol, c)
            self.rows.append(v)

    def generic_rank(self) -> int:
        field_rows = [[RatFunc.from_scalar(x, self.symbol) for x in r] for r in self.rows]
        return len(rref(field_rows))


def limit_subspace(family: EpsFamily, expected_rank: int | None = None) -> Subspace:
    """Grassmannian limit at eps = 0 of the span of an eps-family.

    Reduces to a basis over Q(eps), clears denominators, scales each row by
    eps^(-valuation), and iterates elimination until the specialization at
    eps = 0 attains the generic rank.  The result does not depend on the
    spanning set.
    """
    sym = family.symbol
    field_rows = [[RatFunc.from_scalar(x, sym) for x in r] for r in family.rows]
    reduced = rref(field_rows)
    k = len(reduced)
    if expected_rank is not None and k != expected_rank:
        raise BoundsError(f"generic rank {k} != expected {expected_rank}")
    if k == 0:
        return Subspace.zero(family.ambient)

    def clear_row(row: List[RatFunc]) -> List[SymPoly]:
        den = SymPoly.const(sym, 1)
        for x in row:
            if not x.is_zero():
                den = den * x.den
        cleared = [(x.num * _poly_div_exact(den, x.den)) if not x.is_zero()
                   else SymPoly(sym, []) for x in row]
        return _strip_eps(cleared, sym)

    rows = [clear_row(r) for r in reduced]

    for _ in range(10000):
        spec = [[x.at_zero() for x in r] for r in rows]
        red0 = rref([list(r) for r in spec])
        if len(red0) == k:
            return Subspace(family.ambient, red0, already_reduced=True)
        # a rational combination of rows vanishing at eps = 0
        mat = [[spec[i][col] for i in range(k)] for col in range(len(family.ambient))]
        combos = nullspace(mat, k)
        c = combos[0]
        tgt = max(i for i in range(k) if c[i] != 0)
        newrow = [SymPoly(sym, [])] * len(family.ambient)
        for i, ci in enumerate(c):
            if ci != 0:
                newrow = [a + ci * b for a, b in zip(newrow, rows[i])]
        rows[tgt] = _strip_eps(newrow, sym)
    raise TruncationError("limit_subspace did not stabilize")


def _poly_div_exact(a: SymPoly, b: SymPoly) -> SymPoly:
    from .scalars import _poly_divmod
    q, r = _poly_divmod(a, b)
    if not r.is_zero():
        raise ArithmeticError("inexact polynomial division")
    return q


def _strip_eps(row: List[SymPoly], sym: str) -> List[SymPoly]:
    vals = [x.valuation() for x in row if not x.is_zero()]
    if not vals:
        return row
    v = min(vals)
    if v <= 0:
        return row
    return [x.shift_down(v) if not x.is_zero() else x for x in row]
