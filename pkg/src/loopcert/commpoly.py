"""Exact commutative polynomials in loop variables x_a[r].

A variable is a pair ``(a, r)``: basis index ``a`` of the underlying Lie
algebra and t-degree ``r >= 0``.  The two gradings are

    deg1(x_a[r]) = r + 1,      deg2(x_a[r]) = r,

additive on monomials.  Monomials are stored as ascending tuples of
variables ordered by ``(r, a)``; the global monomial order is graded-lex on
(deg1, variable tuple), fixed once so echelon bases are canonical.

``CommPoly`` itself is ring-agnostic; the Poisson brackets, the derivation D
and the pencil automorphism live on ``LoopAlgebra``, which couples a
structure-constant table with a truncation level R (max t-degree,
exclusive).  Operations that would create a t-degree >= R raise
``TruncationError`` instead of silently dropping terms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Tuple

from .errors import TruncationError
from .scalars import Scalar, SymPoly, sc_is_zero, sc_str

Var = Tuple[int, int]  # (basis index a, t-degree r)
Monomial = Tuple[Var, ...]


def var_key(v: Var) -> Tuple[int, int]:
    a, r = v
    return (r, a)


def mono_deg1(m: Monomial) -> int:
    return sum(r + 1 for _, r in m)


def mono_deg2(m: Monomial) -> int:
    return sum(r for _, r in m)


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    return tuple(sorted(m1 + m2, key=var_key))


def mono_order_key(m: Monomial):
    return (mono_deg1(m), tuple(var_key(v) for v in m))


class CommPoly:
    """Sparse commutative polynomial; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Monomial, Scalar] | None = None) -> None:
        t: Dict[Monomial, Scalar] = {}
        if terms:
            for m, c in terms.items():
                if not sc_is_zero(c):
                    t[m] = c
        self.terms = t

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "CommPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "CommPoly":
        c = c if isinstance(c, SymPoly) else Fraction(c)
        return cls({(): c})

    @classmethod
    def variable(cls, a: int, r: int) -> "CommPoly":
        return cls({((a, r),): Fraction(1)})

    # -- queries -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, m: Monomial) -> Scalar:
        return self.terms.get(m, Fraction(0))

    def deg1(self) -> int:
        """Max deg1 over monomials (-1 for the zero polynomial)."""
        return max((mono_deg1(m) for m in self.terms), default=-1)

    def deg2(self) -> int:
        return max((mono_deg2(m) for m in self.terms), default=-1)

    def max_tdeg(self) -> int:
        return max((r for m in self.terms for _, r in m), default=-1)

    def is_homogeneous_deg1(self) -> bool:
        degs = {mono_deg1(m) for m in self.terms}
        return len(degs) <= 1

    def variables(self) -> set:
        return {v for m in self.terms for v in m}

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "CommPoly") -> "CommPoly":
        if not isinstance(other, CommPoly):
            return NotImplemented
        t = dict(self.terms)
        for m, c in other.terms.items():
            nc = t.get(m, 0) + c
            if sc_is_zero(nc):
                t.pop(m, None)
            else:
                t[m] = nc
        return CommPoly(t)

    def __neg__(self) -> "CommPoly":
        return CommPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "CommPoly") -> "CommPoly":
        return self + (-other)

    def scale(self, c) -> "CommPoly":
        if sc_is_zero(c):
            return CommPoly()
        return CommPoly({m: co * c for m, co in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, SymPoly)):
            return self.scale(other)
        if not isinstance(other, CommPoly):
            return NotImplemented
        t: Dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                nc = t.get(m, 0) + c1 * c2
                if sc_is_zero(nc):
                    t.pop(m, None)
                else:
                    t[m] = nc
        return CommPoly(t)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "CommPoly":
        if k < 0:
            raise ValueError("negative power")
        r = CommPoly.const(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, other):
        if not isinstance(other, CommPoly):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure -----------------------------------------------------------

    def bigrade(self) -> Dict[Tuple[int, int], "CommPoly"]:
        """Split into bihomogeneous parts keyed by (deg1, deg2)."""
        out: Dict[Tuple[int, int], Dict[Monomial, Scalar]] = {}
        for m, c in self.terms.items():
            out.setdefault((mono_deg1(m), mono_deg2(m)), {})[m] = c
        return {k: CommPoly(v) for k, v in out.items()}

    def deg1_part(self, d: int) -> "CommPoly":
        return CommPoly({m: c for m, c in self.terms.items() if mono_deg1(m) == d})

    def min_length_part(self) -> "CommPoly":
        """Terms with the fewest variable factors (top class for the F2 filtration
        among terms of one Fourier degree)."""
        if not self.terms:
            return CommPoly()
        k = min(len(m) for m in self.terms)
        return CommPoly({m: c for m, c in self.terms.items() if len(m) == k})

    def min_length(self) -> int:
        return min((len(m) for m in self.terms), default=0)

    def partial(self, v: Var) -> "CommPoly":
        """Partial derivative with respect to one variable."""
        t: Dict[Monomial, Scalar] = {}
        for m, c in self.terms.items():
            k = m.count(v)
            if k == 0:
                continue
            lst = list(m)
            lst.remove(v)
            mm = tuple(lst)
            nc = t.get(mm, 0) + c * k
            if sc_is_zero(nc):
                t.pop(mm, None)
            else:
                t[mm] = nc
        return CommPoly(t)

    def subst_vars(self, f: Callable[[Var], "CommPoly"]) -> "CommPoly":
        """Algebra-homomorphism substitution on variables."""
        out = CommPoly()
        for m, c in self.terms.items():
            p = CommPoly.const(c)
            for v in m:
                p = p * f(v)
            out = out + p
        return out

    def evaluate(self, point: Dict[Var, Fraction]) -> Scalar:
        acc: Scalar = Fraction(0)
        for m, c in self.terms.items():
            val = c
            for v in m:
                val = val * point.get(v, Fraction(0))
            acc = acc + val
        return acc

    def map_coeffs(self, f) -> "CommPoly":
        return CommPoly({m: f(c) for m, c in self.terms.items()})

    # -- serialization ---------------------------------------------------------

    def render(self, varname: Callable[[Var], str] | None = None) -> str:
        """Canonical text form: terms in the global monomial order."""
        if not self.terms:
            return "0"
        if varname is None:
            varname = lambda v: f"x{v[0]}[{v[1]}]"
        parts = []
        for m in sorted(self.terms, key=mono_order_key):
            c = self.terms[m]
            factors = []
            i = 0
            while i < len(m):
                j = i
                while j < len(m) and m[j] == m[i]:
                    j += 1
                factors.append(varname(m[i]) + (f"^{j - i}" if j - i > 1 else ""))
                i = j
            mono = "*".join(factors) if factors else "1"
            parts.append(f"{sc_str(c)}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return self.render()


def enumerate_monomials(variables: Iterable[Var], d: int,
                        weight: Callable[[Var], int] | None = None) -> List[Monomial]:
    """All monomials in the given variables of total weight exactly d.

    Default weight is deg1 (r+1 per variable).  Returned in the global
    monomial order; d = 0 yields the empty monomial.
    """
    if weight is None:
        weight = lambda v: v[1] + 1
    vs = sorted(set(variables), key=var_key)
    out: List[Monomial] = []

    def rec(i: int, rem: int, acc: List[Var]):
        if rem == 0:
            out.append(tuple(acc))
            return
        if i >= len(vs):
            return
        v = vs[i]
        w = weight(v)
        rec(i + 1, rem, acc)
        if w <= rem:
            acc.append(v)
            rec(i, rem - w, acc)
            acc.pop()

    rec(0, d, [])
    return sorted(out, key=mono_order_key)


class LoopAlgebra:
    """S(g[t]) truncated at t-degree < R, with both Poisson brackets and D.

    ``alg`` must expose ``dim``, ``bracket_coeffs(a, b) -> dict d -> Fraction``
    and ``gram_inverse()`` (see ``liealg.LieAlgebraData``).
    """

    def __init__(self, alg, R: int) -> None:
        if R < 1:
            raise ValueError("truncation level R must be >= 1")
        self.alg = alg
        self.R = R

    def var(self, a: int, r: int) -> CommPoly:
        if not (0 <= r < self.R):
            raise TruncationError(f"t-degree {r} outside [0, {self.R})")
        if not (0 <= a < self.alg.dim):
            raise ValueError(f"basis index {a} out of range")
        return CommPoly.variable(a, r)

    # -- Poisson brackets --------------------------------------------------

    def _bracket_vars(self, v1: Var, v2: Var, shift: int) -> CommPoly:
        a, r = v1
        b, s = v2
        tdeg = r + s + shift
        cs = self.alg.bracket_coeffs(a, b)
        if not cs:
            return CommPoly()
        if tdeg >= self.R:
            raise TruncationError(
                f"bracket output t-degree {tdeg} exceeds truncation R={self.R}")
        return CommPoly({((d, tdeg),): c for d, c in cs.items()})

    def _poisson(self, p: CommPoly, q: CommPoly, shift: int) -> CommPoly:
        out = CommPoly()
        for m1, c1 in p.terms.items():
            for m2, c2 in q.terms.items():
                c = c1 * c2
                for i, v1 in enumerate(m1):
                    rest1 = m1[:i] + m1[i + 1:]
                    for j, v2 in enumerate(m2):
                        rest2 = m2[:j] + m2[j + 1:]
                        br = self._bracket_vars(v1, v2, shift)
                        if br.is_zero():
                            continue
                        mono = mono_mul(rest1, rest2)
                        out = out + br.scale(c) * CommPoly({mono: Fraction(1)})
        return out

    def poisson0(self, p: CommPoly, q: CommPoly) -> CommPoly:
        """{x[n], y[m]}_0 = [x,y][n+m], extended by Leibniz."""
        return self._poisson(p, q, 0)

    def poisson1(self, p: CommPoly, q: CommPoly) -> CommPoly:
        """{x[n], y[m]}_1 = [x,y][n+m+1], extended by Leibniz."""
        return self._poisson(p, q, 1)

    def poisson_pencil(self, u, v, p: CommPoly, q: CommPoly) -> CommPoly:
        return self.poisson0(p, q).scale(u) + self.poisson1(p, q).scale(v)

    # -- derivation and pencil automorphism ---------------------------------

    def derivation_D(self, p: CommPoly) -> CommPoly:
        """D(x[n]) = (n+1) x[n+1], extended as a derivation."""
        out: Dict[Monomial, Scalar] = {}
        for m, c in p.terms.items():
            for i, (a, r) in enumerate(m):
                if r + 1 >= self.R:
                    raise TruncationError(
                        f"D output t-degree {r + 1} exceeds truncation R={self.R}")
                mono = mono_mul(m[:i] + m[i + 1:], ((a, r + 1),))
                nc = out.get(mono, 0) + c * (r + 1)
                if sc_is_zero(nc):
                    out.pop(mono, None)
                else:
                    out[mono] = nc
        return CommPoly(out)

    def derivation_Dk(self, p: CommPoly, k: int) -> CommPoly:
        for _ in range(k):
            p = self.derivation_D(p)
        return p

    def phi_1v(self, p: CommPoly, cutoff: int, symbol: str = "v") -> CommPoly:
        """Pencil automorphism x[m] -> x[m] + sum_k (-v)^k x[m+k], k <= cutoff.

        Returns a polynomial with SymPoly(v) coefficients, truncated at
        v^cutoff (truncation in v is part of the contract; truncation in t is
        an error).
        """
        if cutoff < 0:
            raise ValueError("cutoff must be >= 0")
        if p.max_tdeg() + cutoff >= self.R:
            raise TruncationError(
                f"phi_1v with cutoff {cutoff} exceeds truncation R={self.R}")
        v = SymPoly.gen(symbol)

        def image(var: Var) -> CommPoly:
            a, m = var
            t: Dict[Monomial, Scalar] = {}
            for k in range(cutoff + 1):
                t[((a, m + k),)] = (-v) ** k if k else SymPoly.const(symbol, 1)
            return CommPoly(t)

        q = p.map_coeffs(lambda c: c * SymPoly.const(symbol, 1)).subst_vars(image)
        return q.map_coeffs(lambda c: c.truncate(cutoff))

    # -- canonical quadratic invariants --------------------------------------

    def omega(self) -> CommPoly:
        """Dual-basis Casimir sum_a x_a[0] x^a[0]."""
        return self._casimir_element(0)

    def Omega(self) -> CommPoly:
        """Loop-raised Casimir sum_a x_a[0] x^a[1]; satisfies D(omega) = 2*Omega."""
        if self.R < 2:
            raise TruncationError("Omega needs R >= 2")
        return self._casimir_element(1)

    def _casimir_element(self, r: int) -> CommPoly:
        ginv = self.alg.gram_inverse()
        n = self.alg.dim
        out = CommPoly()
        for a in range(n):
            for b in range(n):
                c = ginv[b][a]
                if c:
                    out = out + CommPoly({mono_mul(((a, 0),), ((b, r),)): c})
        return out

    # -- ambient component bases ---------------------------------------------

    def component_monomials(self, d: int) -> List[Monomial]:
        """Monomial basis of the deg1 = d component within truncation R."""
        vs = [(a, r) for a in range(self.alg.dim) for r in range(min(self.R, d))]
        return enumerate_monomials(vs, d)
