"""PBW normal ordering for enveloping algebras, Gaudin evaluation, the
column-determinant generators of the commutative family in U(gl_n[t]/t^R),
and quadratic shift-of-argument elements.

The rewriting engine is generic: a context supplies an ordered generator
list and a bracket callback returning [x_i, x_j] as a word combination.
Out-of-order adjacent pairs rewrite as  x_i x_j -> x_j x_i + [x_i, x_j],
which terminates because every bracket term lowers the (weight, length,
inversions) well-order.  Normal forms are cached per context.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Sequence, Tuple

from .commpoly import CommPoly
from .errors import RegularityError, ValidationError
from .liealg import LieAlgebraData, RootDatum, root_pairing

Word = Tuple[int, ...]
Terms = Dict[Word, Fraction]


class PBWContext:
    """Fixed-order generators plus a bracket table; hosts normal forms."""

    def __init__(self, gens: Sequence[Hashable],
                 bracket_fn: Callable[[int, int], Terms],
                 labels: Sequence[str] | None = None) -> None:
        self.gens = list(gens)
        self.index = {g: i for i, g in enumerate(self.gens)}
        self.bracket_fn = bracket_fn
        self.labels = list(labels) if labels else [str(g) for g in self.gens]
        self._nf_cache: Dict[Word, Terms] = {}
        self._br_cache: Dict[Tuple[int, int], Terms] = {}

    def gen(self, key: Hashable) -> "NCPoly":
        return NCPoly(self, {(self.index[key],): Fraction(1)})

    def one(self) -> "NCPoly":
        return NCPoly(self, {(): Fraction(1)})

    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    def _bracket(self, i: int, j: int) -> Terms:
        key = (i, j)
        if key not in self._br_cache:
            self._br_cache[key] = self.bracket_fn(i, j)
        return self._br_cache[key]

    def normal_form(self, word: Word) -> Terms:
        cached = self._nf_cache.get(word)
        if cached is not None:
            return cached
        pos = next((k for k in range(len(word) - 1) if word[k] > word[k + 1]), None)
        if pos is None:
            out = {word: Fraction(1)}
        else:
            out = {}
            swapped = word[:pos] + (word[pos + 1], word[pos]) + word[pos + 2:]
            _acc(out, self.normal_form(swapped), Fraction(1))
            for bw, c in self._bracket(word[pos], word[pos + 1]).items():
                _acc(out, self.normal_form(word[:pos] + bw + word[pos + 2:]), c)
            out = {w: c for w, c in out.items() if c != 0}
        self._nf_cache[word] = out
        return out

    def normalize_terms(self, terms: Terms) -> Terms:
        out: Terms = {}
        for w, c in terms.items():
            _acc(out, self.normal_form(w), c)
        return {w: c for w, c in out.items() if c != 0}


def _acc(target: Terms, source: Terms, scale: Fraction) -> None:
    for w, c in source.items():
        target[w] = target.get(w, Fraction(0)) + scale * c


class NCPoly:
    """Enveloping-algebra element in PBW normal form (nondecreasing words)."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: PBWContext, terms: Terms, normalized: bool = False) -> None:
        self.ctx = ctx
        self.terms = terms if normalized else ctx.normalize_terms(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        assert self.ctx is other.ctx
        t = dict(self.terms)
        for w, c in other.terms.items():
            nc = t.get(w, Fraction(0)) + c
            if nc == 0:
                t.pop(w, None)
            else:
                t[w] = nc
        return NCPoly(self.ctx, t, normalized=True)

    def __neg__(self):
        return NCPoly(self.ctx, {w: -c for w, c in self.terms.items()}, normalized=True)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "NCPoly":
        c = Fraction(c)
        if c == 0:
            return NCPoly(self.ctx, {}, normalized=True)
        return NCPoly(self.ctx, {w: x * c for w, x in self.terms.items()}, normalized=True)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        assert self.ctx is other.ctx
        raw: Terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                raw[w] = raw.get(w, Fraction(0)) + c1 * c2
        return NCPoly(self.ctx, raw)

    __rmul__ = __mul__

    def commutator(self, other: "NCPoly") -> "NCPoly":
        return self * other - other * self

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.ctx is other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_words(self, ctx2: PBWContext, f: Callable[[int], int]) -> "NCPoly":
        """Relabel generators; the image must already be normal in ctx2."""
        t = {tuple(f(i) for i in w): c for w, c in self.terms.items()}
        return NCPoly(ctx2, t)

    def render(self) -> str:
        if not self.terms:
            return "0"
        from .scalars import ratstr
        keys = sorted(self.terms, key=lambda w: (len(w), w))
        parts = []
        for w in keys:
            mono = "*".join(self.ctx.labels[i] for i in w) if w else "1"
            parts.append(f"{ratstr(self.terms[w])}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return self.render()


# -- concrete contexts -----------------------------------------------------------


def _ctx_cache(alg: LieAlgebraData) -> dict:
    cache = getattr(alg, "_pbw_contexts", None)
    if cache is None:
        cache = {}
        setattr(alg, "_pbw_contexts", cache)
    return cache


def enveloping_context(alg: LieAlgebraData) -> PBWContext:
    """U(g) with generators in basis order (cached per algebra)."""
    cache = _ctx_cache(alg)
    if "env" not in cache:
        def bracket(i: int, j: int) -> Terms:
            return {(d,): c for d, c in alg.bracket_coeffs(i, j).items()}

        cache["env"] = PBWContext(list(range(alg.dim)), bracket, labels=alg.labels)
    return cache["env"]


def tensor_context(alg: LieAlgebraData, n: int) -> PBWContext:
    """U(g)^{tensor n}; generators (copy, basis index), copies commute."""
    cache = _ctx_cache(alg)
    if ("tensor", n) in cache:
        return cache[("tensor", n)]
    gens = [(i, a) for i in range(n) for a in range(alg.dim)]

    def bracket(gi: int, gj: int) -> Terms:
        ci, ai = gens[gi]
        cj, aj = gens[gj]
        if ci != cj:
            return {}
        out: Terms = {}
        for d, c in alg.bracket_coeffs(ai, aj).items():
            out[(ci * alg.dim + d,)] = c
        return out

    labels = [f"{alg.labels[a]}({i + 1})" for i in range(n) for a in range(alg.dim)]
    ctx = PBWContext(gens, bracket, labels=labels)
    cache[("tensor", n)] = ctx
    return ctx


def current_context(alg: LieAlgebraData, R: int) -> PBWContext:
    """U(g ox C[t]/t^R); generators (t-degree, basis index), honest quotient."""
    cache = _ctx_cache(alg)
    if ("current", R) in cache:
        return cache[("current", R)]
    gens = [(r, a) for r in range(R) for a in range(alg.dim)]

    def bracket(gi: int, gj: int) -> Terms:
        ri, ai = gens[gi]
        rj, aj = gens[gj]
        if ri + rj >= R:
            return {}
        out: Terms = {}
        for d, c in alg.bracket_coeffs(ai, aj).items():
            out[((ri + rj) * alg.dim + d,)] = c
        return out

    labels = [f"{alg.labels[a]}[{r}]" for r in range(R) for a in range(alg.dim)]
    ctx = PBWContext(gens, bracket, labels=labels)
    cache[("current", R)] = ctx
    return ctx


def current_word_bidegree(ctx: PBWContext, w: Word) -> Tuple[int, int]:
    """(sum of r+1, sum of r) over the letters of a current-algebra word."""
    d1 = w2 = 0
    for i in w:
        r, _ = ctx.gens[i]
        d1 += r + 1
        w2 += r
    return d1, w2


def enumerate_pbw_words(ngens: int, weight_fn: Callable[[int], int],
                        dmax: int) -> List[Word]:
    """All nondecreasing generator-index words of total weight <= dmax,
    including the empty word."""
    out: List[Word] = []

    def rec(start: int, rem: int, acc: List[int]):
        out.append(tuple(acc))
        for g in range(start, ngens):
            w = weight_fn(g)
            if w <= rem:
                acc.append(g)
                rec(g, rem - w, acc)
                acc.pop()

    rec(0, dmax, [])
    return out


def symmetrize(ctx: PBWContext, p: CommPoly) -> NCPoly:
    """PBW symmetrization CommPoly -> NCPoly.

    Variables (a, r) map to current-context generators (r, a); for an
    R-independent context pass any context whose generator keys are (r, a).
    """
    raw: Terms = {}
    for m, c in p.terms.items():
        idxs = tuple(ctx.index[(r, a)] for (a, r) in m)
        k = len(idxs)
        if k == 0:
            raw[()] = raw.get((), Fraction(0)) + Fraction(c)
            continue
        share = Fraction(c) / Fraction(_factorial(k))
        for perm in itertools.permutations(idxs):
            raw[perm] = raw.get(perm, Fraction(0)) + share
    return NCPoly(ctx, raw)


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# -- Gaudin evaluation -------------------------------------------------------------


def gaudin_evaluation(alg: LieAlgebraData, p, zs: Sequence[Fraction],
                      tctx: PBWContext | None = None) -> NCPoly:
    """Evaluation x[r] -> sum_i z_i^r x^(i) into U(g)^{tensor n}.

    Accepts a CommPoly (symmetrized first) or an NCPoly over a current
    context.  Repeated evaluation points are rejected.
    """
    zs = [Fraction(z) for z in zs]
    n = len(zs)
    if len(set(zs)) != n:
        raise ValidationError("evaluation points must be pairwise distinct")
    if tctx is None:
        tctx = tensor_context(alg, n)
    if isinstance(p, CommPoly):
        R = p.max_tdeg() + 1
        p = symmetrize(current_context(alg, max(R, 1)), p)
    out = tctx.zero()
    for w, c in p.terms.items():
        factor = tctx.one().scale(c)
        for i in w:
            r, a = p.ctx.gens[i]
            letter: Terms = {}
            for copy in range(n):
                coeff = zs[copy] ** r
                if coeff != 0:
                    letter[(tctx.index[(copy, a)],)] = coeff
            factor = factor * NCPoly(tctx, letter)
        out = out + factor
    return out


def casimir_tensor(alg: LieAlgebraData, tctx: PBWContext, i: int, j: int) -> NCPoly:
    """Omega_ij = sum_a x_a^(i) x^{a,(j)} acting in copies i, j."""
    ginv = alg.gram_inverse()
    raw: Terms = {}
    for a in range(alg.dim):
        for b in range(alg.dim):
            c = ginv[b][a]
            if c:
                w = (tctx.index[(i, a)], tctx.index[(j, b)])
                raw[w] = raw.get(w, Fraction(0)) + c
    return NCPoly(tctx, raw)


# -- column-determinant generators ---------------------------------------------------


class _OpSeries:
    """Finite sums  sum coeff * z^(-s) * d^k  with coefficients in U(g[t]/t^R)."""

    def __init__(self, ctx: PBWContext, data: Dict[Tuple[int, int], Terms]) -> None:
        self.ctx = ctx
        self.data = {k: dict(v) for k, v in data.items() if v}

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, {})

    def add(self, other: "_OpSeries") -> "_OpSeries":
        data = {k: dict(v) for k, v in self.data.items()}
        for key, terms in other.data.items():
            tgt = data.setdefault(key, {})
            for w, c in terms.items():
                tgt[w] = tgt.get(w, Fraction(0)) + c
        return _OpSeries(self.ctx, {k: {w: c for w, c in v.items() if c != 0}
                                    for k, v in data.items()})

    def mul(self, other: "_OpSeries") -> "_OpSeries":
        out: Dict[Tuple[int, int], Terms] = {}
        for (s1, k1), t1 in self.data.items():
            for (s2, k2), t2 in other.data.items():
                # move d^k1 across z^(-s2): d^k z^-s = sum_j C(k,j) (-1)^j s(s+1)..(s+j-1) z^(-s-j) d^(k-j)
                for j in range(k1 + 1):
                    c = Fraction(_binom(k1, j))
                    for t in range(j):
                        c *= -(s2 + t)
                    if c == 0:
                        continue
                    key = (s1 + s2 + j, k1 - j + k2)
                    tgt = out.setdefault(key, {})
                    for w1, c1 in t1.items():
                        for w2, c2 in t2.items():
                            w = w1 + w2
                            tgt[w] = tgt.get(w, Fraction(0)) + c * c1 * c2
        return _OpSeries(self.ctx, {k: {w: c for w, c in v.items() if c != 0}
                                    for k, v in out.items()})


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def talalaev_generators(n: int, R: int, Nmax: int | None = None,
                        alg: LieAlgebraData | None = None,
                        ctx: PBWContext | None = None):
    """Coefficients of cdet(d_z - L(z)), L(z)_ij = sum_{r<R} e_ij[r] z^(-r-1).

    Returns records (family index i, z-power s, NCPoly) for the z^(-s)
    coefficient of the d_z^(n-i) part, normal-ordered in U(gl_n ox C[t]/t^R).
    The expansion is exact in z; Nmax, when given, caps the returned s.
    """
    from .liealg import preset
    if alg is None:
        alg = preset(f"gl{n}")
    if alg.gl_size != n:
        raise ValidationError("talalaev_generators needs gl_n data")
    if ctx is None:
        ctx = current_context(alg, R)
    if Nmax is not None and Nmax < 1:
        raise ValidationError("Nmax must be >= 1")

    def entry(i: int, j: int) -> _OpSeries:
        data: Dict[Tuple[int, int], Terms] = {}
        if i == j:
            data[(0, 1)] = {(): Fraction(1)}
        for r in range(R):
            gidx = ctx.index[(r, i * n + j)]
            data.setdefault((r + 1, 0), {})[(gidx,)] = Fraction(-1)
        return _OpSeries(ctx, data)

    total = _OpSeries.zero(ctx)
    for perm in itertools.permutations(range(n)):
        sgn = _perm_sign(perm)
        prod = None
        for col in range(n):
            e = entry(perm[col], col)
            prod = e if prod is None else prod.mul(e)
        scaled = _OpSeries(ctx, {k: {w: c * sgn for w, c in v.items()}
                                 for k, v in prod.data.items()})
        total = total.add(scaled)

    out = []
    for (s, k), terms in sorted(total.data.items()):
        if s == 0:
            continue  # the pure d^n term
        if Nmax is not None and s > Nmax:
            continue
        p = NCPoly(ctx, terms)
        if not p.is_zero():
            out.append((n - k, s, p))
    return out


def _perm_sign(perm) -> int:
    sgn = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sgn = -sgn
    return sgn


# -- quadratic shift-of-argument elements ----------------------------------------------


def positive_roots(alg: LieAlgebraData) -> List[RootDatum]:
    return [r for r in alg.root_data if r.e_idx < r.f_idx]


def quadratic_soa_element(alg: LieAlgebraData, chi: Sequence[Fraction],
                          h: Sequence[Fraction], ctx: PBWContext | None = None) -> NCPoly:
    """sum over positive roots of (alpha,h)/(alpha,chi) e_alpha e_{-alpha} in U(g).

    chi and h are Cartan vectors given in Cartan-basis coordinates; chi must
    be regular.
    """
    if not alg.root_data:
        raise ValidationError("root data required for quadratic elements")
    chi = [Fraction(x) for x in chi]
    h = [Fraction(x) for x in h]
    if ctx is None:
        ctx = enveloping_context(alg)
    raw: Terms = {}
    for root in positive_roots(alg):
        denom = root_pairing(root, chi)
        if denom == 0:
            raise RegularityError("chi lies on a root hyperplane")
        c = root_pairing(root, h) / denom
        if c == 0:
            continue
        w = (ctx.index[root.e_idx], ctx.index[root.f_idx])
        raw[w] = raw.get(w, Fraction(0)) + c
    return NCPoly(ctx, raw)
