"""The Yangian of gl_n in RTT presentation: generators t_ij^(r), the
defining commutation relations as a rewriting system, quantum minors,
Bethe generator series tau_k(u, C), and both associated-graded maps.

The expanded pairwise relation

    [t_ij^(r), t_kl^(s)] = sum_{p=1}^{min(r,s)}
        ( t_kj^(p-1) t_il^(r+s-p) - t_kj^(r+s-p) t_il^(p-1) ),  t^(0) = delta,

is the working form; ``rtt_relation_checks`` certifies it against the
R-matrix relation R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v) with the Yang
R-matrix R(u) = 1 - P/u, order by order.

Truncation discipline: a context carries a weight bound N on the total
superscript sum of any single word; products exceeding it raise
``TruncationError`` (nothing is dropped silently).  Commutator rewriting
strictly lowers the weight, so certificates that fit at the product level
never overflow mid-computation.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .commpoly import CommPoly
from .envelop import NCPoly, PBWContext, Terms, current_context
from .errors import TruncationError, ValidationError
from .liealg import LieAlgebraData, TorusElement, gl_algebra
from .linalg import free_series_coeffs
from .scalars import ratstr

GenKey = Tuple[int, int, int]  # (r, i, j), r >= 1, 1-based matrix indices


class YangianContext(PBWContext):
    """PBW context for Y(gl_n) words of F1-weight <= max_weight."""

    def __init__(self, n: int, max_weight: int) -> None:
        self.n = n
        self.max_weight = max_weight
        gens: List[GenKey] = [(r, i, j)
                              for r in range(1, max_weight + 1)
                              for i in range(1, n + 1)
                              for j in range(1, n + 1)]
        labels = [f"t[{i},{j};{r}]" for (r, i, j) in gens]
        super().__init__(gens, self._yangian_bracket, labels=labels)

    def _yangian_bracket(self, gi: int, gj: int) -> Terms:
        r, i, j = self.gens[gi]
        s, k, l = self.gens[gj]
        out: Terms = {}

        def put(word: Tuple[int, ...], c: Fraction):
            out[word] = out.get(word, Fraction(0)) + c

        for p in range(1, min(r, s) + 1):
            # + t_kj^(p-1) t_il^(r+s-p)
            if p - 1 == 0:
                if k == j:
                    put((self.index[(r + s - p, i, l)],), Fraction(1))
            else:
                put((self.index[(p - 1, k, j)], self.index[(r + s - p, i, l)]),
                    Fraction(1))
            # - t_kj^(r+s-p) t_il^(p-1)
            if p - 1 == 0:
                if i == l:
                    put((self.index[(r + s - p, k, j)],), Fraction(-1))
            else:
                put((self.index[(r + s - p, k, j)], self.index[(p - 1, i, l)]),
                    Fraction(-1))
        return {w: c for w, c in out.items() if c != 0}

    def word_weight(self, w: Tuple[int, ...]) -> int:
        return sum(self.gens[i][0] for i in w)

    def normalize_terms(self, terms: Terms) -> Terms:
        for w in terms:
            wt = self.word_weight(w)
            if wt > self.max_weight:
                raise TruncationError(
                    f"word of F1-weight {wt} exceeds truncation N={self.max_weight}")
        return super().normalize_terms(terms)

    def t(self, i: int, j: int, r: int) -> NCPoly:
        return self.gen((r, i, j))


_CTX_CACHE: Dict[Tuple[int, int], YangianContext] = {}


def yangian(n: int, max_weight: int) -> YangianContext:
    key = (n, max_weight)
    if key not in _CTX_CACHE:
        _CTX_CACHE[key] = YangianContext(n, max_weight)
    return _CTX_CACHE[key]


def f1_degree(ctx: YangianContext, p: NCPoly) -> int:
    """Top F1 weight: max over words of sum r_k."""
    return max((ctx.word_weight(w) for w in p.terms), default=0)


def f2_degree(ctx: YangianContext, p: NCPoly) -> int:
    return max((ctx.word_weight(w) - len(w) for w in p.terms), default=0)


def yangian_commutator(ctx: YangianContext, a: GenKey, b: GenKey) -> NCPoly:
    """[t_a, t_b] as a normal-ordered element."""
    if a[0] + b[0] - 1 > ctx.max_weight:
        raise TruncationError("commutator exceeds the truncation weight")
    return NCPoly(ctx, ctx._yangian_bracket(ctx.index[a], ctx.index[b]))


# -- series in u^{-1} with Yangian coefficients ----------------------------------


class USeries:
    """Finite u^(-s) expansion, s = 0..Nmax, with raw word coefficients.

    Words are normalized only on extraction, which keeps the minor expansion
    cheap; s = 0 coefficients are scalars times the empty word.
    """

    def __init__(self, ctx: YangianContext, Nmax: int,
                 data: Dict[int, Terms] | None = None) -> None:
        self.ctx = ctx
        self.Nmax = Nmax
        self.data: Dict[int, Terms] = data or {}

    @classmethod
    def t_entry(cls, ctx: YangianContext, i: int, j: int, Nmax: int,
                shift: int = 0) -> "USeries":
        """t_ij(u - shift) = delta_ij + sum_r t_ij^(r) (u - shift)^(-r)."""
        data: Dict[int, Terms] = {}
        if i == j:
            data[0] = {(): Fraction(1)}
        for r in range(1, Nmax + 1):
            gi = ctx.index[(r, i, j)]
            if shift == 0:
                data.setdefault(r, {})[(gi,)] = Fraction(1)
            else:
                # (u-m)^(-r) = sum_c C(r-1+c, c) m^c u^(-r-c)
                for c in range(0, Nmax - r + 1):
                    coeff = Fraction(_binom(r - 1 + c, c)) * Fraction(shift) ** c
                    if coeff != 0:
                        tgt = data.setdefault(r + c, {})
                        tgt[(gi,)] = tgt.get((gi,), Fraction(0)) + coeff
        return cls(ctx, Nmax, data)

    def mul(self, other: "USeries") -> "USeries":
        out: Dict[int, Terms] = {}
        for s1, t1 in self.data.items():
            for s2, t2 in other.data.items():
                s = s1 + s2
                if s > self.Nmax:
                    continue
                tgt = out.setdefault(s, {})
                for w1, c1 in t1.items():
                    for w2, c2 in t2.items():
                        w = w1 + w2
                        tgt[w] = tgt.get(w, Fraction(0)) + c1 * c2
        return USeries(self.ctx, self.Nmax, out)

    def add_scaled(self, other: "USeries", c: Fraction) -> "USeries":
        out = {s: dict(t) for s, t in self.data.items()}
        for s, t in other.data.items():
            tgt = out.setdefault(s, {})
            for w, co in t.items():
                tgt[w] = tgt.get(w, Fraction(0)) + c * co
        return USeries(self.ctx, self.Nmax, out)

    def coefficient(self, s: int) -> NCPoly:
        return NCPoly(self.ctx, self.data.get(s, {}))


def _binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def quantum_minor(ctx: YangianContext, rows: Sequence[int], cols: Sequence[int],
                  Nmax: int) -> USeries:
    """Quantum minor sum_sigma sgn(sigma) t_{a_sigma(1) b_1}(u) ... t_{a_sigma(k) b_k}(u-k+1)."""
    rows = list(rows)
    cols = list(cols)
    k = len(rows)
    if k != len(cols) or k > ctx.n:
        raise ValidationError("minor shape mismatch")
    total = USeries(ctx, Nmax)
    for perm in itertools.permutations(range(k)):
        sgn = _perm_sign(perm)
        prod = None
        for col in range(k):
            e = USeries.t_entry(ctx, rows[perm[col]], cols[col], Nmax, shift=col)
            prod = e if prod is None else prod.mul(e)
        total = total.add_scaled(prod, Fraction(sgn))
    return total


def _perm_sign(perm) -> int:
    sgn = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sgn = -sgn
    return sgn


def qdet(ctx: YangianContext, Nmax: int) -> USeries:
    idx = list(range(1, ctx.n + 1))
    return quantum_minor(ctx, idx, idx, Nmax)


def bethe_generators(ctx: YangianContext, C: TorusElement, Nmax: int
                     ) -> Dict[Tuple[int, int], NCPoly]:
    """tau_k^(s) for 1 <= k <= n, 1 <= s <= Nmax.

    tau_k(u, C) = sum over k-subsets S of (prod_{i in S} c_i) qminor_{S,S}(u);
    all pairwise commutators vanish within the truncation weight.
    """
    if C.entries is None or len(C.entries) != ctx.n:
        raise ValidationError("C must be diagonal with n entries")
    cs = [Fraction(c) for c in C.entries]
    out: Dict[Tuple[int, int], NCPoly] = {}
    for k in range(1, ctx.n + 1):
        series = USeries(ctx, Nmax)
        for subset in itertools.combinations(range(1, ctx.n + 1), k):
            weight = Fraction(1)
            for i in subset:
                weight *= cs[i - 1]
            series = series.add_scaled(quantum_minor(ctx, subset, subset, Nmax), weight)
        for s in range(1, Nmax + 1):
            out[(k, s)] = series.coefficient(s)
    return out


# -- associated graded maps ---------------------------------------------------------


def gr1(ctx: YangianContext, p: NCPoly) -> CommPoly:
    """Top-F1 part with t_ij^(r) replaced by the commuting coordinate
    Delta_ij^(r), stored as the variable (i*n + j in 0-based packing, r - 1)."""
    if p.is_zero():
        return CommPoly()
    top = f1_degree(ctx, p)
    n = ctx.n
    terms = {}
    for w, c in p.terms.items():
        if ctx.word_weight(w) != top:
            continue
        mono = tuple(sorted((((i - 1) * n + (j - 1), r - 1) for (r, i, j)
                             in (ctx.gens[g] for g in w)),
                            key=lambda v: (v[1], v[0])))
        terms[mono] = terms.get(mono, Fraction(0)) + c
    return CommPoly(terms)


def gr2(ctx: YangianContext, p: NCPoly, R: int,
        alg: LieAlgebraData | None = None) -> NCPoly:
    """Top-F2 part with t_ij^(r) -> e_ij[r-1], normal-ordered in
    U(gl_n ox C[t]/t^R); requires R > max superscript - 1."""
    if alg is None:
        alg = gl_algebra(ctx.n)
    tgt = current_context(alg, R)
    if p.is_zero():
        return tgt.zero()
    max_r = max((ctx.gens[g][0] for w in p.terms for g in w), default=1)
    if R < max_r:
        raise TruncationError(f"gr2 needs R >= {max_r}")
    top = f2_degree(ctx, p)
    n = ctx.n
    terms: Terms = {}
    for w, c in p.terms.items():
        if ctx.word_weight(w) - len(w) != top:
            continue
        word = tuple(tgt.index[(r - 1, (i - 1) * n + (j - 1))]
                     for (r, i, j) in (ctx.gens[g] for g in w))
        terms[word] = terms.get(word, Fraction(0)) + c
    return NCPoly(tgt, terms)  # letter order is preserved, already normal


# -- the RTT relation oracle ---------------------------------------------------------


def rtt_relation_checks(n: int, order: int) -> List[Tuple[Tuple[int, int, int, int, int, int], bool]]:
    """Certify (u-v)[t_ij(u), t_kl(v)] = t_kj(u) t_il(v) - t_kj(v) t_il(u)
    entrywise through u^(-order) v^(-order).

    This is the entrywise content of R(u-v) T1 T2 = T2 T1 R(u-v) after
    clearing the (u-v)^(-1) pole of the Yang R-matrix.  Returns one record
    per (i, j, k, l, a, b) with the boolean outcome.
    """
    ctx = yangian(n, 2 * (order + 1))

    def word(i1, j1, r1, i2, j2, r2) -> Terms:
        # the product t_{i1 j1}^(r1) t_{i2 j2}^(r2) with t^(0) = delta
        if r1 < 0 or r2 < 0:
            return {}
        if r1 == 0 and r2 == 0:
            return {(): Fraction(1)} if (i1 == j1 and i2 == j2) else {}
        if r1 == 0:
            return {(ctx.index[(r2, i2, j2)],): Fraction(1)} if i1 == j1 else {}
        if r2 == 0:
            return {(ctx.index[(r1, i1, j1)],): Fraction(1)} if i2 == j2 else {}
        return {(ctx.index[(r1, i1, j1)], ctx.index[(r2, i2, j2)]): Fraction(1)}

    def uv(i1, j1, i2, j2, a, b) -> Terms:
        # coefficient of u^(-a) v^(-b) in t_{i1 j1}(u) t_{i2 j2}(v)
        return word(i1, j1, a, i2, j2, b)

    def vu(i1, j1, i2, j2, a, b) -> Terms:
        # coefficient of u^(-a) v^(-b) in t_{i1 j1}(v) t_{i2 j2}(u)
        return word(i1, j1, b, i2, j2, a)

    results = []
    rng = range(1, n + 1)
    for i, j, k, l in itertools.product(rng, rng, rng, rng):
        for a in range(-1, order + 1):
            for b in range(-1, order + 1):
                acc: Terms = {}

                def add(src: Terms, sign: int):
                    for w, c in src.items():
                        acc[w] = acc.get(w, Fraction(0)) + sign * c

                # (u-v) t_ij(u) t_kl(v) at (a, b)
                add(uv(i, j, k, l, a + 1, b), +1)
                add(uv(i, j, k, l, a, b + 1), -1)
                # - (u-v) t_kl(v) t_ij(u) at (a, b)
                add(vu(k, l, i, j, a + 1, b), -1)
                add(vu(k, l, i, j, a, b + 1), +1)
                # - t_kj(u) t_il(v) + t_kj(v) t_il(u)
                add(uv(k, j, i, l, a, b), -1)
                add(vu(k, j, i, l, a, b), +1)
                ok = NCPoly(ctx, acc).is_zero()
                results.append(((i, j, k, l, a, b), ok))
    return results


def f1_monomial_count(n: int, d: int) -> int:
    """Number of PBW monomials of F1-weight exactly d, by direct enumeration."""
    degs = [r for r in range(1, d + 1) for _ in range(n * n)]
    return free_series_coeffs(degs, d)[d]


def f1_monomial_count_enumerated(ctx: YangianContext, d: int) -> int:
    """The same count by explicitly walking nondecreasing words."""
    gens = [g for g in range(len(ctx.gens)) if ctx.gens[g][0] <= d]
    count = 0
    stack = [(0, d)]
    while stack:
        i, rem = stack.pop()
        if rem == 0:
            count += 1
            continue
        for g in range(i, len(gens)):
            r = ctx.gens[gens[g]][0]
            if r <= rem:
                stack.append((g, rem - r))
    return count


def serialize_element(ctx: YangianContext, p: NCPoly) -> str:
    if p.is_zero():
        return "0"
    keys = sorted(p.terms, key=lambda w: (len(w), w))
    parts = []
    for w in keys:
        mono = "*".join(ctx.labels[g] for g in w) if w else "1"
        parts.append(f"{ratstr(p.terms[w])}*{mono}")
    return " + ".join(parts)
