"""Named commutative families in the commutative settings: the universal
Gaudin family D^k Phi_i in S(g[t]), shift-of-argument families in S(g),
classical Bethe coefficients on the congruence-subgroup coordinates, and
the leading-term map into S(gl_n[t]).

Congruence coordinates gamma_ij^(r), r >= 1 (entries of g(u) = 1 + sum
g_r u^(-r)) are stored as CommPoly variables ((i*n + j), r - 1), which makes
deg1/deg2 bookkeeping and the leading-term substitution
gamma_ij^(s) -> x_ij[s-1] the identity on variable indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .commpoly import CommPoly, LoopAlgebra
from .errors import RegularityError, ValidationError
from .liealg import LieAlgebraData, TorusElement, regular_cartan_check
from .linalg import Subspace, nullspace
from .scalars import Scalar


@dataclass(frozen=True)
class FamilyElement:
    poly: CommPoly
    label: str
    deg1: int
    deg2: int


# -- universal Gaudin family ---------------------------------------------------------


def gaudin_generators(alg: LieAlgebraData, kmax: int, R: int) -> List[FamilyElement]:
    """D^k Phi_i for 0 <= k <= kmax; commutative under both brackets."""
    loop = LoopAlgebra(alg, R)
    out = []
    for idx, inv in enumerate(alg.invariant_generators()):
        p = inv.poly
        for k in range(kmax + 1):
            if k > 0:
                p = loop.derivation_D(p)
            out.append(FamilyElement(p, f"D^{k} Phi_{idx + 1}", inv.degree + k, k))
    return out


# -- shift of argument ----------------------------------------------------------------


def directional_derivative(alg: LieAlgebraData, chi: Sequence[Fraction],
                           p: CommPoly) -> CommPoly:
    """d/ds p(x + s chi) at s = 0; chi in basis coordinates, pairing via the form."""
    pair = [sum((alg.gram[a][b] * chi[b] for b in range(alg.dim)), Fraction(0))
            for a in range(alg.dim)]
    out = CommPoly()
    for a in range(alg.dim):
        if pair[a] == 0:
            continue
        out = out + p.partial((a, 0)).scale(pair[a])
    return out


def diag_to_basis(alg: LieAlgebraData, entries: Sequence[Fraction]) -> List[Fraction]:
    """Coordinates of a diagonal matrix in the preset basis (via the form)."""
    if alg.matrices is None:
        raise ValidationError("needs a matrix realization")
    size = len(alg.matrices[0])
    if len(entries) != size:
        raise ValidationError("wrong number of diagonal entries")
    entries = [Fraction(e) for e in entries]
    pairings = []
    for m in alg.matrices:
        pairings.append(sum((m[i][i] * entries[i] for i in range(size)), Fraction(0)))
    ginv = alg.gram_inverse()
    coords = [sum((ginv[a][b] * pairings[b] for b in range(alg.dim)), Fraction(0))
              for a in range(alg.dim)]
    # confirm the vector reproduces the diagonal matrix exactly
    for i in range(size):
        for j in range(size):
            val = sum((coords[a] * alg.matrices[a][i][j] for a in range(alg.dim)),
                      Fraction(0))
            if val != (entries[i] if i == j else 0):
                raise ValidationError("diagonal matrix is not in the algebra")
    return coords


def cartan_coords(alg: LieAlgebraData, chi: Sequence[Fraction]) -> List[Fraction]:
    return [Fraction(chi[c]) for c in alg.cartan_indices]


def soa_generators(alg: LieAlgebraData, chi: Sequence[Fraction]) -> List[FamilyElement]:
    """d_chi^k Phi_l for 0 <= k <= deg Phi_l - 1; chi must be regular.

    The generator count is (dim g + rk g)/2.
    """
    chi = [Fraction(x) for x in chi]
    if alg.root_data:
        regular_cartan_check(alg, cartan_coords(alg, chi))
    out = []
    for idx, inv in enumerate(alg.invariant_generators()):
        p = inv.poly
        for k in range(inv.degree):
            if k > 0:
                p = directional_derivative(alg, chi, p)
            if p.is_zero():
                raise RegularityError(
                    f"d_chi^{k} Phi_{idx + 1} vanished; chi is too special")
            out.append(FamilyElement(p, f"d_chi^{k} Phi_{idx + 1}",
                                     inv.degree - k, 0))
    expected = (alg.dim + alg.rank) // 2
    if len(out) != expected:
        raise ValidationError(f"generator count {len(out)} != {expected}")
    return out


def soa_jacobian_rank(alg: LieAlgebraData, gens: List[FamilyElement],
                      point: Dict[Tuple[int, int], Fraction]) -> int:
    """Rank of the Jacobian of the family at a rational point of g."""
    rows = []
    for g in gens:
        rows.append([Fraction(g.poly.partial((a, 0)).evaluate(point))
                     for a in range(alg.dim)])
    from .linalg import rref
    return len(rref(rows))


# -- classical Bethe family ------------------------------------------------------------


def gamma_var(n: int, i: int, j: int, r: int) -> CommPoly:
    """gamma_ij^(r) with 1-based matrix indices, r >= 1."""
    if r < 1:
        raise ValidationError("congruence coordinates start at Fourier degree 1")
    return CommPoly.variable((i - 1) * n + (j - 1), r - 1)


def gamma_label(n: int):
    def fmt(v):
        a, r = v
        return f"gamma[{a // n + 1},{a % n + 1};{r + 1}]"
    return fmt


def _group_entry_series(n: int, i: int, j: int, Rmax: int) -> Dict[int, CommPoly]:
    out: Dict[int, CommPoly] = {}
    if i == j:
        out[0] = CommPoly.const(1)
    for r in range(1, Rmax + 1):
        out[r] = gamma_var(n, i, j, r)
    return out


def _series_mul(a: Dict[int, CommPoly], b: Dict[int, CommPoly],
                Rmax: int) -> Dict[int, CommPoly]:
    out: Dict[int, CommPoly] = {}
    for r1, p1 in a.items():
        for r2, p2 in b.items():
            if r1 + r2 > Rmax:
                continue
            prod = p1 * p2
            if prod.is_zero():
                continue
            out[r1 + r2] = out.get(r1 + r2, CommPoly()) + prod
    return out


def _minor_series(n: int, subset: Sequence[int], Rmax: int) -> Dict[int, CommPoly]:
    """u-expansion of det of the (subset x subset) block of g(u)."""
    total: Dict[int, CommPoly] = {}
    k = len(subset)
    for perm in itertools.permutations(range(k)):
        sgn = 1
        for x in range(k):
            for y in range(x + 1, k):
                if perm[x] > perm[y]:
                    sgn = -sgn
        prod: Dict[int, CommPoly] = {0: CommPoly.const(1)}
        for col in range(k):
            prod = _series_mul(prod, _group_entry_series(
                n, subset[perm[col]], subset[col], Rmax), Rmax)
        for r, p in prod.items():
            total[r] = total.get(r, CommPoly()) + p.scale(sgn)
    return total


def classical_bethe(n: int, C: TorusElement, Rmax: int
                    ) -> Dict[Tuple[int, int], CommPoly]:
    """sigma_k^(r) = [u^-r] tr Lambda^k(C g(u)) for 1 <= k <= n, 1 <= r <= Rmax.

    C may carry a formal parameter; coefficients follow the scalar ring of
    its entries.
    """
    if C.entries is None or len(C.entries) != n:
        raise ValidationError("C must be diagonal with n entries")
    out: Dict[Tuple[int, int], CommPoly] = {}
    for k in range(1, n + 1):
        series: Dict[int, CommPoly] = {}
        for subset in itertools.combinations(range(1, n + 1), k):
            weight: Scalar = Fraction(1)
            for i in subset:
                weight = weight * C.entries[i - 1]
            for r, p in _minor_series(n, subset, Rmax).items():
                series[r] = series.get(r, CommPoly()) + p.scale(weight)
        for r in range(1, Rmax + 1):
            out[(k, r)] = series.get(r, CommPoly())
    return out


def bethe_component_polys(sigma: Dict[Tuple[int, int], CommPoly], d: int,
                          include_scalars: bool = False) -> List[CommPoly]:
    """Degree-d graded component spanning set: products of sigma_k^(r) with
    total Fourier degree d (each sigma_k^(r) is deg1-homogeneous of degree r)."""
    keys = sorted(sigma)
    degs = [r for (_, r) in keys]
    from .linalg import degree_multisets
    out = []
    if include_scalars and d == 0:
        out.append(CommPoly.const(1))
    for idxs in degree_multisets(degs, d):
        if not idxs:
            continue
        p = CommPoly.const(1)
        for i in idxs:
            p = p * sigma[keys[i]]
        if not p.is_zero():
            out.append(p)
    return out


# -- leading terms (gr2 of Fourier coefficients) -----------------------------------------


def gr2_leading(fourier_coeff: CommPoly, r: int) -> CommPoly:
    """Top F2 class of a u^(-r) Fourier coefficient: the terms with the
    fewest variable factors, reread in the x_ij[s-1] variables (the variable
    indexing makes that substitution the identity)."""
    if fourier_coeff.is_zero():
        raise ValidationError("Fourier coefficient is identically zero")
    for m in fourier_coeff.terms:
        if sum(rr + 1 for (_, rr) in m) != r:
            raise ValidationError("polynomial is not a u^(-r) coefficient")
    return fourier_coeff.min_length_part()


def taylor_fourier(taylor: Dict[int, CommPoly], r: int, n_vars: int) -> CommPoly:
    """f^(r) from Taylor data: substitute each degree-0 variable by its
    congruence-coordinate series and take the u^(-r) coefficient."""
    total = CommPoly()
    for k, fk in taylor.items():
        if fk.is_zero() or k > r:
            continue
        for m, c in fk.terms.items():
            # m is a product of k degree-0 variables; distribute Fourier
            # degrees r_1 + ... + r_k = r with r_i >= 1
            vars_ = [a for (a, _) in m]
            for comp in _compositions(r, len(vars_)):
                mono = tuple(sorted(((a, ri - 1) for a, ri in zip(vars_, comp)),
                                    key=lambda v: (v[1], v[0])))
                total = total + CommPoly({mono: c})
    return total


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def gr2_from_taylor(alg: LieAlgebraData, f_k: CommPoly, k: int, r: int,
                    R: int) -> CommPoly:
    """The closed formula D^(r-k) f_k / (r-k)! for the top F2 class."""
    if r < k:
        raise ValidationError("r < k has zero Fourier coefficient")
    loop = LoopAlgebra(alg, R)
    p = loop.derivation_Dk(f_k, r - k)
    denom = 1
    for i in range(1, r - k + 1):
        denom *= i
    return p.scale(Fraction(1, denom))


def bethe_taylor_data(n: int, C: TorusElement, kmax_degree: int | None = None
                      ) -> Dict[int, Dict[int, CommPoly]]:
    """Taylor polynomials at the identity of the C-twisted trace functions:
    tr Lambda^k(C (1 + X)) as polynomials in the entry variables x_ij[0],
    split by homogeneous degree (the constant term is dropped)."""
    out: Dict[int, Dict[int, CommPoly]] = {}
    for k in range(1, n + 1):
        poly = CommPoly()
        for subset in itertools.combinations(range(1, n + 1), k):
            weight: Scalar = Fraction(1)
            for i in subset:
                weight = weight * C.entries[i - 1]
            det = CommPoly()
            for perm in itertools.permutations(range(k)):
                sgn = 1
                for x in range(k):
                    for y in range(x + 1, k):
                        if perm[x] > perm[y]:
                            sgn = -sgn
                prod = CommPoly.const(sgn)
                for col in range(k):
                    i, j = subset[perm[col]], subset[col]
                    entry = CommPoly.variable((i - 1) * n + (j - 1), 0)
                    if i == j:
                        entry = entry + CommPoly.const(1)
                    prod = prod * entry
                det = det + prod
            poly = poly + det.scale(weight)
        by_deg: Dict[int, CommPoly] = {}
        for m, c in poly.terms.items():
            if len(m) == 0:
                continue
            by_deg.setdefault(len(m), CommPoly())
            by_deg[len(m)] = by_deg[len(m)] + CommPoly({m: c})
        out[k] = by_deg
    return out


# -- centralizer components ---------------------------------------------------------------


def invariant_component(loop: LoopAlgebra, d: int) -> List[CommPoly]:
    """Basis of the g-invariant part of the deg1 = d component of S(g[t]).

    The coadjoint action p -> {x_a[0], p}_0 preserves deg1, so source and
    target components coincide.
    """
    alg = loop.alg
    monos = loop.component_monomials(d)
    if d == 0:
        return [CommPoly.const(1)]
    target = monos
    tindex = {m: i for i, m in enumerate(target)}
    rows_per_a = []
    for a in range(alg.dim):
        xa = CommPoly.variable(a, 0)
        cols = []
        for m in monos:
            img = loop.poisson0(xa, CommPoly({m: Fraction(1)}))
            vec = [Fraction(0)] * len(target)
            for mm, c in img.terms.items():
                vec[tindex[mm]] = Fraction(c)
            cols.append(vec)
        rows_per_a.append(cols)
    # solve: for all a, sum_i v_i * cols[i] = 0
    mat = []
    for a in range(alg.dim):
        for t in range(len(target)):
            mat.append([rows_per_a[a][i][t] for i in range(len(monos))])
    combos = nullspace(mat, len(monos))
    return [CommPoly({monos[i]: v[i] for i in range(len(monos)) if v[i] != 0})
            for v in combos]


def centralizer_subalgebra(loop: LoopAlgebra, seed: CommPoly, d: int,
                           bracket: int, invariant: bool) -> Subspace:
    """Kernel of p -> {seed, p} on the deg1 = d component (optionally within
    the g-invariant subspace), as a canonical subspace."""
    if bracket not in (0, 1):
        raise ValidationError("bracket selector must be 0 or 1")
    monos = loop.component_monomials(d)
    if invariant:
        basis = invariant_component(loop, d)
    else:
        basis = [CommPoly({m: Fraction(1)}) for m in monos]
    if not basis:
        return Subspace.zero(monos)
    op = loop.poisson0 if bracket == 0 else loop.poisson1
    images = [op(seed, p) for p in basis]
    tmonos = sorted({m for img in images for m in img.terms})
    tindex = {m: i for i, m in enumerate(tmonos)}
    mat = []
    for t in range(len(tmonos)):
        mat.append([Fraction(img.terms.get(tmonos[t], 0)) for img in images])
    combos = nullspace(mat, len(basis)) if tmonos else \
        [[Fraction(int(i == k)) for i in range(len(basis))] for k in range(len(basis))]
    vecs = []
    for cvec in combos:
        p = CommPoly()
        for i, c in enumerate(cvec):
            if c != 0:
                p = p + basis[i].scale(c)
        vecs.append(p)
    return Subspace.span_of(vecs, monos)


def embed_subalgebra_poly(sub: LieAlgebraData, p: CommPoly) -> CommPoly:
    """Reindex a polynomial over a centralizer into the ambient algebra's
    variables via the stored embedding."""
    if sub.ambient_indices is None:
        raise ValidationError("subalgebra has no ambient embedding")
    amb = sub.ambient_indices
    return CommPoly({tuple(sorted(((amb[a], r) for (a, r) in m),
                                  key=lambda v: (v[1], v[0]))): c
                     for m, c in p.terms.items()})
