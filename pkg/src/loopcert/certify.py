"""Named certificate suites: each builds the relevant families, runs the
exact checks, and returns a structured report (consumed by the CLI and by
the acceptance tests).

Every check is exact rational arithmetic; a failing check carries a minimal
witness (a nonzero normal form, or a dimension mismatch with a witness
vector).  Randomized steps (the Jacobian evaluation point) take an explicit
seed and log resampling events instead of hiding them.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .commpoly import CommPoly, LoopAlgebra, mono_deg1, mono_deg2
from .envelop import (casimir_tensor, current_context, enumerate_pbw_words,
                      gaudin_evaluation, talalaev_generators, tensor_context)
from .errors import BoundsError, RegularityError, ValidationError
from .families import (bethe_component_polys, centralizer_subalgebra,
                       classical_bethe, diag_to_basis, embed_subalgebra_poly,
                       gamma_label, gaudin_generators, soa_generators,
                       soa_jacobian_rank)
from .liealg import TorusElement, centralizer, preset
from .linalg import (EpsFamily, Subspace, bigraded_block, degree_multisets,
                     free_series_coeffs, generated_subalgebra_component,
                     limit_subspace)
from .scalars import SymPoly, parse_rational, ratstr
from .yangian import (bethe_generators, f1_monomial_count,
                      f1_monomial_count_enumerated, rtt_relation_checks,
                      serialize_element, yangian)


@dataclass
class Check:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: Optional[str] = None


@dataclass
class Report:
    command: str
    params: dict
    checks: List[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "schema": "loopcert-report/1",
            "command": self.command,
            "params": _jsonable(self.params),
            "pass": self.passed,
            "checks": [
                {"name": c.name, "pass": c.passed,
                 "details": _jsonable(c.details), "witness": c.witness}
                for c in self.checks
            ],
        }

    def summary_lines(self) -> List[str]:
        out = []
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"[{mark}] {c.name}"
            if not c.passed and c.witness:
                line += f"  witness: {c.witness}"
            out.append(line)
        out.append(f"=> {self.command}: "
                   f"{'all checks passed' if self.passed else 'FAILURES present'}")
        return out


def _jsonable(x):
    if isinstance(x, Fraction):
        return ratstr(x)
    if isinstance(x, SymPoly):
        return repr(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def parse_entries(spec: Sequence) -> List[Fraction]:
    try:
        return [parse_rational(str(e)) for e in spec]
    except ValueError as exc:
        raise ValidationError(str(exc)) from exc


def _filtered_products(gens: Sequence[Tuple[object, int]], dmax: int, one,
                       ) -> List[Tuple[object, int]]:
    """All products of generators (with multiplicity) of total degree <= dmax,
    including the empty product at degree 0."""
    out = [(one, 0)]

    def rec(i: int, rem: int, acc, deg: int):
        if i >= len(gens):
            return
        rec(i + 1, rem, acc, deg)
        e, dg = gens[i]
        if 0 < dg <= rem:
            p = acc * e
            out.append((p, deg + dg))
            rec(i, rem - dg, p, deg + dg)

    rec(0, dmax, one, 0)
    return out


# -- 1. RTT relation oracle -------------------------------------------------------------


def verify_rtt(n: int = 2, order: int = 4) -> Report:
    """R(u-v) T1(u) T2(v) = T2(v) T1(u) R(u-v) entrywise through the given order."""
    results = rtt_relation_checks(n, order)
    bad = [key for key, ok in results if not ok]
    checks = [Check(
        name=f"rtt entrywise identity n={n} through u^-{order} v^-{order}",
        passed=not bad,
        details={"checked_coefficients": len(results), "failures": len(bad)},
        witness=None if not bad else f"first failing (i,j,k,l,a,b) = {bad[0]}")]
    return Report("verify-rtt", {"n": n, "order": order}, checks)


# -- 2. Bethe commutativity ----------------------------------------------------------------


def verify_bethe(n: int, entries: Sequence, smax: int,
                 workers: Optional[int] = None) -> Report:
    """All pairwise commutators of tau_k^(s), s <= smax, are exactly zero."""
    entries = parse_entries(entries)
    C = TorusElement.diagonal(entries)
    ctx = yangian(n, 2 * smax)
    taus = bethe_generators(ctx, C, smax)
    keys = sorted(taus)
    pairs = [(keys[a], keys[b]) for a in range(len(keys))
             for b in range(a + 1, len(keys))]
    if workers is None:
        workers = int(os.environ.get("LOOPCERT_WORKERS", "1"))
    if workers > 1:
        results = _run_pairs_parallel(n, entries, smax, pairs, workers)
    else:
        results = []
        for (ka, kb) in pairs:
            comm = taus[ka].commutator(taus[kb])
            results.append((ka, kb, comm.is_zero(),
                            None if comm.is_zero() else serialize_element(ctx, comm)))
    checks = []
    nonzero = [(ka, kb, w) for ka, kb, ok, w in results if not ok]
    pair_listing = [
        {"pair": f"tau_{ka[0]}^({ka[1]}) vs tau_{kb[0]}^({kb[1]})",
         "commutator": "0" if ok else w}
        for ka, kb, ok, w in results]
    checks.append(Check(
        name=f"bethe commutativity gl{n}, C=diag({','.join(map(ratstr, entries))}), "
             f"s<={smax}: {len(pairs)} pairs",
        passed=not nonzero,
        details={"pairs_checked": len(pairs), "nonzero_pairs": len(nonzero),
                 "pairs": pair_listing},
        witness=None if not nonzero else
        f"[tau{nonzero[0][0]}, tau{nonzero[0][1]}] = {nonzero[0][2]}"))
    return Report("verify-bethe",
                  {"n": n, "C": entries, "smax": smax}, checks)


_WORKER_STATE: dict = {}


def _pair_worker(args):
    n, entry_strs, smax, ka, kb = args
    key = (n, tuple(entry_strs), smax)
    if _WORKER_STATE.get("key") != key:
        ctx = yangian(n, 2 * smax)
        taus = bethe_generators(
            ctx, TorusElement.diagonal([Fraction(s) for s in entry_strs]), smax)
        _WORKER_STATE.update({"key": key, "ctx": ctx, "taus": taus})
    ctx = _WORKER_STATE["ctx"]
    taus = _WORKER_STATE["taus"]
    comm = taus[ka].commutator(taus[kb])
    ok = comm.is_zero()
    return (ka, kb, ok, None if ok else serialize_element(ctx, comm))


def _run_pairs_parallel(n, entries, smax, pairs, workers):
    from concurrent.futures import ProcessPoolExecutor
    entry_strs = [ratstr(e) for e in entries]
    args = [(n, entry_strs, smax, ka, kb) for (ka, kb) in pairs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_pair_worker, args))


# -- 3. size / Poincare series ---------------------------------------------------------------


def poincare_bethe(n: int, entries: Sequence, cutoff: int) -> Report:
    """Graded dimensions of the classical Bethe subalgebra against the free
    predictions.

    Two checks: the exact dimensions equal the free series on the degree
    sets {m_i+1, m_i+2, ...} for the exponents of the centralizer z(C)
    (reductive conventions), and they dominate the free series built from
    the ambient gl_n exponents, which is the universal-in-C lower bound.
    """
    entries = parse_entries(entries)
    C = TorusElement.diagonal(entries)
    gl = preset(f"gl{n}")
    sigma = classical_bethe(n, C, cutoff)
    loop = LoopAlgebra(gl, max(cutoff, 1))
    dims = [1]
    for d in range(1, cutoff + 1):
        polys = bethe_component_polys(sigma, d)
        dims.append(Subspace.span_of(polys, loop.component_monomials(d)).dim)
    z = centralizer(gl, C)
    exact_degrees = [m + 1 + k for m in z.exponents for k in range(cutoff)]
    exact_degrees = [d for d in exact_degrees if d <= cutoff]
    expected = free_series_coeffs(exact_degrees, cutoff)
    lower_degrees = [m + 1 + k for m in gl.exponents for k in range(cutoff)]
    lower_degrees = [d for d in lower_degrees if d <= cutoff]
    lower = free_series_coeffs(lower_degrees, cutoff)
    checks = [
        Check(
            name=f"poincare gl{n} C=diag({','.join(map(ratstr, entries))}): free series on "
                 f"centralizer exponent degree sets through q^{cutoff}",
            passed=dims == expected,
            details={"dims": dims, "expected": expected,
                     "centralizer_exponents": z.exponents},
            witness=None if dims == expected else f"dims {dims} != expected {expected}"),
        Check(
            name=f"poincare gl{n}: dominates the ambient-exponent lower-bound series",
            passed=all(a >= b for a, b in zip(dims, lower)),
            details={"dims": dims, "lower_bound": lower,
                     "ambient_exponents": gl.exponents},
            witness=None if all(a >= b for a, b in zip(dims, lower)) else
            f"dims {dims} below bound {lower}"),
    ]
    return Report("poincare", {"n": n, "C": entries, "cutoff": cutoff}, checks)


def poincare_gr1_count(n: int, cutoff: int) -> Report:
    """PBW monomial count of gr1 Y(gl_n) against prod_r (1-q^r)^(-n^2)."""
    ctx = yangian(n, cutoff)
    series = [f1_monomial_count(n, d) for d in range(cutoff + 1)]
    counted = [f1_monomial_count_enumerated(ctx, d) for d in range(cutoff + 1)]
    ok = series == counted
    return Report("poincare", {"n": n, "family": "gr1-monomials", "cutoff": cutoff}, [
        Check(name=f"gr1 Y(gl{n}) monomial count matches prod (1-q^r)^(-{n * n})",
              passed=ok, details={"series": series, "enumerated": counted},
              witness=None if ok else f"{series} != {counted}")])


# -- 4. bihamiltonian Gaudin family ---------------------------------------------------------


def verify_gaudin(alg_name: str, kmax: int) -> Report:
    """D^k Phi_i pairwise commute under both brackets (and hence the pencil)."""
    alg = preset(alg_name)
    maxdeg = max(m + 1 for m in alg.exponents) + kmax
    R = 2 * maxdeg  # brackets of two generators stay below this t-degree
    loop = LoopAlgebra(alg, R)
    gens = gaudin_generators(alg, kmax, R)
    bad = []
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            p0 = loop.poisson0(gens[i].poly, gens[j].poly)
            p1 = loop.poisson1(gens[i].poly, gens[j].poly)
            if not p0.is_zero():
                bad.append((gens[i].label, gens[j].label, 0, p0))
            if not p1.is_zero():
                bad.append((gens[i].label, gens[j].label, 1, p1))
    npairs = len(gens) * (len(gens) - 1) // 2
    return Report("verify-gaudin", {"algebra": alg_name, "kmax": kmax}, [
        Check(name=f"gaudin family {alg_name}, k<={kmax}: {npairs} pairs under "
                   "poisson0 and poisson1",
              passed=not bad,
              details={"generators": [g.label for g in gens],
                       "pairs_checked": npairs},
              witness=None if not bad else
              f"{{{bad[0][0]}, {bad[0][1]}}}_{bad[0][2]} = {bad[0][3].render()}")])


# -- 5. centralizer characterization ----------------------------------------------------------


def verify_centralizer(alg_name: str = "sl2", dmax: int = 5) -> Report:
    """The invariant centralizer of Omega under {,}_0 per deg1-component
    equals the Gaudin component."""
    alg = preset(alg_name)
    loop = LoopAlgebra(alg, dmax + 2)
    Om = loop.Omega()
    mindeg = min(m + 1 for m in alg.exponents)
    gens = [(g.poly, g.deg1) for g in
            gaudin_generators(alg, max(0, dmax - mindeg), dmax + 2)
            if g.deg1 <= dmax]
    checks = []
    for d in range(dmax + 1):
        cent = centralizer_subalgebra(loop, Om, d, bracket=0, invariant=True)
        A = generated_subalgebra_component(gens, d, loop.component_monomials(d))
        eq = cent == A
        wit = None
        if not eq:
            missing = cent.witness_missing_from(A)
            wit = (f"dims {cent.dim} vs {A.dim}" if missing is None
                   else f"centralizer vector outside A at deg {d}")
        checks.append(Check(
            name=f"Omega-centralizer (invariant, bracket 0) == Gaudin component, deg1={d}",
            passed=eq, details={"centralizer_dim": cent.dim, "gaudin_dim": A.dim},
            witness=wit))
    return Report("gr", {"algebra": alg_name, "dmax": dmax,
                         "comparison": "omega-centralizer"}, checks)


# -- 6. Theorem A at truncation -----------------------------------------------------------------


def _bideg(m) -> Tuple[int, int]:
    return (mono_deg1(m), mono_deg2(m))


def _bigraded_products(gens: Sequence[Tuple[CommPoly, int, int]],
                       target: Tuple[int, int]) -> List[CommPoly]:
    """Products of bigraded generators with total bidegree == target."""
    d, j = target
    out: List[CommPoly] = []

    def rec(i: int, d1: int, d2: int, acc: List[CommPoly]):
        if d1 == 0 and d2 == 0:
            p = CommPoly.const(1)
            for g in acc:
                p = p * g
            out.append(p)
            return
        if i >= len(gens) or d1 <= 0 or d2 < 0:
            return
        rec(i + 1, d1, d2, acc)
        g, g1, g2 = gens[i]
        if g1 <= d1 and g2 <= d2:
            acc.append(g)
            rec(i, d1 - g1, d2 - g2, acc)
            acc.pop()

    rec(0, d, j, [])
    return [p for p in out if not p.is_zero()]


def verify_theorem_A(n: int, entries: Sequence, rmax: int) -> Report:
    """Leading-term spans of the classical Bethe family equal the Gaudin
    family of the centralizer, per bidegree, through deg1 = rmax."""
    entries = parse_entries(entries)
    gl = preset(f"gl{n}")
    C = TorusElement.diagonal(entries)
    sigma = classical_bethe(n, C, rmax)
    z = centralizer(gl, C)
    zgens = [(embed_subalgebra_poly(z, g.poly), g.deg1, g.deg2)
             for g in gaudin_generators(z, rmax - 1, rmax) if g.deg1 <= rmax]
    loop = LoopAlgebra(gl, rmax)
    checks = []
    for d in range(1, rmax + 1):
        ambient = loop.component_monomials(d)
        elems = bethe_component_polys(sigma, d)
        for j in range(d):
            B = bigraded_block(elems, ambient, _bideg, (d, j))
            eqamb = [m for m in ambient if _bideg(m) == (d, j)]
            prods = _bigraded_products(zgens, (d, j))
            A = Subspace.span_of(prods, eqamb) if prods else Subspace.zero(eqamb)
            eq = B == A
            checks.append(Check(
                name=f"gr2 Bethe == Gaudin(z(C)) at bidegree ({d},{j})",
                passed=eq,
                details={"gr2_bethe_dim": B.dim, "gaudin_dim": A.dim},
                witness=None if eq else f"dimension/span mismatch at ({d},{j})"))
    return Report("gr", {"n": n, "C": entries, "rmax": rmax,
                         "comparison": "theorem-A"}, checks)


# -- 7. Talalaev generators ------------------------------------------------------------------


def verify_talalaev(n: int = 2, R: int = 3, dmax: int = 4) -> Report:
    """Column-determinant coefficients pairwise commute; their bigraded spans
    equal gr2 of the quantum Bethe family at C = E through F1-degree dmax."""
    from .liealg import gl_algebra
    gl = gl_algebra(n)
    cur = current_context(gl, R)
    tal = talalaev_generators(n, R)
    checks = []
    bad = None
    npairs = 0
    for a in range(len(tal)):
        for b in range(a + 1, len(tal)):
            npairs += 1
            comm = tal[a][2].commutator(tal[b][2])
            if not comm.is_zero() and bad is None:
                bad = (tal[a][:2], tal[b][:2], comm.render())
    checks.append(Check(
        name=f"talalaev gl{n} R={R}: {npairs} pairwise commutators vanish",
        passed=bad is None,
        details={"generators": len(tal), "pairs_checked": npairs},
        witness=None if bad is None else f"[{bad[0]}, {bad[1]}] = {bad[2]}"))

    # bigraded span comparison against gr2 of quantum Bethe at C = E
    ctx = yangian(n, dmax)
    taus = bethe_generators(ctx, TorusElement.identity(n), dmax)
    tau_list = [(p, s) for (k, s), p in sorted(taus.items()) if not p.is_zero()]
    Bprods = _filtered_products(tau_list, dmax, ctx.one())
    tal_list = [(p, s) for (i, s, p) in tal if s <= dmax and not p.is_zero()]
    Tprods = _filtered_products(tal_list, dmax, cur.one())
    ywords = enumerate_pbw_words(len(ctx.gens), lambda g: ctx.gens[g][0], dmax)
    cwords = enumerate_pbw_words(len(cur.gens), lambda g: cur.gens[g][0] + 1, dmax)

    def ybideg(w):
        d1 = sum(ctx.gens[g][0] for g in w)
        return (d1, d1 - len(w))

    def cbideg(w):
        return (sum(cur.gens[g][0] + 1 for g in w), sum(cur.gens[g][0] for g in w))

    def yword_to_cword(w):
        letters = []
        for g in w:
            r, i, j = ctx.gens[g]
            if r - 1 >= R:
                return None
            letters.append(cur.index[(r - 1, (i - 1) * n + (j - 1))])
        return tuple(letters)

    for d in range(1, dmax + 1):
        Bvecs = [p for (p, dg) in Bprods if dg <= d]
        Tvecs = [p for (p, dg) in Tprods if dg <= d]
        for j in range(d):
            Bblock = bigraded_block(Bvecs, ywords, ybideg, (d, j))
            Tblock = bigraded_block(Tvecs, cwords, cbideg, (d, j))
            ceq = list(Tblock.ambient)
            cindex = {m: k for k, m in enumerate(ceq)}
            rows = []
            for row in Bblock.rows:
                v = [Fraction(0)] * len(ceq)
                for col, m in enumerate(Bblock.ambient):
                    if row[col] != 0:
                        cw = yword_to_cword(m)
                        if cw is not None:
                            v[cindex[cw]] += row[col]
                rows.append(v)
            Bproj = Subspace(ceq, rows)
            eq = Bproj == Tblock
            checks.append(Check(
                name=f"talalaev span == gr2 Bethe(E) at bidegree ({d},{j})",
                passed=eq,
                details={"talalaev_dim": Tblock.dim, "gr2_bethe_dim": Bproj.dim},
                witness=None if eq else f"span mismatch at ({d},{j})"))
    return Report("verify-talalaev", {"n": n, "R": R, "dmax": dmax}, checks)


# -- 8. Gaudin evaluation ---------------------------------------------------------------------


def verify_eval_gaudin(alg_name: str, zs: Sequence, kmax: int = 5) -> Report:
    """Images of the Gaudin generators commute in U(g)^{ox n}; the quadratic
    span contains the Gaudin Hamiltonians H_i = sum_j Omega_ij/(z_i - z_j)."""
    alg = preset(alg_name)
    zs = parse_entries(zs)
    n = len(zs)
    gens = gaudin_generators(alg, kmax, kmax + 1)
    tctx = tensor_context(alg, n)
    images = [gaudin_evaluation(alg, g.poly, zs, tctx) for g in gens]
    bad = None
    npairs = 0
    for i in range(len(images)):
        for j in range(i + 1, len(images)):
            npairs += 1
            comm = images[i].commutator(images[j])
            if not comm.is_zero() and bad is None:
                bad = (gens[i].label, gens[j].label, comm.render())
    checks = [Check(
        name=f"eval-gaudin {alg_name} n={n}: {npairs} image pairs commute",
        passed=bad is None,
        details={"z": zs, "generators": [g.label for g in gens]},
        witness=None if bad is None else f"[ev {bad[0]}, ev {bad[1]}] = {bad[2]}")]

    quad = [img for img, g in zip(images, gens)
            if g.deg1 - g.deg2 == min(m + 1 for m in alg.exponents)]
    hams = []
    for i in range(n):
        h = tctx.zero()
        for j in range(n):
            if j != i:
                h = h + casimir_tensor(alg, tctx, i, j).scale(
                    Fraction(1) / (zs[i] - zs[j]))
        hams.append(h)
    words = sorted({w for p in quad + hams for w in p.terms} | {()})
    span = Subspace.span_of(quad, words)
    missing = [i for i, h in enumerate(hams) if not span.contains_poly(h)]
    checks.append(Check(
        name=f"quadratic span contains H_1..H_{n}",
        passed=not missing,
        details={"quadratic_span_dim": span.dim},
        witness=None if not missing else f"H_{missing[0] + 1} not in span"))
    return Report("eval-gaudin", {"algebra": alg_name, "z": zs, "kmax": kmax}, checks)


# -- 9. shift of argument -----------------------------------------------------------------------


def verify_soa(alg_name: str, chi_diag: Sequence, seed: int = 0) -> Report:
    """The (dim+rk)/2 derivative generators Poisson-commute and are
    algebraically independent (Jacobian rank at a random rational point)."""
    alg = preset(alg_name)
    chi = diag_to_basis(alg, parse_entries(chi_diag))
    gens = soa_generators(alg, chi)
    loop = LoopAlgebra(alg, 1)
    bad = None
    npairs = 0
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            npairs += 1
            p = loop.poisson0(gens[i].poly, gens[j].poly)
            if not p.is_zero() and bad is None:
                bad = (gens[i].label, gens[j].label, p.render())
    checks = [Check(
        name=f"soa {alg_name}: {len(gens)} generators, {npairs} pairs commute",
        passed=bad is None,
        details={"generators": [g.label for g in gens],
                 "count_expected": (alg.dim + alg.rank) // 2},
        witness=None if bad is None else f"{{{bad[0]}, {bad[1]}}} = {bad[2]}")]

    rng = random.Random(seed)
    resamples = 0
    rank = -1
    for _ in range(20):
        point = {(a, 0): Fraction(rng.randint(-20, 20), rng.randint(1, 7))
                 for a in range(alg.dim)}
        rank = soa_jacobian_rank(alg, gens, point)
        if rank == len(gens):
            break
        resamples += 1
    checks.append(Check(
        name=f"soa {alg_name}: Jacobian rank {len(gens)} at a rational point",
        passed=rank == len(gens),
        details={"rank": rank, "expected": len(gens), "seed": seed,
                 "resampled": resamples},
        witness=None if rank == len(gens) else f"rank {rank} < {len(gens)}"))
    return Report("verify-soa", {"algebra": alg_name, "chi": parse_entries(chi_diag),
                                 "seed": seed}, checks)


# -- 10. limits (Theorem B) -----------------------------------------------------------------------


def eps_exp_entries(c0: Sequence[Fraction], chi: Sequence[Fraction],
                    order: int) -> List[SymPoly]:
    """Entries of C0 exp(eps chi) as eps-polynomials truncated at eps^order."""
    out = []
    for c, x in zip(c0, chi):
        coeffs = []
        fact = 1
        for m in range(order + 1):
            if m > 0:
                fact *= m
            coeffs.append(Fraction(c) * Fraction(x) ** m / fact)
        out.append(SymPoly("eps", coeffs))
    return out


def _limit_components(n: int, c0, chi_diag, dmax: int, order: int,
                      loop: LoopAlgebra) -> Dict[int, Subspace]:
    Ceps = TorusElement(entries=eps_exp_entries(c0, chi_diag, order))
    if not Ceps.is_regular():
        raise RegularityError("C0 exp(eps chi) is not regular for generic eps")
    sigma = classical_bethe(n, Ceps, dmax)
    out = {}
    for d in range(1, dmax + 1):
        ambient = loop.component_monomials(d)
        out[d] = limit_subspace(EpsFamily(ambient, bethe_component_polys(sigma, d)))
    return out


def verify_theorem_B(n: int, c0: Sequence, chi_diag: Sequence, dmax: int = 3,
                     eps_order_cap: int = 8) -> Report:
    """The eps -> 0 limit of the classical Bethe family along C0 exp(eps chi)
    equals the product of the C0 family and the embedded shift-of-argument
    family of z(C0), per graded component.

    The eps-truncation order of exp is raised until the limit stabilizes.
    """
    c0 = parse_entries(c0)
    chi_diag = parse_entries(chi_diag)
    gl = preset(f"gl{n}")
    loop = LoopAlgebra(gl, max(dmax, 1))
    order = 3
    limits = _limit_components(n, c0, chi_diag, dmax, order, loop)
    stabilized = False
    while order < eps_order_cap:
        nxt = _limit_components(n, c0, chi_diag, dmax, order + 1, loop)
        if all(limits[d] == nxt[d] for d in limits):
            stabilized = True
            break
        limits = nxt
        order += 1
    if not stabilized:
        raise BoundsError(f"eps-limit did not stabilize below order {eps_order_cap}")

    C0 = TorusElement.diagonal(c0)
    sigma0 = classical_bethe(n, C0, dmax)
    z = centralizer(gl, C0)
    chi_z = diag_to_basis(z, chi_diag)
    soa = [(embed_subalgebra_poly(z, g.poly), g.deg1)
           for g in soa_generators(z, chi_z)]
    checks = [Check(name=f"eps-limit stabilized at exp order {order}",
                    passed=True, details={"eps_order": order})]
    for d in range(1, dmax + 1):
        ambient = loop.component_monomials(d)
        vecs = []
        for a in range(d + 1):
            Bs = bethe_component_polys(sigma0, a, include_scalars=True)
            As = _products_of_exact_degree(soa, d - a)
            for pb in Bs:
                for pa in As:
                    q = pb * pa
                    if not q.is_zero():
                        vecs.append(q)
        prod = Subspace.span_of(vecs, ambient)
        eq = limits[d] == prod
        checks.append(Check(
            name=f"limit == B(C0) * A_chi at deg1 = {d}",
            passed=eq,
            details={"limit_dim": limits[d].dim, "product_dim": prod.dim},
            witness=None if eq else f"dims {limits[d].dim} vs {prod.dim}"))
    return Report("limit", {"n": n, "C0": c0, "chi": chi_diag, "dmax": dmax}, checks)


def _products_of_exact_degree(gens: Sequence[Tuple[CommPoly, int]], b: int
                              ) -> List[CommPoly]:
    if b == 0:
        return [CommPoly.const(1)]
    degs = [dg for (_, dg) in gens]
    out = []
    for idxs in degree_multisets(degs, b):
        if not idxs:
            continue
        p = CommPoly.const(1)
        for i in idxs:
            p = p * gens[i][0]
        if not p.is_zero():
            out.append(p)
    return out


# -- generator dumps --------------------------------------------------------------------------


def dump_generators(family: str, **kw) -> Report:
    """Canonical text dumps of a generator family, with provenance labels."""
    checks: List[Check] = []
    if family == "bethe":
        n = kw["n"]
        entries = parse_entries(kw["C"])
        smax = kw.get("smax", 3)
        ctx = yangian(n, smax)
        taus = bethe_generators(ctx, TorusElement.diagonal(entries), smax)
        listing = {f"tau_{k}^({s})": serialize_element(ctx, p)
                   for (k, s), p in sorted(taus.items())}
        params = {"n": n, "C": entries, "smax": smax}
    elif family == "classical-bethe":
        n = kw["n"]
        entries = parse_entries(kw["C"])
        smax = kw.get("smax", 3)
        sigma = classical_bethe(n, TorusElement.diagonal(entries), smax)
        lbl = gamma_label(n)
        listing = {f"sigma_{k}^({s})": p.render(lbl)
                   for (k, s), p in sorted(sigma.items())}
        params = {"n": n, "C": entries, "smax": smax}
    elif family == "gaudin":
        alg = preset(kw["algebra"])
        kmax = kw.get("kmax", 2)
        gens = gaudin_generators(alg, kmax, kmax + 1 + max(alg.exponents))
        lbl = (lambda v: f"{alg.labels[v[0]]}[{v[1]}]")
        listing = {g.label: g.poly.render(lbl) for g in gens}
        params = {"algebra": kw["algebra"], "kmax": kmax}
    elif family == "soa":
        alg = preset(kw["algebra"])
        chi = diag_to_basis(alg, parse_entries(kw["chi"]))
        gens = soa_generators(alg, chi)
        lbl = (lambda v: f"{alg.labels[v[0]]}[{v[1]}]")
        listing = {g.label: g.poly.render(lbl) for g in gens}
        params = {"algebra": kw["algebra"], "chi": parse_entries(kw["chi"])}
    elif family == "talalaev":
        n, R = kw["n"], kw["R"]
        tal = talalaev_generators(n, R, Nmax=kw.get("smax"))
        listing = {f"QI_{i}^({s})": p.render() for (i, s, p) in tal}
        params = {"n": n, "R": R}
    else:
        raise BoundsError(f"unknown family {family!r}")
    checks.append(Check(name=f"gens {family}", passed=True,
                        details={"generators": listing}))
    return Report("gens", params, checks)
