from fractions import Fraction as F

import pytest

from loopcert.commpoly import CommPoly, LoopAlgebra
from loopcert.errors import RegularityError, ValidationError
from loopcert.families import (bethe_component_polys, bethe_taylor_data,
                               centralizer_subalgebra, classical_bethe,
                               diag_to_basis, directional_derivative,
                               embed_subalgebra_poly, gamma_var, gaudin_generators,
                               gr2_from_taylor, gr2_leading, invariant_component,
                               soa_generators, soa_jacobian_rank, taylor_fourier)
from loopcert.liealg import TorusElement, centralizer, preset

sl2 = preset("sl2")
E, H, FF = 0, 1, 2


class TestGaudinGenerators:
    def test_sl2_first_two(self):
        loop = LoopAlgebra(sl2, 3)
        gens = gaudin_generators(sl2, 1, 3)
        assert [g.label for g in gens] == ["D^0 Phi_1", "D^1 Phi_1"]
        assert gens[0].poly == loop.omega()
        assert gens[1].poly == loop.Omega().scale(2)

    def test_k0_is_invariants(self):
        gens = gaudin_generators(preset("sl3"), 0, 1)
        invs = preset("sl3").invariant_generators()
        assert [g.poly for g in gens] == [p.poly for p in invs]

    def test_bracket1_with_D2(self):
        loop = LoopAlgebra(sl2, 8)
        gens = gaudin_generators(sl2, 2, 8)
        phi, d2phi = gens[0].poly, gens[2].poly
        assert loop.poisson1(phi, d2phi).is_zero()


class TestSOA:
    def test_zeroth_derivative(self):
        gens = soa_generators(sl2, diag_to_basis(sl2, [1, -1]))
        assert gens[0].poly == sl2.invariant_generators()[0].poly

    def test_sl2_derivative_value(self):
        # d_h(1/2 h^2 + 2ef) = <h,h> h = 2h under the trace form
        chi = diag_to_basis(sl2, [1, -1])
        got = directional_derivative(sl2, chi, sl2.invariant_generators()[0].poly)
        assert got == CommPoly.variable(H, 0).scale(2)

    def test_derivative_matches_matrix_oracle(self):
        # independent check: expand tr((X + s chi)^3) at a rational point X0
        sl3 = preset("sl3")
        chi = diag_to_basis(sl3, [1, 2, -3])
        phi3 = sl3.invariant_generators()[1].poly  # degree 3
        d1 = directional_derivative(sl3, chi, phi3)
        import random
        rng = random.Random(3)
        coords = [F(rng.randint(-5, 5)) for _ in range(sl3.dim)]
        size = 3
        X0 = [[sum(coords[a] * sl3.matrices[a][i][j] for a in range(sl3.dim))
               for j in range(size)] for i in range(size)]
        chi_m = [[F(int(i == j)) * [1, 2, -3][i] for j in range(size)]
                 for i in range(size)]

        def tr_cube(M):
            return sum(M[i][j] * M[j][k] * M[k][i]
                       for i in range(size) for j in range(size) for k in range(size))

        # coefficient of s in tr((X0 + s chi)^3) = 3 tr(X0^2 chi)
        lin = 3 * sum(X0[i][j] * X0[j][k] * chi_m[k][i]
                      for i in range(size) for j in range(size) for k in range(size))
        point = {(a, 0): sum(sl3.gram[a][b] * coords[b] for b in range(sl3.dim))
                 for a in range(sl3.dim)}
        assert d1.evaluate(point) == lin

    def test_count_and_labels(self):
        sl3 = preset("sl3")
        gens = soa_generators(sl3, diag_to_basis(sl3, [1, 2, -3]))
        assert len(gens) == 5 == (sl3.dim + sl3.rank) // 2

    def test_irregular_chi_rejected(self):
        sl3 = preset("sl3")
        with pytest.raises(RegularityError):
            soa_generators(sl3, diag_to_basis(sl3, [1, 1, -2]))

    def test_jacobian_rank(self):
        sl3 = preset("sl3")
        gens = soa_generators(sl3, diag_to_basis(sl3, [1, 2, -3]))
        import random
        rng = random.Random(11)
        pt = {(a, 0): F(rng.randint(-9, 9), rng.randint(1, 4))
              for a in range(sl3.dim)}
        assert soa_jacobian_rank(sl3, gens, pt) == 5


class TestClassicalBethe:
    def test_sigma1(self):
        sig = classical_bethe(2, TorusElement.diagonal([1, 2]), 3)
        for r in range(1, 4):
            assert sig[(1, r)] == gamma_var(2, 1, 1, r) + gamma_var(2, 2, 2, r).scale(2)

    def test_sigma2_gl2(self):
        sig = classical_bethe(2, TorusElement.diagonal([1, 2]), 2)
        assert sig[(2, 1)] == (gamma_var(2, 1, 1, 1) + gamma_var(2, 2, 2, 1)).scale(2)
        expected = (gamma_var(2, 1, 1, 2) + gamma_var(2, 2, 2, 2) +
                    gamma_var(2, 1, 1, 1) * gamma_var(2, 2, 2, 1) -
                    gamma_var(2, 1, 2, 1) * gamma_var(2, 2, 1, 1)).scale(2)
        assert sig[(2, 2)] == expected

    def test_component_spanning_sets(self):
        sig = classical_bethe(2, TorusElement.diagonal([1, 2]), 2)
        polys = bethe_component_polys(sig, 2)
        # sigma_1^(2), sigma_2^(2), and the three quadratic products
        assert len(polys) == 5
        assert all(p.deg1() == 2 and p.is_homogeneous_deg1() for p in polys)

    def test_constant_terms_are_elementary_symmetric(self):
        # [u^0] tr Lambda^k(C g(u)) = e_k(c1..cn) since g(u) = 1 + O(u^-1);
        # each subset minor has constant term 1, so the weighted sum is e_k
        import itertools as it
        from loopcert.families import _minor_series
        cs = [F(2), F(3), F(5)]
        elementary = {1: F(10), 2: F(31), 3: F(30)}
        for k in (1, 2, 3):
            total = F(0)
            for subset in it.combinations(range(1, 4), k):
                assert _minor_series(3, subset, 2)[0] == CommPoly.const(1)
                w = F(1)
                for i in subset:
                    w *= cs[i - 1]
                total += w
            assert total == elementary[k]


class TestLeadingTerms:
    def test_linear_coefficient(self):
        # f = Delta_12: f^(r) = gamma_12^(r), leading term = x_12[r-1]
        for r in (1, 2, 3):
            f = gamma_var(2, 1, 2, r)
            assert gr2_leading(f, r) == CommPoly.variable(1, r - 1)

    def test_low_fourier_vanishes(self):
        # a product of two trace-zero functions has zero u^(-1) coefficient
        tay = {2: CommPoly.variable(1, 0) * CommPoly.variable(2, 0)}
        assert taylor_fourier(tay, 1, 4).is_zero()

    def test_product_cross_check_gl2(self):
        # f = Delta_11 * Delta_22 (centered): Taylor data and extraction agree
        gl2 = preset("gl2")
        x11, x22 = CommPoly.variable(0, 0), CommPoly.variable(3, 0)
        taylor = {1: x11 + x22, 2: x11 * x22}
        r = 3
        f_r = taylor_fourier(taylor, r, 4)
        k = 1  # lowest Taylor degree
        via_D = gr2_from_taylor(gl2, taylor[k], k, r, R=r + 1)
        assert gr2_leading(f_r, r) == via_D

    @pytest.mark.parametrize("entries,rmax,n", [
        ([1, 2], 4, 2), ([1, 1], 4, 2), ([1, 1, 2], 3, 3)])
    def test_double_computation_on_bethe(self, entries, rmax, n):
        """Extraction and the D-formula agree on every sigma coefficient."""
        gl = preset(f"gl{n}")
        C = TorusElement.diagonal(entries)
        sig = classical_bethe(n, C, rmax)
        tay = bethe_taylor_data(n, C)
        for k in range(1, n + 1):
            degs = sorted(tay[k])
            k0 = degs[0]
            for r in range(1, rmax + 1):
                direct = taylor_fourier(tay[k], r, n * n)
                assert direct == sig[(k, r)]
                if r >= k0 and not sig[(k, r)].is_zero():
                    lhs = gr2_leading(sig[(k, r)], r)
                    rhs = gr2_from_taylor(gl, tay[k][k0], k0, r, R=rmax + 1)
                    assert lhs == rhs

    def test_zero_coefficient_rejected(self):
        with pytest.raises(ValidationError):
            gr2_leading(CommPoly(), 2)


class TestCentralizerComponents:
    def test_invariant_component_dims(self):
        loop = LoopAlgebra(sl2, 4)
        # deg1 = 2 invariants of S(sl2[t]): only omega
        inv2 = invariant_component(loop, 2)
        assert len(inv2) == 1
        # deg1 = 3: D(omega) spans the line
        inv3 = invariant_component(loop, 3)
        assert len(inv3) == 1

    def test_constants_component(self):
        loop = LoopAlgebra(sl2, 3)
        sub = centralizer_subalgebra(loop, loop.omega(), 0, bracket=0, invariant=False)
        assert sub.dim == 1

    def test_omega_bracket1_kernel_contains_phi(self):
        loop = LoopAlgebra(sl2, 5)
        sub = centralizer_subalgebra(loop, loop.omega(), 2, bracket=1, invariant=False)
        assert sub.contains_poly(sl2.invariant_generators()[0].poly)

    def test_embedding(self):
        gl3 = preset("gl3")
        z = centralizer(gl3, TorusElement.diagonal([1, 1, 2]))
        p = z.invariant_generators()[0].poly
        q = embed_subalgebra_poly(z, p)
        assert q.variables() <= {(a, 0) for a in z.ambient_indices}
