from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from loopcert.commpoly import CommPoly, LoopAlgebra, enumerate_monomials
from loopcert.errors import TruncationError
from loopcert.liealg import preset
from loopcert.scalars import SymPoly

sl2 = preset("sl2")
E, H, FF = 0, 1, 2  # basis order e12, h1, e21


def var(a, r):
    return CommPoly.variable(a, r)


@pytest.fixture(scope="module")
def loop():
    return LoopAlgebra(sl2, R=8)


class TestPoissonBrackets:
    def test_generators_bracket0(self, loop):
        assert loop.poisson0(var(E, 0), var(FF, 0)) == var(H, 0)
        assert loop.poisson0(var(H, 2), var(H, 3)).is_zero()
        assert loop.poisson0(var(E, 1), var(FF, 2)) == var(H, 3)

    def test_generators_bracket1(self, loop):
        assert loop.poisson1(var(E, 0), var(FF, 0)) == var(H, 1)
        assert loop.poisson1(CommPoly.const(5), var(H, 0)).is_zero()

    def test_leibniz_example(self, loop):
        # {e[0]f[0], h[0]}_1 = {e,h}_1 f + e {f,h}_1 = -2 e[1]f[0] + 2 e[0]f[1]
        # (hand Leibniz with [e,h] = -2e, [f,h] = 2f)
        got = loop.poisson1(var(E, 0) * var(FF, 0), var(H, 0))
        expected = (var(E, 0) * var(FF, 1)).scale(2) - (var(E, 1) * var(FF, 0)).scale(2)
        assert got == expected
        # antisymmetry pins the orientation
        assert loop.poisson1(var(H, 0), var(E, 0) * var(FF, 0)) == -got

    def test_pencil_endpoints(self, loop):
        p, q = var(E, 0) * var(H, 1), var(FF, 2)
        assert loop.poisson_pencil(1, 0, p, q) == loop.poisson0(p, q)
        assert loop.poisson_pencil(0, 1, p, q) == loop.poisson1(p, q)

    def test_pencil_jacobi_example(self, loop):
        # cyclic Jacobi sum for the (1,1) pencil member on (e[0], f[0], h[1])
        a, b, c = var(E, 0), var(FF, 0), var(H, 1)
        br = lambda x, y: loop.poisson_pencil(1, 1, x, y)
        total = br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))
        assert total.is_zero()

    def test_truncation_error(self):
        tight = LoopAlgebra(sl2, R=2)
        with pytest.raises(TruncationError):
            tight.poisson1(var(E, 0), var(FF, 1))

    def test_bracket_bihomogeneous(self, loop):
        p = var(E, 1) * var(H, 0)  # bidegree (3, 1)
        q = var(FF, 2)             # bidegree (3, 2)
        out = loop.poisson0(p, q)
        grades = set(out.bigrade())
        assert grades <= {(5, 3)}
        out1 = loop.poisson1(p, q)
        assert set(out1.bigrade()) <= {(6, 4)}


small_polys = st.lists(
    st.tuples(st.sampled_from([E, H, FF]), st.integers(0, 2),
              st.fractions(min_value=-6, max_value=6, max_denominator=3)),
    min_size=1, max_size=3,
).map(lambda spec: sum((CommPoly.variable(a, r).scale(c) for a, r, c in spec),
                       CommPoly()))


@settings(max_examples=40, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_jacobi_and_antisymmetry_random(p, q, r):
    loop = LoopAlgebra(sl2, R=12)
    for br in (loop.poisson0, loop.poisson1):
        assert (br(p, q) + br(q, p)).is_zero()
        assert (br(p, br(q, r)) + br(q, br(r, p)) + br(r, br(p, q))).is_zero()


def test_jacobi_exhaustive_sl2_generators():
    """Exhaustive Jacobi over all generator triples with t-degree <= 3,
    for both brackets and the (1,1) pencil member."""
    import itertools
    loop = LoopAlgebra(sl2, R=12)
    gens = [var(a, r) for a in range(3) for r in range(4)]
    brackets = [loop.poisson0, loop.poisson1,
                lambda x, y: loop.poisson_pencil(1, 1, x, y)]
    for br in brackets:
        for p, q, r in itertools.product(gens, repeat=3):
            assert (br(p, br(q, r)) + br(q, br(r, p)) + br(r, br(p, q))).is_zero()


@settings(max_examples=40, deadline=None)
@given(small_polys, small_polys, small_polys)
def test_leibniz_random(p, q, r):
    loop = LoopAlgebra(sl2, R=12)
    assert loop.poisson0(p, q * r) == loop.poisson0(p, q) * r + q * loop.poisson0(p, r)


class TestDerivation:
    def test_generator(self, loop):
        assert loop.derivation_D(var(E, 0)) == var(E, 1)
        assert loop.derivation_D(CommPoly.const(1)).is_zero()

    def test_leibniz(self, loop):
        got = loop.derivation_D(var(E, 0) * var(FF, 1))
        expected = var(E, 1) * var(FF, 1) + (var(E, 0) * var(FF, 2)).scale(2)
        assert got == expected

    def test_derivation_property_random(self, loop):
        p = var(E, 0) * var(H, 1) + var(FF, 2).scale(F(1, 3))
        q = var(H, 0) ** 2
        assert loop.derivation_D(p * q) == \
            loop.derivation_D(p) * q + p * loop.derivation_D(q)

    def test_overflow(self):
        tight = LoopAlgebra(sl2, R=2)
        with pytest.raises(TruncationError):
            tight.derivation_D(var(E, 1))


class TestPhi1v:
    def test_generator_image(self, loop):
        img = loop.phi_1v(var(E, 0), 2)
        v = SymPoly.gen("v")
        expected = CommPoly({((E, 0),): SymPoly.const("v", 1),
                             ((E, 1),): -v, ((E, 2),): v * v})
        assert img == expected

    def test_v0_specialization(self, loop):
        p = var(E, 0) * var(H, 1) + var(FF, 0).scale(3)
        img = loop.phi_1v(p, 3)
        spec = img.map_coeffs(lambda c: c.at_zero())
        assert spec == p

    def test_inverse_composition(self, loop):
        cutoff = 3
        v = SymPoly.gen("v")
        img = loop.phi_1v(var(E, 0), cutoff)
        # apply the stated inverse x[m] -> x[m] + v x[m+1] and truncate
        inv = img.subst_vars(lambda w: CommPoly(
            {((w[0], w[1]),): SymPoly.const("v", 1),
             ((w[0], w[1] + 1),): v}))
        inv = inv.map_coeffs(lambda c: c.truncate(cutoff) if isinstance(c, SymPoly) else c)
        assert inv == var(E, 0).map_coeffs(lambda c: c * SymPoly.const("v", 1))

    def test_exp_minus_vD_on_tdeg0(self, loop):
        # phi agrees with exp(-vD) termwise on polynomials in the x[0]'s
        cutoff = 3
        p = var(E, 0) * var(FF, 0)
        img = loop.phi_1v(p, cutoff)
        acc = CommPoly()
        sign, fact = 1, 1
        q = p
        for k in range(cutoff + 1):
            if k > 0:
                q = loop.derivation_D(q)
                fact *= k
                sign = -sign
            vk = SymPoly("v", [0] * k + [F(sign, fact)])
            acc = acc + q.map_coeffs(lambda c, vk=vk: c * vk)
        assert img == acc

    def test_transported_bracket(self, loop):
        # poisson0(phi p, phi q) + v poisson1(phi p, phi q) = phi(poisson0(p, q))
        cutoff = 2
        p, q = var(E, 0) * var(H, 0), var(FF, 1)
        lhs = loop.poisson0(loop.phi_1v(p, cutoff), loop.phi_1v(q, cutoff)) + \
            loop.poisson1(loop.phi_1v(p, cutoff),
                          loop.phi_1v(q, cutoff)).scale(SymPoly.gen("v"))
        lhs = lhs.map_coeffs(lambda c: c.truncate(cutoff))
        rhs = loop.phi_1v(loop.poisson0(p, q), cutoff)
        assert lhs == rhs

    def test_overflow(self, loop):
        with pytest.raises(TruncationError):
            loop.phi_1v(var(E, 0), 20)


class TestCasimirs:
    def test_omega_dual_basis(self, loop):
        expected = (var(H, 0) ** 2).scale(F(1, 2)) + (var(E, 0) * var(FF, 0)).scale(2)
        assert loop.omega() == expected

    def test_D_omega_is_2_Omega(self, loop):
        assert loop.derivation_D(loop.omega()) == loop.Omega().scale(2)

    def test_omega_invariant(self, loop):
        for a in range(sl2.dim):
            assert loop.poisson0(var(a, 0), loop.omega()).is_zero()


class TestBigrade:
    def test_single_variable(self):
        assert set(var(E, 2).bigrade()) == {(3, 2)}

    def test_constant(self):
        assert set(CommPoly.const(F(5)).bigrade()) == {(0, 0)}

    def test_mixed(self):
        p = var(E, 0) * var(FF, 1) + var(H, 2)
        parts = p.bigrade()
        assert set(parts) == {(3, 1), (3, 2)}
        assert parts[(3, 1)] == var(E, 0) * var(FF, 1)
        assert parts[(3, 2)] == var(H, 2)


def test_enumerate_monomials_weights():
    vs = [(0, 0), (1, 0), (0, 1)]
    monos = enumerate_monomials(vs, 2)
    # deg1 = 2: x^2, xy, y^2 over t-deg 0 vars, plus the single t-deg-1 var
    assert len(monos) == 4
    assert all(sum(r + 1 for _, r in m) == 2 for m in monos)


def test_render_canonical():
    # graded-lex: within deg1 = 2 the all-t-degree-0 monomial sorts first
    p = var(H, 0) ** 2 + var(E, 1).scale(F(-1, 2))
    assert p.render() == "1*x1[0]^2 + -1/2*x0[1]"
