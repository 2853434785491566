import unittest
import numpy as np
from .ncalg import (
    ONE,
    ZERO,
    DegreeMismatchError,
    GenSymbol,
    LaurentInt,
    NCTensorPoly,
    ReductionStatus,
    RuleOrientationError,
    adjoint,
    apply_morphism,
    mul,
    normalize,
    orient,
    poly_equal,
    reduce,
    render,
    replay_trace,
    tensor,
)
from .qpres import build_circle

q = LaurentInt.q()


def u(i, j):
    return NCTensorPoly.generator(GenSymbol("u", (i, j)))


def x():
    return NCTensorPoly.generator(GenSymbol("x"))


class _Transpose:
    """
    u[i,j] -> u[j,i], degree preserving
    """

    image_degree = 1

    def image(self, g):
        if g.is_scalar:
            return NCTensorPoly.generator(g)
        return NCTensorPoly.generator(GenSymbol(g.name, g.indices[::-1], g.starred))


class _Doubling:
    image_degree = 2

    def image(self, g):
        p = NCTensorPoly.generator(g)
        return tensor(p, p)


class TestLaurent(unittest.TestCase):
    def test_arithmetic(self):

        self.assertEqual(LaurentInt.q(2) * LaurentInt.q(-2), 1)
        self.assertEqual((q - 1) * (q + 1), q**2 - 1)
        self.assertEqual(q ** -1, LaurentInt.q(-1))
        self.assertEqual(2 - q, -(q - 2))
        self.assertFalse(LaurentInt())

    def test_units(self):

        self.assertTrue((-q**3).is_unit())
        self.assertEqual((-q**3).inverse(), -LaurentInt.q(-3))
        self.assertFalse(LaurentInt(2).is_unit())
        with self.assertRaises(ValueError):
            LaurentInt(2).inverse()
        with self.assertRaises(ValueError):
            (q + 1).inverse()

    def test_render(self):

        self.assertEqual(str(LaurentInt({2: -1, 1: 3, 0: -1})), "-q^2 + 3*q - 1")
        self.assertEqual(str(LaurentInt.q(-2)), "q^-2")
        self.assertEqual(str(LaurentInt()), "0")


class TestPoly(unittest.TestCase):
    def test_symbols(self):

        g = GenSymbol("u", (1, 2))
        self.assertEqual(str(g.star()), "u[1,2]'")
        self.assertEqual(g.star().star(), g)
        self.assertIs(ONE.star(), ONE)
        self.assertEqual(ZERO.star(), ZERO)
        with self.assertRaises(ValueError):
            GenSymbol("one", (1,))

    def test_normalize(self):

        g = GenSymbol("u", (1, 1))
        p = NCTensorPoly(1, {((ONE, g),): 1, ((g, ZERO),): 5, ((g, ONE, ONE),): 2})
        self.assertEqual(normalize(p), 3 * u(1, 1))
        self.assertTrue((u(1, 1) - u(1, 1)).is_zero())
        self.assertTrue(NCTensorPoly.generator(ZERO).is_zero())
        self.assertEqual(NCTensorPoly.generator(ONE), NCTensorPoly.unit())

    def test_adjoint(self):

        p = u(1, 1) * adjoint(u(1, 2)) + q * u(2, 1)
        self.assertEqual(adjoint(adjoint(p)), p)
        self.assertEqual(adjoint(u(1, 1) * u(1, 2)), adjoint(u(1, 2)) * adjoint(u(1, 1)))
        self.assertEqual(adjoint(q * u(1, 1)), q * adjoint(u(1, 1)))
        t = tensor(u(1, 1), u(2, 2))
        self.assertEqual(adjoint(t), tensor(adjoint(u(1, 1)), adjoint(u(2, 2))))

    def test_products(self):

        a, b = u(1, 1), u(1, 2)
        self.assertNotEqual(a * b, b * a)
        self.assertEqual((a + b) ** 2, a * a + a * b + b * a + b * b)
        self.assertEqual(a ** 0, NCTensorPoly.unit())
        t = mul(tensor(a, b), tensor(b, a))
        self.assertEqual(t, tensor(a * b, b * a))

    def test_ring_axioms(self):

        rng = np.random.default_rng(7)
        gens = [u(i, j) for i in (1, 2) for j in (1, 2)]
        gens += [adjoint(g) for g in gens]

        def random_poly():
            p = NCTensorPoly.zero()
            for _ in range(rng.integers(1, 4)):
                coeff = LaurentInt({int(rng.integers(-2, 3)): int(rng.choice([-3, -2, -1, 1, 2, 3]))})
                m = NCTensorPoly.unit(1, coeff)
                for k in rng.integers(0, len(gens), size=rng.integers(0, 4)):
                    m = m * gens[k]
                p = p + m
            return p

        for _ in range(50):
            a, b, c = random_poly(), random_poly(), random_poly()
            self.assertEqual((a * b) * c, a * (b * c))
            self.assertEqual(a * (b + c), a * b + a * c)
            self.assertEqual((a + b) * c, a * c + b * c)
            self.assertEqual(adjoint(a * b), adjoint(b) * adjoint(a))
            self.assertEqual(adjoint(a + b), adjoint(a) + adjoint(b))
            self.assertEqual(adjoint(adjoint(a)), a)

    def test_degrees(self):

        t = tensor(u(1, 1), u(2, 2))
        self.assertEqual(t.degree, 2)
        with self.assertRaises(DegreeMismatchError):
            t + u(1, 1)
        with self.assertRaises(DegreeMismatchError):
            mul(t, u(1, 1))
        with self.assertRaises(DegreeMismatchError):
            u(1, 1).lift(2)
        self.assertEqual(NCTensorPoly.unit(1, q).lift(3), NCTensorPoly.unit(3, q))
        self.assertFalse(poly_equal(NCTensorPoly.unit(1), NCTensorPoly.unit(2)))

    def test_render(self):

        det = u(1, 1) * u(2, 2) - q * u(1, 2) * u(2, 1) - 1
        self.assertEqual(render(det), "u[1,1]*u[2,2] - q*u[1,2]*u[2,1] - 1")
        self.assertEqual(render(tensor(u(1, 1), u(2, 2))), "u[1,1](x)u[2,2]")
        self.assertEqual(render(adjoint(u(1, 2))), "u[1,2]'")
        self.assertEqual(render(NCTensorPoly.zero(2)), "0")

    def test_apply_morphism(self):

        p = u(1, 2) * u(2, 1) + 2
        self.assertEqual(apply_morphism(_Transpose(), p), u(2, 1) * u(1, 2) + 2)

        t = tensor(u(1, 2), u(1, 2))
        self.assertEqual(apply_morphism(_Transpose(), t, leg=1), tensor(u(1, 2), u(2, 1)))

        d = apply_morphism(_Doubling(), u(1, 1) * u(2, 2))
        self.assertEqual(d, tensor(u(1, 1) * u(2, 2), u(1, 1) * u(2, 2)))
        with self.assertRaises(ValueError):
            apply_morphism(_Doubling(), t)
        self.assertEqual(apply_morphism(_Doubling(), t, leg=0).degree, 3)
        with self.assertRaises(ValueError):
            apply_morphism(_Transpose(), t, leg=2)


class TestRewriting(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)
        cls.rules = build_circle().rules

    def test_orient(self):

        det = u(1, 1) * u(2, 2) - q * u(1, 2) * u(2, 1) - 1
        rule = orient(det, "det")
        self.assertEqual(rule.lhs, (GenSymbol("u", (1, 1)), GenSymbol("u", (2, 2))))
        self.assertEqual(rule.rhs, q * u(1, 2) * u(2, 1) + 1)

        rule = orient(-q * u(1, 1) + 1, "scaled")
        self.assertEqual(rule.rhs, NCTensorPoly.unit(1, LaurentInt.q(-1)))

    def test_orient_failures(self):

        with self.assertRaises(RuleOrientationError):
            orient(2 * u(1, 1) - 1, "non-unit")
        with self.assertRaises(RuleOrientationError):
            orient(NCTensorPoly.zero(), "zero")
        with self.assertRaises(RuleOrientationError):
            orient(NCTensorPoly.unit(1, 5), "constant")
        with self.assertRaises(RuleOrientationError):
            orient(tensor(u(1, 1), u(1, 1)), "tensor")

    def test_reduce(self):

        xs = adjoint(x())
        out = reduce(x() * xs - 1, self.rules)
        self.assertEqual(out.status, ReductionStatus.REDUCED_TO_ZERO)
        self.assertEqual(out.steps, 1)
        self.assertIsNone(out.normal_form)

        out = reduce(x() * xs * x(), self.rules)
        self.assertEqual(out.status, ReductionStatus.NORMAL_FORM)
        self.assertEqual(out.normal_form, x())

        out = reduce(x(), self.rules, step_limit=0)
        self.assertEqual(out.status, ReductionStatus.NORMAL_FORM)

    def test_step_limit(self):

        xs = adjoint(x())
        out = reduce(x() * xs * x() * xs, self.rules, step_limit=1)
        self.assertEqual(out.status, ReductionStatus.STEP_LIMIT)
        self.assertEqual(out.steps, 1)
        self.assertFalse(out.result.is_zero())

        out = reduce(x() * xs * x() * xs, self.rules)
        self.assertEqual(out.result, NCTensorPoly.unit())

    def test_leg_rules(self):

        xs = adjoint(x())
        t = tensor(x() * xs - 1, xs * x())
        out = reduce(t, leg_rules=[self.rules, ()])
        self.assertEqual(out.status, ReductionStatus.REDUCED_TO_ZERO)
        out = reduce(t, leg_rules=[(), self.rules])
        self.assertEqual(out.status, ReductionStatus.NORMAL_FORM)
        self.assertEqual(out.result, tensor(x() * xs - 1, NCTensorPoly.unit()))
        with self.assertRaises(ValueError):
            reduce(t, leg_rules=[self.rules])

    def test_replay(self):

        xs = adjoint(x())
        for p in [
            x() * xs * x() * xs + 3 * xs * x() * x(),
            q * x() * xs - q,
            tensor(x() * xs, xs * x() * xs),
        ]:
            out = reduce(p, self.rules, keep_trace=True)
            self.assertEqual(len(out.trace), out.steps)
            self.assertEqual(replay_trace(out), p - out.result)

        out = reduce(x(), self.rules)
        with self.assertRaises(ValueError):
            replay_trace(out)


if __name__ == "__main__":
    unittest.main()
