import itertools
import unittest
from fractions import Fraction
from .ncalg import (
    ONE,
    ZERO,
    GenSymbol,
    LaurentInt,
    NCTensorPoly,
    ReductionStatus,
    UnassignedGeneratorError,
    adjoint,
    normalize,
    reduce,
    render,
    replay_trace,
    tensor,
)
from .qpres import (
    AlgebraMorphism,
    Status,
    build_circle,
    build_delta,
    build_suq,
    build_theta,
    build_w_presentation,
    check_hypothesis_b,
    check_sections,
    coaction_defect,
    coaction_invariant,
    cp_link,
    e_symbol,
    gamma_split,
    inversion_length,
    level_presentation,
    sphere_link,
    su_q_tower,
    verify_coassoc,
    verify_delta_star,
    verify_hs_restriction,
    verify_link,
    verify_pi_square,
    verify_square,
    verify_theta_ideal,
    w_tower,
)

q = LaurentInt.q()


def gen(name, i, j):
    return GenSymbol(name, (i, j))


def u(i, j):
    return NCTensorPoly.generator(gen("u", i, j))


class TestPresentations(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)

    def test_e_symbol(self):

        self.assertEqual(inversion_length((3, 1, 2)), 2)
        self.assertEqual(e_symbol((1, 2), 2), 1)
        self.assertEqual(e_symbol((2, 1), 2), -q)
        self.assertEqual(e_symbol((3, 2, 1), 3), -LaurentInt.q(3))
        self.assertEqual(e_symbol((1, 1), 2), 0)
        with self.assertRaises(ValueError):
            e_symbol((1, 3), 2)

    def test_e_symbol_swap(self):

        for n in (3, 4):
            for seq in itertools.permutations(range(1, n + 1)):
                for i in range(n - 1):
                    if seq[i] > seq[i + 1]:
                        continue
                    swapped = seq[:i] + (seq[i + 1], seq[i]) + seq[i + 2 :]
                    self.assertEqual(e_symbol(swapped, n), -q * e_symbol(seq, n), seq)

    def test_suq(self):

        for n in (2, 3):
            pres = build_suq(n)
            self.assertEqual(len(pres.matrix_generators()), n * n)
            self.assertEqual(len(pres.alg_relations), 2 * n * n + n**n)
            self.assertEqual(len(pres.rules), len(pres.alg_relations))
            self.assertEqual(len({r.lhs for r in pres.rules}), len(pres.rules))
        self.assertIs(build_suq(3), build_suq(3))
        with self.assertRaises(ValueError):
            build_suq(1)

        rels = dict(build_suq(2).alg_relations)
        self.assertEqual(rels["E_1_2"], u(1, 1) * u(2, 2) - q * u(1, 2) * u(2, 1) - 1)
        self.assertEqual(rels["U_row_1_2"], u(1, 1) * adjoint(u(2, 1)) + u(1, 2) * adjoint(u(2, 2)))

    def test_trivial_levels(self):

        pres = level_presentation("u", 1)
        self.assertEqual(pres.matrix_generators(), [])
        self.assertEqual(pres.sorted_generators(), [ONE, ZERO])
        self.assertIs(pres, level_presentation("u", 1))
        with self.assertRaises(ValueError):
            level_presentation("v", 2)

    def test_w(self):

        pres = build_w_presentation(3)
        self.assertEqual(pres.alg_relations, ())
        self.assertEqual(len(pres.norm_relations), 9)
        self.assertEqual(pres.norm_bound(gen("w", 1, 2)), Fraction(1))
        self.assertIsNone(pres.norm_bound(gen("u", 1, 2)))

    def test_circle(self):

        pres = build_circle()
        self.assertEqual(pres.key, ("circle", 1))
        self.assertEqual([r.origin for r in pres.rules], ["circle_right", "circle_left"])


class TestMorphisms(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)

    def test_theta(self):

        theta = build_theta(3)
        self.assertEqual(theta(u(1, 2)), u(1, 2))
        self.assertTrue(theta(u(1, 3)).is_zero())
        self.assertTrue(theta(u(2, 3)).is_zero())
        self.assertEqual(theta(u(3, 3)), NCTensorPoly.unit())
        self.assertEqual(theta(adjoint(u(2, 1)) * u(3, 3)), adjoint(u(2, 1)))

        counit = build_theta(2)
        self.assertEqual(counit(u(1, 1)), NCTensorPoly.unit())
        self.assertEqual(counit(u(2, 2)), NCTensorPoly.unit())
        self.assertTrue(counit(u(1, 2)).is_zero())
        with self.assertRaises(ValueError):
            build_theta(1)

    def test_delta(self):

        delta = build_delta(2)
        expected = tensor(u(1, 1), u(1, 2)) + tensor(u(1, 2), u(2, 2))
        self.assertEqual(delta(u(1, 2)), expected)
        self.assertEqual(delta(NCTensorPoly.unit()), NCTensorPoly.unit(2))
        self.assertEqual(delta(adjoint(u(1, 2))), adjoint(expected))

    def test_assignment(self):

        pres = build_suq(2)
        with self.assertRaises(UnassignedGeneratorError):
            AlgebraMorphism("m", pres, pres, {})
        full = {g: NCTensorPoly.generator(g) for g in pres.matrix_generators()}
        with self.assertRaises(ValueError):
            AlgebraMorphism("m", pres, pres, full, image_degree=2)
        starred = dict(full)
        starred[gen("u", 1, 1).star()] = u(1, 1)
        with self.assertRaises(ValueError):
            AlgebraMorphism("m", pres, pres, starred)
        identity = AlgebraMorphism("id", pres, pres, full)
        p = u(1, 1) * adjoint(u(2, 1)) - q
        self.assertEqual(identity(p), p)


class TestSuites(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)

    def test_coassoc(self):

        for n in (2, 3):
            report = verify_coassoc(n)
            self.assertTrue(report.all_verified())
            self.assertEqual(report.summary["total"], n * n + 2)
        self.assertEqual(verify_coassoc(3, jobs=4).to_dict(), verify_coassoc(3, jobs=1).to_dict())

    def test_square(self):

        for n in (2, 3, 4):
            self.assertTrue(verify_square(n).all_verified())

    def test_delta_star(self):

        report = verify_delta_star(3)
        self.assertTrue(report.all_verified())
        self.assertEqual(report.summary["total"], 2 * 11)

    def test_pi_square(self):

        for n in (2, 3):
            self.assertTrue(verify_pi_square(n).all_verified())

    def test_theta_ideal(self):

        for n in (2, 3):
            report = verify_theta_ideal(n)
            self.assertEqual(report.count(Status.VERIFIED), 2 * n * n + n**n)
            self.assertEqual(report.count(Status.UNKNOWN), 0)
        with self.assertRaises(ValueError):
            verify_theta_ideal(6)

    def test_theta_ideal_certificates(self):

        theta = build_theta(3)
        rules = theta.target.rules
        checked = 0
        for rid, rel in theta.source.alg_relations:
            p = normalize(theta(rel))
            if p.is_zero():
                continue
            out = reduce(p, rules, keep_trace=True)
            self.assertEqual(out.status, ReductionStatus.REDUCED_TO_ZERO, rid)
            self.assertEqual(replay_trace(out), p - out.result, rid)
            longest = max(len(w) for words in p.terms for w in words)
            self.assertLessEqual(out.steps, len(p.terms) * longest * 10, rid)
            checked += 1
        self.assertGreater(checked, 0)

    def test_report(self):

        report = verify_square(3)
        d = report.to_dict()
        self.assertEqual(d["task"], "square")
        self.assertEqual(d["level"], [3, 2])
        ids = [x["id"] for x in d["items"]]
        self.assertEqual(ids, sorted(ids))
        self.assertEqual(d["summary"]["Verified"], 11)
        self.assertIn("11/11 Verified", report.to_text())

    def test_plot(self):

        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        from .qpres import plot_report

        fig, ax = plt.subplots()
        plot_report(ax, verify_coassoc(2))
        self.assertEqual(len(ax.patches), 3)
        plt.close(fig)


class TestTowers(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)

    def test_gamma_split(self):

        tower = w_tower(2, 4)
        self.assertEqual(
            gamma_split(tower, 3, gen("w", 3, 3)),
            {2: ONE, 3: gen("w", 3, 3), 4: gen("w", 3, 3)},
        )
        res = gamma_split(tower, 2, gen("w", 1, 1), (2, 4))
        self.assertEqual(res, {2: gen("w", 1, 1), 3: gen("w", 1, 1), 4: gen("w", 1, 1)})
        self.assertEqual(tower.move(3, gen("w", 1, 3), 2), ZERO)
        with self.assertRaises(ValueError):
            gamma_split(tower, 2, gen("w", 3, 3))
        with self.assertRaises(ValueError):
            tower.window((1, 4))

    def test_sections(self):

        self.assertTrue(check_sections(w_tower(2, 4)).all_verified())
        self.assertTrue(check_sections(su_q_tower(2, 4)).all_verified())
        with self.assertRaises(ValueError):
            check_sections(su_q_tower(2, 3, sections=False))

    def test_hypothesis_b(self):

        report = check_hypothesis_b(w_tower(2, 5), jobs=2)
        self.assertTrue(report.all_verified())
        self.assertEqual(report.summary["total"], 4 * (4 + 9 + 16 + 25))

        report = check_hypothesis_b(su_q_tower(2, 3))
        self.assertGreaterEqual(report.count(Status.REFUTED), 1)
        refuted = {x.item_id for x in report.items if x.status is Status.REFUTED}
        self.assertIn("R2->3:U_row_1_1", refuted)
        self.assertFalse(any(i.startswith("R3->2:") for i in refuted))


class TestHomogeneousSpaces(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)

    def test_sphere(self):

        link = sphere_link(4)
        for n in (2, 3, 4):
            for j in range(1, n + 1):
                self.assertEqual(coaction_invariant(u(n, j), link, n), Status.VERIFIED)
        for n in (3, 4):
            self.assertEqual(coaction_invariant(u(1, 1), link, n), Status.REFUTED)
        # at n = 2 theta_2 is the counit, so every element is invariant
        self.assertEqual(coaction_invariant(u(1, 1), link, 2), Status.VERIFIED)

    def test_right_side(self):

        link = sphere_link(3)
        for i in range(1, 4):
            self.assertEqual(coaction_invariant(u(i, 3), link, 3, side="right"), Status.VERIFIED)
        self.assertEqual(coaction_invariant(u(3, 1), link, 3, side="right"), Status.REFUTED)
        with self.assertRaises(ValueError):
            coaction_defect(u(1, 1), link, 3, side="middle")

    def test_defect(self):

        link = sphere_link(3)
        self.assertTrue(coaction_defect(u(3, 2), link, 3).is_zero())
        with self.assertRaises(ValueError):
            coaction_defect(u(4, 1), link, 3)

    def test_cp(self):

        link = cp_link(4)
        samples = link.samples(3)
        self.assertEqual(len(samples), 9)
        for label, f in samples:
            self.assertEqual(coaction_invariant(f, link, 3), Status.VERIFIED, label)

    def test_restriction(self):

        for link in (sphere_link(4), cp_link(4)):
            report = verify_hs_restriction(link, 4)
            self.assertTrue(report.all_verified())
            self.assertEqual(report.summary["total"], 2 * len(link.samples(4)))

    def test_invariants_form_a_star_algebra(self):

        link = sphere_link(3)
        a, b, c = u(3, 1), u(3, 2), u(3, 3)
        for f in [
            a * b,
            b * a * c,
            adjoint(b),
            adjoint(a) * c,
            2 * a + q * b,
            a * adjoint(a) + adjoint(b) * b - LaurentInt.q(-1) * c,
        ]:
            self.assertEqual(coaction_invariant(f, link, 3), Status.VERIFIED, render(f))
        self.assertEqual(coaction_invariant(a * u(1, 1), link, 3), Status.REFUTED)
        self.assertEqual(coaction_invariant(a + u(2, 1), link, 3), Status.REFUTED)

    def test_level_five(self):

        link = sphere_link(5)
        for j in range(1, 6):
            self.assertEqual(coaction_invariant(u(5, j), link, 5), Status.VERIFIED, j)
        self.assertEqual(coaction_invariant(u(4, 4), link, 5), Status.REFUTED)
        report = verify_hs_restriction(link, 5)
        self.assertTrue(report.all_verified())
        self.assertEqual(report.summary["total"], 10)
        ids = {x.item_id for x in report.items}
        self.assertTrue({"pre:u[5,1]", "u[5,1]", "pre:u[5,5]", "u[5,5]"} <= ids)

    def test_link(self):

        report = verify_link(sphere_link(4), 3)
        self.assertTrue(report.all_verified())
        self.assertEqual(report.summary["total"], 2 * 11)


if __name__ == "__main__":
    unittest.main()
