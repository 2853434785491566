import unittest
from .abgrp import FGAbelianGroup, GroupHom, euler_characteristic, is_exact_sequence, is_iso
from .abgrp import is_surjective, solve_sixterm
from .towers import (
    Lim1Tag,
    MLJustification,
    ProTag,
    GroupTower,
    TailPattern,
    cp_tower,
    lim1_classify,
    lim_classify,
    milnor_assemble,
    sphere_hexagon,
    sphere_tower,
    su_tower,
    truncate,
)

Z = FGAbelianGroup.free(1)


def constant_tower(G, matrix, levels=4, tail=TailPattern.CONSTANT):
    return GroupTower("T", 1, [G] * levels, [GroupHom(G, G, matrix)] * (levels - 1), tail)


class TestTowers(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)

    def test_tower(self):

        k0, _ = cp_tower(4)
        self.assertEqual((k0.start, k0.end), (0, 4))
        self.assertEqual(k0.ranks(), [1, 2, 3, 4, 5])
        self.assertTrue(is_surjective(k0.composite(4, 0)))
        with self.assertRaises(ValueError):
            k0.group(5)
        with self.assertRaises(ValueError):
            k0.window((1, 6))

    def test_tail_check(self):

        with self.assertRaises(ValueError):
            GroupTower("T", 1, [Z, FGAbelianGroup.free(2)], [GroupHom(FGAbelianGroup.free(2), Z, [[1, 0]])],
                       TailPattern.CONSTANT)
        with self.assertRaises(ValueError):
            constant_tower(Z, [[2]], tail=TailPattern.RANK_LINEAR)
        with self.assertRaises(ValueError):
            GroupTower("T", 1, [Z, Z], {})

    def test_dict(self):

        k0, _ = cp_tower(3)
        t = GroupTower.from_dict(k0.to_dict())
        self.assertEqual(t.ranks(), k0.ranks())
        self.assertEqual(t.tail, TailPattern.RANK_LINEAR)
        self.assertTrue(all(t.map(n) == k0.map(n) for n in range(1, 4)))

    def test_lim1(self):

        res = lim1_classify(constant_tower(Z, [[1]]))
        self.assertEqual((res.tag, res.justification), (Lim1Tag.ZERO_ML, MLJustification.SURJECTIVE))
        self.assertEqual(str(res), "0 (ZeroML: Surjective)")

        res = lim1_classify(constant_tower(FGAbelianGroup.cyclic(2), [[0]]))
        self.assertEqual(res.justification, MLJustification.EVENTUALLY_ZERO)

        res = lim1_classify(constant_tower(FGAbelianGroup.free(2), [[1, 0], [0, 0]]))
        self.assertEqual(res.justification, MLJustification.STABILIZED_IMAGES)

        res = lim1_classify(constant_tower(Z, [[2]]))
        self.assertEqual(res.tag, Lim1Tag.UNKNOWN)
        self.assertFalse(res.is_zero)
        res = lim1_classify(constant_tower(Z, [[0]], tail=TailPattern.CUSTOM))
        self.assertEqual(res.tag, Lim1Tag.UNKNOWN)

    def test_lim(self):

        self.assertEqual(lim_classify(constant_tower(Z, [[1]])).tag, ProTag.STABLE)
        self.assertEqual(lim_classify(constant_tower(Z, [[-1]])).group, Z)
        self.assertEqual(lim_classify(constant_tower(Z, [[0]])).tag, ProTag.TRIVIAL)
        self.assertEqual(lim_classify(constant_tower(Z, [[2]])).tag, ProTag.UNCLASSIFIED)

        k0, k1 = cp_tower(5)
        res = lim_classify(k0)
        self.assertEqual(res.tag, ProTag.PRO_FREE)
        self.assertEqual(str(res), "Z^inf (ProFree)")
        self.assertEqual(lim_classify(k1).tag, ProTag.TRIVIAL)

    def test_single_level(self):

        k0, k1 = sphere_tower(2)
        self.assertEqual((k0.start, k0.end), (2, 2))
        self.assertEqual(lim_classify(k0).tag, ProTag.UNCLASSIFIED)
        res = lim1_classify(k0)
        self.assertEqual(res.tag, Lim1Tag.UNKNOWN)
        self.assertEqual(res.evidence, "no maps in the window")
        res = milnor_assemble(k0, k1)
        self.assertNotEqual(res.rk0.tag, ProTag.STABLE)
        self.assertNotEqual(str(res.rk1), "Z")
        self.assertFalse(any(x.is_zero for x in res.lim1))
        res = milnor_assemble(*sphere_tower(6), window=(4, 4))
        self.assertEqual([x.tag for x in res.rk], [ProTag.UNCLASSIFIED] * 2)

    def test_truncate(self):

        for towers in (sphere_tower(6), cp_tower(6), su_tower(6)):
            full = milnor_assemble(*towers)
            cut = milnor_assemble(*(truncate(t, 2) for t in towers))
            self.assertEqual([str(x) for x in full.rk], [str(x) for x in cut.rk])
        with self.assertRaises(ValueError):
            truncate(sphere_tower(3)[0], 2)


class TestKTheory(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        import logging

        logging.disable(logging.CRITICAL)

    def test_sphere(self):

        k0, k1 = sphere_tower(8)
        self.assertEqual((k0.start, k0.end), (2, 8))
        self.assertTrue(all(G == Z for G in k0.groups + k1.groups))
        res = milnor_assemble(k0, k1)
        self.assertEqual(res.rk0.tag, ProTag.STABLE)
        self.assertEqual(res.rk0.group, Z)
        self.assertEqual(res.rk1.tag, ProTag.TRIVIAL)
        self.assertEqual(str(res.rk0), "Z")
        self.assertEqual(str(res.rk1), "0")
        self.assertTrue(all(x.is_zero for x in res.lim1))

    def test_sphere_maps(self):

        # classical hexagon of S^{2n-3} in S^{2n-1}: Z -0-> Z -1-> Z -0-> Z -1-> Z -0-> Z -1->
        hand = [GroupHom(Z, Z, [[d]]) for d in (0, 1, 0, 1, 0, 1)]
        self.assertTrue(is_exact_sequence(hand + hand[:1]))
        self.assertFalse(is_exact_sequence([GroupHom(Z, Z, [[2]])] + hand[1:] + hand[:1]))

        k0, k1 = sphere_tower(8)
        for n in range(3, 9):
            self.assertIn(k0.map(n).matrix.tolist(), ([[1]], [[-1]]))
            self.assertEqual(k1.map(n).matrix.tolist(), [[0]])
            self.assertTrue(is_iso(k0.map(n)))
        self.assertTrue(is_iso(k0.composite(8, 2)))
        self.assertTrue(k1.composite(4, 2).is_zero())

        res = solve_sixterm(sphere_hexagon((Z, Z)))
        for i, h in enumerate(hand):
            ours = res.concrete_map(i)
            self.assertEqual(abs(ours.matrix[0, 0]), h.matrix[0, 0], i)
        self.assertEqual(euler_characteristic(res.nodes), 0)

    def test_cp(self):

        k0, k1 = cp_tower(10)
        self.assertEqual(k0.ranks(), [n + 1 for n in range(11)])
        self.assertTrue(all(G.is_trivial() for G in k1.groups))
        self.assertTrue(all(G.is_free() for G in k0.groups))
        res = milnor_assemble(k0, k1)
        self.assertEqual(str(res.rk0), "Z^inf (ProFree)")
        self.assertEqual(res.lim1[0].justification, MLJustification.SURJECTIVE)
        self.assertEqual(str(res.rk1), "0")

    def test_su(self):

        k0, k1 = su_tower(6)
        self.assertEqual(k0.ranks(), [2 ** (n - 2) for n in range(2, 7)])
        self.assertEqual(k1.ranks(), k0.ranks())
        self.assertEqual(k0.tail, TailPattern.RANK_GEOMETRIC)
        res = milnor_assemble(k0, k1)
        self.assertEqual(res.rk0.tag, ProTag.PRO_FREE)
        self.assertEqual(res.rk1.tag, ProTag.PRO_FREE)
        self.assertEqual(
            [x.justification for x in res.lim1], [MLJustification.SURJECTIVE] * 2
        )
        self.assertIn("Nagy comparison", res.provenance)

    def test_unknown_lim1(self):

        k0 = constant_tower(Z, [[2]])
        O = FGAbelianGroup.zero()
        k1 = GroupTower("T", 1, [O] * 4, [GroupHom.zero(O, O)] * 3, TailPattern.CONSTANT)
        res = milnor_assemble(k0, k1)
        self.assertEqual(res.rk1.tag, ProTag.UNCLASSIFIED)
        self.assertEqual(res.split_justification, "torsion free")
        self.assertTrue(res.lim1[0].is_zero)
        with self.assertRaises(ValueError):
            milnor_assemble(k0, sphere_tower(4)[1])

    def test_plot(self):

        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
        from .towers import plot_tower

        fig, ax = plt.subplots()
        plot_tower(ax, cp_tower(4)[0])
        self.assertEqual(len(ax.patches), 5)
        plt.close(fig)


if __name__ == "__main__":
    unittest.main()
