from dataclasses import replace
from itertools import product

from django.test import SimpleTestCase

from tropmod.covers import (
    FPFan,
    Overlap,
    build_cover,
    build_cover_a2,
    build_cover_a3,
    build_fp,
    modp_ray_classes,
    verify_witnesses,
)
from tropmod.exceptions import CoverError
from tropmod.matroids import fano, mk4_matrix, u23_matrix, uniform


class FanTests(SimpleTestCase):
    def test_fp3(self):
        fan = build_fp(3)
        self.assertEqual(fan.rays[-1], (-1, -1, -1))
        self.assertEqual(len(fan.cones()), 15)
        self.assertEqual(len(fan.maximal_cones()), 4)

    def test_fp6_cone_count(self):
        self.assertEqual(len(FPFan(6).cones()), 2 ** 7 - 1)

    def test_invalid(self):
        with self.assertRaises(CoverError):
            FPFan(0)


class CoverA2Tests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.cover = build_cover_a2()

    def test_counts(self):
        self.assertEqual(len(self.cover.assignments), 4)
        self.assertEqual(len(self.cover.overlaps), 24)
        self.assertEqual(verify_witnesses(self.cover), 24)

    def test_summary(self):
        self.assertEqual(self.cover.summary(), '24 overlaps verified; 4 deletions ≅ U23; OK')

    def test_cell_images_cover_the_target(self):
        self.assertEqual(set(self.cover.cell_images.values()), set(range(len(self.cover.classes))))
        self.assertEqual(len(self.cover.classes), 4)

    def test_tampered_witness_is_rejected(self):
        overlap = next(o for o in self.cover.overlaps if len(o.subset) == 2)
        broken = Overlap(overlap.i, overlap.j, overlap.subset, ((2, 1), (1, 1)))
        tampered = replace(self.cover, overlaps=[broken])
        with self.assertRaises(CoverError):
            verify_witnesses(tampered)

    def test_json(self):
        data = self.cover.to_json()
        self.assertEqual(data['n'], 3)
        self.assertEqual(len(data['overlaps']), 24)
        self.assertEqual(len(data['cell_images']), 15)


class CoverA3Tests(SimpleTestCase):
    def test_fano_cover(self):
        cover = build_cover_a3()
        self.assertEqual(len(cover.assignments), 7)
        self.assertEqual(verify_witnesses(cover), 672)
        self.assertEqual(cover.summary(), '672 overlaps verified; 7 deletions ≅ MK4; OK')
        self.assertEqual(len(cover.classes), 9)


class CoverErrorTests(SimpleTestCase):
    def test_deletion_not_isomorphic(self):
        with self.assertRaises(CoverError):
            build_cover(uniform(2, 4), mk4_matrix(), 'MK4')

    def test_wrong_source(self):
        with self.assertRaises(CoverError):
            build_cover(fano(), u23_matrix(), 'U23')


class ModPTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(modp_ray_classes(2, 3), 4)
        self.assertEqual(modp_ray_classes(3, 2), 7)
        self.assertEqual(modp_ray_classes(1, 2), 1)

    def test_brute_force(self):
        for p in (2, 3, 5):
            for g in (1, 2, 3):
                vectors = {v for v in product(range(p), repeat=g) if any(v)}
                orbits = {min(v, tuple(-x % p for x in v)) for v in vectors}
                self.assertEqual(modp_ray_classes(g, p), len(orbits))

    def test_errors(self):
        with self.assertRaises(CoverError):
            modp_ray_classes(2, 4)
        with self.assertRaises(CoverError):
            modp_ray_classes(0, 3)
