from django.db import IntegrityError
from django.test import TestCase

from tropmod.models import PosetSnapshot, VerificationRun
from tropmod.moduli import build_moduli_poset
from tropmod.torelli import build_schottky_poset


class PosetSnapshotTests(TestCase):
    @classmethod
    def setUpTestData(cls):
        cls.moduli = build_moduli_poset(2)

    def test_store_and_match(self):
        self.assertIsNone(PosetSnapshot.matches(self.moduli))
        snapshot, changed = PosetSnapshot.store(self.moduli)
        self.assertFalse(changed)
        self.assertEqual(str(snapshot), 'moduli g=2 (7 cells)')
        self.assertTrue(PosetSnapshot.matches(self.moduli))

    def test_replacing_a_different_digest(self):
        PosetSnapshot.objects.create(kind='moduli', genus=2, fvector=[1], payload={}, digest='f' * 64)
        snapshot, changed = PosetSnapshot.store(self.moduli)
        self.assertTrue(changed)
        self.assertEqual(snapshot.fvector, [1, 2, 2, 2])
        self.assertEqual(PosetSnapshot.objects.count(), 1)

    def test_kinds_are_stored_separately(self):
        PosetSnapshot.store(self.moduli)
        PosetSnapshot.store(build_schottky_poset(2, moduli=self.moduli))
        self.assertEqual(list(PosetSnapshot.objects.values_list('kind', flat=True)), ['moduli', 'schottky'])

    def test_unique_per_kind_and_genus(self):
        PosetSnapshot.objects.create(kind='moduli', genus=3, fvector=[1], payload={}, digest='a' * 64)
        with self.assertRaises(IntegrityError):
            PosetSnapshot.objects.create(kind='moduli', genus=3, fvector=[1], payload={}, digest='b' * 64)


class VerificationRunTests(TestCase):
    def test_reproducibility(self):
        first = VerificationRun.objects.create(genus_max=3, seed=0, report='x', digest='d' * 64, passed=True)
        self.assertIsNone(first.is_reproducible())
        second = VerificationRun.objects.create(genus_max=3, seed=0, report='x', digest='d' * 64, passed=True)
        self.assertTrue(second.is_reproducible())
        other_seed = VerificationRun.objects.create(genus_max=3, seed=1, report='y', digest='e' * 64)
        self.assertIsNone(other_seed.is_reproducible())
        third = VerificationRun.objects.create(genus_max=3, seed=0, report='z', digest='e' * 64)
        self.assertFalse(third.is_reproducible())
        self.assertEqual(str(third), 'verify-all g<=3 seed=0 failed')
