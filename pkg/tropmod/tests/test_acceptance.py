from django.test import SimpleTestCase

from tropmod.acceptance import (
    CHECKS,
    RANDOM_CURVES,
    RANDOM_FORMS,
    RELABELINGS,
    AcceptanceContext,
    CheckResult,
    check,
    run_checks,
)
from tropmod.exceptions import FormError, GenusError


class AcceptanceTests(SimpleTestCase):
    def test_report_is_deterministic(self):
        only = ['trivalent-counts', 'certificate-relabel', 'jacobian-examples', 'g2-equivalence']
        first = run_checks(3, seed=1, only=only)
        second = run_checks(3, seed=1, only=only)
        self.assertTrue(first.passed, first.text())
        self.assertEqual(first.text(), second.text())
        self.assertEqual(first.digest(), second.digest())
        self.assertEqual([r.name for r in first.results], only)

    def test_sample_sizes(self):
        report = run_checks(3, only=['certificate-relabel', 'torelli-coefficients', 'delone-classification'])
        self.assertTrue(report.passed, report.text())
        details = [result.detail for result in report.results]
        self.assertEqual(details[0], f'{(7 + 42) * RELABELINGS} random relabelings')
        self.assertEqual(details[1], f'{RANDOM_CURVES} random metric curves')
        self.assertEqual(details[2], f'{RANDOM_FORMS} random definite forms')
        self.assertEqual((RELABELINGS, RANDOM_CURVES, RANDOM_FORMS), (100, 200, 100))

    def test_prebuilt_context_is_reused(self):
        context = AcceptanceContext(2, 0)
        run_checks(2, only=['moduli-fvectors', 'moduli-structure'], context=context)
        self.assertEqual(list(context.moduli), [2])

    def test_library_errors_fail_the_check(self):
        @check('always-raises')
        def always_raises(ctx):
            raise FormError('increase window')

        self.addCleanup(CHECKS.pop)
        report = run_checks(2, only=['always-raises'])
        self.assertFalse(report.passed)
        self.assertEqual(report.failures[0].detail, 'FormError: increase window')
        self.assertIn('[FAIL] always-raises', report.text())

    def test_line_format(self):
        self.assertEqual(CheckResult('x', True, 'fine').line(), '[PASS] x: fine')

    def test_genus_bound(self):
        with self.assertRaises(GenusError):
            run_checks(6)
