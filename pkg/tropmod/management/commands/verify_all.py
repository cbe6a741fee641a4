from django.core.management.base import CommandError

from tropmod.acceptance import CHECKS, AcceptanceContext, run_checks
from tropmod.management.base import TropmodCommand, load_poset
from tropmod.models import PosetSnapshot, VerificationRun


class Command(TropmodCommand):
    help = 'Runs every acceptance check up to a genus and fails on any mismatch'

    def add_arguments(self, parser):
        parser.add_argument('--genus-max', type=int, default=4, help='Largest genus checked, 2..5 (default 4)')
        parser.add_argument('--seed', type=int, default=0, help='Seed for the randomized inputs (default 0)')
        parser.add_argument(
            '--check',
            action='append',
            choices=[name for name, _ in CHECKS],
            help='Run only the named check; may be repeated',
        )
        parser.add_argument('--record', action='store_true', help='Save the report as a VerificationRun')
        self.add_cache_argument(parser)
        self.add_jobs_argument(parser)

    def run(self, **options):
        jobs = self.jobs(options)
        use_cache = not options['no_cache']
        genus_max, seed = options['genus_max'], options['seed']
        context = AcceptanceContext(genus_max, seed, jobs)
        for g in context.genera:
            if g > 5:
                break
            context.moduli[g] = load_poset('moduli', g, jobs, use_cache)
            context.schottky[g] = load_poset('schottky', g, jobs, use_cache)

        report = run_checks(genus_max, seed, jobs, only=options['check'], context=context)
        self.stdout.write(report.text(), ending='')
        self.stdout.write(f'digest {report.digest()}')

        mismatched = []
        for posets in (context.moduli, context.schottky):
            for poset in posets.values():
                if PosetSnapshot.matches(poset) is False:
                    mismatched.append(f'{poset.kind} g={poset.genus}')
        for name in mismatched:
            self.stdout.write(self.style.ERROR(f'Snapshot mismatch: {name}'))

        if options['record']:
            run = VerificationRun.objects.create(
                genus_max=genus_max,
                seed=seed,
                report=report.text(),
                digest=report.digest(),
                passed=report.passed and not mismatched,
            )
            reproducible = run.is_reproducible()
            if reproducible is False:
                self.stdout.write(self.style.WARNING('Report differs from the previous run with these parameters'))
            elif reproducible:
                self.stdout.write('Report identical to the previous run with these parameters')

        if not report.passed:
            names = ', '.join(result.name for result in report.failures)
            raise CommandError(f'acceptance checks failed: {names}')
        if mismatched:
            raise CommandError(f'stored snapshots differ: {", ".join(mismatched)}')
        self.stdout.write(self.style.SUCCESS(f'\n✓ All {len(report.results)} checks passed'))
