from tropmod.management.base import TropmodCommand, load_poset
from tropmod.torelli import MAX_GENUS, MIN_GENUS, reproduce_tables


class Command(TropmodCommand):
    help = 'Prints maximal and total cell counts of M_g^tr and A_g^cogr next to the A_g^tr literature values'

    def add_arguments(self, parser):
        parser.add_argument('--genus-max', type=int, default=MAX_GENUS, help='Largest genus computed (default 5)')
        self.add_cache_argument(parser)
        self.add_jobs_argument(parser)

    def run(self, **options):
        jobs = self.jobs(options)
        use_cache = not options['no_cache']
        posets = {
            g: (load_poset('moduli', g, jobs, use_cache), load_poset('schottky', g, jobs, use_cache))
            for g in range(MIN_GENUS, min(options['genus_max'], MAX_GENUS) + 1)
        }
        report = reproduce_tables(options['genus_max'], jobs=jobs, posets=posets)
        self.stdout.write(report.format(), ending='')
