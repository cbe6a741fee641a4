import logging

from django.conf import settings
from django.core.cache import cache
from django.core.management.base import BaseCommand, CommandError

from tropmod.exceptions import TropmodError
from tropmod.models import PosetSnapshot
from tropmod.moduli import build_moduli_poset
from tropmod.parallel import resolve_jobs
from tropmod.posets import f_vector, maximal_cells
from tropmod.torelli import build_schottky_poset

logger = logging.getLogger(__name__)

CACHE_VERSION = 1


def poset_cache_key(kind, genus):
    return f'tropmod:{kind}:g{genus}'


def load_poset(kind, genus, jobs=1, use_cache=True):
    """Moduli or Schottky poset of a genus, through the file cache unless disabled"""
    key = poset_cache_key(kind, genus)
    if use_cache:
        poset = cache.get(key, version=CACHE_VERSION)
        if poset is not None:
            logger.debug('cache hit for %s', key)
            return poset

    if kind == 'moduli':
        poset = build_moduli_poset(genus, jobs=jobs)
    elif kind == 'schottky':
        poset = build_schottky_poset(genus, jobs=jobs, moduli=load_poset('moduli', genus, jobs, use_cache))
    else:
        raise CommandError(f'unknown poset kind "{kind}"')

    if use_cache:
        cache.set(key, poset, version=CACHE_VERSION)
    return poset


class TropmodCommand(BaseCommand):
    """
    Shared plumbing: a --jobs option and library errors reported as
    CommandError (exit status 1). Subclasses implement `run`.
    """

    def add_jobs_argument(self, parser):
        parser.add_argument(
            '--jobs',
            type=int,
            default=None,
            help='Worker processes; 0 uses every core (default: TROPMOD_JOBS)',
        )

    def add_cache_argument(self, parser):
        parser.add_argument('--no-cache', action='store_true', help='Rebuild instead of reading the poset cache')

    def jobs(self, options):
        requested = options.get('jobs')
        return resolve_jobs(settings.TROPMOD_JOBS if requested is None else requested)

    def handle(self, *args, **options):
        try:
            return self.run(**options)
        except TropmodError as exc:
            raise CommandError(str(exc)) from exc

    def run(self, **options):
        raise NotImplementedError('subclasses of TropmodCommand must provide a run() method')


class PosetCommand(TropmodCommand):
    """Common surface of the `moduli` and `schottky` commands"""
    kind = None

    def add_arguments(self, parser):
        parser.add_argument('--genus', type=int, required=True, help='Genus between 2 and 5')
        output = parser.add_mutually_exclusive_group()
        output.add_argument('--fvector', action='store_true', help='Print the f-vector, comma separated')
        output.add_argument('--json', action='store_true', help='Print the canonical JSON export')
        output.add_argument('--dot', action='store_true', help='Print the Hasse diagram in DOT')
        parser.add_argument('--store', action='store_true', help='Save the poset as a snapshot in the database')
        self.add_cache_argument(parser)
        self.add_jobs_argument(parser)

    def run(self, **options):
        poset = load_poset(self.kind, options['genus'], self.jobs(options), not options['no_cache'])
        fvector = f_vector(poset)

        if options['fvector']:
            self.stdout.write(','.join(map(str, fvector)))
        elif options['json']:
            self.stdout.write(poset.to_json_text())
        elif options['dot']:
            self.stdout.write(poset.to_dot(), ending='')
        else:
            self.stdout.write(f'{self.kind} poset, genus {poset.genus}')
            self.stdout.write(f'  f-vector:      {",".join(map(str, fvector))}')
            self.stdout.write(f'  total cells:   {len(poset)}')
            self.stdout.write(f'  maximal cells: {len(maximal_cells(poset))}')
            self.stdout.write(f'  digest:        {poset.digest()}')

        if options['store']:
            snapshot, changed = PosetSnapshot.store(poset)
            if changed:
                self.stderr.write(self.style.WARNING(f'Snapshot {snapshot} replaced a different digest'))
            else:
                self.stderr.write(self.style.SUCCESS(f'✓ Stored snapshot {snapshot}'))
