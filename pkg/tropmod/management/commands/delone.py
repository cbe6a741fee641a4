import json

from tropmod.management.base import TropmodCommand
from tropmod.quadforms import delone_subdivision, parse_matrix


class Command(TropmodCommand):
    help = 'Computes the Delone subdivision of a positive definite form up to translation'

    def add_arguments(self, parser):
        parser.add_argument('--matrix', required=True, help='Rows separated by ";", entries by ",", e.g. "2,-1;-1,2"')
        parser.add_argument('--window', type=int, default=3, help='Search radius for cell vertices (default 3)')
        parser.add_argument('--json', action='store_true', help='Print a JSON document')

    def run(self, **options):
        form = parse_matrix(options['matrix'])
        period = delone_subdivision(form, options['window'])

        if options['json']:
            document = dict(period.to_json(), matrix=form.to_rows(), type=period.combinatorial_type())
            self.stdout.write(json.dumps(document, sort_keys=True, indent=2))
            return

        self.stdout.write(f'type {period.combinatorial_type()}')
        for cell in period.cells:
            self.stdout.write('  ' + ' '.join('(' + ','.join(map(str, vertex)) + ')' for vertex in cell))
