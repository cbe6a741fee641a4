import json

from tropmod.management.base import TropmodCommand
from tropmod.quadforms import classify_g2, parse_matrix


class Command(TropmodCommand):
    help = 'Reduces a binary positive semidefinite form under GL_2(Z) and names its A_2^tr cell'

    def add_arguments(self, parser):
        parser.add_argument('--matrix', required=True, help='Rows separated by ";", entries by ","')
        parser.add_argument('--json', action='store_true', help='Print a JSON document')

    def run(self, **options):
        reduction = classify_g2(parse_matrix(options['matrix']))

        if options['json']:
            self.stdout.write(json.dumps(reduction.to_json(), sort_keys=True, indent=2))
            return

        self.stdout.write(f'class     {reduction.kind.value}')
        self.stdout.write(f'reduced   {reduction.reduced}')
        self.stdout.write('transform ' + ';'.join(','.join(map(str, row)) for row in reduction.transform))
