import json

from tropmod.management.base import TropmodCommand
from tropmod.trivalent import enumerate_trivalent
from tropmod.weighted_graphs import automorphism_edge_group_order


class Command(TropmodCommand):
    help = 'Lists the connected trivalent graphs of a genus, the maximal cells of M_g^tr'

    def add_arguments(self, parser):
        parser.add_argument('--genus', type=int, required=True, help='Genus between 2 and 6')
        output = parser.add_mutually_exclusive_group()
        output.add_argument('--json', action='store_true', help='Print a JSON document')
        output.add_argument('--count', action='store_true', help='Print the number of graphs only')
        self.add_jobs_argument(parser)

    def run(self, **options):
        graphs = enumerate_trivalent(options['genus'], jobs=self.jobs(options))

        if options['count']:
            self.stdout.write(str(len(graphs)))
        elif options['json']:
            document = {
                'genus': options['genus'],
                'count': len(graphs),
                'graphs': [
                    {'graph': graph.to_text(), 'aut': automorphism_edge_group_order(graph)}
                    for graph in graphs
                ],
            }
            self.stdout.write(json.dumps(document, sort_keys=True, indent=2))
        else:
            for graph in graphs:
                self.stdout.write(graph.to_text())
            self.stdout.write(
                self.style.SUCCESS(f'\n✓ {len(graphs)} trivalent graphs of genus {options["genus"]}')
            )
