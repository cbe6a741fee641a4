import json

from django.core.management.base import CommandError

from tropmod.management.base import TropmodCommand
from tropmod.torelli import MetricCurve, jacobian_in_cographic_cone, tropical_jacobian


class Command(TropmodCommand):
    help = 'Computes the tropical Jacobian of a metric curve and its coordinates in the cographic cone'

    def add_arguments(self, parser):
        parser.add_argument(
            '--curve',
            required=True,
            help='JSON file with "graph" (text encoding) and "lengths" (rationals as strings or numbers)',
        )
        parser.add_argument('--json', action='store_true', help='Print a JSON document')

    def run(self, **options):
        try:
            with open(options['curve'], encoding='utf-8') as handle:
                data = json.load(handle)
        except OSError as exc:
            raise CommandError(f'cannot read curve file: {exc}') from exc
        except json.JSONDecodeError as exc:
            raise CommandError(f'curve file is not JSON: {exc}') from exc

        curve = MetricCurve.from_json(data)
        jacobian = tropical_jacobian(curve)
        coefficients = jacobian_in_cographic_cone(curve)

        if options['json']:
            document = {
                'curve': curve.to_json(),
                'genus': curve.genus,
                'jacobian': jacobian.to_rows(),
                'cone_coefficients': [
                    {'edges': list(edges), 'coefficient': str(value)} for edges, value in coefficients.items()
                ],
            }
            self.stdout.write(json.dumps(document, sort_keys=True, indent=2))
            return

        self.stdout.write(str(jacobian))
        for edges, value in coefficients.items():
            self.stdout.write(f'  edges {",".join(map(str, edges))}: {value}')
