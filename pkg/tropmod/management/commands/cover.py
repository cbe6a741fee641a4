import json

from tropmod.covers import build_cover_a2, build_cover_a3, verify_witnesses
from tropmod.management.base import TropmodCommand


class Command(TropmodCommand):
    help = 'Builds the FP^3 -> A_2^tr or FP^6 -> A_3^tr cover with a witness for every overlap'

    def add_arguments(self, parser):
        parser.add_argument('--genus', type=int, choices=[2, 3], required=True)
        output = parser.add_mutually_exclusive_group()
        output.add_argument('--verify', action='store_true', help='Re-check every recorded witness')
        output.add_argument('--json', action='store_true', help='Print assignments, witnesses and cell images')
        self.add_jobs_argument(parser)

    def run(self, **options):
        build = build_cover_a3 if options['genus'] == 3 else build_cover_a2
        cover = build(jobs=self.jobs(options))

        if options['json']:
            self.stdout.write(json.dumps(cover.to_json(), sort_keys=True))
            return
        if options['verify']:
            verify_witnesses(cover)
        self.stdout.write(self.style.SUCCESS(cover.summary()))
