from tropmod.management.base import PosetCommand


class Command(PosetCommand):
    help = 'Builds the poset of cells of the tropical Schottky locus A_g^cogr'
    kind = 'schottky'
