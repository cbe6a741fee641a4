from tropmod.management.base import PosetCommand


class Command(PosetCommand):
    help = 'Builds the cell poset P_g of the tropical moduli space M_g^tr'
    kind = 'moduli'
