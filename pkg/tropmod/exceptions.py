class TropmodError(ValueError):
    """Base class for every error raised by the tropmod library"""


class GraphError(TropmodError):
    """Invalid weighted graph, missing edge or unsupported size"""


class GenusError(TropmodError):
    """Genus outside the supported range of an operation"""


class MatroidError(TropmodError):
    """Matroid or totally unimodular matrix outside an operation's contract"""


class FormError(TropmodError):
    """Quadratic form that is malformed or outside an operation's contract"""


class CoverError(TropmodError):
    """Gluing data of a covering fan that fails verification"""
