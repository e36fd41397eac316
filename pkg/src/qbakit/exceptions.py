"""Exception types raised by qbakit operations.

Invalid bias-correction results are *not* exceptions: they are returned as
data (see :class:`qbakit.tables.InvalidCorrection`) because callers count
them when computing estimable proportions.
"""


class QbaError(Exception):
    """Base class for all qbakit errors."""


class ZeroCell(QbaError):
    """A 2x2 cell is zero or negative, so the odds ratio is undefined.

    No automatic continuity correction is applied.
    """


class NonPositiveInput(QbaError):
    """A quantity that must be strictly positive (OR, SE) was not."""


class GridTooLarge(QbaError):
    """A full-grid sweep would exceed the configured cell-count cap."""


class NoFeasibleTable(QbaError):
    """No synthetic table satisfies the requested incidence/OR combination."""


class TooFewValidCells(QbaError):
    """A stratum has too few valid cells to compute contour lines."""


class EmptyClass(QbaError):
    """A confusion-matrix rate has a zero denominator.

    The message names which rate(s) are undefined.
    """
