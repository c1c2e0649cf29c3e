"""Exception types shared across the package.

Two failure families matter to callers: unusable input data (``DataError``)
and computations that are numerically degenerate on otherwise valid data
(``DegenerateError``). Parameter misuse raises plain ``ValueError``.
"""


class VixgateError(Exception):
    """Base class for errors raised by this package."""


class DataError(VixgateError):
    """Input data cannot be used: parse failures, duplicate dates, disjoint
    calendars, missing gate coverage, or series too short for the request."""


class DegenerateError(VixgateError):
    """A metric or fit is undefined on the given data, e.g. zero return
    variance, a constant regressor, or a curve with no drawdown."""
