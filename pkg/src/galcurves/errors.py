"""Exception hierarchy shared by all galcurves modules."""


class GalcurvesError(Exception):
    """Base class for every error raised by this package."""


class GridError(GalcurvesError, ValueError):
    """A grid or sampled function violates its invariants."""


class ParseError(GalcurvesError, ValueError):
    """Expression text could not be parsed.

    ``offset`` is the 0-based character position of the offending input.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class EvalError(GalcurvesError, ArithmeticError):
    """Expression evaluation left the real domain.

    ``kind`` is one of ``division_by_zero``, ``log_domain``, ``sqrt_domain``
    or ``non_finite``; ``offset`` points at the failing node in the source.
    """

    def __init__(self, kind, offset, detail=""):
        msg = f"{kind} at offset {offset}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.kind = kind
        self.offset = offset


class NumericError(GalcurvesError):
    """A geometric quantity is undefined at some grid node."""

    def __init__(self, message, index):
        super().__init__(f"{message} at node {index}")
        self.index = index


class KappaVanishes(NumericError):
    """Curvature dropped below the cutoff, so N and B are undefined."""

    def __init__(self, index, value=None):
        detail = "curvature vanishes"
        if value is not None:
            detail += f" (kappa={value:.3e})"
        super().__init__(detail, index)
        self.value = value


class DegenerateNormal(NumericError):
    """The surface normal has (numerically) zero length on the trace."""

    def __init__(self, index):
        super().__init__("surface normal degenerates", index)


class AdmissibilityError(GalcurvesError, ValueError):
    """A curve is not of the form (x, y(x), z(x)) over its grid."""


class KindMismatch(GalcurvesError, ValueError):
    """A Smarandache kind was requested from the wrong kind of frame."""


class SpecError(GalcurvesError, ValueError):
    """A family specification is missing parameters or has invalid ones."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class ValidationError(GalcurvesError, ValueError):
    """A profile document is malformed; ``path`` is a JSON pointer."""

    def __init__(self, path, message):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


class ProfileIOError(GalcurvesError, OSError):
    """A profile or table file could not be read or written."""
