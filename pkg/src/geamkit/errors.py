"""Exception hierarchy shared by all geamkit modules."""


class GeamError(ValueError):
    """Base class for every error raised by geamkit."""


class DimensionMismatch(GeamError):
    pass


class RangeViolation(GeamError):
    """A parameter (b, S, mu, nu, rank, ...) lies outside its admissible range."""


class PositivityViolation(GeamError):
    """A constructed measurement operator has a negative eigenvalue."""

    def __init__(self, alpha, k, min_eigenvalue):
        self.alpha = alpha
        self.k = k
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"operator P[{alpha},{k}] is not positive: min eigenvalue {min_eigenvalue:.3e}"
        )


class NotADesign(GeamError):
    """The per-frame symmetry constants S_alpha differ, so no conical 2-design."""


class NoPositiveS(GeamError):
    pass


class ImpureInput(GeamError):
    pass


class UnsupportedPreset(GeamError):
    pass
