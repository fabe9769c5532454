"""Exception types raised by the solver."""


class DomainError(ValueError):
    """An argument lies outside the domain of a formula."""


class SpinodalError(DomainError):
    """A strain inside the unstable interval (alpha, beta) where the sound speed is undefined."""


class MaterialError(ValueError):
    """Invalid constitutive parameters."""


class NoSignChangeError(ValueError):
    """The root bracket does not contain a sign change."""

    def __init__(self, lo, hi, f_lo, f_hi):
        self.lo, self.hi, self.f_lo, self.f_hi = lo, hi, f_lo, f_hi
        super().__init__(
            f"no sign change on [{lo!r}, {hi!r}]: f(lo)={f_lo!r}, f(hi)={f_hi!r}"
        )


class ConvergenceError(RuntimeError):
    """The root finder ran out of iterations."""


class RegimeError(ValueError):
    """The impact velocity is outside the range a construction handles."""


class KineticsError(ValueError):
    """The requested kinetic relation cannot be applied to this material."""


class UnavailableCurveError(ValueError):
    """The requested locus curve does not exist for this material case."""
