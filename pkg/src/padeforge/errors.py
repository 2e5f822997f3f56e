"""Exception hierarchy for padeforge."""


class PadeForgeError(Exception):
    """Base class for all padeforge errors."""


# --- power series ---

class DenominatorVanishesAtZero(PadeForgeError):
    """Expansion point z=0 is a pole of the rational function."""


class TruncationExceeded(PadeForgeError):
    """Requested order exceeds the truncation order of a series."""


# --- pade core ---

class InsufficientTruncation(PadeForgeError):
    """Series is too short for the requested Pade index."""


class NotInDpq(PadeForgeError):
    """Hankel membership test failed; no unique approximant at this index."""


class SingularSystem(PadeForgeError):
    """Order-condition solve hit a near-zero pivot despite membership."""


class DirectionViolation(PadeForgeError):
    """Perturbation direction has support below the required order."""


class InterpolationInconsistent(PadeForgeError):
    """Held-out sample of the determinant polynomial fit disagrees."""


class NoAdmissibleD(PadeForgeError):
    """All ring candidates give a vanishing determinant polynomial."""


# --- geometry ---

class EmptyCompact(PadeForgeError):
    """No lattice point satisfies the compact's constraints."""


class NonFiniteValue(PadeForgeError):
    """Function evaluation produced NaN/Inf on a grid point."""

    def __init__(self, point, message=None):
        self.point = point
        super().__init__(message or f"non-finite value at z={point}")


class RootFindingDivergence(PadeForgeError):
    """Denominator root residuals exceed tolerance."""


# --- density constructors ---

class IndexTooSmall(PadeForgeError):
    """Pade index does not dominate the target's degrees."""


class CertificateFailed(PadeForgeError):
    """A constructor inequality broke; carries which clause failed."""

    def __init__(self, clause, message=None):
        self.clause = clause
        super().__init__(message or f"certificate construction failed: {clause}")


class PoleInRegion(PadeForgeError):
    """A denominator root violates the pole-location constraint."""


class SurrogateDivergence(PadeForgeError):
    """Partial sums failed to meet the surrogate tolerance within the cap."""


class NoDeltaFound(PadeForgeError):
    """Stability bisection reached its floor without acceptance."""
