"""Exception hierarchy.

Two branches matter to callers:

* :class:`ValidationError` covers malformed inputs and broken construction
  invariants (bad pmfs, improper attribute bindings, out-of-range t-norm
  arguments, unparseable workspaces).  The CLI maps these to exit code 2.
* :class:`EngineError` covers failures of a well-formed computation
  (conditioning on an impossible event, a 2x2 joint with a negative cell,
  quadrature that cannot reach tolerance).  The CLI maps these to exit code 3.
"""

from __future__ import annotations


class PflError(Exception):
    """Base class for everything this package raises on purpose."""


class ValidationError(PflError):
    """Input or invariant violation detected at construction/load time."""


class ParseError(ValidationError):
    """Workspace file could not be parsed.

    Carries enough context to point at the offending spot.
    """

    def __init__(self, message: str, *, source: str | None = None,
                 field: str | None = None) -> None:
        loc = ""
        if source is not None:
            loc += f" [{source}]"
        if field is not None:
            loc += f" (field: {field})"
        super().__init__(message + loc)
        self.source = source
        self.field = field


class DomainError(ValidationError):
    """Argument outside the unit interval where one was required."""


class ValueNotInSpace(ValidationError):
    """A referenced element is not a value of the discrete space."""


class EmptySupport(ValidationError):
    """A normalizing sum over the space is zero, so the model is undefined."""


class ImproperAttribute(ValidationError):
    """Attribute binding violates properness.

    Either the base element has nonzero selection probability or no element
    has zero selection probability under the bound model.
    """


class EngineError(PflError):
    """A well-formed query failed during evaluation."""


class ConditionImpossible(EngineError):
    """Conditioning event has probability zero (or one, for negations)."""


class UnresolvedJoint(EngineError):
    """A needed conditional is neither declared independent nor tabulated."""


class InconsistentJoint(EngineError):
    """Implied joint probabilities leave [0, 1]; the combination is incoherent."""


class ZeroProbabilityEvent(EngineError):
    """Requested a conditional mean of an event with probability zero."""


class QuadratureFailure(EngineError):
    """Adaptive integration did not reach the requested tolerance."""

    def __init__(self, message: str, *, achieved: float | None = None) -> None:
        if achieved is not None:
            message += f" (achieved abs error estimate: {achieved:.3e})"
        super().__init__(message)
        self.achieved = achieved


class InvalidBase(EngineError):
    """The designated base point has nonzero selection probability."""


class ProportionOverflow(EngineError):
    """A treatment stage demands more units than remain unassigned."""


class EmptyGroup(EngineError):
    """An estimator needed a nonempty assignment group and got none."""
