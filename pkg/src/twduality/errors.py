"""Exception hierarchy.

Three broad classes matter for the CLI exit codes: FormatError (malformed
input files, exit 2), GuardError (resource guards, exit 3), and everything
else derived from TwdError (failed checks / invalid certificates, exit 1).
"""


class TwdError(Exception):
    """Base class for all library errors."""


class FormatError(TwdError):
    """Malformed .gr/.td/.br input."""


class EmptyElement(FormatError):
    """A .br element line with no vertices."""


class GuardError(TwdError):
    """An enumeration guard was exceeded."""


class TooLarge(GuardError):
    """Instance exceeds the configured enumeration bound."""


class NotATree(TwdError):
    """Node pairs of a decomposition do not form a tree."""


class SeparatorTooBig(TwdError):
    """Star decomposition center exceeds the threshold k."""


class NotAFlap(TwdError):
    """realize_flap called on a set that is not a k-flap."""


class BigInternalBag(TwdError):
    """A partial decomposition has a big bag at an internal node."""


class NoSmallBag(TwdError):
    """A partial decomposition needs at least one small bag."""


class BagMismatch(TwdError):
    """glue: the two identified leaves carry different bags."""


class BigIdentifiedInternal(TwdError):
    """glue: the identified node became internal but its bag is big."""


class OverlapViolation(TwdError):
    """glue: the two decomposed regions overlap beyond the common bag,
    or an edge joins the two regions outside it."""


class TouchingInputs(TwdError):
    """min_xy_separator called on touching vertex sets."""


class TouchingFlaps(TwdError):
    """merge_flaps_lemma1 called on touching flaps."""


class InvalidWitness(TwdError):
    """Separator/paths/flap witnesses are inconsistent with the
    decomposition being restricted."""


class NotUpwardClosed(TwdError):
    """A flap family violates upward closure."""


class TreewidthTooSmall(TwdError):
    """Bramble synthesis requested at k above the actual tree-width."""


class OrientationConflict(TwdError):
    """Covering-bag search found bramble elements on opposite sides of an
    adhesion; signals an invalid bramble or decomposition."""
