"""Exception hierarchy shared by all schemes."""


class OrdListError(Exception):
    """Base class for errors raised by this package."""


class MalformedElement(OrdListError, ValueError):
    """Bytes do not decode to a valid group element."""


class MalformedContainer(OrdListError, ValueError):
    """A serialized container failed to parse."""


# PPAL
class InvalidList(OrdListError, ValueError):
    pass


class InvalidQuery(OrdListError, ValueError):
    pass


class NotMember(InvalidQuery):
    def __init__(self, missing):
        self.missing = list(missing)
        super().__init__(f"{len(self.missing)} queried element(s) not in the list")


class EmptyAggregate(OrdListError, ValueError):
    pass


class InconsistentDigest(OrdListError, ValueError):
    pass


# integer commitments and range proofs
class MessageTooLarge(OrdListError, ValueError):
    pass


class DegenerateElement(OrdListError, ArithmeticError):
    """A group element shares a factor with the modulus."""


class NegativeInput(OrdListError, ValueError):
    pass


class NegativeWitness(OrdListError, ValueError):
    pass


class NonPositiveWitness(OrdListError, ValueError):
    pass


class InvalidOpening(OrdListError, ValueError):
    pass


# zero-knowledge sets and lists
class CannotOpenSoft(OrdListError, ValueError):
    pass


class KeyLengthError(OrdListError, ValueError):
    pass


class HashCollision(OrdListError, ValueError):
    pass


class InvalidFlag(OrdListError, ValueError):
    pass
