"""Exception types shared by the engine and the CLI."""


class CoherenceError(Exception):
    """Base class for engine errors reported per query by the CLI."""


class MissingAtom(CoherenceError, KeyError):
    pass


class TooManyAtoms(CoherenceError, ValueError):
    pass


class UnsatisfiableAntecedent(CoherenceError, ValueError):
    pass


class TrivialIterated(CoherenceError, ValueError):
    """The antecedent of an iterated conditional is identically zero."""


class UnboundSymbol(CoherenceError, KeyError):
    pass


class IncoherentBase(CoherenceError, ValueError):
    pass


class NotPConsistent(CoherenceError, ValueError):
    pass


class TrivialPremise(CoherenceError, ValueError):
    pass


class NotGnImplied(CoherenceError, ValueError):
    pass


class UnsupportedArity(CoherenceError, ValueError):
    pass
