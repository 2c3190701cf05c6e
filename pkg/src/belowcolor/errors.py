"""Exception types shared across the package."""


class DimacsError(ValueError):
    """Malformed DIMACS ``.col`` input."""


class GuardError(ValueError):
    """A size or memory guard refused the request."""


class ModulatorError(ValueError):
    """The supplied vertex set is not a modulator of the required kind."""


class InvalidWitnessError(ValueError):
    """A coloring or clique cover failed verification."""
