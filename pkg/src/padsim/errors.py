"""Exception hierarchy for padsim."""


class PadsimError(Exception):
    """Base class for all padsim errors."""


class DomainError(PadsimError, ValueError):
    """An argument is outside the mathematical domain of an operation."""


class ConfigurationError(PadsimError, ValueError):
    """A scene, source, or scenario config is inconsistent or invalid."""


class PresetLookupError(PadsimError, KeyError):
    """Unknown material preset name or source."""


class InstabilityError(PadsimError, RuntimeError):
    """The time-domain solver produced a non-finite field value."""

    def __init__(self, component, index, step):
        self.component = component
        self.index = tuple(int(i) for i in index)
        self.step = int(step)
        super().__init__(
            f"non-finite {component} at cell {self.index} on step {self.step}"
        )


class MemoryCapError(PadsimError, RuntimeError):
    """A grid would exceed the configured memory cap."""


class IncomparableRunsError(PadsimError, ValueError):
    """Two sweeps differ in more than the pad record and cannot be compared."""

    def __init__(self, differing_keys):
        self.differing_keys = list(differing_keys)
        super().__init__(
            "runs are not comparable; differing keys: "
            + ", ".join(self.differing_keys)
        )


class NoResonanceError(PadsimError, ValueError):
    """A spectrum is too flat to contain a resonance."""


class UndefinedImprovementError(PadsimError, ZeroDivisionError):
    """Baseline power is zero; the improvement ratio is undefined."""
