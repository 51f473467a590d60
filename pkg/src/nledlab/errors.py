"""Exception hierarchy shared by all nledlab modules."""


class NledError(Exception):
    """Base class. Carries optional location context for solver failures."""

    def __init__(self, message, *, cell=None, step=None, stage=None):
        self.message = message
        self.cell = cell
        self.step = step
        self.stage = stage
        super().__init__(self._render())

    def _render(self):
        where = []
        if self.cell is not None:
            where.append(f"cell {self.cell}")
        if self.step is not None:
            where.append(f"step {self.step}")
        if self.stage is not None:
            where.append(f"RK stage {self.stage}")
        if where:
            return f"{self.message} ({', '.join(where)})"
        return self.message

    def annotate(self, **ctx):
        """Return a copy with extra location context filled in."""
        kw = dict(cell=self.cell, step=self.step, stage=self.stage)
        kw.update({k: v for k, v in ctx.items() if v is not None})
        return type(self)(self.message, **kw)


class ContractViolation(NledError, ValueError):
    pass


class FieldBoundExceeded(NledError):
    """Born-Infeld discriminant Delta <= 0: the field is beyond the maximal strength."""


class NumericalFailure(NledError):
    pass


class InvalidState(NledError, ValueError):
    pass


class DegenerateInertia(NledError):
    """rho + p vanishes, so the acceleration is undefined."""


class ConfigError(NledError, ValueError):
    pass
