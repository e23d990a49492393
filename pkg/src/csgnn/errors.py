"""Exception types shared across the package."""


class ContractError(ValueError):
    """An operation was called with input violating its precondition."""


class SchemaError(ValueError):
    """A data file does not match the documented schema."""


class CoarseningError(ValueError):
    """A coarsening policy produced no super-nodes for the given graph."""


class TrainingDiverged(RuntimeError):
    """Training aborted because the loss became non-finite."""
