"""Exception types shared across the toolkit.

The CLI maps these onto its exit-code contract (usage error 2, resource
cap 3, consistency failure 4).
"""


class DomainError(ValueError):
    """Input is outside an operation's stated domain."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the configured dense-matrix cap."""


class ConsistencyError(RuntimeError):
    """An internal counting or residual identity failed; indicates a bug."""
