"""Exception types shared across covopt.

The CLI maps these onto exit codes: validation failures exit 2,
degenerate or infeasible computations exit 3.
"""

from __future__ import annotations


class CovoptError(Exception):
    """Base class for all covopt errors."""


class ValidationError(CovoptError):
    """Malformed, inconsistent, or out-of-domain input data."""


class DegenerateCoverageError(CovoptError):
    """An otherwise valid request has no defined answer (zero covered measure)."""


class InfeasibleError(CovoptError):
    """The requested computation exceeds an explicit feasibility bound."""
