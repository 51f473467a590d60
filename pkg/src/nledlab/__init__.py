"""Numerical toolkit for non-linear vacuum electrodynamics coupled to a relativistic fluid.

Modules
-------
forms   exterior algebra on Minkowski space
nled    Maxwell and Born-Infeld Lagrangians, constitutive map, stress-energy
exact   travelling wave on a magnetic background and the SI delay experiment
fluid   perfect-fluid forces and equations of motion
solver  1+1D method-of-lines evolution with diagnostics
cli     command-line front end
"""

from .errors import (ConfigError, ContractViolation, DegenerateInertia, FieldBoundExceeded,
                     InvalidState, NledError, NumericalFailure)
from .forms import KForm
from .nled import LagrangianModel

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "ContractViolation", "DegenerateInertia", "FieldBoundExceeded",
    "InvalidState", "KForm", "LagrangianModel", "NledError", "NumericalFailure",
    "__version__",
]
