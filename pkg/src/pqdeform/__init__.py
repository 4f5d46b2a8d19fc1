"""Verification workbench for the unified five-parameter deformed oscillator
algebra, its su(2)/su(1,1) realizations and the deformed conformal structures
built on top of it.

Every identity the library implements is checked numerically and reported as
a residual; identities that fail for generic parameters are shipped as
documentation checks that never gate a run.
"""

from .params import DeformationParams, bracket, bracket_factorial, validate

__version__ = "0.1.0"

__all__ = ["DeformationParams", "bracket", "bracket_factorial", "validate",
           "__version__"]
