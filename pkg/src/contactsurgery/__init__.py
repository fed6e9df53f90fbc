"""Surgery formulas and contact-invariant criteria for fibered knots, computed
from bifiltered knot Floer complexes over GF(2)."""

__version__ = "0.1.0"
