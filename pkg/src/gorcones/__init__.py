"""Exact machinery for reflexive Gorenstein cone pairs.

Everything is integer or rational arithmetic: cone duality, degree slices,
decompositions of the dual degree element, central fans and flop walks,
quotient polytopes, character-group towers, and the finite section data of
the associated quadratic forms.  No floats anywhere in the mathematical
path.
"""

__version__ = "0.1.0"

from .gorenstein import GorensteinCone, ReflexivePair, cayley_cone, reflexive_pair

__all__ = ["GorensteinCone", "ReflexivePair", "cayley_cone", "reflexive_pair", "__version__"]
