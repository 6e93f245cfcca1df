"""
ZetaSurf engine
Length spectra, Selberg zeta functions, determinants and heat invariants of
convex co-compact hyperbolic surfaces
"""

__version__ = "1.0.0"
