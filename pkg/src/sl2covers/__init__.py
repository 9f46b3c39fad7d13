"""Double covers of the regular unipotent cone of SL(2) over p-adic fields.

Computational companion package: exact scalar arithmetic, the finite groups
SL(2, Z/p^n) with their parahoric coordinate models, square-root covers of the
regular unipotent locus with their deck groups and Frobenius trace functions,
Dixon-Schneider character tables, the Cayley transform, finite Fourier
analysis on the Lie algebra, and Frobenius-formula distributions.
"""

__version__ = "0.1.0"
