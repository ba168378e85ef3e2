"""Hilbert functions of graded Artinian level algebras via inverse systems.

The package computes h(d) = dim R_{j-d} * W over a large prime field for
subspaces W of degree-j forms, provides the L-matrix / G_Q-poset machinery
that explains when the relevant derivative matrices have full rank, and
constructs six parameterized families of level algebras whose h-vectors are
not unimodal.
"""

__version__ = "0.1.0"

from . import apolarity, exactalg, families, gqposet, lmatrix, multiindex

__all__ = ["apolarity", "exactalg", "families", "gqposet", "lmatrix",
           "multiindex", "__version__"]
