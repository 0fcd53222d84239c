"""sskit: a computational kernel for finite simplicial sets.

Constructions (products, joins, pushouts, mapping spaces), lifting-problem
solvers, homotopy-category presentations, factorization/descent
algorithms, and cellular anodyne certificates, all at desk scale.
"""

__version__ = "0.1.0"
