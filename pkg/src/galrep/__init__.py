"""galrep: exact computations with complex reflection groups.

Cyclotomic arithmetic, exact linear algebra, imprimitive and explicit
reflection groups, tableau representation models, character tables,
automorphism groups, Galois descent of models, and rational invariants.
"""

__version__ = "0.1.0"
