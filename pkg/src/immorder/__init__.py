"""Immersion-order invariants for punctured 4-manifolds.

Exact integer homological algebra (Smith normal form, twisted group
homology), tabulated mod-2 cohomology rings with Steenrod operations,
the degree-(4,0) and (3,1) differentials governing which fundamental
classes are realized, a decision procedure for the immersion partial
order on stable-equivalence classes, two-stage obstruction computations
over cyclic 2-groups, and a fibering criterion for two-generator
presentations.
"""

__version__ = "0.1.0"
