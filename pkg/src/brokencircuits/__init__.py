"""Broken-circuit pruning engines and their applications.

The core engine restricts abelian-group-valued subset sums to the subsets
avoiding every broken circuit, given the cancellation property across
circuit maxima.  On top of it: graph chromatic, subgraph component and
domination polynomials; hypergraph chromatic polynomials; matroid
characteristic polynomials and the beta invariant; lattice Mobius
functions through crosscuts; divisor-lattice expansions of arithmetical
functions; and the convex-geometry generalization that collapses subset
sums to free sets.

Everything is exact (Python ints, Fractions, integer polynomials) except
the zeta-reciprocal approximation, and every restricted sum is
cross-checkable against a brute-force oracle at desk scale.
"""

from .algebra import BiPolynomial, IntPolynomial
from .core import (
    CircuitFamily,
    FinitePoset,
    IndexedSetFamily,
    OrderedGroundSet,
    SetFunction,
    TableSetFunction,
    derive_broken_circuits,
    enumerate_avoiding,
    maxmin_identity,
    narushima_union,
    restricted_union_size,
    sum_full,
    sum_over_chains,
    sum_over_maxima,
    sum_pruned,
    verify_cancellation,
)
from .errors import CapExceeded, PreconditionError, SchemaError
from .geometry import ClosureSystem, ConvexGeometry
from .graphs import Graph
from .hypergraphs import Hypergraph
from .lattices import Crosscut, FiniteLattice
from .matroids import Matroid

__all__ = [
    "BiPolynomial",
    "CapExceeded",
    "CircuitFamily",
    "ClosureSystem",
    "ConvexGeometry",
    "Crosscut",
    "FiniteLattice",
    "FinitePoset",
    "Graph",
    "Hypergraph",
    "IndexedSetFamily",
    "IntPolynomial",
    "Matroid",
    "OrderedGroundSet",
    "PreconditionError",
    "SchemaError",
    "SetFunction",
    "TableSetFunction",
    "derive_broken_circuits",
    "enumerate_avoiding",
    "maxmin_identity",
    "narushima_union",
    "restricted_union_size",
    "sum_full",
    "sum_over_chains",
    "sum_over_maxima",
    "sum_pruned",
    "verify_cancellation",
]
