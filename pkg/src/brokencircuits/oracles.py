"""Independent brute-force oracles.

These referee the engine-versus-engine equalities elsewhere in the
package.  They are deliberately naive and share no enumeration logic with
the pruned engines, so a bug cannot cancel across both sides of a
comparison.
"""

from __future__ import annotations

import itertools

from .errors import CapExceeded

COLOURING_CAP = 10**7
DOMINATION_CAP = 20


def oracle_colourings(graph, x):
    """Number of proper x-colourings, by checking every vertex map."""
    n = len(graph.vertices)
    if x**n > COLOURING_CAP:
        raise CapExceeded(f"x^|V| = {x}^{n} exceeds the colouring oracle cap")
    vi = {v: i for i, v in enumerate(graph.vertices)}
    pairs = [(vi[u], vi[v]) for u, v in graph.edges]
    count = 0
    for colouring in itertools.product(range(x), repeat=n):
        if all(colouring[a] != colouring[b] for a, b in pairs):
            count += 1
    return count


def oracle_hyper_colourings(hypergraph, x):
    """Number of vertex maps with no monochromatic edge."""
    n = len(hypergraph.vertices)
    if x**n > COLOURING_CAP:
        raise CapExceeded(f"x^|V| = {x}^{n} exceeds the colouring oracle cap")
    vi = {v: i for i, v in enumerate(hypergraph.vertices)}
    edges = [tuple(vi[v] for v in e) for e in hypergraph.edges]
    count = 0
    for colouring in itertools.product(range(x), repeat=n):
        ok = True
        for e in edges:
            first = colouring[e[0]]
            if all(colouring[v] == first for v in e[1:]):
                ok = False
                break
        if ok:
            count += 1
    return count


def oracle_dominating(graph):
    """Counts of dominating sets per cardinality, by direct neighbourhood check."""
    vertices = graph.vertices
    n = len(vertices)
    if n > DOMINATION_CAP:
        raise CapExceeded(f"domination oracle needs |V| <= {DOMINATION_CAP}")
    all_vertices = frozenset(vertices)
    counts = [0] * (n + 1)
    for r in range(n + 1):
        for combo in itertools.combinations(vertices, r):
            if graph.closed_neighborhood(combo) == all_vertices:
                counts[r] += 1
    return tuple(counts)


def oracle_mobius(lattice):
    """Mobius number of the lattice via the alternating chain count.

    Sums (-1)^k over all chains bottom = x_0 < x_1 < ... < x_k = top,
    a code path fully distinct from the recursive definition.
    """
    bottom, top = lattice.bottom, lattice.top
    if bottom == top:
        return 1
    elements = lattice.elements
    total = 0

    def walk(current, length):
        nonlocal total
        if current == top:
            total += -1 if length & 1 else 1
            return
        for e in elements:
            if e != current and lattice.le(current, e):
                walk(e, length + 1)

    walk(bottom, 0)
    return total


def oracle_union_size(sets):
    out = set()
    for m in sets:
        out |= set(m)
    return len(out)
