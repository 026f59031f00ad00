"""Graph polynomials through broken-circuit pruning.

Three sums over a finite simple graph are handled here, each with an
unrestricted form and a pruned form that agree exactly:

* the chromatic polynomial, summed over edge subsets, pruned by the
  classical broken circuits (cycle edge sets minus their largest edge);
* the subgraph component polynomial at x = -1, summed over vertex
  subsets, pruned by vertex broken circuits, available on cyclically
  claw-free graphs;
* the domination polynomial, via the alternating closed-neighbourhood
  sum, pruned by broken neighbourhoods.
"""

from __future__ import annotations

from math import comb

from .algebra import BiPolynomial, IntPolynomial
from .core import CircuitFamily, OrderedGroundSet, derive_broken_circuits, enumerate_avoiding, iter_avoiding_masks
from .errors import CapExceeded, PreconditionError, SchemaError

CYCLE_CAP = 20


class Graph:
    """Finite simple graph; vertex and edge input order are the ambient linear orders."""

    def __init__(self, vertices, edges):
        vertices = tuple(vertices)
        if len(set(vertices)) != len(vertices):
            raise SchemaError("vertices must be pairwise distinct")
        self.vertices = vertices
        self._vi = {v: i for i, v in enumerate(vertices)}
        seen = set()
        out = []
        for e in edges:
            u, v = e
            if u == v:
                raise SchemaError(f"loop at vertex {u!r}")
            if u not in self._vi or v not in self._vi:
                raise SchemaError(f"edge {e!r} uses an unknown vertex")
            key = frozenset((u, v))
            if key in seen:
                raise SchemaError(f"parallel edge {e!r}")
            seen.add(key)
            out.append((u, v))
        self.edges = tuple(out)
        n = len(vertices)
        self._adj = [set() for _ in range(n)]
        for u, v in self.edges:
            self._adj[self._vi[u]].add(self._vi[v])
            self._adj[self._vi[v]].add(self._vi[u])
        # closed neighbourhood of vertex i as a vertex bitmask
        self._nmask = [
            (1 << i) | sum(1 << j for j in self._adj[i]) for i in range(n)
        ]
        self._edge_ends = [(self._vi[u], self._vi[v]) for u, v in self.edges]
        self._edge_index = {frozenset(e): i for i, e in enumerate(self.edges)}

    @classmethod
    def complete(cls, n):
        return cls(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])

    @classmethod
    def path(cls, n):
        return cls(range(n), [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n):
        if n < 3:
            raise SchemaError("a cycle needs at least 3 vertices")
        return cls(range(n), [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def star(cls, leaves):
        return cls(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def complete_bipartite(cls, a, b):
        return cls(range(a + b), [(i, a + j) for i in range(a) for j in range(b)])

    def __repr__(self):
        return f"Graph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def degree(self, v):
        return len(self._adj[self._vi[v]])

    def closed_neighborhood(self, vertices):
        """N[A]: the given vertices together with all their neighbours."""
        try:
            if vertices in self._vi:
                vertices = (vertices,)
        except TypeError:
            pass
        mask = 0
        for v in vertices:
            mask |= self._nmask[self._vi[v]]
        return frozenset(self.vertices[i] for i in range(len(self.vertices)) if mask >> i & 1)

    def spanning_component_count(self, edge_ids):
        """c(V, A): connected components of the spanning subgraph (V, A)."""
        parent = list(range(len(self.vertices)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        count = len(self.vertices)
        for i in edge_ids:
            a, b = self._edge_ends[i]
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                count -= 1
        return count

    def _spanning_components_of_mask(self, edge_mask):
        parent = list(range(len(self.vertices)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        count = len(self.vertices)
        i = 0
        while edge_mask:
            if edge_mask & 1:
                a, b = self._edge_ends[i]
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    count -= 1
            edge_mask >>= 1
            i += 1
        return count

    def _induced_stats_of_mask(self, vertex_mask):
        """(components, edges) of the subgraph induced by a vertex bitmask."""
        n = len(self.vertices)
        parent = {i: i for i in range(n) if vertex_mask >> i & 1}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        count = len(parent)
        m = 0
        for a, b in self._edge_ends:
            if vertex_mask >> a & 1 and vertex_mask >> b & 1:
                m += 1
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
                    count -= 1
        return count, m

    def induced_component_count(self, vertices):
        mask = 0
        for v in vertices:
            mask |= 1 << self._vi[v]
        return self._induced_stats_of_mask(mask)[0]

    def induced_edge_count(self, vertices):
        mask = 0
        for v in vertices:
            mask |= 1 << self._vi[v]
        return self._induced_stats_of_mask(mask)[1]

    def reorder_vertices(self, new_order):
        new_order = tuple(new_order)
        if set(new_order) != set(self.vertices) or len(new_order) != len(self.vertices):
            raise SchemaError("new order must be a permutation of the vertices")
        return Graph(new_order, self.edges)


def _vertex_cycles(graph, cap=CYCLE_CAP):
    """Simple cycles as vertex index tuples, each listed exactly once."""
    if len(graph.edges) > cap:
        raise CapExceeded(f"cycle enumeration needs |E| <= {cap}")
    n = len(graph.vertices)
    adj = [sorted(s) for s in graph._adj]
    cycles = []

    def extend(path, visited):
        u = path[-1]
        s = path[0]
        for w in adj[u]:
            if w == s and len(path) >= 3 and path[1] < path[-1]:
                cycles.append(tuple(path))
            elif w > s and w not in visited:
                visited.add(w)
                path.append(w)
                extend(path, visited)
                path.pop()
                visited.remove(w)

    for s in range(n):
        extend([s], {s})
    return cycles


def cycles_edge_sets(graph, cap=CYCLE_CAP):
    """Edge sets of all simple cycles, as frozensets of edge indices."""
    out = []
    for cyc in _vertex_cycles(graph, cap):
        ids = []
        for a, b in zip(cyc, cyc[1:] + (cyc[0],)):
            ids.append(graph._edge_index[frozenset((graph.vertices[a], graph.vertices[b]))])
        out.append(frozenset(ids))
    return out


def cycles_vertex_sets(graph, cap=CYCLE_CAP):
    """Vertex sets of all simple cycles, as frozensets of vertex labels."""
    return [frozenset(graph.vertices[i] for i in cyc) for cyc in _vertex_cycles(graph, cap)]


def edge_ground(graph):
    return OrderedGroundSet(range(len(graph.edges)), cap=max(24, len(graph.edges)))


def edge_broken_circuits(graph, cap=CYCLE_CAP):
    """Broken circuits of the graph: cycle edge sets minus their largest edge."""
    family = CircuitFamily(cycles_edge_sets(graph, cap))
    return [bc.subset for bc in derive_broken_circuits(family, edge_ground(graph))]


def whitney_edge_counts(graph, cap=CYCLE_CAP):
    """b_k: number of k-edge subsets including no broken circuit."""
    return enumerate_avoiding(edge_ground(graph), edge_broken_circuits(graph, cap))


def chromatic_polynomial(graph, method="broken_circuit", cycle_cap=CYCLE_CAP):
    """P(G, x) = sum over edge subsets A of (-1)^|A| x^{c(V, A)}.

    The full method evaluates the defining sum; the broken_circuit method
    counts broken-circuit-free subsets, whose cardinality classes give the
    coefficients directly.
    """
    n = len(graph.vertices)
    if method == "full":
        coeffs = [0] * (n + 1)
        for mask in range(1 << len(graph.edges)):
            c = graph._spanning_components_of_mask(mask)
            coeffs[c] += -1 if mask.bit_count() & 1 else 1
        return IntPolynomial(coeffs)
    if method == "broken_circuit":
        counts = whitney_edge_counts(graph, cycle_cap)
        coeffs = [0] * (n + 1)
        for k, b in enumerate(counts):
            if b and k > n:
                raise RuntimeError("broken-circuit-free subset larger than a spanning forest")
            if k <= n:
                coeffs[n - k] = -b if k & 1 else b
        return IntPolynomial(coeffs)
    raise SchemaError(f"unknown chromatic method {method!r}")


def is_cyclically_claw_free(graph, cap=CYCLE_CAP):
    """True iff no centre of a claw lies on a simple cycle.

    A claw here is a star subgraph with three leaves, so its centre is any
    vertex of degree at least 3.  Component counts are then insensitive to
    deleting a cycle vertex from a superset of its cycle, which is what
    the pruned component sums rely on.
    """
    on_cycle = set()
    for cyc in _vertex_cycles(graph, cap):
        on_cycle.update(cyc)
    return all(len(graph._adj[i]) < 3 for i in on_cycle)


def subgraph_component_polynomial(graph):
    """Q(G, x, y) = sum over vertex subsets A of x^|A| y^{c(G[A])}."""
    n = len(graph.vertices)
    if n > 20:
        raise CapExceeded("subgraph component polynomial needs |V| <= 20")
    terms = {}
    for mask in range(1 << n):
        c = graph._induced_stats_of_mask(mask)[0]
        key = (mask.bit_count(), c)
        terms[key] = terms.get(key, 0) + 1
    return BiPolynomial(terms)


def vertex_broken_circuits(graph, cap=CYCLE_CAP):
    """Vertex broken circuits: cycle vertex sets minus their largest vertex."""
    cycles = cycles_vertex_sets(graph, cap)
    ground = OrderedGroundSet(graph.vertices)
    if not cycles:
        return []
    return [bc.subset for bc in derive_broken_circuits(CircuitFamily(cycles), ground)]


def q_at_minus_one(graph, method="direct", cap=CYCLE_CAP):
    """Q(G, -1, y) as a polynomial in y, for cyclically claw-free graphs.

    direct substitutes x = -1 into the defining sum; restricted prunes by
    the vertex broken circuits; acyclic additionally rewrites the exponent
    as |A| - m(G[A]), valid because the surviving subsets induce forests.
    """
    if not is_cyclically_claw_free(graph, cap):
        raise PreconditionError("graph is not cyclically claw-free")
    n = len(graph.vertices)
    coeffs = [0] * (n + 1)
    if method == "direct":
        for mask in range(1 << n):
            c = graph._induced_stats_of_mask(mask)[0]
            coeffs[c] += -1 if mask.bit_count() & 1 else 1
        return IntPolynomial(coeffs)
    ground = OrderedGroundSet(graph.vertices)
    broken = vertex_broken_circuits(graph, cap)
    if method == "restricted":
        for mask in iter_avoiding_masks(ground, broken):
            c = graph._induced_stats_of_mask(mask)[0]
            coeffs[c] += -1 if mask.bit_count() & 1 else 1
        return IntPolynomial(coeffs)
    if method == "acyclic":
        for mask in iter_avoiding_masks(ground, broken):
            size = mask.bit_count()
            m = graph._induced_stats_of_mask(mask)[1]
            coeffs[size - m] += -1 if size & 1 else 1
        return IntPolynomial(coeffs)
    raise SchemaError(f"unknown method {method!r}")


def broken_neighbourhoods(graph):
    """N[v] \\ {v} for every v that is the maximum of its own closed neighbourhood."""
    out = []
    seen = set()
    for i, v in enumerate(graph.vertices):
        if all(j < i for j in graph._adj[i]):
            b = frozenset(graph.vertices[j] for j in graph._adj[i])
            if b not in seen:
                seen.add(b)
                out.append(b)
    return out


def domination_polynomial(graph, method="direct", broken=None):
    """D(G, x): generating function of dominating sets by cardinality.

    direct counts dominating sets; alternating evaluates the signed
    (x+1)^{|V| - |N[A]|} sum over all vertex subsets; pruned restricts that
    sum to subsets including no broken neighbourhood, which requires the
    graph to have no isolated vertices.
    """
    n = len(graph.vertices)
    if n > 20:
        raise CapExceeded("domination polynomial needs |V| <= 20")
    full = (1 << n) - 1
    if method == "direct":
        coeffs = [0] * (n + 1)
        for mask in range(1 << n):
            nb = 0
            m = mask
            i = 0
            while m:
                if m & 1:
                    nb |= graph._nmask[i]
                m >>= 1
                i += 1
            if nb == full:
                coeffs[mask.bit_count()] += 1
        return IntPolynomial(coeffs)

    def weight_into(coeffs, mask):
        nb = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                nb |= graph._nmask[i]
            m >>= 1
            i += 1
        j = n - nb.bit_count()
        sign = -1 if mask.bit_count() & 1 else 1
        for i in range(j + 1):
            coeffs[i] += sign * comb(j, i)

    if method == "alternating":
        coeffs = [0] * (n + 1)
        for mask in range(1 << n):
            weight_into(coeffs, mask)
        return IntPolynomial(coeffs)
    if method == "pruned":
        for i in range(n):
            if not graph._adj[i]:
                raise PreconditionError(
                    f"isolated vertex {graph.vertices[i]!r}: pruned method unavailable"
                )
        derived = broken_neighbourhoods(graph)
        if broken is None:
            broken = derived
        else:
            derived_set = set(derived)
            broken = [frozenset(b) for b in broken]
            for b in broken:
                if b not in derived_set:
                    raise PreconditionError(
                        f"{sorted(map(repr, b))} is not a broken neighbourhood of the graph"
                    )
        ground = OrderedGroundSet(graph.vertices)
        coeffs = [0] * (n + 1)
        for mask in iter_avoiding_masks(ground, broken):
            weight_into(coeffs, mask)
        return IntPolynomial(coeffs)
    raise SchemaError(f"unknown method {method!r}")


def degree1_upset_order(graph):
    """Reorder so the degree-1 vertices come last, and list the pendant prunes.

    Each pendant edge {v, w} with deg(v) = 1 then yields the broken
    neighbourhood {w}; the domination sum may skip every subset containing
    such a w.  Isolated vertices or isolated edges are rejected.
    """
    degs = {v: graph.degree(v) for v in graph.vertices}
    for v, d in degs.items():
        if d == 0:
            raise PreconditionError(f"isolated vertex {v!r}")
    for u, v in graph.edges:
        if degs[u] == 1 and degs[v] == 1:
            raise PreconditionError(f"isolated edge {(u, v)!r}")
    order = [v for v in graph.vertices if degs[v] != 1] + [
        v for v in graph.vertices if degs[v] == 1
    ]
    reordered = graph.reorder_vertices(order)
    pendants = []
    seen = set()
    for v in graph.vertices:
        if degs[v] == 1:
            (w,) = graph.closed_neighborhood(v) - {v}
            b = frozenset((w,))
            if b not in seen:
                seen.add(b)
                pendants.append(b)
    return reordered, pendants


def random_graph(rng, n, p):
    """G(n, p) with vertex labels 0..n-1 and the sampled edge order."""
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(range(n), edges)
