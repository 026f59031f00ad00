"""Matroids from circuit lists, with the characteristic polynomial and
Crapo's beta invariant computed both from the defining rank sums and from
broken-circuit counts.

A matroid is given by its ground set (the input order is the ambient
linear order) and its circuits, the minimal dependent sets.  Rank is
computed greedily; broken-circuit-free subsets are independent, so the
counts b_k assemble the characteristic polynomial and the beta invariant
directly.
"""

from __future__ import annotations

import itertools

from .algebra import IntPolynomial
from .core import CircuitFamily, OrderedGroundSet, derive_broken_circuits, iter_avoiding_masks
from .errors import CapExceeded, PreconditionError, SchemaError

AXIOM_CAP = 12


class Matroid:
    """Matroid represented by its circuits.

    Circuit axioms (incomparability and elimination) are checked
    exhaustively when the ground set has at most AXIOM_CAP elements;
    larger inputs are accepted with ``validated`` False.
    """

    def __init__(self, elements, circuits, validate=True):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise SchemaError("ground set labels must be pairwise distinct")
        self.elements = elements
        self._pos = {e: i for i, e in enumerate(elements)}
        circs = []
        seen = set()
        for c in circuits:
            cs = frozenset(c)
            if not cs:
                raise SchemaError("circuits must be nonempty")
            if not cs <= set(elements):
                raise SchemaError(f"circuit {sorted(map(repr, cs))} leaves the ground set")
            if cs not in seen:
                seen.add(cs)
                circs.append(cs)
        self.circuits = tuple(circs)
        self._circuit_masks = [self._mask(c) for c in self.circuits]
        for a, b in itertools.combinations(self.circuits, 2):
            if a <= b or b <= a:
                raise PreconditionError(
                    f"circuits are not an antichain: {sorted(map(repr, a))} and {sorted(map(repr, b))}"
                )
        self.validated = False
        if validate and len(elements) <= AXIOM_CAP:
            self._check_elimination()
            self.validated = True

    def _mask(self, subset):
        m = 0
        for e in subset:
            m |= 1 << self._pos[e]
        return m

    def _check_elimination(self):
        masks = self._circuit_masks
        for ma, mb in itertools.combinations(masks, 2):
            inter = ma & mb
            if not inter:
                continue
            union = ma | mb
            e = inter
            while e:
                bit = e & -e
                target = union & ~bit
                if not any(cm & target == cm for cm in masks):
                    raise PreconditionError(
                        "circuit elimination fails for "
                        f"{sorted(map(repr, self._unmask(ma)))} and {sorted(map(repr, self._unmask(mb)))}"
                    )
                e ^= bit

    def _unmask(self, mask):
        return frozenset(self.elements[i] for i in range(len(self.elements)) if mask >> i & 1)

    def __repr__(self):
        return f"Matroid({len(self.elements)} elements, {len(self.circuits)} circuits)"

    def _is_independent_mask(self, mask):
        return not any(cm & mask == cm for cm in self._circuit_masks)

    def _rank_mask(self, mask):
        acc = 0
        m = mask
        i = 0
        while m:
            if m & 1:
                t = acc | (1 << i)
                if self._is_independent_mask(t):
                    acc = t
            m >>= 1
            i += 1
        return acc.bit_count()

    def rank(self, subset):
        """Size of a maximal circuit-free subset, built greedily in ground order."""
        return self._rank_mask(self._mask(frozenset(subset)))

    def is_independent(self, subset):
        return self._is_independent_mask(self._mask(frozenset(subset)))

    @property
    def full_rank(self):
        return self._rank_mask((1 << len(self.elements)) - 1)

    @classmethod
    def uniform(cls, r, n):
        """U_{r,n}: every (r+1)-subset of 0..n-1 is a circuit."""
        if not 0 <= r <= n:
            raise SchemaError("uniform matroid needs 0 <= r <= n")
        circuits = list(itertools.combinations(range(n), r + 1)) if r < n else []
        return cls(range(n), circuits)

    @classmethod
    def graphic(cls, graph, cycle_cap=20):
        """Cycle matroid of a graph; elements are the edges in graph order."""
        from .graphs import cycles_edge_sets

        cycles = cycles_edge_sets(graph, cycle_cap)
        labels = graph.edges
        circuits = [frozenset(labels[i] for i in c) for c in cycles]
        return cls(labels, circuits)


def broken_circuit_counts(matroid):
    """b_k: number of k-subsets including no broken circuit of the matroid.

    Every such subset is independent, which is asserted along the way.
    """
    ground = OrderedGroundSet(matroid.elements, cap=max(24, len(matroid.elements)))
    broken = [bc.subset for bc in derive_broken_circuits(CircuitFamily(matroid.circuits), ground)] if matroid.circuits else []
    counts = [0] * (len(matroid.elements) + 1)
    for mask in iter_avoiding_masks(ground, broken):
        if matroid._rank_mask(mask) != mask.bit_count():
            raise RuntimeError("broken-circuit-free subset is dependent")
        counts[mask.bit_count()] += 1
    return tuple(counts)


def characteristic_polynomial(matroid, method="broken_circuit"):
    """chi(M, x) = sum over subsets A of (-1)^|A| x^{r(E) - r(A)}."""
    n = len(matroid.elements)
    if n > 20:
        raise CapExceeded("characteristic polynomial needs |E| <= 20")
    re = matroid.full_rank
    coeffs = [0] * (re + 1)
    if method == "full":
        for mask in range(1 << n):
            power = re - matroid._rank_mask(mask)
            coeffs[power] += -1 if mask.bit_count() & 1 else 1
        return IntPolynomial(coeffs)
    if method == "broken_circuit":
        counts = broken_circuit_counts(matroid)
        for k, b in enumerate(counts):
            if b and k > re:
                raise RuntimeError("independent subset larger than the rank")
            if k <= re:
                coeffs[re - k] = -b if k & 1 else b
        return IntPolynomial(coeffs)
    raise SchemaError(f"unknown method {method!r}")


def beta_invariant(matroid, method="full"):
    """Crapo's beta invariant, three ways.

    full: (-1)^{r(E)} sum (-1)^|A| r(A); broken_circuit: the same with
    k b_k counts; derivative: from the slope of chi at 1.
    """
    n = len(matroid.elements)
    if n > 20:
        raise CapExceeded("beta invariant needs |E| <= 20")
    re = matroid.full_rank
    sign = -1 if re & 1 else 1
    if method == "full":
        acc = 0
        for mask in range(1 << n):
            r = matroid._rank_mask(mask)
            acc += -r if mask.bit_count() & 1 else r
        return sign * acc
    if method == "broken_circuit":
        counts = broken_circuit_counts(matroid)
        acc = 0
        for k, b in enumerate(counts):
            if k:
                acc += (-1 if k & 1 else 1) * k * b
        return sign * acc
    if method == "derivative":
        chi = characteristic_polynomial(matroid, "full")
        return -sign * chi.derivative_at(1)
    raise SchemaError(f"unknown method {method!r}")
