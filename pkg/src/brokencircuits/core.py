"""Generalized broken-circuit engine.

Whitney's broken circuit theorem expresses the chromatic polynomial as an
alternating sum over the cycle-free edge subsets only.  The same pruning
works for any sum of the form sum_{A subset of S} f(A) into an abelian
group, provided f cancels across the maximum element of each distinguished
"circuit": f(A) + f(A \\ {max C}) = 0 whenever A contains C.  The sum can
then be restricted to the subsets that include no broken circuit
C \\ {max C}, for any chosen sub-family of broken circuits.

This module implements that reduction for arbitrary set functions,
together with its poset and semilattice specializations (sums over
subsets of maximal elements, and over chains), the maximum-minimums
identity, and broken-circuit-restricted inclusion-exclusion including
Narushima's chain form.

Subsets are handled internally as bitmasks over the ground order; the
public interface speaks frozensets of labels.  All engines are pure
functions over immutable inputs, so concurrent use is safe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb

from .errors import CapExceeded, PreconditionError, SchemaError

DEFAULT_ENUMERATION_CAP = 24
CANCELLATION_CAP = 18
# sum_full is only offered as a cross-check above this size
FULL_SUM_FEASIBLE = 20


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class OrderedGroundSet:
    """Finite linearly ordered ground set; the order is the input order."""

    __slots__ = ("elements", "_pos")

    def __init__(self, elements, cap=DEFAULT_ENUMERATION_CAP):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise SchemaError("ground set labels must be pairwise distinct")
        if len(elements) > cap:
            raise CapExceeded(
                f"ground set has {len(elements)} elements, enumeration cap is {cap}"
            )
        self.elements = elements
        self._pos = {e: i for i, e in enumerate(elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, element):
        return element in self._pos

    def __eq__(self, other):
        if isinstance(other, OrderedGroundSet):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"OrderedGroundSet({list(self.elements)!r})"

    def position(self, element):
        try:
            return self._pos[element]
        except KeyError:
            raise PreconditionError(f"element {element!r} is not in the ground set") from None

    def mask_of(self, subset):
        m = 0
        for e in subset:
            m |= 1 << self.position(e)
        return m

    def subset_of(self, mask):
        els = self.elements
        return frozenset(els[i] for i in _bits(mask))

    def max_of(self, subset):
        """Largest element of a subset in the ground order."""
        pos = -1
        for e in subset:
            p = self.position(e)
            if p > pos:
                pos = p
        if pos < 0:
            raise PreconditionError("the empty set has no maximum")
        return self.elements[pos]

    def reversed(self):
        return OrderedGroundSet(tuple(reversed(self.elements)), cap=max(len(self.elements), 1))

    def permuted(self, positions):
        """Reorder by a permutation of positions (new order = elements[p] for p in positions)."""
        if sorted(positions) != list(range(len(self.elements))):
            raise SchemaError("not a permutation of the element positions")
        return OrderedGroundSet(tuple(self.elements[p] for p in positions))


class SetFunction:
    """Mapping from subsets of a ground set into an abelian group.

    Values must support ``+``; ``zero`` is the neutral element used to
    start accumulations and to test cancellation.  The callable receives a
    frozenset of labels and must be deterministic.
    """

    def __init__(self, fn, zero, name="f"):
        self._fn = fn
        self.zero = zero
        self.name = name

    def __call__(self, subset):
        return self._fn(subset)

    def mask_function(self, ground):
        """Adapter used by the engines: bitmask -> value."""
        fn = self._fn
        subset_of = ground.subset_of
        return lambda mask: fn(subset_of(mask))

    def __repr__(self):
        return f"SetFunction({self.name})"


class TableSetFunction(SetFunction):
    """Set function backed by a precomputed per-subset table."""

    def __init__(self, ground, table, zero=0, name="table", default=None):
        n = len(ground)
        if isinstance(table, dict):
            dense = [default] * (1 << n)
            for subset, value in table.items():
                dense[ground.mask_of(subset)] = value
            if any(v is None for v in dense):
                raise SchemaError("table is incomplete and no default value was given")
        else:
            dense = list(table)
            if len(dense) != (1 << n):
                raise SchemaError(f"table must have 2^{n} entries")
        self._ground = ground
        self._table = dense
        super().__init__(lambda s: dense[ground.mask_of(s)], zero, name)

    def mask_function(self, ground):
        if ground.elements == self._ground.elements:
            return self._table.__getitem__
        return super().mask_function(ground)


def sign_function(name="sign"):
    """f(A) = (-1)^|A| into the integers."""
    return SetFunction(lambda s: -1 if len(s) & 1 else 1, 0, name)


class CircuitFamily:
    """Family of distinguished nonempty subsets of a ground set."""

    def __init__(self, circuits):
        circuits = tuple(frozenset(c) for c in circuits)
        for c in circuits:
            if not c:
                raise SchemaError("circuits must be nonempty")
        self.circuits = circuits

    def __iter__(self):
        return iter(self.circuits)

    def __len__(self):
        return len(self.circuits)

    def __repr__(self):
        return f"CircuitFamily({len(self.circuits)} circuits)"


@dataclass(frozen=True)
class BrokenCircuit:
    """A circuit with its maximum element removed, plus the witness circuit."""

    subset: frozenset
    witness: frozenset


def derive_broken_circuits(family, ground):
    """Broken circuits {C \\ {max C}} of a family, deduplicated.

    Each broken set keeps the first circuit that produced it as witness.
    """
    out = []
    seen = set()
    for circuit in family:
        for e in circuit:
            if e not in ground:
                raise PreconditionError(
                    f"circuit element {e!r} is not in the ground set"
                )
        broken = circuit - {ground.max_of(circuit)}
        if broken not in seen:
            seen.add(broken)
            out.append(BrokenCircuit(broken, circuit))
    return tuple(out)


def _broken_masks(ground, broken):
    masks = []
    seen = set()
    for b in broken:
        sub = b.subset if isinstance(b, BrokenCircuit) else frozenset(b)
        m = ground.mask_of(sub)
        if m not in seen:
            seen.add(m)
            masks.append(m)
    return masks


def iter_avoiding_masks(ground, broken):
    """Yield bitmasks of every subset that includes no broken set.

    Depth-first over elements in increasing order.  Each broken set is
    indexed by its maximum element; when the walk considers adding element
    e, any broken set with maximum e whose remaining elements are already
    present forbids the inclusion branch.  An empty broken set forbids
    everything.
    """
    n = len(ground)
    masks = _broken_masks(ground, broken)
    if any(m == 0 for m in masks):
        return
    by_max = [[] for _ in range(n)]
    for m in masks:
        top = m.bit_length() - 1
        by_max[top].append(m ^ (1 << top))

    def walk(pos, acc):
        if pos == n:
            yield acc
            return
        yield from walk(pos + 1, acc)
        for prefix in by_max[pos]:
            if acc & prefix == prefix:
                break
        else:
            yield from walk(pos + 1, acc | (1 << pos))

    yield from walk(0, 0)


def avoiding_subsets(ground, broken):
    """The broken-set-avoiding subsets as frozensets."""
    return [ground.subset_of(m) for m in iter_avoiding_masks(ground, broken)]


def sum_full(f, ground):
    """Exact sum of f over all 2^n subsets (the unrestricted side)."""
    fm = f.mask_function(ground)
    total = f.zero
    for mask in range(1 << len(ground)):
        total = total + fm(mask)
    return total


def sum_pruned(f, ground, broken):
    """Sum of f over the subsets that include no broken set."""
    fm = f.mask_function(ground)
    total = f.zero
    for mask in iter_avoiding_masks(ground, broken):
        total = total + fm(mask)
    return total


def enumerate_avoiding(ground, broken):
    """Counts b_k of broken-set-avoiding subsets by cardinality."""
    counts = [0] * (len(ground) + 1)
    for mask in iter_avoiding_masks(ground, broken):
        counts[mask.bit_count()] += 1
    return tuple(counts)


@dataclass(frozen=True)
class CancellationReport:
    """Outcome of the exhaustive cancellation check."""

    ok: bool
    checked: int
    circuit: frozenset | None
    superset: frozenset | None

    def __bool__(self):
        return self.ok


def verify_cancellation(f, family, ground, cap=CANCELLATION_CAP):
    """Check f(A) + f(A \\ {max C}) = 0 for every circuit C and every A containing C.

    Exhaustive, hence capped: the condition is universally quantified over
    supersets and cannot be sampled soundly.
    """
    n = len(ground)
    if n > cap:
        raise CapExceeded(f"cancellation check needs |S| <= {cap}, got {n}")
    fm = f.mask_function(ground)
    zero = f.zero
    full = (1 << n) - 1
    checked = 0
    for circuit in family:
        cmask = ground.mask_of(circuit)
        if cmask == 0:
            raise PreconditionError("circuits must be nonempty")
        topbit = 1 << (cmask.bit_length() - 1)
        free = full & ~cmask
        sub = free
        while True:
            m = cmask | sub
            checked += 1
            if fm(m) + fm(m & ~topbit) != zero:
                return CancellationReport(
                    False, checked, ground.subset_of(cmask), ground.subset_of(m)
                )
            if sub == 0:
                break
            sub = (sub - 1) & free
    return CancellationReport(True, checked, None, None)


class FinitePoset:
    """Finite partially ordered set, validated on construction."""

    def __init__(self, elements, relation):
        elements = tuple(elements)
        if len(set(elements)) != len(elements):
            raise SchemaError("poset elements must be pairwise distinct")
        self.elements = tuple(elements)
        self._idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
        for a, b in relation:
            leq[self._index(a)][self._index(b)] = True
        for i in range(n):
            for j in range(n):
                if leq[i][j] and leq[j][i] and i != j:
                    raise PreconditionError(
                        f"relation is not antisymmetric: {elements[i]!r}, {elements[j]!r}"
                    )
        for i in range(n):
            for j in range(n):
                if not leq[i][j]:
                    continue
                row_j = leq[j]
                row_i = leq[i]
                for k in range(n):
                    if row_j[k] and not row_i[k]:
                        raise PreconditionError(
                            "relation is not transitive: "
                            f"{elements[i]!r} <= {elements[j]!r} <= {elements[k]!r}"
                        )
        self._leq = leq

    @classmethod
    def from_covers(cls, elements, covers):
        """Build from cover pairs; the order is the reflexive-transitive closure."""
        elements = tuple(elements)
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
        for a, b in covers:
            leq[idx[a]][idx[b]] = True
        for k in range(n):
            for i in range(n):
                if leq[i][k]:
                    row_i, row_k = leq[i], leq[k]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        pairs = [
            (elements[i], elements[j]) for i in range(n) for j in range(n) if leq[i][j]
        ]
        return cls(elements, pairs)

    def _index(self, element):
        try:
            return self._idx[element]
        except KeyError:
            raise PreconditionError(f"{element!r} is not a poset element") from None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def le(self, a, b):
        return self._leq[self._index(a)][self._index(b)]

    def lt(self, a, b):
        return a != b and self.le(a, b)

    def comparable(self, a, b):
        return self.le(a, b) or self.le(b, a)

    def maximal_elements(self):
        out = []
        for i, e in enumerate(self.elements):
            if not any(self._leq[i][j] for j in range(len(self.elements)) if j != i):
                out.append(e)
        return tuple(out)

    def minimal_elements(self):
        out = []
        for i, e in enumerate(self.elements):
            if not any(self._leq[j][i] for j in range(len(self.elements)) if j != i):
                out.append(e)
        return tuple(out)

    def linear_extension(self):
        """Stable topological order: earliest-input element among the available ones."""
        n = len(self.elements)
        placed = [False] * n
        out = []
        for _ in range(n):
            for i in range(n):
                if placed[i]:
                    continue
                if all(
                    placed[j] or j == i
                    for j in range(n)
                    if self._leq[j][i]
                ):
                    placed[i] = True
                    out.append(self.elements[i])
                    break
        return tuple(out)

    def join(self, a, b):
        """Least upper bound, or None if it does not exist."""
        n = len(self.elements)
        ia, ib = self._index(a), self._index(b)
        ubs = [k for k in range(n) if self._leq[ia][k] and self._leq[ib][k]]
        for k in ubs:
            if all(self._leq[k][other] for other in ubs):
                return self.elements[k]
        return None

    def semilattice_violation(self):
        """A pair with no least upper bound, or None if all joins exist."""
        n = len(self.elements)
        for i in range(n):
            for j in range(i + 1, n):
                if self.join(self.elements[i], self.elements[j]) is None:
                    return (self.elements[i], self.elements[j])
        return None

    def is_chain(self, labels):
        labels = list(labels)
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                if not self.comparable(labels[i], labels[j]):
                    return False
        return True

    def chain_subsets(self):
        """All chains (pairwise comparable subsets) as frozensets, empty set included."""
        ext = self.linear_extension()
        n = len(ext)

        def walk(start, current):
            yield frozenset(current)
            for j in range(start, n):
                e = ext[j]
                if all(self.le(c, e) for c in current):
                    current.append(e)
                    yield from walk(j + 1, current)
                    current.pop()

        yield from walk(0, [])


@dataclass(frozen=True)
class MaximaReduction:
    restricted: object
    full: object | None
    cancellation: CancellationReport | None


def sum_over_maxima(f, poset, check=True):
    """Collapse the sum over all subsets to the subsets of maximal elements.

    Valid whenever f cancels across the larger element of every comparable
    pair, with respect to some linear extension.  The cancellation is
    verified exhaustively when the poset is small enough; a violation
    raises, since the reduction would be meaningless.
    """
    ext = poset.linear_extension()
    ground = OrderedGroundSet(ext)
    maxima = [e for e in ext if e in set(poset.maximal_elements())]
    restricted = f.zero
    for r in range(len(maxima) + 1):
        for combo in itertools.combinations(maxima, r):
            restricted = restricted + f(frozenset(combo))
    report = None
    if check and len(ext) <= CANCELLATION_CAP:
        pairs = [
            frozenset((a, b))
            for i, a in enumerate(ext)
            for b in ext[i + 1 :]
            if poset.lt(a, b) or poset.lt(b, a)
        ]
        if pairs:
            report = verify_cancellation(f, CircuitFamily(pairs), ground)
            if not report.ok:
                raise PreconditionError(
                    "cancellation fails across the comparable pair "
                    f"{sorted(map(repr, report.circuit))} at {sorted(map(repr, report.superset))}"
                )
    full = sum_full(f, ground) if len(ext) <= FULL_SUM_FEASIBLE else None
    return MaximaReduction(restricted, full, report)


def sum_over_chains(f, poset, check=True):
    """Collapse the sum over all subsets to the chains of an upper semilattice.

    Requires every pair to have a least upper bound; valid when f cancels
    across s v t for every incomparable pair {s, t}.
    """
    violation = poset.semilattice_violation()
    if violation is not None:
        a, b = violation
        raise PreconditionError(
            f"not an upper semilattice: {a!r} and {b!r} have no least upper bound"
        )
    if check and len(poset) <= CANCELLATION_CAP:
        triples = []
        ext = poset.linear_extension()
        for i, a in enumerate(ext):
            for b in ext[i + 1 :]:
                if not poset.comparable(a, b):
                    triples.append(frozenset((a, b, poset.join(a, b))))
        if triples:
            ground = OrderedGroundSet(ext)
            report = verify_cancellation(f, CircuitFamily(triples), ground)
            if not report.ok:
                raise PreconditionError(
                    "cancellation fails across the join of "
                    f"{sorted(map(repr, report.circuit))} at {sorted(map(repr, report.superset))}"
                )
    total = f.zero
    for chain in poset.chain_subsets():
        total = total + f(chain)
    return total


def maxmin_identity(values, k):
    """Both sides of the maximum-minimums identity; they are asserted equal.

    The left side alternates the k-th smallest value over all subsets of
    size at least k; the right side is C(n-1, k-1) times the maximum.
    """
    vals = list(values)
    n = len(vals)
    if not 1 <= k <= n:
        raise PreconditionError(f"k={k} is out of range for {n} values")
    lhs = None
    for r in range(k, n + 1):
        for combo in itertools.combinations(vals, r):
            kth = sorted(combo)[k - 1]
            term = kth if (r - k) % 2 == 0 else -kth
            lhs = term if lhs is None else lhs + term
    rhs = comb(n - 1, k - 1) * max(vals)
    if lhs != rhs:
        raise RuntimeError(f"maximum-minimums identity failed: {lhs!r} != {rhs!r}")
    return lhs, rhs


class IndexedSetFamily:
    """Finite family of finite sets M_s indexed by an ordered ground set."""

    def __init__(self, ground, sets, universe=None):
        if not isinstance(ground, OrderedGroundSet):
            ground = OrderedGroundSet(ground)
        self.ground = ground
        data = {}
        for s in ground:
            if s not in sets:
                raise SchemaError(f"no set given for index {s!r}")
            data[s] = frozenset(sets[s])
        if universe is not None:
            universe = frozenset(universe)
            for s, m in data.items():
                if not m <= universe:
                    raise SchemaError(f"set for index {s!r} leaves the declared universe")
        self.sets = data

    def intersection(self, labels):
        labels = list(labels)
        if not labels:
            raise PreconditionError("intersection over an empty index set is undefined")
        acc = self.sets[labels[0]]
        for s in labels[1:]:
            acc = acc & self.sets[s]
        return acc

    def union_all(self):
        out = set()
        for m in self.sets.values():
            out |= m
        return frozenset(out)


def _intersection_size_function(family):
    def fn(subset):
        if not subset:
            return 0
        size = len(family.intersection(subset))
        return -size if len(subset) % 2 == 0 else size

    return SetFunction(fn, 0, "signed-intersection-size")


def restricted_union_size(family, broken, witnesses):
    """|union of M_s| by inclusion-exclusion restricted to broken-set-avoiding subsets.

    Each broken set B needs a witness index c(B) above max B whose set
    contains the intersection of the M_b, b in B; this is exactly the
    cancellation hypothesis.  The result is cross-checked against the
    directly computed union size.
    """
    ground = family.ground
    broken = [frozenset(b) for b in broken]
    for b in broken:
        if not b:
            raise PreconditionError("broken sets must be nonempty here")
        if b not in witnesses:
            raise PreconditionError(f"no witness index for broken set {sorted(map(repr, b))}")
        c = witnesses[b]
        if ground.position(c) <= ground.position(ground.max_of(b)):
            raise PreconditionError(
                f"witness {c!r} does not lie above max of {sorted(map(repr, b))}"
            )
        if not family.intersection(b) <= family.sets[c]:
            raise PreconditionError(
                f"witness condition violated: intersection over {sorted(map(repr, b))} "
                f"is not contained in the set of {c!r}"
            )
    value = sum_pruned(_intersection_size_function(family), ground, broken)
    direct = len(family.union_all())
    if value != direct:
        raise RuntimeError(
            f"restricted inclusion-exclusion mismatch: {value} != union size {direct}"
        )
    return value


def narushima_union(poset, family):
    """|union of M_s| summing over the chains of an upper semilattice only.

    Prerequisite: M_s intersect M_t is contained in M_{s v t} for all s, t.
    """
    violation = poset.semilattice_violation()
    if violation is not None:
        a, b = violation
        raise PreconditionError(
            f"not an upper semilattice: {a!r} and {b!r} have no least upper bound"
        )
    for i, s in enumerate(poset.elements):
        for t in poset.elements[i + 1 :]:
            j = poset.join(s, t)
            if not family.sets[s] & family.sets[t] <= family.sets[j]:
                raise PreconditionError(
                    f"semilattice condition violated at {s!r}, {t!r}: "
                    f"intersection not contained in the set of {j!r}"
                )
    f = _intersection_size_function(family)
    total = f.zero
    for chain in poset.chain_subsets():
        total = total + f(chain)
    direct = len(family.union_all())
    if total != direct:
        raise RuntimeError(
            f"chain-restricted inclusion-exclusion mismatch: {total} != union size {direct}"
        )
    return total


def random_cancelling_instance(rng, size, value_kind="int", max_circuits=4):
    """Random (ground, circuits, f) with the cancellation condition built in.

    Circuits are random sets B plus a witness element above max B; f is
    (-1)^|A| times a random weight attached to the closure of A under
    "B present implies witness present".  Such functions cancel across the
    witness of every circuit, which makes them exact test fodder for the
    pruning engine.
    """
    from .algebra import IntPolynomial

    n = size
    if n < 2:
        raise PreconditionError("instance needs at least two elements")
    ground = OrderedGroundSet(range(n))
    rules = []
    circuits = []
    for _ in range(rng.randint(1, max_circuits)):
        c = rng.randrange(1, n)
        below = rng.sample(range(c), min(c, rng.randint(1, 3)))
        bmask = 0
        for p in below:
            bmask |= 1 << p
        rules.append((bmask, 1 << c))
        circuits.append(ground.subset_of(bmask | (1 << c)))

    def close(mask):
        while True:
            grown = mask
            for bmask, cbit in rules:
                if mask & bmask == bmask:
                    grown |= cbit
            if grown == mask:
                return mask
            mask = grown

    if value_kind == "int":
        weights = {}
        table = []
        for mask in range(1 << n):
            h = close(mask)
            if h not in weights:
                weights[h] = rng.randint(-9, 9)
            w = weights[h]
            table.append(-w if mask.bit_count() & 1 else w)
        f = TableSetFunction(ground, table, 0, "random-int")
    elif value_kind == "poly":
        weights = {}
        table = []
        for mask in range(1 << n):
            h = close(mask)
            if h not in weights:
                weights[h] = IntPolynomial([rng.randint(-3, 3) for _ in range(3)])
            w = weights[h]
            table.append(-w if mask.bit_count() & 1 else w)
        f = TableSetFunction(ground, table, IntPolynomial.zero(), "random-poly")
    else:
        raise SchemaError(f"unknown value kind {value_kind!r}")
    return ground, CircuitFamily(circuits), f
