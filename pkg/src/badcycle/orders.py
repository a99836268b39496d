"""Compatible orders and order systems: verify, search, fast 2-machine decision."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .digraph import WeightedDigraph, max_cycle_mean, min_cycle_mean, strong_components
from .errors import BudgetError, InputError
from .machine import require_valid


@dataclass(frozen=True)
class CheckResult:
    """Outcome of a verification: ok flag plus human-readable violations."""

    ok: bool
    violations: tuple

    def __bool__(self):
        return self.ok


class _Spend:
    def __init__(self, budget, message):
        self.left = None if budget is None else int(budget)
        self.message = message

    def spend(self):
        if self.left is None:
            return
        if self.left <= 0:
            raise BudgetError(self.message)
        self.left -= 1


def _close_pairs(pairs, n):
    """Transitive closure of a set of index pairs over range(n)."""
    below = [set() for _ in range(n)]
    for a, b in pairs:
        below[a].add(b)
    for mid in range(n):
        for a in range(n):
            if mid in below[a]:
                below[a] |= below[mid]
    return {(a, b) for a in range(n) for b in below[a]}


class OrderSystem:
    """A partition into classes, linearly ordered, plus a strict partial order.

    ``classes`` lists the blocks from least to greatest under the linear
    order.  ``partial`` holds pairs (i, j) of class indices meaning block i
    is strictly below block j; it is kept transitively closed and must be
    consistent with the listing order (i < j), so the linear order always
    extends it.
    """

    def __init__(self, classes, partial=()):
        blocks = []
        index = {}
        for block in classes:
            members = frozenset(block)
            if not members:
                raise InputError("order system classes must be nonempty")
            for x in members:
                if x in index:
                    raise InputError(f"element {x!r} appears in two classes")
                index[x] = len(blocks)
            blocks.append(members)
        self.classes = tuple(blocks)
        self.carrier = frozenset(index)
        self._index = index
        n = len(blocks)
        pairs = set()
        for a, b in partial:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise InputError(f"class index pair ({a}, {b}) is out of range")
            pairs.add((a, b))
        closed = _close_pairs(pairs, n)
        for a, b in closed:
            if a == b:
                raise InputError("partial order on classes contains a cycle")
            if a > b:
                raise InputError(
                    f"partial pair ({a}, {b}) contradicts the class listing order"
                )
        self.partial = frozenset(closed)

    def class_index(self, x):
        try:
            return self._index[x]
        except KeyError:
            raise InputError(f"{x!r} is not in the carrier") from None

    def same_class(self, x, y):
        return self.class_index(x) == self.class_index(y)

    def below(self, x, y):
        """Strictly below: the classes are distinct and partial-ordered."""
        return (self.class_index(x), self.class_index(y)) in self.partial

    def below_or_equal(self, x, y):
        a = self.class_index(x)
        b = self.class_index(y)
        return a == b or (a, b) in self.partial

    def __eq__(self, other):
        if not isinstance(other, OrderSystem):
            return NotImplemented
        return self.classes == other.classes and self.partial == other.partial

    def __hash__(self):
        return hash((self.classes, self.partial))

    def __repr__(self):
        shown = [sorted(block, key=repr) for block in self.classes]
        return f"OrderSystem({shown!r}, partial={sorted(self.partial)!r})"


def _partitions(elements):
    # restricted-growth strings in ascending lexicographic order
    n = len(elements)
    if n == 0:
        yield ()
        return
    rgs = [0] * n
    while True:
        count = max(rgs) + 1
        blocks = [[] for _ in range(count)]
        for x, c in zip(elements, rgs):
            blocks[c].append(x)
        yield tuple(tuple(b) for b in blocks)
        i = n - 1
        while i > 0:
            if rgs[i] <= max(rgs[:i]):
                rgs[i] += 1
                for j in range(i + 1, n):
                    rgs[j] = 0
                break
            i -= 1
        else:
            return


def _transitive_pair_sets(p):
    # subsets of {(i, j): i < j} in ascending bitmask order over the pairs
    # listed lexicographically, keeping only the transitively closed ones
    pairs = [(i, j) for i in range(p) for j in range(i + 1, p)]
    for mask in range(1 << len(pairs)):
        chosen = {pairs[n] for n in range(len(pairs)) if mask >> n & 1}
        if _close_pairs(chosen, p) == chosen:
            yield chosen


def iter_order_systems(carrier):
    """Every order system on the given elements, in a fixed enumeration order.

    Partitions come in restricted-growth order over the element listing,
    class orders in lexicographic order of the block permutation, and
    partial orders in ascending bitmask order (pairs (i, j), i < j, listed
    lexicographically).  This is the canonical order the searches use.
    """
    elements = tuple(carrier)
    if len(set(elements)) != len(elements):
        raise InputError("carrier has repeated elements")
    for blocks in _partitions(elements):
        p = len(blocks)
        for perm in permutations(range(p)):
            ordered = tuple(blocks[c] for c in perm)
            for pairs in _transitive_pair_sets(p):
                yield OrderSystem(ordered, pairs)


def count_order_systems(n):
    """Number of order systems on an n-element set."""
    return sum(1 for _ in iter_order_systems(range(int(n))))


def _as_pairs(order):
    listed = []
    for entry in order:
        try:
            s, i = entry
        except (TypeError, ValueError):
            raise InputError(f"order entry {entry!r} is not a (state, position) pair")
        listed.append((s, int(i)))
    return listed


def verify_compatible_order(machine, order):
    """Check a claimed compatible order for a cycling machine.

    The order lists S x [k] as (state, position) pairs from least to
    greatest.  Violations cover disagreeing per-position restrictions and
    transitions that fail to go strictly upward.
    """
    require_valid(machine, "cycling")
    listed = _as_pairs(order)
    carrier = {(s, i) for s in machine.states for i in machine.positions}
    if len(listed) != len(set(listed)) or set(listed) != carrier:
        raise InputError("order is not a total order on the state-position pairs")
    pos = {x: n for n, x in enumerate(listed)}
    violations = []
    first = [s for s, i in listed if i == 1]
    for copy in machine.positions[1:]:
        restriction = [s for s, i in listed if i == copy]
        if restriction != first:
            violations.append(
                f"restriction to position {copy} orders the states {restriction}"
                f" but position 1 orders them {first}"
            )
    for s, i, j, t in machine.transition_atoms():
        if pos[(s, i)] >= pos[(t, j)]:
            violations.append(
                f"transition {s},({i},{j})->{t} needs ({s},{i}) strictly"
                f" below ({t},{j})"
            )
    return CheckResult(not violations, tuple(violations))


def find_compatible_order(machine, budget=None):
    """Search for a compatible order on a cycling machine.

    Backtracks over prefixes of the state order; a prefix is abandoned as
    soon as the arcs it already forces (position chains so far, every
    placed state below every unplaced one, and all transition arcs) close
    a directed cycle.  Returns the first order in canonical enumeration
    order (states tried in declaration order, position chains interleaved
    lowest position first) or None when the space is exhausted.  The
    budget counts prefix nodes.
    """
    require_valid(machine, "cycling")
    states = machine.states
    positions = machine.positions
    trans = [((s, i), (t, j)) for s, i, j, t in machine.transition_atoms()]
    counter = _Spend(budget, "compatible order search budget exhausted")

    def forced_arcs(prefix, placed):
        arcs = list(trans)
        for i in positions:
            for a, b in zip(prefix, prefix[1:]):
                arcs.append(((a, i), (b, i)))
            if prefix:
                for u in states:
                    if u not in placed:
                        arcs.append(((prefix[-1], i), (u, i)))
        return arcs

    def has_cycle(arcs):
        out = {}
        for a, b in arcs:
            out.setdefault(a, []).append(b)
            out.setdefault(b, [])
        color = dict.fromkeys(out, 0)
        for root in out:
            if color[root]:
                continue
            color[root] = 1
            stack = [(root, iter(out[root]))]
            while stack:
                v, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    stack.pop()
                    color[v] = 2
                elif color[nxt] == 1:
                    return True
                elif color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(out[nxt])))
        return False

    def interleave(prefix):
        nodes = [(s, i) for i in positions for s in prefix]
        indeg = {x: 0 for x in nodes}
        out = {x: [] for x in nodes}
        arcs = list(trans)
        for i in positions:
            for a, b in zip(prefix, prefix[1:]):
                arcs.append(((a, i), (b, i)))
        for a, b in arcs:
            out[a].append(b)
            indeg[b] += 1
        order = []
        placed = set()
        while len(order) < len(nodes):
            ready = [x for x in nodes if x not in placed and indeg[x] == 0]
            if not ready:
                return None
            pick = min(ready, key=lambda x: x[1])
            order.append(pick)
            placed.add(pick)
            for y in out[pick]:
                indeg[y] -= 1
        return tuple(order)

    def extend(prefix, placed):
        counter.spend()
        if has_cycle(forced_arcs(prefix, placed)):
            return None
        if len(prefix) == len(states):
            return interleave(prefix)
        for s in states:
            if s not in placed:
                found = extend(prefix + [s], placed | {s})
                if found is not None:
                    return found
        return None

    return extend([], frozenset())


def induced_on_position(system, position):
    """Project an order system on state-position pairs onto one position."""
    keep = []
    index_map = {}
    for n, block in enumerate(system.classes):
        members = frozenset(s for s, i in block if i == position)
        if members:
            index_map[n] = len(keep)
            keep.append(members)
    pairs = {
        (index_map[a], index_map[b])
        for a, b in system.partial
        if a in index_map and b in index_map
    }
    return OrderSystem(keep, pairs)


def verify_order_system(machine, system):
    """Check the three compatibility conditions for an order system.

    (1) every transition weakly increases on classes, (2) the systems
    induced on each position coincide, (3) no pair ordered upward by the
    induced system (including each state with itself) is a bad pair.
    Condition (3) is read off the position-1 induced system.
    """
    if not isinstance(system, OrderSystem):
        raise InputError("expected an OrderSystem")
    expected = {(s, i) for s in machine.states for i in machine.positions}
    if system.carrier != expected:
        raise InputError(
            "order system carrier must be the state-position pairs of the machine"
        )
    violations = []
    for s, i, j, t in machine.transition_atoms():
        if not system.below_or_equal((s, i), (t, j)):
            violations.append(
                f"transition {s},({i},{j})->{t} needs the class of ({s},{i})"
                f" at or below the class of ({t},{j})"
            )
    induced = [induced_on_position(system, i) for i in machine.positions]
    for copy, proj in zip(machine.positions[1:], induced[1:]):
        if proj != induced[0]:
            violations.append(
                f"position {copy} induces a different system on the states"
                " than position 1"
            )
    base = induced[0]
    for s, t in machine.bad_rows():
        if base.below_or_equal(s, t):
            violations.append(
                f"bad pair ({s},{t}) is ordered upward by the induced system"
            )
    return CheckResult(not violations, tuple(violations))


def _merges(p, k):
    # every way to merge k copies of a p-chain into a sequence of blocks;
    # each block is a tuple of (position, chain index) pairs, and block
    # choices run through the eligible positions in ascending bitmask order
    def rec(pos):
        if all(c == p for c in pos):
            yield ()
            return
        eligible = [i for i in range(k) if pos[i] < p]
        for mask in range(1, 1 << len(eligible)):
            chosen = [eligible[n] for n in range(len(eligible)) if mask >> n & 1]
            part = tuple((i + 1, pos[i]) for i in chosen)
            nxt = list(pos)
            for i in chosen:
                nxt[i] += 1
            for rest in rec(tuple(nxt)):
                yield (part,) + rest

    if p == 0:
        yield ()
    else:
        yield from rec((0,) * k)


def _lift(theta, k, cross, counter, enumerate_all):
    # lift a system on the states to the full carrier: condition (2) says
    # each position reads theta, so the global class sequence is a merge of
    # k copies of theta's class chain, and the global partial restricted to
    # any one position must reproduce theta's
    p = len(theta.classes)
    for layout in _merges(p, k):
        counter.spend()
        nblocks = len(layout)
        copyclass = [dict(part) for part in layout]
        block_of = {}
        for bidx, part in enumerate(layout):
            for i, c in part:
                for s in theta.classes[c]:
                    block_of[(s, i)] = bidx
        required = set()
        forbidden = set()
        for a in range(nblocks):
            for b in range(a + 1, nblocks):
                for i in copyclass[a].keys() & copyclass[b].keys():
                    if (copyclass[a][i], copyclass[b][i]) in theta.partial:
                        required.add((a, b))
                    else:
                        forbidden.add((a, b))
        ok = True
        for s, i, j, t in cross:
            a = block_of[(s, i)]
            b = block_of[(t, j)]
            if a == b:
                continue
            if a > b:
                ok = False
                break
            required.add((a, b))
        if not ok:
            continue
        base = _close_pairs(required, nblocks)
        if base & forbidden:
            continue
        blocks = [
            frozenset((s, i) for i, c in part for s in theta.classes[c])
            for part in layout
        ]
        if not enumerate_all:
            yield OrderSystem(blocks, base)
            continue
        optional = [
            (a, b)
            for a in range(nblocks)
            for b in range(a + 1, nblocks)
            if (a, b) not in base and (a, b) not in forbidden
        ]
        for mask in range(1 << len(optional)):
            extra = {optional[n] for n in range(len(optional)) if mask >> n & 1}
            candidate = base | extra
            if _close_pairs(candidate, nblocks) == candidate:
                yield OrderSystem(blocks, candidate)


def find_order_system(machine, budget=None, enumerate_all=False):
    """Search for a compatible order system under general semantics.

    Stage one enumerates candidate induced systems on the states (pruned
    by the bad pairs and by same-position transitions); stage two lifts
    each candidate to S x [k] by merging the position chains.  Returns the
    first compatible system in canonical enumeration order, None when
    there is none, or the full list with enumerate_all.  The budget counts
    stage-one candidates plus stage-two merge layouts.
    """
    require_valid(machine, "general")
    counter = _Spend(budget, "order system search budget exhausted")
    diag = [(s, t) for s, i, j, t in machine.transition_atoms() if i == j]
    cross = [(s, i, j, t) for s, i, j, t in machine.transition_atoms() if i != j]
    bad = machine.bad_rows()
    found = []
    for theta in iter_order_systems(machine.states):
        counter.spend()
        if any(theta.below_or_equal(s, t) for s, t in bad):
            continue
        if any(not theta.below_or_equal(s, t) for s, t in diag):
            continue
        for system in _lift(theta, machine.k, cross, counter, enumerate_all):
            if not enumerate_all:
                return system
            found.append(system)
    return found if enumerate_all else None


def compatible_order_to_order_system(order):
    """View a total order as an order system with singleton classes.

    The partial order relates every earlier class to every later one, so
    the induced relation on the underlying states is the full order read
    off any one position.
    """
    listed = _as_pairs(order)
    if len(listed) != len(set(listed)):
        raise InputError("order lists an element twice")
    classes = [frozenset([x]) for x in listed]
    pairs = {(a, b) for a in range(len(listed)) for b in range(a + 1, len(listed))}
    return OrderSystem(classes, pairs)


def decide_cycling_2machine(machine):
    """Decide compatible-order existence for a cycling 2-machine.

    Transitions become weighted arcs s -> t of weight j - i on the states.
    An order exists exactly when no strong component carries both a cycle
    of mean <= 0 and a cycle of mean >= 0 (equivalently, a closed walk of
    total weight zero).
    """
    require_valid(machine, "cycling")
    if machine.k != 2:
        raise InputError("the fast decision procedure needs k = 2")
    arcs = [(s, t, j - i) for s, i, j, t in machine.transition_atoms()]
    graph = WeightedDigraph(machine.states, arcs)
    result = strong_components(graph)
    for idx in sorted(result.internal_arc_components(graph)):
        comp = result.components[idx]
        members = set(comp)
        internal = [a for a in graph.arcs if a[0] in members and a[1] in members]
        sub = WeightedDigraph(comp, internal)
        lo = min_cycle_mean(sub)
        if lo is None:
            continue
        if lo <= 0 <= max_cycle_mean(sub):
            return False
    return True


def check_paths_good(machine, n_max):
    """Scan the directed paths P_1..P_n_max for a bad cycle.

    Returns (n, witness) for the first bad path, or None when every one
    of them is good.
    """
    require_valid(machine, "cycling")
    if machine.k != 2:
        raise InputError("path digraphs are 2-uniform")
    from .goodness import is_good
    from .hypergraph import path_digraph

    for n in range(1, int(n_max) + 1):
        verdict = is_good(path_digraph(n), machine)
        if not verdict.good:
            return n, verdict.witness
    return None
