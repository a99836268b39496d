"""Weighted digraph kernels shared by the deciders.

Strong components (iterative Tarjan), reachability, exact minimum and
maximum cycle means (Karp), and bounded longest-walk potentials.  All
weights are Fractions; there is no floating point anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError


class WeightedDigraph:
    """Digraph with exact rational arc weights.

    Parallel arcs and self-loops are allowed; arcs are (source, target,
    weight) triples kept in input order.
    """

    def __init__(self, vertices, arcs=()):
        self.vertices = tuple(vertices)
        self._index = {v: n for n, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise InputError("duplicate vertex names")
        cleaned = []
        for u, v, w in arcs:
            if u not in self._index:
                raise InputError(f"arc source {u!r} is not a declared vertex")
            if v not in self._index:
                raise InputError(f"arc target {v!r} is not a declared vertex")
            cleaned.append((u, v, Fraction(w)))
        self.arcs = tuple(cleaned)
        succ: dict = {v: [] for v in self.vertices}
        for u, v, _ in self.arcs:
            succ[u].append(v)
        self._succ = {v: tuple(dict.fromkeys(ts)) for v, ts in succ.items()}

    def index_of(self, v):
        if v not in self._index:
            raise InputError(f"unknown vertex {v!r}")
        return self._index[v]

    def successors(self, v):
        if v not in self._succ:
            raise InputError(f"unknown vertex {v!r}")
        return self._succ[v]

    def __eq__(self, other):
        if not isinstance(other, WeightedDigraph):
            return NotImplemented
        return self.vertices == other.vertices and self.arcs == other.arcs

    def __hash__(self):
        return hash((self.vertices, self.arcs))

    def __repr__(self):
        return (
            f"WeightedDigraph(vertices={len(self.vertices)}, arcs={len(self.arcs)})"
        )


@dataclass(frozen=True)
class SCCResult:
    """Strong components in topological order plus the condensation DAG."""

    components: tuple
    component_of: dict
    condensation: tuple

    def internal_arc_components(self, graph):
        """Component indices that contain at least one arc."""
        found = set()
        for u, v, _ in graph.arcs:
            if self.component_of[u] == self.component_of[v]:
                found.add(self.component_of[u])
        return found


def strong_components(graph):
    """Tarjan's algorithm, iterative; components come out topologically sorted."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    raw = []
    counter = 0
    for root in graph.vertices:
        if root in index:
            continue
        call = [(root, 0)]
        while call:
            v, pos = call.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            succs = graph.successors(v)
            descended = False
            for n in range(pos, len(succs)):
                w = succs[n]
                if w not in index:
                    call.append((v, n + 1))
                    call.append((w, 0))
                    descended = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if descended:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                raw.append(comp)
            if call:
                parent = call[-1][0]
                low[parent] = min(low[parent], low[v])
    raw.reverse()
    components = tuple(
        tuple(sorted(comp, key=graph.index_of)) for comp in raw
    )
    component_of = {}
    for n, comp in enumerate(components):
        for v in comp:
            component_of[v] = n
    conden = set()
    for u, v, _ in graph.arcs:
        a, b = component_of[u], component_of[v]
        if a != b:
            conden.add((a, b))
    return SCCResult(components, component_of, tuple(sorted(conden)))


def reachable(graph, u, v):
    """True iff a directed walk (possibly empty) leads from u to v."""
    graph.index_of(u)
    graph.index_of(v)
    seen = {u}
    frontier = [u]
    while frontier:
        x = frontier.pop()
        if x == v:
            return True
        for y in graph.successors(x):
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return False


def min_cycle_mean(graph):
    """Minimum mean weight over directed cycles; None when acyclic."""
    result = strong_components(graph)
    best = None
    for cn in sorted(result.internal_arc_components(graph)):
        comp = result.components[cn]
        internal = [
            (u, v, w)
            for u, v, w in graph.arcs
            if result.component_of[u] == cn and result.component_of[v] == cn
        ]
        mean = _karp_min_mean(comp, internal)
        if best is None or mean < best:
            best = mean
    return best


def max_cycle_mean(graph):
    """Maximum mean weight over directed cycles; None when acyclic."""
    flipped = WeightedDigraph(
        graph.vertices, [(u, v, -w) for u, v, w in graph.arcs]
    )
    mean = min_cycle_mean(flipped)
    return None if mean is None else -mean


def _karp_min_mean(comp, arcs):
    """Karp's formula on one strongly connected component."""
    n = len(comp)
    rank = {v: i for i, v in enumerate(comp)}
    rows = [(rank[u], rank[v], w) for u, v, w in arcs]
    d = [[None] * n for _ in range(n + 1)]
    d[0][0] = Fraction(0)
    for k in range(1, n + 1):
        prev, cur = d[k - 1], d[k]
        for u, v, w in rows:
            if prev[u] is None:
                continue
            cand = prev[u] + w
            if cur[v] is None or cand < cur[v]:
                cur[v] = cand
    best = None
    for v in range(n):
        if d[n][v] is None:
            continue
        worst = None
        for k in range(n):
            if d[k][v] is None:
                continue
            val = (d[n][v] - d[k][v]) / (n - k)
            if worst is None or val > worst:
                worst = val
        if best is None or worst < best:
            best = worst
    return best


def find_positive_cycle(graph):
    """Some directed cycle of strictly positive total weight, or None.

    Returns the cycle as a tuple of (source, target, weight) arcs.  Uses
    the tight subgraph of max-mean-shifted potentials, so the result is
    exact.
    """
    result = strong_components(graph)
    for cn in sorted(result.internal_arc_components(graph)):
        comp = result.components[cn]
        internal = [
            (u, v, w)
            for u, v, w in graph.arcs
            if result.component_of[u] == cn and result.component_of[v] == cn
        ]
        mean = -_karp_min_mean(comp, [(u, v, -w) for u, v, w in internal])
        if mean <= 0:
            continue
        shifted = [(u, v, w - mean) for u, v, w in internal]
        pot = _max_potentials(comp, shifted, comp[0])
        tight = [
            (u, v, w)
            for u, v, w in internal
            if pot[v] == pot[u] + w - mean
        ]
        cycle = _any_cycle(comp, tight)
        if cycle:
            return tuple(cycle)
    return None


def _max_potentials(vertices, arcs, source):
    """Longest-walk values when no positive cycles exist; plain relaxation."""
    dist = {v: None for v in vertices}
    dist[source] = Fraction(0)
    for _ in range(max(len(vertices) - 1, 1)):
        changed = False
        for u, v, w in arcs:
            if dist[u] is None:
                continue
            cand = dist[u] + w
            if dist[v] is None or cand > dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            break
    return dist


def _any_cycle(vertices, arcs):
    """A simple directed cycle in (vertices, arcs), as a list of arcs."""
    out = {v: [] for v in vertices}
    for arc in arcs:
        out[arc[0]].append(arc)
    color = {v: 0 for v in vertices}
    for root in vertices:
        if color[root]:
            continue
        color[root] = 1
        stack = [(root, 0)]
        path_arcs = []
        while stack:
            v, pos = stack[-1]
            if pos < len(out[v]):
                stack[-1] = (v, pos + 1)
                arc = out[v][pos]
                w = arc[1]
                if color[w] == 1:
                    idx = len(path_arcs)
                    for n, a in enumerate(path_arcs):
                        if a[0] == w:
                            idx = n
                            break
                    return path_arcs[idx:] + [arc]
                if color[w] == 0:
                    color[w] = 1
                    path_arcs.append(arc)
                    stack.append((w, 0))
            else:
                stack.pop()
                color[v] = 2
                if path_arcs:
                    path_arcs.pop()
    return None


@dataclass(frozen=True)
class LongestWalks:
    """Either finite longest-walk values or a positive-cycle witness."""

    potentials: dict | None
    positive_cycle: tuple | None

    @property
    def bounded(self):
        return self.potentials is not None


def longest_walk_potentials(graph, source):
    """Supremum of walk weights from source to each vertex.

    Every vertex must be reachable from source.  When some reachable
    cycle has positive total weight the supremum is infinite and the
    witness cycle is returned instead.
    """
    graph.index_of(source)
    seen = {source}
    frontier = [source]
    while frontier:
        x = frontier.pop()
        for y in graph.successors(x):
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    missing = [v for v in graph.vertices if v not in seen]
    if missing:
        raise InputError(f"vertex {missing[0]!r} is not reachable from {source!r}")
    dist = {v: None for v in graph.vertices}
    dist[source] = Fraction(0)
    changed = True
    for _ in range(len(graph.vertices)):
        changed = False
        for u, v, w in graph.arcs:
            if dist[u] is None:
                continue
            cand = dist[u] + w
            if dist[v] is None or cand > dist[v]:
                dist[v] = cand
                changed = True
        if not changed:
            break
    if changed:
        cycle = find_positive_cycle(graph)
        return LongestWalks(None, cycle)
    return LongestWalks(dict(dist), None)
