"""Directed hypergraphs, their cycles and traces, and chromatic numbers.

A k-uniform directed hypergraph is a vertex set plus a set of k-tuples
of pairwise distinct vertices.  A coloring is proper when no edge has
all of its coordinates colored alike.  The exact solver runs iterative
deepening on the color count with branch and bound; low-degree vertices
are peeled first and reinserted greedily.
"""
from __future__ import annotations

import sys
from dataclasses import dataclass

from .errors import BudgetError, InputError


class DirectedHypergraph:
    """Immutable k-uniform directed hypergraph with named vertices."""

    def __init__(self, k, vertices, edges=()):
        self.k = int(k)
        if self.k < 2:
            raise InputError(f"uniformity k must be at least 2, got {k}")
        self.vertices = tuple(vertices)
        self._index = {v: n for n, v in enumerate(self.vertices)}
        if len(self._index) != len(self.vertices):
            raise InputError("duplicate vertex names")
        seen = set()
        cleaned = []
        for raw in edges:
            edge = tuple(raw)
            if len(edge) != self.k:
                raise InputError(f"edge {edge!r} is not a {self.k}-tuple")
            for v in edge:
                if v not in self._index:
                    raise InputError(f"edge coordinate {v!r} is not a declared vertex")
            if len(set(edge)) != self.k:
                raise InputError(f"edge {edge!r} repeats a coordinate")
            if edge in seen:
                raise InputError(f"duplicate edge {edge!r}")
            seen.add(edge)
            cleaned.append(edge)
        self.edges = tuple(cleaned)
        incident: dict[str, list[int]] = {v: [] for v in self.vertices}
        for n, edge in enumerate(self.edges):
            for v in edge:
                incident[v].append(n)
        self._incident = {v: tuple(ns) for v, ns in incident.items()}

    def index_of(self, v):
        if v not in self._index:
            raise InputError(f"unknown vertex {v!r}")
        return self._index[v]

    def incident_edges(self, v):
        """Indices of edges containing v, in edge order."""
        if v not in self._incident:
            raise InputError(f"unknown vertex {v!r}")
        return self._incident[v]

    def __eq__(self, other):
        if not isinstance(other, DirectedHypergraph):
            return NotImplemented
        return (
            self.k == other.k
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.k, self.vertices, self.edges))

    def __repr__(self):
        return (
            f"DirectedHypergraph(k={self.k}, vertices={len(self.vertices)}, "
            f"edges={len(self.edges)})"
        )


class HyperCycle:
    """A cycle (v_0, e_1, v_1, ..., e_n, v_n) with v_n = v_0.

    ``steps`` is a sequence of (edge index, next vertex) pairs.  Each
    step's edge must contain both the previous and the next vertex; the
    two may coincide (the trace is then a diagonal position pair).
    """

    def __init__(self, graph, base, steps=()):
        graph.index_of(base)
        verts = [base]
        indices = []
        at = base
        for edge_index, nxt in steps:
            if not 0 <= edge_index < len(graph.edges):
                raise InputError(f"edge index {edge_index} out of range")
            edge = graph.edges[edge_index]
            if at not in edge:
                raise InputError(f"vertex {at!r} is not on edge {edge_index}")
            if nxt not in edge:
                raise InputError(f"vertex {nxt!r} is not on edge {edge_index}")
            indices.append(edge_index)
            verts.append(nxt)
            at = nxt
        if at != base:
            raise InputError(f"cycle ends at {at!r}, expected base {base!r}")
        self.graph = graph
        self.vertex_seq = tuple(verts)
        self.edge_indices = tuple(indices)

    @property
    def base(self):
        return self.vertex_seq[0]

    @property
    def length(self):
        return len(self.edge_indices)

    @property
    def steps(self):
        return tuple(zip(self.edge_indices, self.vertex_seq[1:]))

    def trace(self, i):
        """Position pair (a, b) of step i (1-based): edge coordinates of v_{i-1} and v_i."""
        if not 1 <= i <= self.length:
            raise InputError(f"step index {i} out of range 1..{self.length}")
        edge = self.graph.edges[self.edge_indices[i - 1]]
        return edge.index(self.vertex_seq[i - 1]) + 1, edge.index(self.vertex_seq[i]) + 1

    def traces(self):
        return tuple(self.trace(i) for i in range(1, self.length + 1))

    def _encoded(self):
        flat = []
        for i, edge_index in enumerate(self.edge_indices):
            flat.append(self.graph.index_of(self.vertex_seq[i]))
            flat.append(edge_index)
        return flat

    def canonical_key(self):
        """Lexicographically least rotation of the (vertex, edge, ...) encoding."""
        if self.length == 0:
            return (self.graph.index_of(self.base),)
        flat = self._encoded()
        return min(
            tuple(flat[2 * r :] + flat[: 2 * r]) for r in range(self.length)
        )

    def canonical(self):
        """The rotation of this cycle whose encoding is canonical."""
        key = self.canonical_key()
        if self.length == 0:
            return self
        names = self.graph.vertices
        verts = [names[key[2 * i]] for i in range(self.length)]
        verts.append(verts[0])
        steps = [(key[2 * i + 1], verts[i + 1]) for i in range(self.length)]
        return HyperCycle(self.graph, verts[0], steps)

    def __eq__(self, other):
        if not isinstance(other, HyperCycle):
            return NotImplemented
        return (
            self.graph == other.graph
            and self.vertex_seq == other.vertex_seq
            and self.edge_indices == other.edge_indices
        )

    def __hash__(self):
        return hash((self.vertex_seq, self.edge_indices))

    def __repr__(self):
        return f"HyperCycle(base={self.base!r}, length={self.length})"


def trace(cycle, i):
    """Trace of the cycle at step i (1-based)."""
    return cycle.trace(i)


def enumerate_cycles(graph, max_len):
    """Yield every cycle of length at most max_len, once per rotation class.

    The representative yielded is the canonical rotation.  Vertices and
    edges may repeat within a cycle; length-0 cycles are included.
    """
    if max_len < 0:
        raise InputError(f"max_len must be nonnegative, got {max_len}")
    for base in graph.vertices:
        yield HyperCycle(graph, base)
    for base in graph.vertices:
        base_rank = graph.index_of(base)
        seen = set()
        steps = []

        def walk(at):
            if len(steps) >= max_len:
                return
            for edge_index in graph.incident_edges(at):
                for nxt in graph.edges[edge_index]:
                    if graph.index_of(nxt) < base_rank:
                        continue
                    steps.append((edge_index, nxt))
                    if nxt == base:
                        cycle = HyperCycle(graph, base, tuple(steps))
                        key = cycle.canonical_key()
                        if key not in seen:
                            seen.add(key)
                            yield cycle.canonical()
                    yield from walk(nxt)
                    steps.pop()

        yield from walk(base)


def path_digraph(n):
    """Directed path with n edges: vertices "1".."n+1", arcs i -> i+1."""
    if n < 0:
        raise InputError(f"path length must be nonnegative, got {n}")
    vertices = [str(i) for i in range(1, n + 2)]
    edges = [(str(i), str(i + 1)) for i in range(1, n + 1)]
    return DirectedHypergraph(2, vertices, edges)


def weak_components(graph):
    """Weakly connected components as tuples of vertices, in canonical order."""
    parent = {v: v for v in graph.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for edge in graph.edges:
        root = find(edge[0])
        for v in edge[1:]:
            parent[find(v)] = root
    groups: dict[str, list[str]] = {}
    for v in graph.vertices:
        groups.setdefault(find(v), []).append(v)
    return tuple(tuple(groups[r]) for r in sorted(groups, key=graph.index_of))


# -- coloring ------------------------------------------------------------


@dataclass(frozen=True)
class ChromaticResult:
    """Exact chromatic number with a witness coloring."""

    number: int
    coloring: dict


def is_proper_coloring(graph, coloring):
    """True when every vertex is colored and no edge is monochromatic."""
    if any(v not in coloring for v in graph.vertices):
        return False
    return all(len({coloring[v] for v in edge}) > 1 for edge in graph.edges)


def chromatic_upper_greedy(graph, order=None):
    """Color count of the greedy coloring along the given vertex order."""
    if order is None:
        order = graph.vertices
    order = tuple(order)
    if sorted(order) != sorted(graph.vertices):
        raise InputError("order must list every vertex exactly once")
    coloring = _greedy_coloring(graph, order)
    return max(coloring.values(), default=0)


def _greedy_coloring(graph, order):
    coloring = {}
    for v in order:
        coloring[v] = _least_free_color(graph, coloring, v)
    return coloring


def _least_free_color(graph, coloring, v):
    forbidden = set()
    for edge_index in graph.incident_edges(v):
        others = {coloring.get(u) for u in graph.edges[edge_index] if u != v}
        if len(others) == 1 and None not in others:
            forbidden.add(next(iter(others)))
    color = 1
    while color in forbidden:
        color += 1
    return color


def chromatic_number_exact(graph, budget=None):
    """Least color count admitting a proper coloring, with a witness.

    ``budget`` caps the number of branch-and-bound decisions; on
    exhaustion a BudgetError carrying the best known bounds is raised.
    """
    counter = _NodeCounter(budget)
    parts = [_induced(graph, set(c)) for c in weak_components(graph)]
    greedies = [_greedy_coloring(p, p.vertices) for p in parts]
    uppers = [max(g.values(), default=0) for g in greedies]
    best = 0
    coloring = {}
    for n, part in enumerate(parts):
        try:
            number, found = _chromatic_component(part, greedies[n], uppers[n], counter)
        except _ComponentBudget as stop:
            raise BudgetError(
                "chromatic search budget exhausted",
                lower=max(best, stop.lower),
                upper=max(best, *uppers[n:]),
            ) from None
        best = max(best, number)
        coloring.update(found)
    return ChromaticResult(best, coloring)


class _NodeCounter:
    def __init__(self, budget):
        self.left = budget

    def spend(self):
        if self.left is None:
            return
        if self.left <= 0:
            raise _BudgetHit
        self.left -= 1


class _BudgetHit(Exception):
    pass


class _ComponentBudget(Exception):
    def __init__(self, lower):
        self.lower = lower


def _induced(graph, keep):
    vertices = [v for v in graph.vertices if v in keep]
    edges = [e for e in graph.edges if all(v in keep for v in e)]
    return DirectedHypergraph(graph.k, vertices, edges)


def _clique_lower_bound(graph):
    """Greedy clique size; valid for k=2 only, else 2 when any edge exists."""
    if not graph.edges:
        return 1 if graph.vertices else 0
    if graph.k != 2:
        return 2
    neighbors = {v: set() for v in graph.vertices}
    for a, b in graph.edges:
        neighbors[a].add(b)
        neighbors[b].add(a)
    by_degree = sorted(graph.vertices, key=lambda v: -len(neighbors[v]))
    best = 2
    for seed in by_degree[:8]:
        clique = {seed}
        for u in by_degree:
            if u not in clique and all(u in neighbors[w] for w in clique):
                clique.add(u)
        best = max(best, len(clique))
    return best


def _chromatic_component(graph, greedy, upper, counter):
    lower = _clique_lower_bound(graph)
    if upper <= lower:
        return upper, greedy
    for t in range(lower, upper):
        try:
            found = _color_with(graph, t, counter)
        except _BudgetHit:
            raise _ComponentBudget(t) from None
        if found is not None:
            return t, found
    return upper, greedy


def _peel(graph, t):
    """Remove vertices incident to fewer than t edges, cascading.

    Returns (core graph, peel log).  Each log entry is (vertex, removed
    edge tuples); replaying the log backwards with a greedy choice
    extends any proper t-coloring of the core.
    """
    alive_vertices = set(graph.vertices)
    alive_edges = set(range(len(graph.edges)))
    degree = {v: len(graph.incident_edges(v)) for v in graph.vertices}
    queue = [v for v in graph.vertices if degree[v] < t]
    log = []
    while queue:
        v = queue.pop()
        if v not in alive_vertices:
            continue
        alive_vertices.remove(v)
        removed = []
        for edge_index in graph.incident_edges(v):
            if edge_index not in alive_edges:
                continue
            alive_edges.remove(edge_index)
            removed.append(graph.edges[edge_index])
            for u in graph.edges[edge_index]:
                if u == v or u not in alive_vertices:
                    continue
                degree[u] -= 1
                if degree[u] < t:
                    queue.append(u)
        log.append((v, tuple(removed)))
    core = DirectedHypergraph(
        graph.k,
        [v for v in graph.vertices if v in alive_vertices],
        [graph.edges[n] for n in sorted(alive_edges)],
    )
    return core, log


def _color_with(graph, t, counter):
    """A proper t-coloring of graph, or None when none exists."""
    if t <= 0:
        return {} if not graph.vertices else None
    core, log = _peel(graph, t)
    coloring = _search_core(core, t, counter)
    if coloring is None:
        return None
    for v, removed in reversed(log):
        forbidden = set()
        for edge in removed:
            others = {coloring[u] for u in edge if u != v}
            if len(others) == 1:
                forbidden.add(next(iter(others)))
        color = next(c for c in range(1, t + 1) if c not in forbidden)
        coloring[v] = color
    return coloring


def _search_core(graph, t, counter):
    """Branch and bound t-coloring of a peeled core.

    State per edge: number of uncolored coordinates and the set of
    colors present.  An edge with one uncolored coordinate and a single
    present color forbids that color there; a fully colored edge must
    not be monochromatic.  Vertices are picked by saturation, then
    degree, then canonical order; colors tried up to one past the
    current maximum.
    """
    vertices = graph.vertices
    if not vertices:
        return {}
    color = {v: 0 for v in vertices}
    forbid_count = {v: [0] * (t + 1) for v in vertices}
    saturation = {v: 0 for v in vertices}
    uncolored_in = [len(e) for e in graph.edges]
    present = [set() for _ in graph.edges]
    degree = {v: len(graph.incident_edges(v)) for v in vertices}
    uncolored = set(vertices)
    rank = {v: n for n, v in enumerate(vertices)}

    def assign(v, c):
        """Apply v := c; returns (ok, journal) where journal undoes the effects."""
        journal = []
        color[v] = c
        uncolored.remove(v)
        ok = True
        for edge_index in graph.incident_edges(v):
            uncolored_in[edge_index] -= 1
            fresh = c not in present[edge_index]
            if fresh:
                present[edge_index].add(c)
            journal.append(("edge", edge_index, fresh))
            if uncolored_in[edge_index] == 0:
                if len(present[edge_index]) == 1:
                    ok = False
            elif uncolored_in[edge_index] == 1 and len(present[edge_index]) == 1:
                last = next(u for u in graph.edges[edge_index] if color[u] == 0)
                forbid_count[last][c] += 1
                if forbid_count[last][c] == 1:
                    saturation[last] += 1
                journal.append(("forbid", last, c))
        return ok, journal

    def undo(v, journal):
        for tag, first, second in reversed(journal):
            if tag == "edge":
                uncolored_in[first] += 1
                if second:
                    present[first].discard(color[v])
            else:
                forbid_count[first][second] -= 1
                if forbid_count[first][second] == 0:
                    saturation[first] -= 1
        color[v] = 0
        uncolored.add(v)

    def pick():
        return max(
            uncolored,
            key=lambda v: (saturation[v], degree[v], -rank[v]),
        )

    def extend(used):
        if not uncolored:
            return True
        counter.spend()
        v = pick()
        limit = min(used + 1, t)
        for c in range(1, limit + 1):
            if forbid_count[v][c]:
                continue
            ok, journal = assign(v, c)
            if ok and extend(max(used, c)):
                return True
            undo(v, journal)
        return False

    depth = len(vertices) + 50
    old_limit = sys.getrecursionlimit()
    if depth > old_limit - 100:
        sys.setrecursionlimit(depth + 200)
    try:
        if extend(0):
            return {v: color[v] for v in vertices}
        return None
    finally:
        sys.setrecursionlimit(old_limit)
