"""Simple undirected graphs, the graph families used by Toggle, and positions.

Vertex index conventions (frozen; use the helpers, not raw arithmetic):

* ``lattice2(m)``: vertex v_{i,j} (row i in {0,1}, column j in 1..m) has
  index ``i*m + (j-1)``, i.e. row 0 first.  See :func:`lattice_index`.
* ``build_petersen(m, k)``: outer cycle vertices v_{1,j} come first with
  index ``j-1``; inner star-polygon vertices v_{0,j} follow with index
  ``m + j-1``.  See :func:`petersen_index`.
* ``path(n)`` / ``cycle(n)``: vertex v_j has index ``j-1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .errors import InputError


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]], labels=None):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        if len(adjacency) != n:
            raise InputError(f"adjacency has {len(adjacency)} rows for {n} vertices")
        adj = tuple(frozenset(nb) for nb in adjacency)
        for v, nb in enumerate(adj):
            for u in nb:
                if not 0 <= u < n:
                    raise InputError(f"neighbor {u} of vertex {v} out of range")
                if u == v:
                    raise InputError(f"self-loop at vertex {v}")
                if v not in adj[u]:
                    raise InputError(f"asymmetric adjacency between {v} and {u}")
        if labels is None:
            labels = (None,) * n
        labels = tuple(labels)
        if len(labels) != n:
            raise InputError(f"{len(labels)} labels for {n} vertices")
        self.n = n
        self.adj = adj
        self.labels = labels

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels=None,
                   strict: bool = False) -> "Graph":
        """Build from an edge list.

        Duplicate edges collapse silently unless ``strict`` is set, in which
        case they raise :class:`InputError`.
        """
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for {n} vertices")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if strict and v in adj[u]:
                raise InputError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj, labels)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __len__(self):
        return self.n

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @property
    def max_degree(self) -> int:
        return max((len(nb) for nb in self.adj), default=0)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        """Bitmask of N[v] for every vertex v."""
        masks = []
        for v, nb in enumerate(self.adj):
            m = 1 << v
            for u in nb:
                m |= 1 << u
            masks.append(m)
        return tuple(masks)

    @cached_property
    def structure_key(self) -> tuple[tuple[int, ...], ...]:
        """Stable identifier of the labelled structure (sorted adjacency)."""
        return tuple(tuple(sorted(nb)) for nb in self.adj)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], [s]
            while stack:
                v = stack.pop()
                for u in self.adj[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
                        comp.append(u)
            comps.append(tuple(sorted(comp)))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.components) <= 1

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, vertices renumbered 0.. in ascending original order."""
        order = sorted(vertices)
        remap = {v: i for i, v in enumerate(order)}
        adj = [[remap[u] for u in self.adj[v] if u in remap] for v in order]
        return Graph(len(order), adj, [self.labels[v] for v in order])

    def with_labels(self, labels) -> "Graph":
        return Graph(self.n, self.adj, labels)

    def find_label(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None


# -- family generators -------------------------------------------------------

def lattice_index(m: int, i: int, j: int) -> int:
    """Index of v_{i,j} in ``lattice2(m)``."""
    if i not in (0, 1) or not 1 <= j <= m:
        raise InputError(f"v_{{{i},{j}}} is not a vertex of L(2,{m})")
    return i * m + (j - 1)


def petersen_index(m: int, i: int, j: int) -> int:
    """Index of v_{i,j} in ``build_petersen(m, k)``: i=1 outer, i=0 inner."""
    if i not in (0, 1) or not 1 <= j <= m:
        raise InputError(f"v_{{{i},{j}}} is not a vertex of P({m},k)")
    return (j - 1) if i == 1 else m + (j - 1)


def path(n: int) -> Graph:
    if n < 1:
        raise InputError(f"path needs n >= 1, got {n}")
    return Graph.from_edges(n, [(j, j + 1) for j in range(n - 1)],
                            [f"v{j + 1}" for j in range(n)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(j, (j + 1) % n) for j in range(n)],
                            [f"v{j + 1}" for j in range(n)])


def lattice2(m: int) -> Graph:
    if m < 1:
        raise InputError(f"lattice2 needs m >= 1, got {m}")
    edges = []
    for i in (0, 1):
        for j in range(1, m):
            edges.append((lattice_index(m, i, j), lattice_index(m, i, j + 1)))
    for j in range(1, m + 1):
        edges.append((lattice_index(m, 0, j), lattice_index(m, 1, j)))
    labels = [f"v{i},{j}" for i in (0, 1) for j in range(1, m + 1)]
    return Graph.from_edges(2 * m, edges, labels)


_BASIC = {"path": path, "cycle": cycle, "lattice2": lattice2}


def build_basic(kind: str, n: int) -> Graph:
    try:
        return _BASIC[kind](n)
    except KeyError:
        raise InputError(f"unknown graph kind {kind!r}") from None


def build_petersen(m: int, k: int) -> Graph:
    """Generalized Petersen graph P(m, k); doubled chords collapse to one edge."""
    if m < 3:
        raise InputError(f"P(m,k) needs m >= 3, got m={m}")
    if not 1 <= k < m:
        raise InputError(f"P(m,k) needs 1 <= k < m, got k={k}")
    edges = []
    for j in range(1, m + 1):
        nxt = j % m + 1
        edges.append((petersen_index(m, 1, j), petersen_index(m, 1, nxt)))
        edges.append((petersen_index(m, 0, j), petersen_index(m, 0, (j - 1 + k) % m + 1)))
        edges.append((petersen_index(m, 0, j), petersen_index(m, 1, j)))
    labels = [f"v1,{j}" for j in range(1, m + 1)] + [f"v0,{j}" for j in range(1, m + 1)]
    return Graph.from_edges(2 * m, edges, labels)


def disjoint_union(a: Graph, b: Graph) -> Graph:
    shift = a.n
    adj = [set(nb) for nb in a.adj] + [{u + shift for u in nb} for nb in b.adj]
    return Graph(a.n + b.n, adj, a.labels + b.labels)


# -- positions ---------------------------------------------------------------

def pack_bits(bits: Iterable[int]) -> int:
    w = 0
    for v, b in enumerate(bits):
        if b not in (0, 1):
            raise InputError(f"weight of vertex {v} must be 0 or 1, got {b!r}")
        if b:
            w |= 1 << v
    return w


@dataclass(frozen=True)
class GamePosition:
    """A graph with a 0/1 weight per vertex, packed into an int (bit v = vertex v)."""

    graph: Graph
    weights: int

    def __post_init__(self):
        if self.weights < 0 or self.weights >> self.graph.n:
            raise InputError("weight bits exceed the vertex count")

    @classmethod
    def from_bits(cls, graph: Graph, bits: Iterable[int]) -> "GamePosition":
        bits = list(bits)
        if len(bits) != graph.n:
            raise InputError(f"{len(bits)} weights for {graph.n} vertices")
        return cls(graph, pack_bits(bits))

    @classmethod
    def all_ones(cls, graph: Graph) -> "GamePosition":
        return cls(graph, (1 << graph.n) - 1)

    @classmethod
    def with_zeros(cls, graph: Graph, zeros: Iterable[int]) -> "GamePosition":
        w = (1 << graph.n) - 1
        for v in zeros:
            w &= ~(1 << v)
        return cls(graph, w)

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple((self.weights >> v) & 1 for v in range(self.graph.n))

    @property
    def bitstring(self) -> str:
        return "".join(map(str, self.bits))

    @property
    def zeros(self) -> frozenset[int]:
        return frozenset(v for v in range(self.graph.n) if not (self.weights >> v) & 1)

    @property
    def total_weight(self) -> int:
        return self.weights.bit_count()


# -- toggle-graph text format ------------------------------------------------

FORMAT_HEADER = "toggle-graph 1"


def serialize_graph(g: Graph, weights=None) -> str:
    """Render ``g`` (and optional weights) in the toggle-graph format."""
    lines = [FORMAT_HEADER, f"n {g.n}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    if weights is not None:
        if isinstance(weights, GamePosition):
            weights = weights.bits
        elif isinstance(weights, str):
            weights = [int(c) for c in weights]
        weights = list(weights)
        if len(weights) != g.n:
            raise InputError(f"{len(weights)} weights for {g.n} vertices")
        lines.append("w " + "".join(str(int(b)) for b in weights))
    for v, label in enumerate(g.labels):
        if label is not None:
            lines.append(f"l {v} {label}")
    return "\n".join(lines) + "\n"


_BITSTRING = re.compile(r"^[01]*$")


def parse_graph(text: str) -> tuple[Graph, tuple[int, ...] | None]:
    """Parse the toggle-graph format; returns ``(graph, weights or None)``."""
    n = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    weights = None
    labels: dict[int, str] = {}
    header_seen = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line.split() != FORMAT_HEADER.split():
                raise InputError(f"expected header {FORMAT_HEADER!r}", lineno)
            header_seen = True
            continue
        tag, _, rest = line.partition(" ")
        fields = rest.split()
        if tag == "n":
            if n is not None or len(fields) != 1 or not fields[0].isdigit():
                raise InputError("malformed vertex-count line", lineno)
            n = int(fields[0])
            continue
        if n is None:
            raise InputError(f"{tag!r} line before 'n' line", lineno)
        if tag == "e":
            if len(fields) != 2 or not all(f.lstrip("-").isdigit() for f in fields):
                raise InputError("malformed edge line", lineno)
            u, v = int(fields[0]), int(fields[1])
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range", lineno)
            if u == v:
                raise InputError(f"self-loop at {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InputError(f"duplicate edge ({u}, {v})", lineno)
            seen.add(key)
            edges.append(key)
        elif tag == "w":
            bits = fields[0] if fields else ""
            if len(fields) > 1 or not _BITSTRING.match(bits):
                raise InputError("malformed weight line", lineno)
            if len(bits) != n:
                raise InputError(f"weight string has length {len(bits)}, expected {n}", lineno)
            weights = tuple(int(c) for c in bits)
        elif tag == "l":
            parts = rest.strip().split(None, 1)
            if len(parts) != 2 or not parts[0].isdigit():
                raise InputError("malformed label line", lineno)
            idx = int(parts[0])
            if not 0 <= idx < n:
                raise InputError(f"label index {idx} out of range", lineno)
            labels[idx] = parts[1]
        else:
            raise InputError(f"unknown line tag {tag!r}", lineno)
    if not header_seen:
        raise InputError("empty input: missing header")
    if n is None:
        raise InputError("missing 'n' line")
    g = Graph.from_edges(n, edges, [labels.get(v) for v in range(n)])
    return g, weights


# -- enumeration of small graphs -----------------------------------------------

def connected_graphs(n: int, max_degree: int) -> Iterator[Graph]:
    """All connected graphs on ``n`` vertices with maximum degree at most
    ``max_degree``, one per isomorphism class.

    Every such graph has a non-cut vertex, so each one arises from a smaller
    connected graph by attaching a new vertex to some non-empty set of
    unsaturated vertices.  Isomorphic duplicates are removed with networkx.
    """
    import networkx as nx
    from itertools import combinations

    if n < 1:
        return
    level = [nx.empty_graph(1)]
    for size in range(2, n + 1):
        buckets: dict[str, list] = {}
        nxt = []
        for h in level:
            open_vertices = [v for v in h if h.degree(v) < max_degree]
            for r in range(1, min(max_degree, len(open_vertices)) + 1):
                for nbrs in combinations(open_vertices, r):
                    g = h.copy()
                    g.add_node(size - 1)
                    g.add_edges_from((size - 1, u) for u in nbrs)
                    key = nx.weisfeiler_lehman_graph_hash(g, iterations=3)
                    bucket = buckets.setdefault(key, [])
                    if any(nx.is_isomorphic(g, other) for other in bucket):
                        continue
                    bucket.append(g)
                    nxt.append(g)
        level = nxt
    for g in level:
        yield Graph.from_edges(n, g.edges())
