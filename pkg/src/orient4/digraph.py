"""Orientations of multiplied trees: storage, metrics, duality, extension.

An `Orientation` stores one direction bit per canonical edge of the
multiplied graph (bit 0: as listed by `multiplied_edges`, bit 1: reversed)
plus derived adjacency.  All distances are unit-length BFS.  `diameter`
returns the distinguished value `UNREACHABLE` (math.inf) when some ordered
pair has no path, so non-strong orientations can be ranked cheaply.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .sperner import UsageError
from .tree import (TreeSpec, VertexId, multiplied_edges, multiplied_vertices,
                   require_valid)

UNREACHABLE = math.inf


class ExtensionError(UsageError):
    """The short-cycle hypothesis of the copy-mimicking extension fails."""


@dataclass(frozen=True)
class Orientation:
    """A direction for every multiplied edge of `spec`."""

    spec: TreeSpec
    bits: tuple

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        edges = multiplied_edges(self.spec)
        if len(self.bits) != len(edges):
            raise UsageError(
                f"need {len(edges)} direction bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise UsageError("direction bits must be 0 or 1")

    # -- derived structure, cached lazily ------------------------------------

    def _layout(self):
        cache = getattr(self, "_layout_cache", None)
        if cache is None:
            verts = multiplied_vertices(self.spec)
            index = {v: i for i, v in enumerate(verts)}
            edges = multiplied_edges(self.spec)
            out = [[] for _ in verts]
            inn = [[] for _ in verts]
            for (u, v), b in zip(edges, self.bits):
                a, c = (index[u], index[v]) if b == 0 else (index[v], index[u])
                out[a].append(c)
                inn[c].append(a)
            cache = (verts, index, edges, tuple(map(tuple, out)),
                     tuple(map(tuple, inn)))
            object.__setattr__(self, "_layout_cache", cache)
        return cache

    @property
    def vertices(self):
        return self._layout()[0]

    def vertex_index(self, v: VertexId) -> int:
        try:
            return self._layout()[1][v]
        except KeyError:
            raise UsageError(f"vertex {v} not in the multiplied graph") from None

    @property
    def edges(self):
        return self._layout()[2]

    def arcs(self):
        """Directed arcs as (tail, head) VertexId pairs, canonical edge order."""
        return [((u, v) if b == 0 else (v, u))
                for (u, v), b in zip(self.edges, self.bits)]

    def out_neighbors(self, v: VertexId):
        verts, _, _, out, _ = self._layout()
        return [verts[i] for i in out[self.vertex_index(v)]]

    def in_neighbors(self, v: VertexId):
        verts, _, _, _, inn = self._layout()
        return [verts[i] for i in inn[self.vertex_index(v)]]


def from_arcs(spec: TreeSpec, arcs) -> Orientation:
    """Build an orientation from (tail, head) pairs covering every edge once."""
    edges = multiplied_edges(spec)
    pos = {}
    for j, (u, v) in enumerate(edges):
        pos[(u, v)] = (j, 0)
        pos[(v, u)] = (j, 1)
    bits = [None] * len(edges)
    for (t, h) in arcs:
        if (t, h) not in pos:
            raise UsageError(f"arc {t}->{h} is not an edge of the multiplied graph")
        j, b = pos[(t, h)]
        if bits[j] is not None:
            raise UsageError(f"edge {edges[j][0]} -- {edges[j][1]} assigned twice")
        bits[j] = b
    missing = [edges[j] for j, b in enumerate(bits) if b is None]
    if missing:
        u, v = missing[0]
        raise UsageError(f"{len(missing)} edge(s) left unoriented, e.g. {u} -- {v}")
    return Orientation(spec, tuple(bits))


# ============================================================================
# Metrics
# ============================================================================

def _bfs_dists(adj, src, n):
    dist = [-1] * n
    dist[src] = 0
    q = deque([src])
    while q:
        u = q.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                q.append(w)
    return dist


def eccentricities(d: Orientation):
    """Out-eccentricity per vertex; UNREACHABLE where some vertex is missed."""
    _, _, _, out, _ = d._layout()
    n = len(out)
    eccs = []
    for v in range(n):
        dist = _bfs_dists(out, v, n)
        eccs.append(UNREACHABLE if -1 in dist else max(dist))
    return eccs


def diameter(d: Orientation):
    """Max over all ordered pairs of BFS distance; UNREACHABLE if any pair
    has no path."""
    best = 0
    for e in eccentricities(d):
        if e == UNREACHABLE:
            return UNREACHABLE
        best = max(best, e)
    return best


def distance(d: Orientation, u: VertexId, v: VertexId):
    _, _, _, out, _ = d._layout()
    dist = _bfs_dists(out, d.vertex_index(u), len(out))
    dv = dist[d.vertex_index(v)]
    return UNREACHABLE if dv < 0 else dv


def is_strong(d: Orientation) -> bool:
    """One forward and one backward BFS from vertex 0 must reach everything."""
    _, _, _, out, inn = d._layout()
    n = len(out)
    if n == 0:
        return True
    return -1 not in _bfs_dists(out, 0, n) and -1 not in _bfs_dists(inn, 0, n)


def reverse(d: Orientation) -> Orientation:
    """Flip every arc."""
    return Orientation(d.spec, tuple(1 - b for b in d.bits))


def shortest_cycle_lengths(d: Orientation):
    """For each vertex, the length of a shortest directed cycle through it
    (UNREACHABLE if none)."""
    _, _, _, out, inn = d._layout()
    n = len(out)
    lengths = []
    for v in range(n):
        dist = _bfs_dists(out, v, n)
        best = UNREACHABLE
        for w in inn[v]:
            if dist[w] >= 0:
                best = min(best, dist[w] + 1)
        lengths.append(best)
    return lengths


# ============================================================================
# Extension: new copies mimic existing ones
# ============================================================================

def _check_same_shape(small: TreeSpec, big: TreeSpec):
    if small.deg_c != big.deg_c:
        raise UsageError("branch counts differ")
    for i in range(1, small.deg_c + 1):
        if small.branch(i).leaf_count != big.branch(i).leaf_count:
            raise UsageError(f"leaf counts differ on branch {i}")
    if small.s > big.s:
        raise UsageError("center multiplicity would shrink")
    for i in range(1, small.deg_c + 1):
        a, b = small.branch(i), big.branch(i)
        if a.multiplicity > b.multiplicity:
            raise UsageError(f"branch {i} multiplicity would shrink")
        for alpha in range(a.leaf_count):
            if a.leaf_multiplicities[alpha] > b.leaf_multiplicities[alpha]:
                raise UsageError(f"leaf {alpha + 1} of branch {i} would shrink")


def extend_orientation(d: Orientation, target: TreeSpec, m: int) -> Orientation:
    """Lift `d` to larger multiplicities; every new copy mimics a donor copy.

    Valid when every vertex of `d` lies on a directed cycle of length <= m
    and `d` is strong; the result's diameter is then at most
    max(m, diameter(d)).  Donors rotate round-robin over the original copies
    of the same tree vertex.
    """
    require_valid(target)
    _check_same_shape(d.spec, target)
    if not is_strong(d):
        raise ExtensionError("extension lemma inapplicable: base not strong")
    cyc = shortest_cycle_lengths(d)
    worst = max(cyc)
    if worst == UNREACHABLE or worst > m:
        raise ExtensionError(
            f"extension lemma inapplicable: a vertex's shortest cycle is "
            f"{worst}, exceeds {m}")

    small = d.spec

    def donor(v: VertexId) -> VertexId:
        if v.role == "c":
            old = small.s
        elif v.role == "b":
            old = small.branch(v.i).multiplicity
        else:
            old = small.branch(v.i).leaf_multiplicities[v.alpha - 1]
        if v.copy <= old:
            return v
        return VertexId(v.role, (v.copy - 1) % old + 1, v.i, v.alpha)

    direction = {}
    for (u, v), b in zip(multiplied_edges(small), d.bits):
        direction[(u, v)] = b
        direction[(v, u)] = 1 - b

    bits = []
    for (u, v) in multiplied_edges(target):
        bits.append(direction[(donor(u), donor(v))])
    return Orientation(target, tuple(bits))


# ============================================================================
# Projections toward an adjacent role class
# ============================================================================

def _toward_vertices(d: Orientation, v: VertexId, toward: VertexId):
    """All copies of the `toward` role if it is adjacent to v's role."""
    spec = d.spec
    if v.role == "b" and toward.role == "c":
        return [VertexId("c", x) for x in range(1, spec.s + 1)]
    if v.role == "c" and toward.role == "b":
        mult = spec.branch(toward.i).multiplicity
        return [VertexId("b", x, toward.i) for x in range(1, mult + 1)]
    if v.role == "l" and toward.role == "b" and toward.i == v.i:
        mult = spec.branch(v.i).multiplicity
        return [VertexId("b", x, v.i) for x in range(1, mult + 1)]
    if v.role == "b" and toward.role == "l" and toward.i == v.i:
        lm = spec.branch(v.i).leaf_multiplicities[toward.alpha - 1]
        return [VertexId("l", x, v.i, toward.alpha) for x in range(1, lm + 1)]
    raise UsageError(f"roles of {v} and {toward} are not adjacent")


def out_projection(d: Orientation, v: VertexId, toward: VertexId) -> frozenset:
    """Out-neighbors of v among the copies of the `toward` role."""
    cand = set(_toward_vertices(d, v, toward))
    return frozenset(w for w in d.out_neighbors(v) if w in cand)


def in_projection(d: Orientation, v: VertexId, toward: VertexId) -> frozenset:
    """In-neighbors of v among the copies of the `toward` role."""
    cand = set(_toward_vertices(d, v, toward))
    return frozenset(w for w in d.in_neighbors(v) if w in cand)


def center_out_set(d: Orientation, v: VertexId) -> frozenset:
    """Center copy indices that v points to."""
    return frozenset(w.copy for w in out_projection(d, v, VertexId("c", 1)))


def center_in_set(d: Orientation, v: VertexId) -> frozenset:
    """Center copy indices that point to v."""
    return frozenset(w.copy for w in in_projection(d, v, VertexId("c", 1)))


# ============================================================================
# Text formats
# ============================================================================

def to_edge_list(d: Orientation) -> str:
    """One arc per line, `tail -> head`, canonical edge order."""
    return "\n".join(f"{t} -> {h}" for t, h in d.arcs()) + "\n"


def from_edge_list(spec: TreeSpec, text: str) -> Orientation:
    arcs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            tail, head = (part.strip() for part in line.split("->"))
        except ValueError:
            raise UsageError(f"line {lineno}: expected 'tail -> head'") from None
        arcs.append((VertexId.parse(tail), VertexId.parse(head)))
    return from_arcs(spec, arcs)


def to_dot(d: Orientation) -> str:
    lines = ["digraph orientation {"]
    for v in d.vertices:
        lines.append(f'  "{v}";')
    for t, h in d.arcs():
        lines.append(f'  "{t}" -> "{h}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
