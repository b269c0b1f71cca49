"""Bitset-backed simple graphs on at most 64 vertices.

One machine word per adjacency row: neighbourhoods are Python ints used as
bitmasks, so a common neighbourhood is a chain of ``&`` and a degree is
``int.bit_count()``. Graphs are immutable values; anything that looks like
an edit returns a new graph, which makes sharing across worker processes
safe.

The module also provides the two serialization formats used across the
project (graph6 strings and a small adjacency-list text format), the
complete multipartite pattern type that describes both counted and
forbidden subgraphs, and isomorphism machinery: exact canonical forms for
graphs up to CANONICAL_EXACT_MAX vertices, invariant digests above that
(collisions there must be re-checked with `are_isomorphic`).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

#: canonical_form is an exact isomorphism invariant up to this many vertices;
#: larger graphs get an invariant digest usable only as a hash.
CANONICAL_EXACT_MAX = 16


@dataclass(frozen=True, slots=True)
class Graph:
    """Immutable simple undirected graph.

    `adj[v]` is the neighbourhood of `v` as a bitmask. Invariants (checked
    on construction): symmetric, no self-loops, no bits at positions >= n.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count does not match vertex count")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"adjacency row {v} has bits beyond vertex range")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
        for v in range(self.n):
            for u in range(v):
                if (self.adj[v] >> u & 1) != (self.adj[u] >> v & 1):
                    raise ValueError(f"adjacency not symmetric at ({u},{v})")

    @classmethod
    def _unchecked(cls, n: int, adj: tuple[int, ...]) -> "Graph":
        # Internal fast path for structurally valid rows (relabelings,
        # vertex augmentation); skips __post_init__ validation.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> set[int]:
        return set(_bits(self.adj[v]))

    def edges(self) -> Iterator[tuple[int, int]]:
        for v in range(self.n):
            row = self.adj[v] >> (v + 1) << (v + 1)
            for u in _bits(row):
                yield (v, u)

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((r.bit_count() for r in self.adj), reverse=True))

    def with_vertex(self, neighbors_mask: int) -> "Graph":
        """New graph with one extra vertex adjacent to `neighbors_mask`."""
        if self.n + 1 > MAX_VERTICES:
            raise ValueError("vertex cap exceeded")
        if neighbors_mask >> self.n:
            raise ValueError("neighbor mask addresses nonexistent vertices")
        bit = 1 << self.n
        rows = tuple(
            row | bit if neighbors_mask >> v & 1 else row
            for v, row in enumerate(self.adj)
        )
        return Graph._unchecked(self.n + 1, rows + (neighbors_mask,))

    def toggled(self, u: int, v: int) -> "Graph":
        """New graph with edge (u,v) flipped."""
        if u == v:
            raise ValueError("self-loop")
        rows = list(self.adj)
        rows[u] ^= 1 << v
        rows[v] ^= 1 << u
        return Graph._unchecked(self.n, tuple(rows))

    def relabeled(self, perm: Sequence[int]) -> "Graph":
        """New graph where old vertex v becomes perm[v]."""
        rows = [0] * self.n
        for v in range(self.n):
            row = 0
            old = self.adj[v]
            for u in _bits(old):
                row |= 1 << perm[u]
            rows[perm[v]] = row
        return Graph._unchecked(self.n, tuple(rows))


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from an edge list, applying symmetric closure.

    Distinct input errors: vertex count out of range, endpoint out of
    range, self-loop.
    """
    if not isinstance(n, int) or not 1 <= n <= MAX_VERTICES:
        raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {n}")
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge endpoint out of range: ({u},{v}) with n={n}")
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# small graph zoo


def empty_graph(n: int) -> Graph:
    return make_graph(n, [])


def complete_graph(n: int) -> Graph:
    return make_graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return make_graph(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_multipartite_graph(parts: Sequence[int]) -> Graph:
    """Complete multipartite graph; part i occupies a contiguous index block,
    blocks in the order given."""
    n = sum(parts)
    bounds = []
    start = 0
    for p in parts:
        bounds.append((start, start + p))
        start += p
    edges = []
    for i, (a0, a1) in enumerate(bounds):
        for b0, b1 in bounds[i + 1:]:
            edges.extend((u, v) for u in range(a0, a1) for v in range(b0, b1))
    return make_graph(n, edges)


def complete_bipartite_graph(m: int, k: int) -> Graph:
    return complete_multipartite_graph([m, k])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner)


# ---------------------------------------------------------------------------
# complete multipartite patterns


@dataclass(frozen=True, slots=True)
class MultipartitePattern:
    """Part sizes of a complete multipartite graph, sorted ascending.

    r=2 covers both counted K_{a,b} and forbidden K_{s,t} shapes.
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("pattern needs at least 2 parts")
        if any(p < 1 for p in self.parts):
            raise ValueError("all parts must be positive")
        if list(self.parts) != sorted(self.parts):
            raise ValueError("parts must be sorted ascending")
        if sum(self.parts) > MAX_VERTICES:
            raise ValueError("pattern too large")

    @classmethod
    def of(cls, *parts: int) -> "MultipartitePattern":
        return cls(tuple(sorted(parts)))

    @classmethod
    def parse(cls, text: str) -> "MultipartitePattern":
        try:
            sizes = [int(tok) for tok in text.split(",")]
        except ValueError as exc:
            raise ValueError(f"bad pattern {text!r}: expected comma-separated integers") from exc
        return cls.of(*sizes)

    @property
    def r(self) -> int:
        return len(self.parts)

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def edge_count(self) -> int:
        t = self.total
        return (t * t - sum(p * p for p in self.parts)) // 2

    def as_graph(self) -> Graph:
        return complete_multipartite_graph(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)


def as_pattern(p: "MultipartitePattern | Sequence[int]") -> MultipartitePattern:
    if isinstance(p, MultipartitePattern):
        return p
    return MultipartitePattern.of(*p)


# ---------------------------------------------------------------------------
# neighbourhoods and containment


def common_neighbors_mask(g: Graph, vertex_mask: int) -> int:
    """Intersection of adjacency rows over the vertices in `vertex_mask`."""
    inter = (1 << g.n) - 1
    for v in _bits(vertex_mask):
        inter &= g.adj[v]
        if not inter:
            break
    return inter


def common_neighbors(g: Graph, vertices: Iterable[int]) -> set[int]:
    """Common neighbourhood of a nonempty vertex set.

    Disjoint from the input set by construction (no self-loops).
    """
    vs = list(vertices)
    if not vs:
        raise ValueError("common_neighbors needs a nonempty vertex set")
    for v in vs:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} out of range")
    return set(_bits(common_neighbors_mask(g, _mask_of(vs))))


def contains_complete_bipartite(g: Graph, s: int, t: int) -> bool:
    """True iff some s-subset of vertices has at least t common neighbours,
    i.e. G contains K_{s,t} as a (not necessarily induced) subgraph."""
    if not 1 <= s <= t:
        raise ValueError("need 1 <= s <= t")
    if s + t > g.n:
        return False
    adj = g.adj
    n = g.n

    def rec(start: int, left: int, inter: int) -> bool:
        if inter.bit_count() < t + left:
            # every further intersection only shrinks; the s-set itself is
            # disjoint from the common neighbourhood, so demand t survivors
            # after removing up to `left` more picks is conservative enough
            if inter.bit_count() < t:
                return False
        if left == 0:
            return inter.bit_count() >= t
        for v in range(start, n - left + 1):
            if rec(v + 1, left - 1, inter & adj[v]):
                return True
        return False

    return rec(0, s, (1 << n) - 1)


def contains_spanning_split(g: Graph, s: int, closed: bool = False) -> bool:
    """True iff s-1 vertices are each adjacent to all other n-s+1 vertices
    (the spanning K_{s-1,n-s+1}); with closed=True those s-1 vertices must
    also be pairwise adjacent (spanning complete split graph)."""
    if not 2 <= s <= g.n:
        raise ValueError("need 2 <= s <= n")
    k = s - 1
    full = (1 << g.n) - 1
    need = g.n - k
    cands = [v for v in range(g.n) if g.adj[v].bit_count() >= need]
    if len(cands) < k:
        return False
    for combo in combinations(cands, k):
        dmask = _mask_of(combo)
        if all(g.adj[v] | dmask | (1 << v) == full for v in combo):
            if not closed:
                return True
            if all(g.adj[v] & dmask == dmask ^ (1 << v) for v in combo):
                return True
    return False


# ---------------------------------------------------------------------------
# canonical forms


def _refinement_colors(g: Graph) -> list[int]:
    """Iterated neighbourhood refinement; returns label-independent dense
    color ids (vertices in the same orbit always share a color)."""
    n = g.n
    nbrs = [list(_bits(g.adj[v])) for v in range(n)]
    colors = [len(nbrs[v]) for v in range(n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in nbrs[v])))
            for v in range(n)
        ]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def _swap_is_automorphism(g: Graph, v: int, w: int) -> bool:
    # transposition (v w) preserves adjacency iff the rows agree outside {v,w}
    m = (1 << v) | (1 << w)
    return (g.adj[v] & ~m) == (g.adj[w] & ~m)


def _canonical_ordering(g: Graph) -> list[int]:
    """Vertex order minimizing the column-wise upper-triangle bitstring,
    restricted to orders listing refinement classes in canonical order.

    Branch and bound with prefix pruning; interchangeable-vertex pruning
    collapses transposition-equivalent candidates.
    """
    n = g.n
    if n <= 1:
        return list(range(n))
    adj = g.adj
    colors = _refinement_colors(g)
    pos_color = sorted(colors)
    order = [0] * n
    cur = [0] * n
    best_cols: list[int] | None = None
    best_order: list[int] | None = None

    def extend(pos: int, used: int, tight: bool) -> None:
        nonlocal best_cols, best_order
        if pos == n:
            if best_cols is None or not tight:
                best_cols = cur[:]
                best_order = order[:]
            return
        want = pos_color[pos]
        cands: list[tuple[int, int]] = []
        for v in range(n):
            if used >> v & 1 or colors[v] != want:
                continue
            row = adj[v]
            col = 0
            for u in order[:pos]:
                col = (col << 1) | (row >> u & 1)
            cands.append((col, v))
        cands.sort()
        for i, (col, v) in enumerate(cands):
            t = tight
            if t and best_cols is not None:
                ref = best_cols[pos]
                if col > ref:
                    break  # candidates sorted: the rest are no better
                if col < ref:
                    t = False
            if any(
                c == col and _swap_is_automorphism(g, w, v)
                for c, w in cands[:i]
            ):
                continue  # interchangeable with an already-tried candidate
            cur[pos] = col
            order[pos] = v
            extend(pos + 1, used | (1 << v), t)

    extend(0, 0, True)
    assert best_order is not None
    return best_order


def _pack_columns(cols: Sequence[int], n: int) -> bytes:
    bits: list[int] = []
    for pos in range(n):
        width = pos
        col = cols[pos]
        for i in range(width - 1, -1, -1):
            bits.append(col >> i & 1)
    out = bytearray()
    for i in range(0, len(bits), 8):
        byte = 0
        for b in bits[i:i + 8]:
            byte = byte << 1 | b
        byte <<= (8 - len(bits[i:i + 8])) % 8
        out.append(byte)
    return bytes(out)


def _invariant_digest(g: Graph) -> bytes:
    colors = _refinement_colors(g)
    nbrs = [sorted(colors[u] for u in _bits(g.adj[v])) for v in range(g.n)]
    profile = sorted((colors[v], tuple(nbrs[v])) for v in range(g.n))
    blob = repr((g.n, g.num_edges, profile)).encode()
    return hashlib.sha256(blob).digest()[:16]


def canonicalize(g: Graph) -> tuple[Graph, bytes]:
    """Canonical representative and canonical byte form.

    Exact (equal bytes iff isomorphic) for n <= CANONICAL_EXACT_MAX. Above
    that the form is an invariant digest: equal bytes mean "possibly
    isomorphic" and must be confirmed with are_isomorphic.
    """
    if g.n <= CANONICAL_EXACT_MAX:
        order = _canonical_ordering(g)
        inverse = [0] * g.n
        for pos, v in enumerate(order):
            inverse[v] = pos
        rep = g.relabeled(inverse)
        cols = []
        for pos in range(g.n):
            col = 0
            row = rep.adj[pos]
            for u in range(pos):
                col = (col << 1) | (row >> u & 1)
            cols.append(col)
        return rep, b"C" + bytes([g.n]) + _pack_columns(cols, g.n)
    return g, b"H" + bytes([g.n]) + _invariant_digest(g)


def canonical_form(g: Graph) -> bytes:
    return canonicalize(g)[1]


def canonical_relabel(g: Graph) -> Graph:
    """The canonical representative of g's isomorphism class (n <= 16)."""
    if g.n > CANONICAL_EXACT_MAX:
        raise ValueError(f"exact canonical labeling capped at {CANONICAL_EXACT_MAX} vertices")
    return canonicalize(g)[0]


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Explicit isomorphism test; exact at any size."""
    if g.n != h.n or g.num_edges != h.num_edges:
        return False
    if g.n <= CANONICAL_EXACT_MAX:
        return canonical_form(g) == canonical_form(h)
    cg, ch = _refinement_colors(g), _refinement_colors(h)
    if sorted(cg) != sorted(ch):
        return False
    n = g.n
    # order g's vertices by rarest color first to fail fast
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(ch[v], []).append(v)
    order = sorted(range(n), key=lambda v: (len(by_color.get(cg[v], ())), cg[v], v))
    mapping = [-1] * n
    used = [False] * n

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in by_color.get(cg[v], ()):
            if used[w]:
                continue
            ok = True
            for j in range(i):
                u = order[j]
                if (g.adj[v] >> u & 1) != (h.adj[w] >> mapping[u] & 1):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                if rec(i + 1):
                    return True
                used[w] = False
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# graph6


def graph6_encode(g: Graph) -> str:
    """Standard graph6: byte n+63, then the upper triangle read column-wise
    packed big-endian into 6-bit groups, each +63."""
    if g.n > 62:
        raise ValueError("graph6 encoding supports at most 62 vertices")
    chars = [chr(g.n + 63)]
    bits: list[int] = []
    for col in range(1, g.n):
        row_mask = g.adj[col]
        for row in range(col):
            bits.append(row_mask >> row & 1)
    for i in range(0, len(bits), 6):
        group = bits[i:i + 6]
        group += [0] * (6 - len(group))
        val = 0
        for b in group:
            val = val << 1 | b
        chars.append(chr(val + 63))
    return "".join(chars)


def graph6_decode(data: str | bytes) -> Graph:
    if isinstance(data, bytes):
        data = data.decode("ascii", errors="replace")
    data = data.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise ValueError("empty graph6 string")
    header = ord(data[0])
    if not 63 <= header <= 125:
        raise ValueError(f"malformed graph6 header byte {header} at position 0")
    n = header - 63
    if n == 0:
        raise ValueError("graph6 header encodes 0 vertices; graphs need at least 1")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[1:]
    if len(body) != need:
        raise ValueError(
            f"graph6 body length {len(body)} at position 1, expected {need} for n={n}"
        )
    bits: list[int] = []
    for pos, ch in enumerate(body, start=1):
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise ValueError(f"malformed graph6 byte {ord(ch)} at position {pos}")
        for i in range(5, -1, -1):
            bits.append(val >> i & 1)
    if any(bits[nbits:]):
        raise ValueError("graph6 trailing padding bits are nonzero")
    rows = [0] * n
    idx = 0
    for col in range(1, n):
        for row in range(col):
            if bits[idx]:
                rows[col] |= 1 << row
                rows[row] |= 1 << col
            idx += 1
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# adjacency-list text format ("n m" header, then one "u v" line per edge)


def parse_adjacency_text(text: str) -> Graph:
    lines = [ln for ln in (raw.strip() for raw in text.splitlines())
             if ln and not ln.startswith("#")]
    if not lines:
        raise ValueError("empty graph file")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"line 1: expected header 'n m', got {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise ValueError(f"line 1: non-integer header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ValueError(f"expected {m} edge lines, found {len(lines) - 1}")
    edges = []
    for i, ln in enumerate(lines[1:], start=2):
        toks = ln.split()
        if len(toks) != 2:
            raise ValueError(f"line {i}: expected 'u v', got {ln!r}")
        try:
            edges.append((int(toks[0]), int(toks[1])))
        except ValueError as exc:
            raise ValueError(f"line {i}: non-integer endpoint in {ln!r}") from exc
    return make_graph(n, edges)


def format_adjacency_text(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{min(u, v)} {max(u, v)}" for u, v in sorted(
        (min(u, v), max(u, v)) for u, v in g.edges()))
    return "\n".join(lines) + "\n"
