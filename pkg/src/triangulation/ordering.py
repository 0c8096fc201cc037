"""
Global basis ordering of the truncated vertex set.

Vertices are grouped in blocks B(M, N): layer-M vertices whose rafter shell
is N, i.e. (N-1) < |x|_inf <= N (shell 1 also holds the origin). Blocks run
along anti-diagonals, B(M, N) -> B(M+1, N-1) while N > 1, else
B(0, M+N+1); inside a block vertices are lexicographic by coordinates.

Indices are computed by counting lattice points in boxes, never by listing
the window, so large truncations stay cheap.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from ..errors import BasisConfigError, VertexError
from .freudenthal import enumerate_vertices
from .lattice import LatticeVertex, TriangulationConfig, check_basis_vertex

Interval = Tuple[int, int]

log = logger.bind(module="ordering")


# ----------------------------------------------------------------------
# Lattice-point counting
# ----------------------------------------------------------------------

def _find(parent: List[int], i: int) -> int:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def _condense(d: int, relations, equalities) -> Tuple[List[List[int]], List[Tuple[int, int]]]:
    """Merge equality classes and order cycles into single classes; return members and class edges."""
    parent = list(range(d))
    for i, j in equalities:
        a, b = _find(parent, i), _find(parent, j)
        if a != b:
            parent[b] = a

    while True:
        roots = sorted({_find(parent, i) for i in range(d)})
        idx = {r: c for c, r in enumerate(roots)}
        edges = {(idx[_find(parent, i)], idx[_find(parent, j)]) for i, j in relations}
        edges = {(a, b) for a, b in edges if a != b}
        cycle = _find_cycle(len(roots), edges)
        if cycle is None:
            break
        head = roots[cycle[0]]
        for c in cycle[1:]:
            r = roots[c]
            parent[_find(parent, r)] = _find(parent, head)

    members: List[List[int]] = [[] for _ in roots]
    for i in range(d):
        members[idx[_find(parent, i)]].append(i)
    return members, sorted(edges)


def _find_cycle(n: int, edges) -> Optional[List[int]]:
    succ: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        succ[a].append(b)
    state = [0] * n
    stack: List[int] = []

    def visit(u: int) -> Optional[List[int]]:
        state[u] = 1
        stack.append(u)
        for w in succ[u]:
            if state[w] == 1:
                return stack[stack.index(w):]
            if state[w] == 0:
                found = visit(w)
                if found:
                    return found
        state[u] = 2
        stack.pop()
        return None

    for u in range(n):
        if state[u] == 0:
            found = visit(u)
            if found:
                return found
    return None


def _topological(nodes: Sequence[int], edges) -> List[int]:
    """Topological order that visits a class's successors as early as possible."""
    indeg = {u: 0 for u in nodes}
    succ: Dict[int, List[int]] = {u: [] for u in nodes}
    for a, b in edges:
        succ[a].append(b)
        indeg[b] += 1
    ready = sorted((u for u in nodes if indeg[u] == 0), reverse=True)
    out = []
    while ready:
        u = ready.pop()
        out.append(u)
        for w in sorted(succ[u], reverse=True):
            indeg[w] -= 1
            if indeg[w] == 0:
                ready.append(w)
    return out


def _components(n: int, edges) -> List[List[int]]:
    parent = list(range(n))
    for a, b in edges:
        ra, rb = _find(parent, a), _find(parent, b)
        if ra != rb:
            parent[rb] = ra
    groups: Dict[int, List[int]] = {}
    for u in range(n):
        groups.setdefault(_find(parent, u), []).append(u)
    return list(groups.values())


def _count_component(lo: List[int], hi: List[int], nodes: List[int], edges) -> int:
    order = _topological(nodes, [(a, b) for a, b in edges if a in nodes])
    pos = {c: p for p, c in enumerate(order)}
    n = len(order)
    top = [hi[c] for c in order]
    succ: List[List[int]] = [[] for _ in range(n)]
    for a, b in edges:
        if a in pos:
            succ[pos[a]].append(pos[b])

    @lru_cache(maxsize=None)
    def rest(t: int, bounds: Tuple[int, ...]) -> int:
        # bounds[s - t] is the current lower bound of class s >= t
        lb = bounds[0]
        if lb > top[t]:
            return 0
        if t == n - 1:
            return top[t] - lb + 1
        if t == n - 2:
            values = np.arange(lb, top[t] + 1, dtype=np.int64)
            last = np.full(values.shape, bounds[1], dtype=np.int64)
            if (n - 1) in succ[t]:
                last = np.maximum(last, values)
            return int(np.clip(top[n - 1] - last + 1, 0, None).sum())
        total = 0
        tail = list(bounds[1:])
        for v in range(lb, top[t] + 1):
            nxt = list(tail)
            for s in succ[t]:
                if v > nxt[s - t - 1]:
                    nxt[s - t - 1] = v
            total += rest(t + 1, tuple(nxt))
        return total

    return rest(0, tuple(lo[c] for c in order))


def count_box(
    intervals: Sequence[Interval],
    relations: Sequence[Tuple[int, int]],
    equalities: Sequence[Tuple[int, int]] = (),
) -> int:
    """Number of integer k with lo_i <= k_i <= hi_i, k_i <= k_j per relation and k_i = k_j per equality.

    Indices are 0-based. Independent groups of coordinates are counted separately and multiplied.
    """
    d = len(intervals)
    if d == 0:
        return 1
    members, edges = _condense(d, relations, equalities)
    n = len(members)
    lo = [max(intervals[i][0] for i in m) for m in members]
    hi = [min(intervals[i][1] for i in m) for m in members]
    if any(a > b for a, b in zip(lo, hi)):
        return 0
    total = 1
    for nodes in _components(n, edges):
        total *= _count_component(lo, hi, nodes, edges)
        if total == 0:
            break
    return total


def coarsen(intervals: Sequence[Interval], z: int) -> List[Interval]:
    """Intervals of k' such that z * k' lies in the given intervals."""
    return [(-((-a) // z), b // z) for a, b in intervals]


# ----------------------------------------------------------------------
# Ordering
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    layer: int
    shell: int
    size: int
    offset: int


class BasisOrdering:
    """Bijection between canonical truncated vertices and 0-based basis indices."""

    def __init__(self, config: TriangulationConfig, max_layer: int, rafter_radius: int):
        if max_layer < 0:
            raise BasisConfigError(f"max_layer must be nonnegative, got {max_layer}")
        if rafter_radius < 1:
            raise BasisConfigError(f"rafter radius must be at least 1, got {rafter_radius}")
        self.config = config
        self.max_layer = int(max_layer)
        self.rafter_radius = int(rafter_radius)
        self.logger = logger.bind(module="BasisOrdering")

        pair = config.pair
        self._relations = pair.relation_indices
        self._essential = pair.essential_indices
        self._eq_subsets = [
            subset for r in range(len(self._essential) + 1) for subset in combinations(self._essential, r)
        ]
        self._count_cache: Dict[Tuple[Interval, ...], int] = {}

        self.blocks: List[Block] = []
        self._block_at: Dict[Tuple[int, int], Block] = {}
        offset = 0
        for m, s in self.block_sequence():
            size = self._shell_count(m, s, None)
            block = Block(m, s, size, offset)
            self.blocks.append(block)
            self._block_at[(m, s)] = block
            offset += size
            self.logger.debug(f"block B({m},{s}) size={size} offset={block.offset}")
        self.size = offset

    # -- block layout -----------------------------------------------------

    def block_sequence(self) -> Iterator[Tuple[int, int]]:
        """(M, N) blocks in basis order, restricted to M <= max_layer and N <= rafter_radius."""
        for diagonal in range(1, self.max_layer + self.rafter_radius + 1):
            for m in range(0, diagonal):
                s = diagonal - m
                if m <= self.max_layer and s <= self.rafter_radius:
                    yield m, s

    def block(self, layer: int, shell: int) -> Block:
        try:
            return self._block_at[(layer, shell)]
        except KeyError:
            raise VertexError(f"block B({layer},{shell}) is outside the truncation") from None

    def layer_count(self, layer: int) -> int:
        return sum(b.size for b in self.blocks if b.layer == layer)

    def layer_counts(self) -> List[int]:
        return [self.layer_count(m) for m in range(self.max_layer + 1)]

    # -- counting ---------------------------------------------------------

    def _count_off_A(self, intervals: Sequence[Interval]) -> int:
        key = tuple(intervals)
        hit = self._count_cache.get(key)
        if hit is not None:
            return hit
        total = 0
        for subset in self._eq_subsets:
            c = count_box(intervals, self._relations, subset)
            total += -c if len(subset) % 2 else c
        self._count_cache[key] = total
        return total

    def _count_canonical(self, layer: int, intervals: Sequence[Interval]) -> int:
        if any(a > b for a, b in intervals):
            return 0
        total = self._count_off_A(intervals)
        if layer > 0:
            total -= self._count_off_A(coarsen(intervals, self.config.z))
        return total

    def _shell_count(self, layer: int, shell: int, region: Optional[Sequence[Interval]]) -> int:
        """Canonical layer vertices in the rafter shell, optionally intersected with a box region."""
        d = self.config.dimension
        scale = self.config.scale(layer)
        outer = [(-shell * scale, shell * scale)] * d
        inner = [(-(shell - 1) * scale, (shell - 1) * scale)] * d
        if region is not None:
            outer = [(max(a, c), min(b, e)) for (a, b), (c, e) in zip(outer, region)]
            inner = [(max(a, c), min(b, e)) for (a, b), (c, e) in zip(inner, region)]
        return self._count_canonical(layer, outer) - self._count_canonical(layer, inner)

    def _prefix_region(self, prefix: Sequence[int], upper: int, bound: int) -> List[Interval]:
        d = self.config.dimension
        region = [(c, c) for c in prefix]
        region.append((-bound, upper))
        region.extend([(-bound, bound)] * (d - len(region)))
        return region

    def _rank_in_block(self, vertex: LatticeVertex, shell: int) -> int:
        bound = shell * self.config.scale(vertex.layer)
        k = vertex.coords
        rank = 0
        for t in range(len(k)):
            region = self._prefix_region(k[:t], k[t] - 1, bound)
            rank += self._shell_count(vertex.layer, shell, region)
        return rank

    # -- public API -------------------------------------------------------

    def basis_index(self, vertex: LatticeVertex) -> int:
        check_basis_vertex(self.config, vertex)
        shell = vertex.rafter(self.config.z)
        if vertex.layer > self.max_layer or shell > self.rafter_radius:
            raise VertexError(
                f"vertex {vertex} (layer {vertex.layer}, rafter {shell}) is outside the truncation "
                f"(max_layer={self.max_layer}, rafter_radius={self.rafter_radius})"
            )
        return self.block(vertex.layer, shell).offset + self._rank_in_block(vertex, shell)

    def contains(self, vertex: LatticeVertex) -> bool:
        return vertex.layer <= self.max_layer and vertex.rafter(self.config.z) <= self.rafter_radius

    def vertex_at(self, index: int) -> LatticeVertex:
        if not 0 <= index < self.size:
            raise VertexError(f"basis index {index} is outside [0, {self.size})")
        block = self._locate_block(int(index))
        rank = int(index) - block.offset
        bound = block.shell * self.config.scale(block.layer)
        prefix: List[int] = []
        d = self.config.dimension
        for _ in range(d):
            lo, hi = -bound, bound
            # smallest v with count(prefix, <= v) > rank
            while lo < hi:
                mid = (lo + hi) // 2
                if self._shell_count(block.layer, block.shell, self._prefix_region(prefix, mid, bound)) > rank:
                    hi = mid
                else:
                    lo = mid + 1
            rank -= self._shell_count(block.layer, block.shell, self._prefix_region(prefix, lo - 1, bound))
            prefix.append(lo)
        return LatticeVertex(block.layer, tuple(prefix))

    def _locate_block(self, index: int) -> Block:
        lo, hi = 0, len(self.blocks) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.blocks[mid].offset <= index:
                lo = mid
            else:
                hi = mid - 1
        while self.blocks[lo].size == 0 or index >= self.blocks[lo].offset + self.blocks[lo].size:
            lo += 1
        return self.blocks[lo]

    def iter_block(self, layer: int, shell: int) -> Iterator[LatticeVertex]:
        """Vertices of one block in lexicographic order (enumerates the shell)."""
        z = self.config.z
        for v in enumerate_vertices(self.config, layer, shell):
            if v.rafter(z) == shell:
                yield v

    def iter_vertices(self) -> Iterator[LatticeVertex]:
        """All truncated vertices in basis order."""
        for block in self.blocks:
            if block.size:
                yield from self.iter_block(block.layer, block.shell)

    def describe(self) -> Dict[str, object]:
        return {
            "max_layer": self.max_layer,
            "rafter_radius": self.rafter_radius,
            "size": self.size,
            "layer_counts": self.layer_counts(),
            "blocks": [{"layer": b.layer, "shell": b.shell, "size": b.size, "offset": b.offset} for b in self.blocks],
        }
