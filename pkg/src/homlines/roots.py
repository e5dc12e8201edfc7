"""Dynkin diagrams, Cartan matrices and positive-root enumeration.

Node numbering follows the usual conventions for the simple types: the
exceptional E diagrams carry the branch node as node 2, attached to node 4.
Arrows on multiple edges point at the short root, so B_n has short node n,
C_n has short nodes 1..n-1, F_4 has short nodes {3, 4} and G_2 has short
node 1.  The Cartan matrix uses A[i][j] = 2<a_i, a_j>/<a_i, a_i>, which puts
the entry -multiplicity on the short root's row.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import UnknownNode, UnsupportedType

Root = tuple[int, ...]

FAMILIES = "ABCDEFG"


def _check_supported(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }.get(family, False)
    if not ok:
        raise UnsupportedType(f"no simple type {family}{rank}")


@dataclass(frozen=True)
class DynkinDiagram:
    """A connected simple-type Dynkin diagram with nodes 1..rank."""

    family: str
    rank: int

    def __post_init__(self):
        _check_supported(self.family, self.rank)

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)

    def edges(self) -> dict[tuple[int, int], tuple[int, int | None]]:
        """Map (i, j) with i < j to (multiplicity, arrow target or None)."""
        f, n = self.family, self.rank
        out: dict[tuple[int, int], tuple[int, int | None]] = {}
        if f in "ABC":
            for i in range(1, n):
                out[(i, i + 1)] = (1, None)
            if f == "B" and n >= 2:
                out[(n - 1, n)] = (2, n)
            if f == "C" and n >= 2:
                out[(n - 1, n)] = (2, n - 1)
        elif f == "D":
            for i in range(1, n - 2):
                out[(i, i + 1)] = (1, None)
            out[(n - 2, n - 1)] = (1, None)
            out[(n - 2, n)] = (1, None)
        elif f == "E":
            chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
            for i, j in zip(chain, chain[1:]):
                out[(min(i, j), max(i, j))] = (1, None)
            out[(2, 4)] = (1, None)
        elif f == "F":
            out[(1, 2)] = (1, None)
            out[(2, 3)] = (2, 3)
            out[(3, 4)] = (1, None)
        elif f == "G":
            out[(1, 2)] = (3, 1)
        return out

    def short_nodes(self) -> frozenset[int]:
        f, n = self.family, self.rank
        if f == "B":
            return frozenset({n})
        if f == "C":
            return frozenset(range(1, n))
        if f == "F":
            return frozenset({3, 4})
        if f == "G":
            return frozenset({1})
        return frozenset()

    def is_short(self, i: int) -> bool:
        if i not in self.nodes:
            raise UnknownNode(f"node {i} not in {self.family}{self.rank}")
        return i in self.short_nodes()

    def neighbors(self, k: int) -> frozenset[int]:
        if k not in self.nodes:
            raise UnknownNode(f"node {k} not in {self.family}{self.rank}")
        out = set()
        for (i, j) in self.edges():
            if i == k:
                out.add(j)
            elif j == k:
                out.add(i)
        return frozenset(out)

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def build_diagram(family: str, rank: int) -> DynkinDiagram:
    """Construct the diagram of a supported simple type."""
    return DynkinDiagram(family, rank)


@lru_cache(maxsize=None)
def cartan_matrix(diagram: DynkinDiagram) -> tuple[tuple[int, ...], ...]:
    """Cartan matrix as nested tuples; entry (i, j) is row i-1, column j-1."""
    n = diagram.rank
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    for (i, j), (mult, _) in diagram.edges().items():
        # -mult sits on the short root's row across a multiple edge.
        if diagram.is_short(i) and not diagram.is_short(j):
            A[i - 1][j - 1], A[j - 1][i - 1] = -mult, -1
        elif diagram.is_short(j) and not diagram.is_short(i):
            A[i - 1][j - 1], A[j - 1][i - 1] = -1, -mult
        else:
            A[i - 1][j - 1] = A[j - 1][i - 1] = -1
    return tuple(tuple(row) for row in A)


@lru_cache(maxsize=None)
def positive_roots(diagram: DynkinDiagram) -> tuple[Root, ...]:
    """All positive roots, as coefficient vectors over the simple roots.

    Computed by closing the simple roots under the simple reflections
    s_i(b) = b - (sum_j b_j A[i][j]) e_i and keeping the vectors with
    nonnegative coefficients.  Returned sorted lexicographically.
    """
    n = diagram.rank
    A = cartan_matrix(diagram)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    found: set[Root] = set(simple)
    frontier: list[Root] = list(simple)
    while frontier:
        fresh: list[Root] = []
        for beta in frontier:
            for i in range(n):
                c = sum(beta[j] * A[i][j] for j in range(n) if beta[j])
                if not c:
                    continue
                image = list(beta)
                image[i] -= c
                if image[i] < 0:
                    continue
                root = tuple(image)
                if any(root) and root not in found:
                    found.add(root)
                    fresh.append(root)
        frontier = fresh
    return tuple(sorted(found))


@dataclass(frozen=True)
class Subdiagram:
    """A connected component relabelled onto a reference diagram."""

    diagram: DynkinDiagram
    relabel: Mapping[int, int]  # old node -> new node

    def old_nodes(self) -> tuple[int, ...]:
        return tuple(sorted(self.relabel))

    def new_label(self, old: int) -> int:
        return self.relabel[old]


def _induced(diagram: DynkinDiagram, nodes: frozenset[int]):
    edges = {
        (i, j): data
        for (i, j), data in diagram.edges().items()
        if i in nodes and j in nodes
    }
    adj: dict[int, set[int]] = {v: set() for v in nodes}
    for (i, j) in edges:
        adj[i].add(j)
        adj[j].add(i)
    return edges, adj


def _candidate_maps(nodes, edges, adj, short):
    """Yield (family, rank, {old: new}) for every structural isomorphism."""
    r = len(nodes)
    if r == 1:
        (v,) = nodes
        yield "A", 1, {v: 1}
        return

    mults = {e: m for e, (m, _) in edges.items()}
    arrows = {e: t for e, (m, t) in edges.items() if m > 1}
    degree = {v: len(adj[v]) for v in nodes}

    if arrows:
        ((u, v), target) = next(iter(arrows.items()))
        mult = mults[(u, v)]
        if mult == 3:
            other = u if target == v else v
            yield "G", 2, {target: 1, other: 2}
            return
        if r == 2:
            other = u if target == v else v
            yield "B", 2, {other: 1, target: 2}
            return
        if degree[u] == 2 and degree[v] == 2:
            # Double edge in the interior: F4 shape, long side first.
            longside = u if target == v else v
            (tip_long,) = adj[longside] - {u, v}
            (tip_short,) = adj[target] - {u, v}
            if degree[tip_long] == 1 and degree[tip_short] == 1 and r == 4:
                yield "F", 4, {tip_long: 1, longside: 2, target: 3, tip_short: 4}
                return
            raise UnsupportedType("unrecognised multiply-laced shape")
        end = u if degree[u] == 1 else v
        path = _walk_path(adj, start_from_far_end=end)
        if target == end:
            yield "B", r, {node: i + 1 for i, node in enumerate(path)}
        else:
            yield "C", r, {node: i + 1 for i, node in enumerate(path)}
        return

    branch = [v for v in nodes if degree[v] >= 3]
    if not branch:
        # Simply-laced path: both traversals.
        ends = [v for v in nodes if degree[v] == 1]
        for start in ends:
            path = _walk_from(adj, start)
            yield "A", r, {node: i + 1 for i, node in enumerate(path)}
        return

    if len(branch) != 1 or degree[branch[0]] != 3:
        raise UnsupportedType("unrecognised simply-laced shape")
    c = branch[0]
    legs = sorted((_leg(adj, c, first) for first in adj[c]), key=len)
    lengths = tuple(len(leg) for leg in legs)

    if lengths[0] == 1 and lengths[1] == 1:
        # D_r: the long leg is forced (or symmetric); fork tips swap.
        tips_and_long = (
            [(legs[0][0], legs[1][0], legs[2])]
            if lengths[2] > 1
            else [
                (a[0], b[0], l)
                for a, b, l in itertools.permutations(legs, 3)
            ]
        )
        for tip1, tip2, long_leg in tips_and_long:
            base = {node: len(long_leg) - i for i, node in enumerate(long_leg)}
            base[c] = r - 2
            for x, y in ((tip1, tip2), (tip2, tip1)):
                m = dict(base)
                m[x], m[y] = r - 1, r
                yield "D", r, m
        return

    if lengths == (1, 2, 2) and r == 6:
        short_leg, legA, legB = legs
        for first, second in ((legA, legB), (legB, legA)):
            m = {c: 4, short_leg[0]: 2}
            m[first[0]], m[first[1]] = 3, 1
            m[second[0]], m[second[1]] = 5, 6
            yield "E", 6, m
        return
    if lengths in ((1, 2, 3), (1, 2, 4)) and r in (7, 8):
        short_leg, two_leg, long_leg = legs
        m = {c: 4, short_leg[0]: 2, two_leg[0]: 3, two_leg[1]: 1}
        for i, node in enumerate(long_leg):
            m[node] = 5 + i
        yield "E", r, m
        return
    raise UnsupportedType("unrecognised simply-laced shape")


def _walk_from(adj, start):
    path = [start]
    prev = None
    while True:
        nxt = [w for w in adj[path[-1]] if w != prev]
        if not nxt:
            return path
        prev = path[-1]
        path.append(nxt[0])


def _walk_path(adj, start_from_far_end):
    """Path order ending at the given endpoint."""
    return list(reversed(_walk_from(adj, start_from_far_end)))


def _leg(adj, center, first):
    """Nodes of the branch through `first`, ordered from the center out."""
    leg = [first]
    prev = center
    while True:
        nxt = [w for w in adj[leg[-1]] if w != prev]
        if not nxt:
            return leg
        prev = leg[-1]
        leg.append(nxt[0])


def classify_subdiagram(diagram: DynkinDiagram, nodes: Iterable[int]) -> Subdiagram:
    """Canonical relabelling of a connected induced subdiagram.

    Among all isomorphisms onto the reference diagram of its type, picks the
    one whose image tuple over the sorted original nodes is lexicographically
    smallest; this makes table output byte-stable.
    """
    nodeset = frozenset(nodes)
    edges, adj = _induced(diagram, nodeset)
    short = {v for v in nodeset if diagram.is_short(v)}
    best = None
    for family, rank, mapping in _candidate_maps(nodeset, edges, adj, short):
        key = tuple(mapping[v] for v in sorted(nodeset))
        if best is None or key < best[0]:
            best = (key, family, rank, mapping)
    assert best is not None
    _, family, rank, mapping = best
    return Subdiagram(DynkinDiagram(family, rank), dict(mapping))


def components_without(
    diagram: DynkinDiagram, removed: Iterable[int]
) -> list[Subdiagram]:
    """Connected components of the diagram minus `removed`, canonicalised.

    Components are listed by smallest original node.
    """
    removed_set = set(removed)
    for v in removed_set:
        if v not in diagram.nodes:
            raise UnknownNode(f"node {v} not in {diagram}")
    remaining = set(diagram.nodes) - removed_set
    _, adj = _induced(diagram, frozenset(remaining))
    seen: set[int] = set()
    comps: list[set[int]] = []
    for v in sorted(remaining):
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            w = stack.pop()
            for x in adj[w]:
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        comps.append(comp)
    return [classify_subdiagram(diagram, comp) for comp in comps]
