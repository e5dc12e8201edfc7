"""Marked-diagram algebra for products of generalized flag manifolds.

A marked diagram (D, I) encodes the flag manifold G/P_I; a product space is
an ordered list of factors.  For a marked node d of factor i these operations
produce the family of lines of class d-check, its universal family, the
tangent-direction factors at a point (the closed orbit when d is exposed
short), and the maximal single-marked subdiagram through d.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MultipleMarks, NodeNotMarked, UnknownNode
from .roots import DynkinDiagram, classify_subdiagram

CASE_I = "I"
CASE_II = "II"


@dataclass(frozen=True)
class MarkedDiagram:
    """A Dynkin diagram with a nonempty set of marked nodes."""

    diagram: DynkinDiagram
    marked: frozenset[int]

    def __post_init__(self):
        if not self.marked:
            raise NodeNotMarked("marked set must be nonempty")
        for v in self.marked:
            if v not in self.diagram.nodes:
                raise UnknownNode(f"marked node {v} not in {self.diagram}")

    @property
    def single_mark(self) -> int:
        if len(self.marked) != 1:
            raise MultipleMarks(f"{self} has {len(self.marked)} marked nodes")
        return next(iter(self.marked))

    def __str__(self) -> str:
        marks = ",".join(str(v) for v in sorted(self.marked))
        return f"{self.diagram}/P{{{marks}}}"


def marked(family: str, rank: int, marks) -> MarkedDiagram:
    return MarkedDiagram(DynkinDiagram(family, rank), frozenset(marks))


@dataclass(frozen=True)
class ProductSpace:
    """An ordered product of marked diagrams."""

    factors: tuple[MarkedDiagram, ...]

    def __post_init__(self):
        if not self.factors:
            raise NodeNotMarked("a product space needs at least one factor")

    def factor(self, i: int) -> MarkedDiagram:
        if not 1 <= i <= len(self.factors):
            raise UnknownNode(f"no factor {i} in a {len(self.factors)}-factor space")
        return self.factors[i - 1]

    def replace(self, i: int, new: MarkedDiagram) -> "ProductSpace":
        fs = list(self.factors)
        fs[i - 1] = new
        return ProductSpace(tuple(fs))

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


def space(*factors: MarkedDiagram) -> ProductSpace:
    return ProductSpace(tuple(factors))


def neighbors(diagram: DynkinDiagram, k: int) -> frozenset[int]:
    """Adjacency set N(k)."""
    return diagram.neighbors(k)


def _require_marked(md: MarkedDiagram, delta: int) -> None:
    if delta not in md.diagram.nodes:
        raise UnknownNode(f"node {delta} not in {md.diagram}")
    if delta not in md.marked:
        raise NodeNotMarked(f"node {delta} is not marked in {md}")


def _component_of(diagram: DynkinDiagram, nodes: set[int], start: int) -> set[int]:
    comp = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in diagram.neighbors(v):
            if w in nodes and w not in comp:
                comp.add(w)
                stack.append(w)
    return comp


def is_exposed_short(md: MarkedDiagram, j: int) -> bool:
    """Whether marked node j is an exposed short root of (D, I).

    True exactly when j is short and its connected component inside
    D minus (I\\{j}) contains a long node, i.e. a strictly longer root.
    """
    _require_marked(md, j)
    if not md.diagram.is_short(j):
        return False
    ambient = set(md.diagram.nodes) - (set(md.marked) - {j})
    comp = _component_of(md.diagram, ambient, j)
    return any(not md.diagram.is_short(v) for v in comp)


def special_family(X: ProductSpace, i: int, delta: int) -> ProductSpace:
    """Re-mark factor i at I\\{d} union N(d): the family of lines of class d-check."""
    md = X.factor(i)
    _require_marked(md, delta)
    marks = (md.marked - {delta}) | md.diagram.neighbors(delta)
    return X.replace(i, MarkedDiagram(md.diagram, marks))


def universal_family(X: ProductSpace, i: int, delta: int) -> ProductSpace:
    """Re-mark factor i at I union N(d): the incident (point, line) space."""
    md = X.factor(i)
    _require_marked(md, delta)
    return X.replace(i, MarkedDiagram(md.diagram, md.marked | md.diagram.neighbors(delta)))


def case_of(X: ProductSpace, i: int, delta: int) -> str:
    """Case I when N(d) is already marked (the universal family equals X)."""
    md = X.factor(i)
    _require_marked(md, delta)
    return CASE_I if md.diagram.neighbors(delta) <= md.marked else CASE_II


def _gdelta_nodes(md: MarkedDiagram, delta: int) -> set[int]:
    ambient = set(md.diagram.nodes) - (set(md.marked) - {delta})
    return _component_of(md.diagram, ambient, delta)


def grassmannianization(X: ProductSpace, i: int, delta: int) -> MarkedDiagram:
    """The maximal single-marked subdiagram through d, canonically relabelled."""
    md = X.factor(i)
    _require_marked(md, delta)
    sub = classify_subdiagram(md.diagram, _gdelta_nodes(md, delta))
    return MarkedDiagram(sub.diagram, frozenset({sub.new_label(delta)}))


def vmrt(X: ProductSpace, i: int, delta: int) -> list[MarkedDiagram]:
    """Factors of the space of tangent directions to d-lines through a point.

    Components of the subdiagram through d minus d itself, each marked at its
    unique node adjacent to d.  This is the closed orbit; it is the full space
    exactly when d is not exposed short.
    """
    md = X.factor(i)
    _require_marked(md, delta)
    nodes = _gdelta_nodes(md, delta) - {delta}
    adjacent = md.diagram.neighbors(delta)
    comps = []
    for start in adjacent & nodes:
        comps.append((start, _component_of(md.diagram, nodes, start)))
    comps.sort(key=lambda pair: min(pair[1]))  # same order as components_without
    out: list[MarkedDiagram] = []
    for start, comp in comps:
        sub = classify_subdiagram(md.diagram, comp)
        out.append(MarkedDiagram(sub.diagram, frozenset({sub.new_label(start)})))
    return out


@dataclass(frozen=True)
class LineFamilyReport:
    """Derived line-family geometry for one (space, factor, marked node)."""

    factor_index: int
    delta: int
    case_tag: str
    family_space: ProductSpace  # lines of class delta-check
    incidence_space: ProductSpace  # universal (point, line) space
    vmrt_factors: tuple[MarkedDiagram, ...]
    gdelta: MarkedDiagram
    exposed_short: bool


def line_family(X: ProductSpace, i: int, delta: int) -> LineFamilyReport:
    """Assemble the full line-family report for (X, i, delta)."""
    md = X.factor(i)
    _require_marked(md, delta)
    return LineFamilyReport(
        factor_index=i,
        delta=delta,
        case_tag=case_of(X, i, delta),
        family_space=special_family(X, i, delta),
        incidence_space=universal_family(X, i, delta),
        vmrt_factors=tuple(vmrt(X, i, delta)),
        gdelta=grassmannianization(X, i, delta),
        exposed_short=is_exposed_short(md, delta),
    )
