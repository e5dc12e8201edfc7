"""Splitting type of the relative tangent bundle restricted to a line.

For a generalized Grassmannian marked at node k the restriction of the
relative tangent bundle of the universal family to a line splits as a sum of
line bundles whose degrees are computed from two ingredients per component of
the diagram minus k:

* the tag: the negated k-th Cartan row restricted to the component, and
* the weights: the component's positive roots whose coefficient at the node
  adjacent to k is positive.

Each weight w contributes the degree -sum_j w_j tag_j.  The classical types
also admit closed forms, kept here as an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagrams import CASE_I, ProductSpace, case_of, grassmannianization
from .errors import CaseIHasNoRelativeTangent, UnknownNode, UnsupportedCase
from .roots import DynkinDiagram, Root, Subdiagram, cartan_matrix, components_without, positive_roots

SplittingType = tuple[int, ...]  # degrees sorted ascending


@dataclass(frozen=True)
class TagComponent:
    """Tag values of one component, indexed by its relabelled nodes."""

    sub: Subdiagram
    values: tuple[int, ...]  # values[j-1] belongs to new node j

    @property
    def marked(self) -> int:
        """Relabelled node adjacent to the removed node k."""
        (j,) = [j + 1 for j, v in enumerate(self.values) if v > 0]
        return j


@dataclass(frozen=True)
class Tag:
    per_component: tuple[TagComponent, ...]


@dataclass(frozen=True)
class WeightComponent:
    sub: Subdiagram
    adjacent: int  # relabelled node adjacent to k
    roots: tuple[Root, ...]


@dataclass(frozen=True)
class WeightSet:
    per_component: tuple[WeightComponent, ...]


def _check_node(diagram: DynkinDiagram, k: int) -> None:
    if k not in diagram.nodes:
        raise UnknownNode(f"node {k} not in {diagram}")


def tag(diagram: DynkinDiagram, k: int) -> Tag:
    """Negated k-th Cartan row, one vector per component of D minus k."""
    _check_node(diagram, k)
    A = cartan_matrix(diagram)
    comps = []
    for sub in components_without(diagram, [k]):
        values = [0] * sub.diagram.rank
        for old, new in sub.relabel.items():
            values[new - 1] = -A[k - 1][old - 1]
        comps.append(TagComponent(sub, tuple(values)))
    return Tag(tuple(comps))


def weights(diagram: DynkinDiagram, k: int) -> WeightSet:
    """Per component: positive roots with support at the node adjacent to k."""
    _check_node(diagram, k)
    adjacent = diagram.neighbors(k)
    comps = []
    for sub in components_without(diagram, [k]):
        (a,) = [sub.new_label(v) for v in sub.old_nodes() if v in adjacent]
        roots = tuple(
            r for r in positive_roots(sub.diagram) if r[a - 1] > 0
        )
        comps.append(WeightComponent(sub, a, roots))
    return WeightSet(tuple(comps))


def splitting_type(diagram: DynkinDiagram, k: int) -> SplittingType:
    """Degrees of the relative tangent bundle on a line, sorted ascending."""
    t = tag(diagram, k)
    w = weights(diagram, k)
    degrees: list[int] = []
    for tc, wc in zip(t.per_component, w.per_component):
        for root in wc.roots:
            degrees.append(-sum(m * v for m, v in zip(root, tc.values)))
    return tuple(sorted(degrees))


def classical_closed_form(family: str, n: int, k: int) -> SplittingType:
    """Closed-form splitting for the classical types, the dual oracle."""
    if family == "A" and n >= 1 and 1 <= k <= n:
        return ((-1,) * (n - 1))
    if family == "B" and n >= 2 and 1 <= k <= n:
        if k == 1:
            return ((-1,) * (2 * n - 3))
        if k <= n - 1:
            return ((-1,) * (2 * n - k - 2))
        return ((-2,) * (n - 1))
    if family == "C" and n >= 2 and 1 <= k <= n:
        if k == 1:
            return tuple(sorted((-2,) + (-1,) * (2 * n - 4)))
        if k <= n - 1:
            return tuple(sorted((-2,) + (-1,) * (2 * n - k - 3)))
        return ((-1,) * (n - 1))
    if family == "D" and n >= 3 and 1 <= k <= n:
        if k <= n - 3:
            return ((-1,) * (2 * n - k - 3))
        if k == n - 2:
            return ((-1,) * (n - 1))
        return ((-1,) * (2 * (n - 2)))
    raise UnsupportedCase(f"no closed form for {family}{n} node {k}")


def splitting_type_general(X: ProductSpace, i: int, delta: int) -> SplittingType:
    """Splitting for a marked node of a product space, via its subdiagram.

    The relative tangent bundle of the universal family over X restricted to
    a line only sees the maximal single-marked subdiagram through delta.
    """
    if case_of(X, i, delta) == CASE_I:
        raise CaseIHasNoRelativeTangent(
            f"factor {i} node {delta}: all neighbors marked, the universal "
            "family equals the space"
        )
    g = grassmannianization(X, i, delta)
    return splitting_type(g.diagram, g.single_mark)
