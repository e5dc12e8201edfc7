"""Uniform-bundle splitting thresholds, slopes, and gap bounds.

The splitting threshold of a generalized Grassmannian is a rank bound below
which every uniform bundle splits as a direct sum of line bundles.  It is
computed from the classification of the tangent-direction factors at a
point: each factor family pins the largest ambient Grassmannian G(t, s)
admitting only constant maps from it, and a marked node's threshold is the
minimum over the components of the diagram minus that node.  Two spaces get
a larger value from their global geometry: C_n marked at 1 is a projective
space P^{2n-1} and G_2 marked at 1 is a 5-dimensional quadric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .diagrams import (
    CASE_I,
    MarkedDiagram,
    ProductSpace,
    case_of,
    grassmannianization,
    is_exposed_short,
    vmrt,
)
from .errors import ProfileRankMismatch, Unclassified, UnknownNode
from .roots import DynkinDiagram, classify_subdiagram
from .tangent import splitting_type_general


@dataclass(frozen=True)
class VmrtFamily:
    """Recognised isomorphism class of a tangent-direction factor."""

    kind: str  # proj, quadric_odd, quadric_even, grass, spinor,
    #           e6p6, e7p7, c3p3, p1, other
    params: tuple[int, ...] = ()

    def display(self) -> str:
        k, p = self.kind, self.params
        return {
            "proj": lambda: f"P_{p[0]}",
            "quadric_odd": lambda: f"Q_{p[0]}",
            "quadric_even": lambda: f"Q_{p[0]}",
            "grass": lambda: f"G({p[0]},{p[1]})",
            "spinor": lambda: f"S_{p[0]}",
            "e6p6": lambda: "E_6/P_6",
            "e7p7": lambda: "E_7/P_7",
            "c3p3": lambda: "C_3/P_3",
            "p1": lambda: "P_1",
            "other": lambda: "?",
        }[k]()


def classify_vmrt(factor: MarkedDiagram) -> VmrtFamily:
    """Classify a single-marked diagram up to the standard isomorphisms.

    Projective spaces, quadrics, Grassmannians and spinor varieties are
    recognised through their marked diagrams, including the coincidences
    B_m/P_m = S_m, C_m/P_1 = P^{2m-1} and B_2/P_2 = P^3.
    """
    k = factor.single_mark
    sub = classify_subdiagram(factor.diagram, factor.diagram.nodes)
    d, k = sub.diagram, sub.new_label(k)
    f, m = d.family, d.rank
    if m == 1:
        return VmrtFamily("p1")
    if f == "A":
        if k in (1, m):
            return VmrtFamily("proj", (m,))
        dd = min(k, m + 1 - k)
        return VmrtFamily("grass", (dd, m + 1))
    if f == "B":
        if k == 1:
            return VmrtFamily("quadric_odd", (2 * m - 1,))
        if k == m:
            return VmrtFamily("proj", (3,)) if m == 2 else VmrtFamily("spinor", (m,))
        return VmrtFamily("other")
    if f == "C":
        if k == 1:
            return VmrtFamily("proj", (2 * m - 1,))
        if k == m == 3:
            return VmrtFamily("c3p3")
        return VmrtFamily("other")
    if f == "D":
        if k == 1:
            return VmrtFamily("quadric_even", (2 * m - 2,))
        if k in (m - 1, m):
            return VmrtFamily("spinor", (m - 1,))
        return VmrtFamily("other")
    if f == "E" and m == 6 and k in (1, 6):
        return VmrtFamily("e6p6")
    if f == "E" and m == 7 and k == 7:
        return VmrtFamily("e7p7")
    return VmrtFamily("other")


_GRASS_ENLARGED = {(3, 6): 5, (3, 7): 6, (3, 8): 7}
_SPINOR_VALUES = {3: 5, 4: 6, 5: 7, 6: 9}


@dataclass(frozen=True)
class FactorValue:
    """Constant-map bound contributed by one factor.

    `unbounded` marks the P^1 factors, about which nothing can be said; the
    numeric fallback 1 keeps minimum computations total.
    """

    value: int
    unbounded: bool = False


def factor_value(family: VmrtFamily) -> FactorValue:
    """Largest s with only constant maps factor -> G(t, s), per family."""
    k, p = family.kind, family.params
    if k == "p1":
        return FactorValue(1, unbounded=True)
    if k == "proj":
        return FactorValue(p[0])
    if k == "quadric_odd":
        return FactorValue(p[0])
    if k == "quadric_even":
        return FactorValue(p[0] - 1)
    if k == "grass":
        d, n = p
        return FactorValue(_GRASS_ENLARGED.get((d, n), n - d + 1))
    if k == "spinor":
        if p[0] not in _SPINOR_VALUES:
            raise Unclassified(f"no constant-map bound recorded for S_{p[0]}")
        return FactorValue(_SPINOR_VALUES[p[0]])
    if k == "e6p6":
        return FactorValue(10)
    if k == "e7p7":
        return FactorValue(13)
    if k == "c3p3":
        return FactorValue(5)
    raise Unclassified("factor outside the recognised taxonomy")


@dataclass(frozen=True)
class ThresholdReport:
    """Threshold value with its derivation.

    `value` is None for the rank-one space P^1, where every bundle splits and
    no finite threshold is needed.
    """

    value: int | None
    unbounded: bool  # some P^1 factor made the value a mere fallback
    overridden: bool  # C_n/P_1 or G_2/P_1 global-geometry bump applied
    factors: tuple[tuple[str, int], ...]  # (factor display, its value)


def splitting_threshold_report(diagram: DynkinDiagram, k: int) -> ThresholdReport:
    """Threshold at node k with the per-component breakdown."""
    if k not in diagram.nodes:
        raise UnknownNode(f"node {k} not in {diagram}")
    factors = vmrt(ProductSpace((MarkedDiagram(diagram, frozenset({k})),)), 1, k)
    parts = []
    for f in factors:
        fam = classify_vmrt(f)
        parts.append((fam, factor_value(fam)))
    if parts:
        value = min(fv.value for _, fv in parts)
        unbounded = any(fv.unbounded and fv.value == value for _, fv in parts)
    else:
        value, unbounded = None, False  # the space is P^1 itself
    overridden = False
    if diagram.family == "C" and k == 1:
        value, unbounded, overridden = 2 * diagram.rank - 2, False, True
    elif diagram.family == "G" and k == 1:
        value, unbounded, overridden = 3, False, True
    return ThresholdReport(
        value=value,
        unbounded=unbounded,
        overridden=overridden,
        factors=tuple((fam.display(), fv.value) for fam, fv in parts),
    )


def splitting_threshold(diagram: DynkinDiagram, k: int) -> int | None:
    """Uniform bundles of rank up to this value split on (D, k).

    None (for P^1) means every rank splits.
    """
    return splitting_threshold_report(diagram, k).value


def space_threshold_report(X: ProductSpace) -> tuple[int | None, list]:
    """Minimum threshold over every marked node of every factor.

    Nodes whose subdiagram is P^1 impose no constraint; if every node is of
    that kind (complete flags of rank-one groups), the result is None.
    """
    rows = []
    for i, md in enumerate(X.factors, start=1):
        for delta in sorted(md.marked):
            g = grassmannianization(X, i, delta)
            rep = splitting_threshold_report(g.diagram, g.single_mark)
            rows.append((i, delta, str(g), rep))
    bounds = [rep.value for _, _, _, rep in rows if rep.value is not None]
    return (min(bounds) if bounds else None), rows


def space_threshold(X: ProductSpace) -> int | None:
    return space_threshold_report(X)[0]


Profile = tuple[int, ...]  # splitting degrees, nonincreasing


def slope(profile: Sequence[int]) -> Fraction:
    """First Chern degree divided by rank, as an exact rational."""
    if not profile:
        raise ProfileRankMismatch("empty profile")
    return Fraction(sum(profile), len(profile))


@dataclass(frozen=True)
class Verdict:
    kind: str  # splits, unstable, inconclusive
    rank: int
    threshold: int | None  # None: unconstrained (all subdiagrams are P^1)
    unstable_for: tuple[tuple[int, int], ...] = ()

    def reason(self) -> str:
        if self.kind == "splits":
            return "every profile is constant: direct sum of line bundles"
        if self.kind == "unstable":
            nodes = ", ".join(f"(factor {i}, node {d})" for i, d in self.unstable_for)
            return (
                f"rank {self.rank} <= {self.threshold} - 2 with a nonconstant "
                f"profile: unstable for {nodes}"
            )
        return (
            f"rank {self.rank} exceeds {self.threshold} - 2: no conclusion "
            "from these profiles"
        )


def uniform_verdict(
    r: int, X: ProductSpace, profiles: Mapping[tuple[int, int], Sequence[int]]
) -> Verdict:
    """Decide the poly-uniform alternative: split, unstable, or inconclusive.

    Expects one splitting profile per (factor index, marked node).
    """
    wanted = {
        (i, d)
        for i, md in enumerate(X.factors, start=1)
        for d in md.marked
    }
    if set(profiles) != wanted:
        missing = sorted(wanted - set(profiles))
        extra = sorted(set(profiles) - wanted)
        raise ProfileRankMismatch(
            f"profiles must cover exactly the marked nodes; missing {missing}, "
            f"unexpected {extra}"
        )
    for key, p in profiles.items():
        if len(p) != r:
            raise ProfileRankMismatch(f"profile {key} has rank {len(p)}, expected {r}")
    nonconstant = tuple(
        key for key in sorted(profiles) if len(set(profiles[key])) > 1
    )
    nu = space_threshold(X)
    if not nonconstant:
        return Verdict("splits", r, nu)
    if nu is None or r <= nu - 2:
        return Verdict("unstable", r, nu, unstable_for=nonconstant)
    return Verdict("inconclusive", r, nu)


@dataclass(frozen=True)
class GapBound:
    """Degree-gap thresholds for one line family.

    `general_threshold` is the coarse value from the descent argument
    (1 / 2 / 4); `computed_threshold` sharpens it through the actual relative
    tangent splitting.  A gap of `max_semistable_gap` or less between
    consecutive degrees is necessary for semistability.
    """

    general_threshold: int
    computed_threshold: int

    @property
    def max_semistable_gap(self) -> int:
        return self.computed_threshold - 1


def gap_bound(X: ProductSpace, i: int, delta: int) -> GapBound:
    """Grauert-Mulich-style gap bound for lines of class delta-check."""
    if case_of(X, i, delta) == CASE_I:
        return GapBound(1, 1)
    exposed = is_exposed_short(X.factor(i), delta)
    general = 4 if exposed else 2
    computed = 1 - min(splitting_type_general(X, i, delta))
    return GapBound(general, computed)


def semistability_necessary(profile: Sequence[int], bound: GapBound) -> bool:
    """Whether the profile passes the necessary gap condition.

    False certifies instability with respect to this family; expects the
    profile sorted nonincreasing.
    """
    gap = bound.max_semistable_gap
    return all(a - b <= gap for a, b in zip(profile, profile[1:]))
