from fractions import Fraction

import pytest

from homlines.diagrams import marked, space
from homlines.errors import MultipleMarks, ProfileRankMismatch, Unclassified
from homlines.roots import build_diagram
from homlines.thresholds import (
    GapBound,
    classify_vmrt,
    factor_value,
    gap_bound,
    semistability_necessary,
    slope,
    space_threshold,
    splitting_threshold,
    splitting_threshold_report,
    uniform_verdict,
)


@pytest.mark.parametrize(
    "md,kind,params",
    [
        (marked("B", 4, {1}), "quadric_odd", (7,)),
        (marked("D", 6, {6}), "spinor", (5,)),
        (marked("D", 6, {1}), "quadric_even", (10,)),
        (marked("A", 5, {2}), "grass", (2, 6)),
        (marked("A", 5, {4}), "grass", (2, 6)),
        (marked("A", 7, {1}), "proj", (7,)),
        (marked("A", 1, {1}), "p1", ()),
        (marked("C", 4, {1}), "proj", (7,)),
        (marked("B", 2, {2}), "proj", (3,)),
        (marked("B", 3, {3}), "spinor", (3,)),
        (marked("C", 3, {3}), "c3p3", ()),
        (marked("E", 6, {1}), "e6p6", ()),
        (marked("E", 6, {6}), "e6p6", ()),
        (marked("E", 7, {7}), "e7p7", ()),
        (marked("E", 7, {3}), "other", ()),
        (marked("C", 5, {3}), "other", ()),
    ],
)
def test_classify_vmrt(md, kind, params):
    fam = classify_vmrt(md)
    assert (fam.kind, fam.params) == (kind, params)


def test_classify_requires_single_mark():
    with pytest.raises(MultipleMarks):
        classify_vmrt(marked("A", 4, {1, 2}))


def test_factor_values():
    assert factor_value(classify_vmrt(marked("D", 7, {7}))).value == 9  # S_6
    assert factor_value(classify_vmrt(marked("A", 7, {3}))).value == 7  # G(3,8)
    assert factor_value(classify_vmrt(marked("E", 7, {7}))).value == 13
    assert factor_value(classify_vmrt(marked("C", 3, {3}))).value == 5
    p1 = factor_value(classify_vmrt(marked("A", 1, {1})))
    assert p1.value == 1 and p1.unbounded
    with pytest.raises(Unclassified):
        factor_value(classify_vmrt(marked("E", 7, {3})))


TABLE_FIXED = {
    ("E", 6, 1): 6, ("E", 7, 1): 7, ("E", 8, 1): 9,
    ("E", 6, 2): 5, ("E", 7, 2): 6, ("E", 8, 2): 7,
    ("E", 6, 6): 6, ("E", 7, 7): 10, ("E", 8, 8): 13,
    ("F", 4, 1): 5, ("F", 4, 4): 5, ("G", 2, 1): 3, ("G", 2, 2): 1,
}


def test_threshold_table():
    for n in range(4, 11):
        symbolic = {
            ("A", 1): n - 1, ("A", n): n - 1,
            ("B", 1): 2 * n - 3, ("B", n): n - 1,
            ("C", 1): 2 * n - 2, ("C", n): n - 1,
            ("D", 1): 2 * n - 5, ("D", n - 1): n - 1, ("D", n): n - 1,
        }
        for (fam, k), want in symbolic.items():
            assert splitting_threshold(build_diagram(fam, n), k) == want, (fam, n, k)
    for (fam, n, k), want in TABLE_FIXED.items():
        assert splitting_threshold(build_diagram(fam, n), k) == want


def test_threshold_symmetries():
    for n in range(2, 9):
        a = build_diagram("A", n)
        for k in a.nodes:
            assert splitting_threshold(a, k) == splitting_threshold(a, n + 1 - k)
    for n in range(4, 9):
        d = build_diagram("D", n)
        assert splitting_threshold(d, n - 1) == splitting_threshold(d, n)


def test_threshold_interior_nodes():
    assert splitting_threshold(build_diagram("A", 5), 3) == 2
    rep = splitting_threshold_report(build_diagram("G", 2), 2)
    assert rep.value == 1 and rep.unbounded and not rep.overridden
    rep = splitting_threshold_report(build_diagram("C", 6), 1)
    assert rep.value == 10 and rep.overridden and not rep.unbounded
    # interior C nodes never get the projective-space bump
    assert splitting_threshold(build_diagram("C", 6), 2) == 1  # P^1 factor


def test_space_threshold():
    assert space_threshold(space(marked("A", 5, {1, 3}))) == 1
    assert space_threshold(space(marked("E", 7, {7}))) == 10
    assert space_threshold(space(marked("A", 3, {2}), marked("A", 3, {2}))) == 1
    assert space_threshold(space(marked("C", 4, {1}), marked("E", 7, {7}))) == 6


def test_space_threshold_full_flags_unconstrained():
    # every node of a complete flag manifold has a P^1 subdiagram: no finite
    # bound is needed (bundles on the rank-one fibers always split)
    assert splitting_threshold(build_diagram("A", 1), 1) is None
    assert space_threshold(space(marked("G", 2, {1, 2}))) is None
    assert space_threshold(space(marked("A", 3, {1, 2, 3}))) is None
    # nodes with unmarked neighbors still contribute their finite value
    mixed = space(marked("A", 3, {1, 2, 3}), marked("E", 7, {7}))
    assert space_threshold(mixed) == 10


def test_uniform_verdict_on_full_flags():
    gb = space(marked("A", 3, {1, 2, 3}))
    profiles = {(1, d): (3, 0, 0) for d in (1, 2, 3)}
    v = uniform_verdict(3, gb, profiles)
    assert v.kind == "unstable" and v.threshold is None
    assert v.unstable_for == ((1, 1), (1, 2), (1, 3))
    flat = {(1, d): (1, 1, 1) for d in (1, 2, 3)}
    assert uniform_verdict(3, gb, flat).kind == "splits"


def test_uniform_verdict():
    X = space(marked("E", 7, {7}))
    assert uniform_verdict(2, X, {(1, 7): (0, 0)}).kind == "splits"
    v = uniform_verdict(3, X, {(1, 7): (1, 0, 0)})
    assert v.kind == "unstable" and v.unstable_for == ((1, 7),)
    G = space(marked("G", 2, {2}))
    assert uniform_verdict(9, G, {(1, 2): (1,) + (0,) * 8}).kind == "inconclusive"
    with pytest.raises(ProfileRankMismatch):
        uniform_verdict(2, X, {(1, 7): (0, 0, 0)})
    with pytest.raises(ProfileRankMismatch):
        uniform_verdict(2, X, {(1, 6): (0, 0)})


def test_verdict_twist_invariance():
    X = space(marked("E", 7, {7}))
    for shift in (-3, 0, 5):
        p = tuple(x + shift for x in (1, 1, 1))
        assert uniform_verdict(3, X, {(1, 7): p}).kind == "splits"


def test_slope():
    assert slope((1, 0)) == Fraction(1, 2)
    assert slope((0, 0, 0)) == 0
    assert slope((3, 1, -1)) == 1
    assert slope((1, 2, 3)) == slope((3, 2, 1))
    assert slope((4, 5)) == slope((1, 2)) + 3


@pytest.mark.parametrize(
    "spec,delta,paper,computed",
    [
        (("C", 5, {2}), 2, 4, 3),
        (("G", 2, {1}), 1, 4, 4),
        (("B", 4, {4}), 4, 4, 3),
        (("B", 4, {2}), 2, 2, 2),
        (("E", 7, {7}), 7, 2, 2),
        (("F", 4, {3}), 3, 4, 3),
        (("F", 4, {1}), 1, 2, 2),
    ],
)
def test_gap_bounds(spec, delta, paper, computed):
    fam, n, marks = spec
    b = gap_bound(space(marked(fam, n, marks)), 1, delta)
    assert (b.general_threshold, b.computed_threshold) == (paper, computed)
    assert b.max_semistable_gap == computed - 1


def test_gap_bound_case_one():
    gb = space(marked("B", 3, {1, 2, 3}))
    for d in (1, 2, 3):
        b = gap_bound(gb, 1, d)
        assert (b.general_threshold, b.computed_threshold, b.max_semistable_gap) == (1, 1, 0)


def test_computed_never_exceeds_general():
    from homlines.tangent import splitting_type

    for fam, n in [("A", 5), ("B", 5), ("C", 5), ("D", 5), ("F", 4), ("G", 2)]:
        d = build_diagram(fam, n)
        for k in d.nodes:
            b = gap_bound(space(marked(fam, n, {k})), 1, k)
            assert b.computed_threshold <= b.general_threshold
            # equality exactly when the lowest tangent degree is -1 or -3
            lowest = min(splitting_type(d, k))
            assert (b.computed_threshold == b.general_threshold) == (
                lowest in (-1, -3)
            )


def test_semistability_necessary():
    assert semistability_necessary((1, 0, 0), GapBound(2, 2)) is True
    assert semistability_necessary((2, 0), GapBound(2, 2)) is False
    assert semistability_necessary((4, 1), GapBound(4, 4)) is True
