import pytest

from homlines.errors import UnknownNode, UnsupportedType
from homlines.roots import (
    build_diagram,
    cartan_matrix,
    classify_subdiagram,
    components_without,
    positive_roots,
)

CLASSICAL_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
}


def all_diagrams(max_rank=8):
    for fam, lo in [("A", 1), ("B", 2), ("C", 2), ("D", 3)]:
        for n in range(lo, max_rank + 1):
            yield build_diagram(fam, n)
    for fam, n in [("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)]:
        yield build_diagram(fam, n)


@pytest.mark.parametrize(
    "family,rank", [("A", 0), ("B", 1), ("C", 1), ("D", 2), ("E", 9), ("E", 5), ("F", 3), ("G", 3), ("H", 2)]
)
def test_unsupported_types_rejected(family, rank):
    with pytest.raises(UnsupportedType):
        build_diagram(family, rank)


def test_diagram_shapes():
    f4 = build_diagram("F", 4)
    assert f4.edges()[(2, 3)] == (2, 3)
    assert f4.short_nodes() == {3, 4}
    g2 = build_diagram("G", 2)
    assert g2.edges()[(1, 2)] == (3, 1)
    b4 = build_diagram("B", 4)
    assert b4.edges()[(3, 4)] == (2, 4)
    c4 = build_diagram("C", 4)
    assert c4.edges()[(3, 4)] == (2, 3)
    e7 = build_diagram("E", 7)
    assert e7.neighbors(4) == {2, 3, 5}
    a3 = build_diagram("A", 3)
    assert dict(a3.edges()) == {(1, 2): (1, None), (2, 3): (1, None)}
    assert a3.short_nodes() == frozenset()


def test_cartan_entries():
    assert cartan_matrix(build_diagram("A", 2)) == ((2, -1), (-1, 2))
    assert cartan_matrix(build_diagram("G", 2)) == ((2, -3), (-1, 2))
    A = cartan_matrix(build_diagram("F", 4))
    assert A[2][1] == -2 and A[1][2] == -1
    assert A[3][2] == -1 and A[2][3] == -1
    B = cartan_matrix(build_diagram("B", 3))
    assert B[2][1] == -2 and B[1][2] == -1


def test_cartan_recovers_edges():
    for d in all_diagrams():
        A = cartan_matrix(d)
        mults = {}
        for i in range(d.rank):
            for j in range(i + 1, d.rank):
                m = A[i][j] * A[j][i]
                if m:
                    mults[(i + 1, j + 1)] = m
        assert mults == {e: m for e, (m, _) in d.edges().items()}


def test_positive_root_counts():
    for d in all_diagrams():
        want = {
            "G": 6,
            "F": 24,
            "E": {6: 36, 7: 63, 8: 120}[d.rank] if d.family == "E" else None,
        }.get(d.family)
        if want is None:
            want = CLASSICAL_COUNTS[d.family](d.rank)
        assert len(positive_roots(d)) == want, str(d)


def test_small_root_systems_exactly():
    assert set(positive_roots(build_diagram("A", 2))) == {(1, 0), (0, 1), (1, 1)}
    assert set(positive_roots(build_diagram("B", 2))) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    assert set(positive_roots(build_diagram("G", 2))) == {
        (1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2),
    }


def test_roots_sorted_and_connected_support():
    for d in all_diagrams(6):
        roots = positive_roots(d)
        assert list(roots) == sorted(roots)
        for r in roots:
            support = {i + 1 for i, c in enumerate(r) if c}
            seen = {min(support)}
            grow = True
            while grow:
                grow = False
                for v in list(seen):
                    for w in d.neighbors(v):
                        if w in support and w not in seen:
                            seen.add(w)
                            grow = True
            assert seen == support, (str(d), r)


def test_reflections_permute_roots():
    from homlines.roots import cartan_matrix as cm

    for d in [build_diagram("F", 4), build_diagram("B", 4), build_diagram("E", 6)]:
        A = cm(d)
        roots = set(positive_roots(d))
        for beta in roots:
            for i in range(d.rank):
                c = sum(beta[j] * A[i][j] for j in range(d.rank))
                image = list(beta)
                image[i] -= c
                pos, neg = tuple(image), tuple(-x for x in image)
                assert pos in roots or neg in roots


def test_components_basic_examples():
    f4 = build_diagram("F", 4)
    (c3,) = components_without(f4, [1])
    assert str(c3.diagram) == "C3"
    assert c3.relabel == {2: 3, 3: 2, 4: 1}

    e7 = build_diagram("E", 7)
    (e6,) = components_without(e7, [7])
    assert str(e6.diagram) == "E6"
    assert e6.relabel == {i: i for i in range(1, 7)}

    e6d = build_diagram("E", 6)
    comps = components_without(e6d, [4])
    assert [str(c.diagram) for c in comps] == ["A2", "A1", "A2"]
    assert comps[0].relabel == {1: 1, 3: 2}
    assert comps[2].relabel == {5: 1, 6: 2}


def test_components_rank_sum_and_empty():
    for d in all_diagrams(7):
        for k in d.nodes:
            comps = components_without(d, [k])
            assert sum(c.diagram.rank for c in comps) == d.rank - 1
    assert components_without(build_diagram("A", 2), [1, 2]) == []
    with pytest.raises(UnknownNode):
        components_without(build_diagram("A", 2), [5])


def test_component_ties_prefer_smaller_types():
    # D3-shaped subgraphs classify as A3, one-node ones as A1,
    # rank-2 double edges as B2.
    d4 = build_diagram("D", 4)
    (a3,) = components_without(d4, [4])
    assert str(a3.diagram) == "A3"
    c3 = build_diagram("C", 3)
    (b2,) = components_without(c3, [1])
    assert str(b2.diagram) == "B2"
    assert b2.relabel == {2: 2, 3: 1}  # short node stays the arrow target
    g2 = build_diagram("G", 2)
    (a1,) = components_without(g2, [1])
    assert str(a1.diagram) == "A1"


def test_classify_preserves_arrows_and_length():
    b6 = build_diagram("B", 6)
    (a2, b3) = components_without(b6, [3])
    assert str(a2.diagram) == "A2"
    assert str(b3.diagram) == "B3"
    # short node stays short under the relabelling
    assert b3.diagram.is_short(b3.new_label(6))


def test_classify_whole_diagram_is_identity():
    for d in all_diagrams(7):
        if (d.family, d.rank) in {("C", 2), ("D", 3)}:
            continue  # recorded ties: C2 canonicalises to B2, D3 to A3
        sub = classify_subdiagram(d, d.nodes)
        assert sub.diagram == d
        assert sub.relabel == {v: v for v in d.nodes}
    assert str(classify_subdiagram(build_diagram("C", 2), [1, 2]).diagram) == "B2"
    assert str(classify_subdiagram(build_diagram("D", 3), [1, 2, 3]).diagram) == "A3"
