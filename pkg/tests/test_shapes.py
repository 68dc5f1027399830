import pytest

from isoschubert.shapes import (
    Partition,
    Shape,
    ShapeError,
    enumerate_shapes,
    lemma_bound_counterexamples,
    skew,
    special_shape,
    top_shape,
    weight_counts,
)


def S(text, n):
    return Shape.parse(text, n)


def test_partition():
    p = Partition((4, 3, 1))
    assert p.weight == 8 and len(p) == 3 and str(p) == "4,3,1"
    assert str(Partition(())) == "∅"
    with pytest.raises(ShapeError):
        Partition((2, 2))
    with pytest.raises(ShapeError):
        Partition((1, 0))


def test_weights():
    assert special_shape(3, 0).weight == 0
    assert S("3//3,2", 3).weight == 7
    for n in (3, 4, 5):
        assert special_shape(n, 2).weight == 2
        assert top_shape(n).weight == 4 * n - 5


def test_special_shapes_n5():
    assert str(special_shape(5, 0)) == "3,2,1//∅"
    assert str(special_shape(5, 1)) == "4,2,1//∅"
    assert str(special_shape(5, 2)) == "5,2,1//∅"


def test_invalid_shapes():
    with pytest.raises(ShapeError, match="bottom"):
        S("3//3,2,1", 3)
    with pytest.raises(ShapeError):
        S("4//∅", 3)  # part exceeds n
    with pytest.raises(ShapeError):
        S("3,1//1", 4)  # last top part must exceed l(bottom)


def test_enumeration_n3():
    shapes = enumerate_shapes(3)
    assert len(shapes) == 12
    assert {str(s) for s in enumerate_shapes(3, 3)} == {"3//1", "2//2"}
    assert enumerate_shapes(5, 0) == [special_shape(5, 0)]
    assert shapes == sorted(shapes, key=Shape.sort_key)


@pytest.mark.parametrize("n", range(3, 9))
def test_counts(n):
    shapes = enumerate_shapes(n)
    assert len(shapes) == len(set(shapes)) == 2 * n * (n - 1)
    c = weight_counts(n)
    assert c == c[::-1]
    assert len(enumerate_shapes(n, 1)) == 1


def test_bottom_length():
    assert special_shape(3, 0).bottom_length == 0
    assert S("3//1", 3).bottom_length == 1
    assert S("3//2,1", 3).bottom_length == 2


@pytest.mark.parametrize("n", range(3, 9))
def test_lemma_bounds(n):
    assert lemma_bound_counterexamples(n) == []


def test_skew():
    d = skew(Partition((4, 3, 1)), Partition((2, 1)))
    assert len(d) == 5
    assert len(skew(Partition((3, 1)), Partition((3, 1)))) == 0
    two = skew(Partition((2,)), Partition(()))
    assert len(two) == 2 and len(two.components()) == 1
    # (2,1) minus (1) leaves two boxes touching only at a corner
    assert len(skew(Partition((2, 1)), Partition((1,))).components()) == 2


def test_parse_roundtrip():
    for s in enumerate_shapes(4):
        assert Shape.parse(str(s), 4) == s
    assert Shape.parse("5,2,1//", 5) == special_shape(5, 2)
    assert S("2//1", 3) != S("3,1//∅", 4)
