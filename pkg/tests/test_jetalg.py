import pytest

from jetfact.grading import GradedElement
from jetfact.jetalg import (
    AlgebraPresentation,
    DifferentialHom,
    LiftError,
    derive,
    lift_hom,
    multiply,
    weight_basis,
)
from jetfact.sampling import Sampler
from jetfact.scalars import Scalar


def brute_force_partitions(n: int, max_part=None) -> int:
    """Independent oracle: count partitions of n by direct recursion."""
    if max_part is None:
        max_part = n
    if n == 0:
        return 1
    if n < 0 or max_part == 0:
        return 0
    return brute_force_partitions(n - max_part, max_part) + brute_force_partitions(
        n, max_part - 1
    )


def test_free_dims_match_partition_oracle():
    P = AlgebraPresentation(["x"], [], 12)
    expected = [brute_force_partitions(d) for d in range(13)]
    assert P.dims() == expected
    assert expected[10] == 42 and expected[12] == 77


def test_weight_basis_examples(free_x):
    basis2 = weight_basis(free_x, 2)
    assert set(basis2) == {(("x", 1),), (("x", 0), ("x", 0))}
    assert weight_basis(free_x, 0) == [()]
    assert weight_basis(free_x, -1) == []
    with pytest.raises(ValueError):
        weight_basis(free_x, 7)


def test_multiply_examples(free_x):
    x = free_x.gen("x")
    assert multiply(x, x, free_x) == GradedElement.monomial((("x", 0), ("x", 0)), 6)
    assert multiply(x, free_x.unit(), free_x) == x


def test_multiply_in_quotient(quot_x2):
    x = quot_x2.gen("x")
    assert multiply(x, x, quot_x2).is_zero()


def test_quotient_dims_double_point():
    # Jets of the double point: dimensions follow the distinct-gap partition
    # counts 1, 1, 1, 1, 2, 2, 3, ...
    P = AlgebraPresentation(["x"], ["x*x"], 6)
    assert P.dims() == [1, 1, 1, 1, 2, 2, 3]


def test_quotient_dims_cross(quot_xy):
    assert quot_xy.dims() == [1, 2, 4, 7, 12, 19, 30]


def test_inhomogeneous_relation_supported():
    # x*x = x: the idempotent relation is weight-inhomogeneous; reduction
    # by leading structure still yields consistent products and jets.
    P = AlgebraPresentation(["x"], ["x*x - x"], 6)
    x = P.gen("x")
    assert P.multiply(x, x) == x
    # Deriving the square and the generator agree in the quotient.
    assert P.derive(P.multiply(x, x)) == P.derive(x)


def test_derive_examples(free_x):
    x = free_x.gen("x")
    assert derive(x, free_x) == free_x.gen("x", 1)
    xx = multiply(x, x, free_x)
    assert derive(xx, free_x) == GradedElement.monomial(
        (("x", 1), ("x", 0)), 6
    ).scale(Scalar(2))
    assert derive(free_x.unit(), free_x).is_zero()


def test_derive_respects_quotient(quot_x2):
    x = quot_x2.gen("x")
    # 0 = d(x*x) = 2 x1 x0 in the quotient.
    x1x0 = quot_x2.multiply(quot_x2.gen("x", 1), x)
    assert x1x0.is_zero()


def test_leibniz_sampled(quot_xy):
    s = Sampler(5)
    for _ in range(30):
        a = s.element(quot_xy)
        b = s.element(quot_xy)
        lhs = derive(multiply(a, b, quot_xy), quot_xy)
        rhs = multiply(derive(a, quot_xy), b, quot_xy) + multiply(
            a, derive(b, quot_xy), quot_xy
        )
        assert lhs == rhs


def test_grading_of_operations(free_xy):
    s = Sampler(9)
    for _ in range(30):
        a = s.homogeneous_element(free_xy)
        b = s.homogeneous_element(free_xy)
        prod = multiply(a, b, free_xy)
        if prod:
            assert prod.weight() == a.weight() + b.weight()
        d = derive(a, free_xy)
        if d:
            assert d.weight() == a.weight() + 1


def test_generator_mismatch(free_x, free_xy):
    y = free_xy.gen("y")
    with pytest.raises(ValueError):
        multiply(y, y, free_x)


def test_presentation_validation():
    with pytest.raises(ValueError):
        AlgebraPresentation(["x", "x"], [], 6)
    with pytest.raises(ValueError):
        AlgebraPresentation(["x"], ["x*y"], 6)


def test_presentation_json_roundtrip(quot_xy):
    doc = quot_xy.to_json()
    again = AlgebraPresentation.from_json(doc)
    assert again == quot_xy
    assert again.dims() == quot_xy.dims()


def test_coordinates_roundtrip(quot_xy):
    s = Sampler(3)
    basis = quot_xy.basis_monomials()
    for _ in range(10):
        a = s.element(quot_xy)
        vec = quot_xy.coordinates(a)
        rebuilt = GradedElement(
            {m: c for m, c in zip(basis, vec) if c}, quot_xy.wmax
        )
        assert rebuilt == quot_xy.normal_form(a)


# -- differential morphisms ----------------------------------------------------


def test_lift_simple_shift():
    src = AlgebraPresentation(["x"], [], 6)
    tgt = AlgebraPresentation(["y"], [], 6)
    hom = lift_hom({"x": tgt.gen("y")}, src, tgt)
    assert hom.image_of_variable("x", 2) == tgt.gen("y", 2)
    assert hom.apply(src.gen("x", 2)) == tgt.gen("y", 2)


def test_lift_zero():
    src = AlgebraPresentation(["x"], [], 6)
    tgt = AlgebraPresentation(["y"], [], 6)
    hom = lift_hom({"x": tgt.zero()}, src, tgt)
    assert hom.apply(src.gen("x", 3)).is_zero()
    assert hom.apply(src.unit()) == tgt.unit()


def test_lift_square_image():
    src = AlgebraPresentation(["x"], [], 6)
    tgt = AlgebraPresentation(["y"], [], 6)
    y = tgt.gen("y")
    hom = lift_hom({"x": tgt.multiply(y, y)}, src, tgt)
    expected = GradedElement.monomial((("y", 1), ("y", 0)), 6).scale(Scalar(2))
    assert hom.image_of_variable("x", 1) == expected


def test_lift_commutes_with_derivation():
    src = AlgebraPresentation(["x"], [], 6)
    tgt = AlgebraPresentation(["y"], [], 6)
    s = Sampler(17)
    y = tgt.gen("y")
    hom = lift_hom({"x": tgt.multiply(y, y) + y}, src, tgt)
    for _ in range(20):
        a = s.element(src)
        assert hom.apply(src.derive(a)) == tgt.derive(hom.apply(a))


def test_lift_uniqueness():
    src = AlgebraPresentation(["x"], [], 6)
    tgt = AlgebraPresentation(["y"], [], 6)
    img = tgt.gen("y", 1)
    h1 = lift_hom({"x": img}, src, tgt)
    h2 = DifferentialHom(src, tgt, {"x": img})
    s = Sampler(23)
    for _ in range(20):
        a = s.element(src)
        assert h1.apply(a) == h2.apply(a)


def test_lift_rejects_broken_relations(quot_x2):
    tgt = AlgebraPresentation(["y"], [], 6)
    with pytest.raises(LiftError) as err:
        lift_hom({"y": tgt.gen("y")}, AlgebraPresentation(["y"], ["y*y"], 6), tgt)
    assert "y0*y0" in str(err.value)
    # The zero map does respect the relation.
    hom = lift_hom({"x": tgt.zero()}, quot_x2, tgt)
    assert hom.apply(quot_x2.gen("x")).is_zero()


def test_lift_into_quotient(quot_x2):
    # x -> x is a valid differential endomorphism of the double-point jets.
    hom = lift_hom({"x": quot_x2.gen("x")}, quot_x2, quot_x2)
    assert hom.apply(quot_x2.gen("x", 1)) == quot_x2.gen("x", 1)


def test_lift_relation_jets_also_vanish(quot_x2):
    free = AlgebraPresentation(["x"], [], 6)
    tgt = AlgebraPresentation(["y"], ["y*y"], 6)
    hom = lift_hom({"x": tgt.gen("y")}, quot_x2, tgt)
    # Jets of the relation, computed in the free algebra, all map to zero.
    cur = GradedElement(dict(quot_x2.relations[0].data), 6)
    while cur:
        assert hom.apply(cur).is_zero()
        cur = free.derive(cur)


def test_map_images_twist():
    src = AlgebraPresentation(["x"], [], 6)
    tgt = AlgebraPresentation(["y"], [], 6)
    hom = lift_hom({"x": tgt.gen("y")}, src, tgt)
    doubled = hom.map_images(lambda e: e.scale(Scalar(2)))
    a = src.gen("x", 1)
    assert doubled.apply(a) == hom.apply(a).scale(Scalar(2))
    xx = src.multiply(src.gen("x"), src.gen("x"))
    assert doubled.apply(xx) == hom.apply(xx).scale(Scalar(4))
