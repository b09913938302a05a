from math import comb

import pytest
from hypothesis import given, seed
from pydantic import ValidationError

from strata_morse.algebra import ONE_PLUS_B, GradedPoly
from strata_morse.exceptions import PerversityError, SpaceValidationError
from strata_morse.topology import (
    MiddleStructure,
    circle,
    cone,
    describe,
    dimension,
    disc,
    dump_space,
    middle_structure,
    parse_space,
    point,
    primitive_cohomology,
    product,
    smooth,
    sphere,
    strata,
    suspension,
    torus,
    witt_check,
)
from tests.strategies import SEED, links


class TestDimension:
    def test_primitives(self):
        assert dimension(point()) == 0
        assert dimension(circle()) == 1
        assert dimension(torus(2)) == 2
        assert dimension(sphere(4)) == 4

    def test_conical_nodes_add_one(self):
        assert dimension(suspension(torus(2), [[1, 0]])) == 3
        assert dimension(suspension(suspension(torus(2), [[1, 0]]))) == 4
        assert dimension(cone(circle())) == 2

    def test_product_adds(self):
        assert dimension(product(suspension(torus(2)), circle())) == 4
        assert dimension(product(circle(), circle(), circle())) == 3

    @seed(SEED)
    @given(left=links, right=links)
    def test_product_dimension_is_additive(self, left, right):
        assert product(left, right).dim == left.dim + right.dim
        assert suspension(left).dim == left.dim + 1


class TestPrimitiveCohomology:
    def test_torus2(self):
        basis = primitive_cohomology(torus(2))
        assert basis.classes == ((0, "1"), (1, "dθ1"), (1, "dθ2"), (2, "dθ1∧dθ2"))

    def test_sphere_and_circle(self):
        assert primitive_cohomology(sphere(2)).classes == ((0, "1"), (2, "vol"))
        assert primitive_cohomology(circle()).classes == ((0, "1"), (1, "dθ"))
        assert primitive_cohomology(point()).classes == ((0, "1"),)

    @pytest.mark.parametrize("k", range(1, 7))
    def test_torus_is_binomial(self, k):
        expected = GradedPoly.one()
        for _ in range(k):
            expected = expected * ONE_PLUS_B
        poly = primitive_cohomology(torus(k)).poly
        assert poly == expected
        assert poly.to_list(k + 1) == [comb(k, j) for j in range(k + 1)]

    def test_smooth_echoes_its_basis(self):
        cubic = smooth("cubic", dim=4, classes=[(0, "1"), (2, "ω"), (4, "vol")])
        assert primitive_cohomology(cubic).poly == GradedPoly.from_coefficients(
            [1, 0, 1, 0, 1]
        )

    def test_unsupported_node(self):
        with pytest.raises(SpaceValidationError):
            primitive_cohomology(suspension(circle()))


class TestMiddleStructure:
    def test_torus2_star(self):
        middle = middle_structure(torus(2))
        assert middle.basis == ("dθ1", "dθ2")
        # columns are images: star(dθ1) = dθ2, star(dθ2) = -dθ1
        assert [row[0] for row in middle.star] == [0, 1]
        assert [row[1] for row in middle.star] == [-1, 0]

    def test_even_sphere_has_empty_middle(self):
        middle = middle_structure(sphere(2))
        assert middle.dim == 0
        assert middle.has_star

    def test_odd_link_has_no_middle_degree(self):
        middle = middle_structure(torus(3))
        assert middle.degree is None
        assert middle.dim == 0

    def test_user_supplied_star_is_echoed(self):
        link = smooth(
            "Z",
            dim=2,
            classes=[(0, "1"), (1, "a"), (1, "b"), (2, "vol")],
            star=[[0, -1], [1, 0]],
        )
        assert middle_structure(link) == link.middle

    def test_missing_star(self):
        with pytest.raises(PerversityError):
            middle_structure(torus(4))

    def test_star_sign_law(self):
        # k(l-k) is even for l = 4, so the star squares to +1
        MiddleStructure(link_dim=4, basis=("a", "b"), star=((0, 1), (1, 0)))
        with pytest.raises(ValidationError):
            MiddleStructure(link_dim=4, basis=("a", "b"), star=((0, -1), (1, 0)))
        with pytest.raises(ValidationError):
            MiddleStructure(link_dim=2, basis=("a", "b"), star=((1, 0), (0, 1)))

    def test_star_must_be_square(self):
        with pytest.raises(ValidationError):
            MiddleStructure(link_dim=2, basis=("a", "b"), star=((0, -1),))


class TestConstruction:
    def test_link_of_dimension_zero_is_rejected(self):
        with pytest.raises(SpaceValidationError):
            suspension(point())

    def test_odd_link_carries_zero_perversity(self):
        assert suspension(circle()).w.dim == 0
        with pytest.raises(SpaceValidationError):
            suspension(circle(), [[1]])

    def test_span_width_is_checked(self):
        with pytest.raises(SpaceValidationError):
            suspension(torus(2), [[1, 0, 0]])

    def test_dependent_rows_are_reduced(self):
        a = suspension(torus(2), [[1, 0], [2, 0]])
        b = suspension(torus(2), [[3, 0]])
        assert a.w.dim == 1
        assert a == b
        assert suspension(torus(2), [[2, 2], [1, -1]]).w.dim == 2

    def test_named_subspaces(self):
        assert suspension(torus(2), "full").w.dim == 2
        assert suspension(torus(2), "zero").w.dim == 0
        assert suspension(torus(2), {"span": [[1, 1]]}).w.span == ((1, 1),)

    def test_discs_only_as_factors(self):
        with pytest.raises(SpaceValidationError):
            product(disc(1), circle())
        with pytest.raises(SpaceValidationError):
            suspension(disc(2))

    def test_smooth_middle_must_match_basis(self):
        with pytest.raises(SpaceValidationError):
            smooth("Z", dim=2, classes=[(0, "1"), (1, "a")], middle_basis=["b"])

    def test_duplicate_labels(self):
        with pytest.raises(SpaceValidationError):
            smooth("Z", dim=2, classes=[(0, "1"), (2, "1")])


class TestWitt:
    def test_examples(self):
        assert witt_check(suspension(circle()))
        assert not witt_check(suspension(torus(2), [[1, 0]]))
        assert witt_check(product(suspension(circle()), circle()))
        assert witt_check(torus(2))

    def test_nested(self):
        # the outer link is odd, the inner one is not
        assert not witt_check(suspension(suspension(torus(2), [[1, 0]])))
        assert witt_check(suspension(suspension(sphere(2))))


class TestStrataAndDescribe:
    def test_strata_follow_node_paths(self):
        space = product(suspension(suspension(torus(2), [[1, 0]])), circle())
        info = strata(space)
        assert [(s.path, s.kind, s.depth) for s in info] == [
            ("left", "suspension", 0),
            ("left.link", "suspension", 1),
        ]
        assert [(s.link_dim, s.w_dim, s.middle_dim) for s in info] == [
            (3, 0, 0),
            (2, 1, 2),
        ]
        assert all(s.singular_points == 2 for s in info)
        assert strata(cone(torus(2)))[0].singular_points == 1

    def test_describe(self):
        assert describe(torus(2)) == "T^2"
        assert describe(circle()) == "S¹"
        assert describe(point()) == "pt"
        assert describe(suspension(torus(2), [[1, 0]])) == "Σ(T^2, dim W=1)"
        assert describe(cone(sphere(2))) == "C(S^2, dim W=0)"
        assert describe(product(circle(), sphere(3))) == "S¹ × S^3"
        assert describe(disc(3)) == "D^3"


class TestGrammar:
    def test_parse_suspension(self):
        space = parse_space(
            {"suspension": {"link": {"torus": 2}, "w": {"span": [[1, 0]]}}}
        )
        assert space == suspension(torus(2), [[1, 0]])

    def test_parse_products_and_strings(self):
        space = parse_space({"product": [{"circle": {}}, "point", {"sphere": 2}]})
        assert space == product(circle(), point(), sphere(2))
        assert parse_space(
            {"product": {"left": {"torus": 1}, "right": {"circle": {}}}}
        ) == product(torus(1), circle())

    def test_parse_smooth(self):
        space = parse_space(
            {
                "smooth": {
                    "name": "Z",
                    "dim": 2,
                    "classes": [[0, "1"], [1, "a"], [1, "b"], [2, "vol"]],
                    "middle": {"basis": ["a", "b"], "star": [[0, -1], [1, 0]]},
                }
            }
        )
        assert middle_structure(space).basis == ("a", "b")

    @pytest.mark.parametrize(
        "payload, where",
        [
            ({"cube": 3}, "space"),
            ({"torus": True}, "space.torus"),
            ({"torus": 0}, "space.torus"),
            (
                {"suspension": {"link": {"torus": 2}, "w": [[1, 0, 0]]}},
                "space.suspension.w",
            ),
            ({"suspension": {"link": {"point": {}}}}, "space.suspension.link"),
            ({"cone": {"link": {"circle": {}}, "v": []}}, "space.cone"),
            ({"product": [{"circle": {}}]}, "space.product"),
            ({"torus": 2, "circle": {}}, "space"),
        ],
    )
    def test_errors_carry_the_json_path(self, payload, where):
        with pytest.raises(SpaceValidationError) as error:
            parse_space(payload)
        assert str(error.value).startswith(where)

    @seed(SEED)
    @given(space=links)
    def test_dump_is_parseable(self, space):
        assert parse_space(dump_space(space)) == space
