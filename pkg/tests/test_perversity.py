import pytest
from hypothesis import given, seed
from hypothesis import strategies as st

from strata_morse.exceptions import PerversityError
from strata_morse.topology import (
    MiddleStructure,
    Subspace,
    circle,
    dual,
    is_self_dual,
    is_self_dual_space,
    link_ambient,
    middle_structure,
    orthocomplement,
    product,
    star_image,
    subspace_label,
    suspension,
    torus,
    transform_perversity,
)
from tests.strategies import SEED, T2_LINES, suspension_spaces

T2 = middle_structure(torus(2))


def span(*rows) -> Subspace:
    return Subspace(ambient=T2, span=rows)


t2_vectors = st.tuples(
    st.integers(min_value=-5, max_value=5), st.integers(min_value=-5, max_value=5)
).filter(any)

t2_subspaces = st.lists(t2_vectors, max_size=2).map(lambda rows: span(*rows))


class TestLinearAlgebra:
    def test_orthocomplement(self):
        assert orthocomplement(span((1, 0))) == span((0, 1))
        assert orthocomplement(span((1, 1))) == span((1, -1))
        assert orthocomplement(Subspace.zero(T2)) == Subspace.full(T2)
        assert orthocomplement(Subspace.full(T2)) == Subspace.zero(T2)

    def test_star_image(self):
        assert star_image(span((1, 0))) == span((0, 1))
        assert star_image(span((1, 1))) == span((-1, 1))
        assert star_image(Subspace.zero(T2)) == Subspace.zero(T2)

    def test_star_needs_a_star(self):
        ambient = suspension(torus(4)).w.ambient
        with pytest.raises(PerversityError):
            star_image(Subspace.full(ambient))

    def test_canonical_form(self):
        assert span((2, 0)) == span((1, 0))
        assert span((1, 1), (1, -1)) == Subspace.full(T2)
        assert span((2, 4)).span == ((1, 2),)

    def test_labels(self):
        assert subspace_label(span((1, -1))) == ["dθ1-dθ2"]
        assert subspace_label(span((1, 2))) == ["dθ1+2dθ2"]
        assert subspace_label(Subspace.full(T2)) == ["dθ1", "dθ2"]
        assert subspace_label(Subspace.zero(T2)) == []


class TestDuality:
    @pytest.mark.parametrize("line", T2_LINES)
    def test_every_line_in_the_torus_is_self_dual(self, line):
        assert is_self_dual(span(line))

    def test_zero_and_full_are_swapped(self):
        assert dual(Subspace.zero(T2)) == Subspace.full(T2)
        assert dual(Subspace.full(T2)) == Subspace.zero(T2)
        assert not is_self_dual(Subspace.zero(T2))

    @seed(SEED)
    @given(w=t2_subspaces)
    def test_dual_is_an_involution(self, w):
        assert dual(dual(w)) == w
        assert orthocomplement(orthocomplement(w)) == w
        assert dual(w).dim == T2.dim - w.dim

    @seed(SEED)
    @given(v=t2_vectors)
    def test_star_rotates(self, v):
        image = star_image(span(v))
        assert image == orthocomplement(span(v))


class TestSelfDualSpaces:
    def test_examples(self):
        assert is_self_dual_space(suspension(torus(2), [[1, 0]]))
        assert is_self_dual_space(suspension(torus(2), [[1, 1]]))
        assert is_self_dual_space(suspension(circle()))
        assert is_self_dual_space(torus(2))
        assert not is_self_dual_space(suspension(torus(2)))
        assert not is_self_dual_space(suspension(torus(2), "full"))

    def test_missing_star_means_not_self_dual(self):
        assert not is_self_dual_space(suspension(torus(4)))

    def test_one_bad_stratum_is_enough(self):
        space = product(suspension(torus(2), [[1, 0]]), suspension(torus(2)))
        assert not is_self_dual_space(space)


class TestTransform:
    def test_adjoint(self):
        space = transform_perversity(suspension(torus(2), [[1, 0]]), "adjoint")
        assert space == suspension(torus(2), [[0, 1]])

    def test_poincare_dual_fixes_self_dual_perversities(self):
        space = suspension(torus(2), [[1, 1]])
        assert transform_perversity(space, "poincare_dual") == space

    def test_poincare_dual_needs_a_star(self):
        with pytest.raises(PerversityError):
            transform_perversity(suspension(torus(4)), "poincare_dual")

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            transform_perversity(torus(2), "inverse")

    def test_nested_links_are_rebased(self):
        inner = suspension(torus(2), [[1, 0]])
        space = suspension(product(inner, circle()))
        transformed = transform_perversity(space, "adjoint")
        assert transformed.link.left == suspension(torus(2), [[0, 1]])
        assert transformed.w.dim == transformed.w.ambient.dim == 2
        assert transformed.w.ambient == link_ambient(transformed.link)

    def test_rebase_follows_matching_labels(self):
        xy = MiddleStructure(link_dim=2, basis=("x", "y"))
        yx = MiddleStructure(link_dim=2, basis=("y", "x"))
        w = Subspace(ambient=xy, span=[(1, 0)])
        rebased = w.rebase(yx)
        assert rebased == Subspace(ambient=yx, span=[(0, 1)])
        assert subspace_label(rebased) == subspace_label(w) == ["x"]

    def test_rebase_falls_back_to_position(self):
        xy = MiddleStructure(link_dim=2, basis=("x", "y"))
        pq = MiddleStructure(link_dim=2, basis=("p", "q"))
        rebased = Subspace(ambient=xy, span=[(1, 0)]).rebase(pq)
        assert subspace_label(rebased) == ["p"]

    @seed(SEED)
    @given(space=suspension_spaces)
    def test_adjoint_is_an_involution(self, space):
        twice = transform_perversity(transform_perversity(space, "adjoint"), "adjoint")
        assert twice == space

    @seed(SEED)
    @given(space=suspension_spaces)
    def test_adjoint_complements_dimensions(self, space):
        adjoint = transform_perversity(space, "adjoint")
        assert adjoint.w.dim == space.w.ambient.dim - space.w.dim
        assert adjoint.w.ambient.dim == space.w.ambient.dim
