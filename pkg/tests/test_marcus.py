from fractions import Fraction

import pytest

from algebra import (
    AlgebraError, LinComb, SemigroupElement, Tree, ladder_tree, parse_forest, parse_lincomb, vertex,
)
from arborification import arbo_hoffman_adjoint
from marcus import (
    DIFFUSION, DRIFT, marcus_label, marcus_letter, marcus_modified_field, marcus_specialise,
)
from prelie import graft

b = vertex(DIFFUSION)


def test_letters():
    assert marcus_letter(0) == DRIFT
    assert marcus_letter(1) == DIFFUSION
    assert marcus_letter(3) == SemigroupElement(("1", "1", "1"))
    assert marcus_label(marcus_letter(3)) == "3"
    assert marcus_label(DRIFT) == "0"
    with pytest.raises(AlgebraError):
        marcus_letter(-1)


class TestModifiedField:
    def test_low_orders(self):
        field = marcus_modified_field(3)
        assert field[DRIFT] == LinComb.of(vertex(DRIFT))
        assert field[marcus_letter(1)] == LinComb.of(b)
        assert field[marcus_letter(2)] == Fraction(1, 2) * graft(b, b)
        cherry = Tree(DIFFUSION, (b, b))
        assert field[marcus_letter(3)] == Fraction(1, 6) * (LinComb.of(cherry) + LinComb.of(ladder_tree("111")))

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_arborified_adjoint(self, n):
        field = marcus_modified_field(n)
        adjoint = arbo_hoffman_adjoint(marcus_letter(n), n).filter(lambda t: t.size == n)
        assert adjoint == field[marcus_letter(n)]

    def test_bound(self):
        with pytest.raises(AlgebraError):
            marcus_modified_field(0)


class TestSpecialise:
    def test_wiener(self):
        field = marcus_specialise(marcus_modified_field(4), "wiener")
        assert set(field) == {DRIFT, DIFFUSION}
        assert field[DRIFT] == LinComb.of(vertex(DRIFT)) + Fraction(1, 2) * graft(b, b)
        assert field[DIFFUSION] == LinComb.of(b)

    def test_poisson(self):
        field = marcus_specialise(marcus_modified_field(3), "poisson")
        cherry = Tree(DIFFUSION, (b, b))
        expected = (LinComb.of(b) + Fraction(1, 2) * graft(b, b)
                    + Fraction(1, 6) * (LinComb.of(cherry) + LinComb.of(ladder_tree("111"))))
        assert field[DIFFUSION] == expected
        assert field[DRIFT] == LinComb.of(vertex(DRIFT))

    def test_unknown_noise(self):
        with pytest.raises(AlgebraError):
            marcus_specialise(marcus_modified_field(2), "levy")


def test_printed_field_parses_back():
    field = marcus_modified_field(3)
    for value in field.values():
        assert parse_lincomb(str(value), parse_forest).map_basis(lambda f: f.trees[0]) == value
    assert str(field[DIFFUSION]) == "1 * [1]"
