from fractions import Fraction

import numpy as np
import pytest

from algebra import (
    UNDECORATED, AlgebraError, LinComb, SemigroupElement, Tensor, UnsupportedInputError,
    forests_up_to, parse_forest, parse_lincomb, parse_tree, parse_word, trees_up_to,
)
from arborification import (
    arbo_hoffman_adjoint, arbo_hoffman_adjoint_extend, arbo_hoffman_exp, arborify,
    arborify_by_cuts, contract_arborify, flow_adjoint_residual, flow_truncation, is_ladder,
    ladder, ladder_character, ladder_word,
)
from qshuffle import PowerSeries, hoffman_exp, psi_series
from substitution import (
    inv_tree_factorial_char, psi_v, random_character, tree_character, unit_character,
)


def words(text):
    return parse_lincomb(text, parse_word)


def trees(text):
    return parse_lincomb(text, parse_tree)


class TestArborify:
    def test_root_letter_comes_last(self):
        assert arborify(parse_tree("a(b)")) == words("1 * b.a")

    def test_cherry(self):
        assert arborify(parse_tree("a(b,c)")) == words("1 * b.c.a + 1 * c.b.a")
        assert contract_arborify(parse_tree("a(b,c)")) == words("1 * b.c.a + 1 * c.b.a + 1 * [b c].a")

    def test_forest_is_shuffled(self):
        assert arborify(parse_forest("a b")) == words("1 * a.b + 1 * b.a")
        assert arborify(parse_forest("1")) == words("1 * e")

    @pytest.mark.parametrize("f", forests_up_to(3, ("a", "b")), ids=str)
    def test_by_cuts(self, f):
        assert arborify_by_cuts(f) == arborify(f)
        assert arborify_by_cuts(f, contract=True) == contract_arborify(f)


class TestHoffmanDiagram:
    def test_cherry_display(self):
        image = arbo_hoffman_exp(parse_tree("a(b,c)"))
        expected = words("1 * b.c.a + 1 * c.b.a + 1 * [b c].a + 1/2 * c.[a b] + 1/2 * b.[a c] + 1/3 * [a b c]")
        assert contract_arborify(image) == expected

    @pytest.mark.parametrize("t", trees_up_to(4, ("a", "b")), ids=str)
    def test_contracted_arborification_intertwines(self, t):
        assert contract_arborify(arbo_hoffman_exp(t)) == hoffman_exp(arborify(t))

    def test_table_semigroup(self):
        t = parse_tree("o(o,o(o))")
        assert (contract_arborify(arbo_hoffman_exp(t, UNDECORATED), UNDECORATED)
                == hoffman_exp(arborify(t, UNDECORATED), UNDECORATED))


class TestAdjoint:
    def test_undecorated_generator(self):
        image = arbo_hoffman_adjoint("o", 4, UNDECORATED)
        assert image.coefficient(parse_tree("o")) == 1
        assert image.coefficient(parse_tree("o(o)")) == Fraction(1, 2)
        assert image.coefficient(parse_tree("o(o,o)")) == Fraction(1, 6)
        assert image.coefficient(parse_tree("o(o(o))")) == Fraction(1, 6)
        assert image.coefficient(parse_tree("o(o,o(o))")) == Fraction(1, 8)
        assert image.coefficient(parse_tree("o(o(o(o)))")) == Fraction(1, 24)

    def test_bracket_generator(self):
        image = arbo_hoffman_adjoint(SemigroupElement(("a", "b")), 2)
        assert image == trees("1 * [a b] + 1/2 * a(b) + 1/2 * b(a)")

    def test_bound(self):
        with pytest.raises(AlgebraError):
            arbo_hoffman_adjoint("o", 0)

    def test_extension_on_single_vertex(self):
        assert arbo_hoffman_adjoint_extend(parse_tree("a"), 1) == trees("1 * a")

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_flow_adjoint(self, n):
        assert flow_adjoint_residual(inv_tree_factorial_char(), n, ("a", "b")) == 0
        assert flow_adjoint_residual(unit_character(), n, ("a",)) == 0

    def test_flow_adjoint_random(self):
        rng = np.random.default_rng(8)
        a = random_character(rng, 3, ("a", "b"))
        assert flow_adjoint_residual(a, 3, ("a", "b")) == 0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_flow_adjoint_undecorated(self, n):
        assert flow_adjoint_residual(inv_tree_factorial_char(), n, ("o",), UNDECORATED) == 0
        assert flow_adjoint_residual(unit_character(), n, ("o",), UNDECORATED) == 0

    def test_flow_adjoint_undecorated_random(self):
        rng = np.random.default_rng(13)
        a = random_character(rng, 4)
        assert flow_adjoint_residual(a, 4, ("o",), UNDECORATED) == 0

    def test_flow_adjoint_undecorated_contracts(self):
        """Ψ_a shrinks trees here, so g(•) must carry the matching ½ •(•) term"""
        a = inv_tree_factorial_char()
        assert psi_v(a, parse_tree("o(o)"), UNDECORATED) == parse_lincomb("1/2 * o + 1 * o(o)", parse_forest)
        assert flow_adjoint_residual(tree_character({parse_tree("o(o)"): 3}), 3, ("o",), UNDECORATED) == 0

    def test_flow_truncation(self):
        expected = LinComb([(Tensor(parse_forest("o"), parse_forest("o")), 1),
                            (Tensor(parse_forest("o(o)"), parse_forest("o(o)")), 1)])
        assert flow_truncation(2) == expected


class TestLadders:
    def test_first_letter_is_the_leaf(self):
        t = ladder(parse_word("a.b.c"))
        assert t == parse_tree("c(b(a))")
        assert arborify(t) == words("1 * a.b.c")
        assert ladder_word(t) == parse_word("a.b.c")

    def test_is_ladder(self):
        assert is_ladder(parse_tree("a(b(c))"))
        assert not is_ladder(parse_tree("a(b,c)"))
        with pytest.raises(UnsupportedInputError):
            ladder_word(parse_tree("a(b,c)"))

    def test_ladder_character_gives_psi_series(self):
        f = PowerSeries.from_list([1, Fraction(2, 3), Fraction(-1, 2)])
        v = ladder_character(f)
        assert v(parse_tree("a(b,c)")) == 0
        for w in ("a.b", "a.b.a", "b.a.b"):
            word = parse_word(w)
            image = psi_v(v, ladder(word)).map_basis(ladder_word)
            assert image == psi_series(f, word)
