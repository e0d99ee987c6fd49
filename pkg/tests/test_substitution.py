from fractions import Fraction

import numpy as np
import pytest

from algebra import (
    UNDECORATED, UNIT, AlgebraError, DegreeBoundError, Forest, LinComb, Tensor, forests_up_to,
    ladder_tree, parse_forest, parse_tree, trees_up_to,
)
from substitution import (
    PlusCharacter, coaction, convolution_character, convolve_plus, inv_tree_factorial_char,
    invert_character, ladder_sub_coproduct, plus_action, pseudo_antipode_inverse, psi_v,
    random_character, sub_coassociativity_defect, sub_coproduct, tree_character, unit_character,
)
import bck


def sub_terms(*pairs):
    return LinComb((Tensor(parse_forest(left), parse_tree(right)), c) for left, right, c in pairs)


def forests(*pairs):
    return LinComb((parse_forest(text), c) for text, c in pairs)


class TestCoproduct:
    def test_single_vertex(self):
        assert sub_coproduct(parse_tree("a")) == sub_terms(("a", "a", 1))

    def test_two_vertices(self):
        assert sub_coproduct(parse_tree("a(b)")) == sub_terms(("a b", "a(b)", 1), ("a(b)", "[a b]", 1))

    def test_three_vertex_cherry(self):
        expected = sub_terms(("o o o", "o(o,o)", 1), ("o(o) o", "o(o)", 2), ("o(o,o)", "o", 1))
        assert sub_coproduct(parse_tree("o(o,o)"), UNDECORATED) == expected

    def test_three_vertex_ladder(self):
        expected = sub_terms(("a b c", "a(b(c))", 1), ("a(b) c", "[a b](c)", 1),
                             ("a b(c)", "a([b c])", 1), ("a(b(c))", "[a b c]", 1))
        assert sub_coproduct(parse_tree("a(b(c))")) == expected
        assert ladder_sub_coproduct("abc") == expected

    @pytest.mark.parametrize("t", trees_up_to(4, ("a", "b")), ids=str)
    def test_coassociative_and_graded(self, t):
        assert sub_coassociativity_defect(t) == 0
        for x in sub_coproduct(t).bases():
            assert x.left.edges + x.right.edges == t.edges
            assert x.left.weight == x.right.weight == t.weight

    def test_coaction_unit(self):
        assert coaction(UNIT) == LinComb.of(Tensor(UNIT, UNIT))

    def test_coaction_multiplicative(self):
        x = coaction(parse_forest("a b"))
        assert x == LinComb.of(Tensor(parse_forest("a b"), parse_forest("a b")))


class TestCharacters:
    def test_lookup_order(self):
        v = PlusCharacter({parse_tree("o(o)"): 3}, rule=lambda t: 7)
        assert v(parse_tree("o")) == 1
        assert v(parse_tree("o(o)")) == 3
        assert v(parse_tree("o(o,o)")) == 7
        assert unit_character()(parse_tree("o(o)")) == 0

    def test_forests_are_multiplicative(self):
        v = tree_character({parse_tree("o(o)"): Fraction(1, 2)})
        assert v(parse_forest("o(o) o(o) o")) == Fraction(1, 4)
        assert v(UNIT) == 1

    def test_degree_bound(self):
        v = tree_character({}, degree_bound=2)
        with pytest.raises(DegreeBoundError):
            v(parse_tree("o(o,o)"))

    def test_forest_values_rejected(self):
        with pytest.raises(AlgebraError):
            tree_character({parse_forest("o o"): 1})

    def test_inverse_factorial(self):
        v = inv_tree_factorial_char()
        assert v(parse_tree("o(o,o)")) == Fraction(1, 3)
        assert v(ladder_tree("ooo")) == Fraction(1, 6)


class TestPsi:
    def test_ladder(self):
        v = inv_tree_factorial_char()
        assert psi_v(v, parse_tree("o(o)"), UNDECORATED) == forests(("o(o)", 1), ("o", Fraction(1, 2)))

    def test_cherry(self):
        v = inv_tree_factorial_char()
        expected = forests(("o(o,o)", 1), ("o(o)", 1), ("o", Fraction(1, 3)))
        assert psi_v(v, parse_tree("o(o,o)"), UNDECORATED) == expected

    def test_decorated_cherry(self):
        v = inv_tree_factorial_char()
        expected = forests(("a(b,c)", 1), ("[a b](c)", Fraction(1, 2)), ("[a c](b)", Fraction(1, 2)),
                           ("[a b c]", Fraction(1, 3)))
        assert psi_v(v, parse_tree("a(b,c)")) == expected

    def test_unit_character_is_identity(self):
        f = parse_forest("a(b,c) b(a)")
        assert psi_v(unit_character(), f) == LinComb.of(f)

    def test_convolution_on_ladder(self):
        v = inv_tree_factorial_char()
        assert convolve_plus(v, v, parse_tree("o(o)"), UNDECORATED) == 1

    def test_composition_rule(self):
        rng = np.random.default_rng(11)
        u = random_character(rng, 3, ("a", "b"))
        v = random_character(rng, 3, ("a", "b"))
        vu = convolution_character(v, u)
        for f in forests_up_to(3, ("a", "b")):
            assert psi_v(u, psi_v(v, f)) == psi_v(vu, f)


class TestInverse:
    def test_ladder_value(self):
        v_inv = invert_character(inv_tree_factorial_char(), semigroup=UNDECORATED)
        assert v_inv(parse_tree("o(o)")) == Fraction(-1, 2)
        assert v_inv(parse_tree("o")) == 1

    def test_inverse_renormalises(self):
        v = inv_tree_factorial_char()
        v_inv = invert_character(v)
        for f in forests_up_to(3, ("a", "b")):
            assert psi_v(v_inv, psi_v(v, f)) == LinComb.of(f)

    def test_matches_pseudo_antipode(self):
        rng = np.random.default_rng(5)
        v = random_character(rng, 4)
        a = invert_character(v, semigroup=UNDECORATED)
        b = pseudo_antipode_inverse(v, semigroup=UNDECORATED)
        for t in trees_up_to(4):
            assert a(t) == b(t)

    def test_needs_unit_on_singletons(self):
        v = tree_character({parse_tree("o"): 2})
        with pytest.raises(AlgebraError):
            invert_character(v, semigroup=UNDECORATED)(parse_tree("o(o)"))

    def test_rejects_bad_singleton_before_solving(self):
        v = tree_character({parse_tree("a"): Fraction(1, 2), parse_tree("a(b)"): 3})
        with pytest.raises(AlgebraError, match="single vertices"):
            invert_character(v)
        with pytest.raises(AlgebraError, match="single vertices"):
            pseudo_antipode_inverse(v)


def test_mixed_action_on_bck_functionals():
    """φ ⊛ (b ∗ c) = (φ ⊛ b) ∗ (φ ⊛ c)"""
    rng = np.random.default_rng(3)
    phi = random_character(rng, 3)
    b = bck.general({f: i + 1 for i, f in enumerate(forests_up_to(3))}, 3)
    c = bck.general({f: (-1) ** i for i, f in enumerate(forests_up_to(3))}, 3)
    bc = bck.convolution_functional(b, c, 3)
    phib, phic = plus_action(phi, b, UNDECORATED), plus_action(phi, c, UNDECORATED)
    for f in forests_up_to(3):
        rhs = sum((k * phib(t.left) * phic(t.right) for t, k in bck.bck_coproduct(f).items()), Fraction(0))
        assert plus_action(phi, bc, UNDECORATED)(f) == rhs
