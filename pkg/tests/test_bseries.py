from fractions import Fraction
from math import factorial

import numpy as np
import pytest

from algebra import (
    AlgebraError, LinComb, ParseError, UnsupportedInputError, parse_tree, trees_up_to, vertex,
)
from bseries import (
    PolyVectorField, bseries_truncated, elementary_differential, elementary_differential_lin,
    exact_flow_coefficients, field_prelie, parse_field, random_quadratic_field, substitute_field,
    substitution_law_residual,
)
from prelie import graft
from substitution import inv_tree_factorial_char, random_character, tree_character

Y = parse_field("y")
Y2 = parse_field("y^2")


class TestFields:
    def test_parse(self):
        f = parse_field("x1*x2 + 1/2; x1^2")
        assert f.dimension == 2
        assert f == parse_field("1/2 + x2*x1; x1**2")

    def test_parse_errors(self):
        with pytest.raises(ParseError):
            parse_field("z^2")
        with pytest.raises(ParseError):
            parse_field("1/x1")
        with pytest.raises(ParseError):
            parse_field("x1;")

    def test_dimension_mismatch(self):
        with pytest.raises(AlgebraError):
            Y + parse_field("x1; x2")

    def test_prelie_product(self):
        assert field_prelie(Y2, Y2) == parse_field("2*y^3")

    def test_elementary_differentials(self):
        assert elementary_differential(Y2, parse_tree("o(o,o)")) == parse_field("2*y^4")
        assert elementary_differential(Y2, parse_tree("o(o(o))")) == parse_field("4*y^4")

    def test_letters_need_fields(self):
        with pytest.raises(UnsupportedInputError):
            elementary_differential({"a": Y}, parse_tree("a(b)"))

    def test_random_field_is_seeded(self):
        a = random_quadratic_field(np.random.default_rng(1), 2)
        b = random_quadratic_field(np.random.default_rng(1), 2)
        assert a == b
        assert a.dimension == 2


def test_elementary_differentials_are_prelie():
    f = random_quadratic_field(np.random.default_rng(4), 2)
    for s in trees_up_to(2):
        for t in trees_up_to(3):
            lhs = elementary_differential_lin(f, graft(s, t))
            rhs = field_prelie(elementary_differential(f, s), elementary_differential(f, t))
            assert lhs == rhs


class TestFlow:
    def test_linear_flow(self):
        coeffs = bseries_truncated(inv_tree_factorial_char(), Y, 4, [1])
        assert coeffs == [[Fraction(1, factorial(k))] for k in range(5)]

    def test_quadratic_flow(self):
        coeffs = bseries_truncated(inv_tree_factorial_char(), Y2, 4, [1])
        assert coeffs == [[Fraction(1)]] * 5

    def test_exact_flow_oracle(self):
        f = parse_field("x2; -x1 + x1^2")
        y0 = [Fraction(1, 2), 1]
        assert bseries_truncated(inv_tree_factorial_char(), f, 4, y0) == exact_flow_coefficients(f, 4, y0)

    def test_decorated_fields(self):
        fields = {"a": parse_field("1; 0"), "b": parse_field("0; x1")}
        coeffs = bseries_truncated(inv_tree_factorial_char(), fields, 2, [0, 0])
        # a alone moves x1 by h; b(a) contributes h^2/2 to x2
        assert coeffs[1] == [Fraction(1), Fraction(0)]
        assert coeffs[2] == [Fraction(0), Fraction(1, 2)]


class TestSubstitution:
    def test_modified_field(self):
        ftilde = substitute_field(inv_tree_factorial_char(), Y2, 2)
        assert ftilde.coefficient(0) == Y2
        assert ftilde.coefficient(1) == parse_field("y^3")

    def test_needs_unit_on_vertex(self):
        with pytest.raises(AlgebraError):
            substitute_field(tree_character({vertex("o"): 2}), Y2, 3)

    @pytest.mark.parametrize("order", [0, -1])
    def test_order_must_be_positive(self, order):
        with pytest.raises(AlgebraError, match="order >= 1"):
            substitute_field(inv_tree_factorial_char(), Y2, order)

    def test_order_one_is_the_field(self):
        ftilde = substitute_field(inv_tree_factorial_char(), Y2, 1)
        assert ftilde.coefficient(0) == Y2
        assert ftilde.as_field() == Y2

    def test_single_field_only(self):
        with pytest.raises(UnsupportedInputError):
            substitute_field(inv_tree_factorial_char(), {"a": Y2}, 3)

    def test_law_for_inverse_factorial(self):
        v = inv_tree_factorial_char()
        assert substitution_law_residual(v, v, Y2, 4, [1]) == 0

    def test_law_for_random_pairs(self):
        rng = np.random.default_rng(17)
        for _ in range(3):
            a, b = random_character(rng, 3), random_character(rng, 3)
            assert substitution_law_residual(a, b, Y2, 3, [Fraction(1, 3)]) == 0

    def test_law_in_two_dimensions(self):
        f = parse_field("x2; x1*x2 - 1")
        v = inv_tree_factorial_char()
        assert substitution_law_residual(v, v, f, 3, [1, 2]) == 0
