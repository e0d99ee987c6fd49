from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from algebra import (
    AlgebraError, LinComb, UnsupportedInputError, cm, enumerate_trees, parse_forest,
    parse_tree, trees_up_to, vertex,
)
from prelie import (
    associator, forest_graft, forest_graft_direct, gl_product, gl_product_all, graft,
    is_prelie_morphism_on, left_power, prelie_extend,
)

o = vertex("o")
SMALL_TREES = trees_up_to(3, ("a", "b"))


def trees(*texts):
    return LinComb((parse_tree(t), 1) for t in texts)


class TestGrafting:
    def test_graft_onto_ladder(self):
        assert graft(o, parse_tree("o(o)")) == trees("o(o,o)", "o(o(o))")

    def test_graft_is_bilinear(self):
        x = LinComb.of(o) + LinComb.of(parse_tree("o(o)"))
        assert graft(x, o) == graft(o, o) + graft(parse_tree("o(o)"), o)

    def test_left_powers(self):
        assert left_power(o, o, 2) == trees("o(o,o)", "o(o(o))")
        l3 = left_power(o, o, 3)
        assert l3.coefficient(parse_tree("o(o,o(o))")) == 3
        assert l3 == LinComb((t, cm(t)) for t in enumerate_trees(4))

    def test_left_power_negative(self):
        with pytest.raises(AlgebraError):
            left_power(o, o, -1)

    @pytest.mark.parametrize("forest,tree", [("a", "b"), ("a b", "c(d)"), ("a a", "b(b)"), ("a(b) c", "d(e,f)")])
    def test_forest_graft_matches_direct_placement(self, forest, tree):
        f, t = parse_forest(forest), parse_tree(tree)
        assert forest_graft(f, t) == forest_graft_direct(f, t)

    def test_empty_forest_graft(self):
        t = parse_tree("a(b)")
        assert forest_graft(parse_forest("1"), t) == LinComb.of(t)


@settings(deadline=None, max_examples=30)
@given(st.sampled_from(SMALL_TREES), st.sampled_from(SMALL_TREES), st.sampled_from(SMALL_TREES))
def test_left_prelie_identity(x, y, z):
    assert associator(x, y, z) == associator(y, x, z)


class TestGrossmanLarson:
    def test_two_vertices(self):
        expected = LinComb([(parse_forest("a b"), 1), (parse_forest("b(a)"), 1)])
        assert gl_product(vertex("a"), vertex("b")) == expected

    def test_unit(self):
        f = parse_forest("a(b) c")
        assert gl_product(parse_forest("1"), f) == LinComb.of(f)
        assert gl_product(f, parse_forest("1")) == LinComb.of(f)

    def test_associative(self):
        a, b, c = parse_forest("a"), parse_forest("b(a)"), parse_forest("a b")
        assert gl_product(gl_product(a, b), c) == gl_product(a, gl_product(b, c))
        assert gl_product_all([a, b, c]) == gl_product(gl_product(a, b), c)


class TestExtension:
    def test_identity_assignment(self):
        t = parse_tree("o(o,o(o))")
        assert prelie_extend({"o": o}, t) == LinComb.of(t)

    def test_morphism(self):
        a = vertex("a")
        assignment = {"a": LinComb.of(a) + Fraction(1, 2) * graft(a, a)}
        assert is_prelie_morphism_on(assignment, a, parse_tree("a(a)"))

    def test_missing_letter(self):
        with pytest.raises(UnsupportedInputError):
            prelie_extend({"a": vertex("a")}, parse_tree("a(b)"))
