from fractions import Fraction

import pytest

from algebra import (
    AlgebraError, LinComb, UnsupportedInputError, forests_up_to, parse_forest, parse_tree,
    trees_up_to,
)
from hairer_kelly import (
    EMPTY_TENSOR_WORD, TensorWord, cm_sigma, hk_flow_identity_residual, hk_psi, hk_psi_tilde,
    hk_psi_tilde_inv, project_forest, tensor_shuffle,
)


def tw(*texts):
    return TensorWord(tuple(parse_tree(t) for t in texts))


def forests(*pairs):
    return LinComb((parse_forest(text), c) for text, c in pairs)


class TestTensorWords:
    def test_letters_must_be_trees(self):
        with pytest.raises(AlgebraError):
            TensorWord(("o",))

    def test_str(self):
        assert str(EMPTY_TENSOR_WORD) == "e"
        assert str(tw("o", "o(o)")) == "o ⊗ o(o)"

    def test_shuffle(self):
        assert tensor_shuffle(tw("o"), tw("o(o)")) == LinComb([(tw("o", "o(o)"), 1), (tw("o(o)", "o"), 1)])


class TestPsi:
    def test_ladder(self):
        expected = LinComb([(tw("o(o(o))"), 1), (tw("o", "o(o)"), 1), (tw("o(o)", "o"), 1),
                            (tw("o", "o", "o"), 1)])
        assert hk_psi(parse_tree("o(o(o))")) == expected

    def test_cherry(self):
        expected = LinComb([(tw("o(o,o)"), 1), (tw("o", "o(o)"), 2), (tw("o", "o", "o"), 2)])
        assert hk_psi(parse_tree("o(o,o)")) == expected

    def test_unit(self):
        assert hk_psi(parse_forest("1")) == LinComb.of(EMPTY_TENSOR_WORD)

    def test_decorated_input_rejected(self):
        with pytest.raises(UnsupportedInputError):
            hk_psi(parse_tree("a(b)"))
        with pytest.raises(UnsupportedInputError):
            hk_psi_tilde(parse_tree("a"))

    def test_shuffle_morphism(self):
        f, g = parse_forest("o(o)"), parse_forest("o")
        assert hk_psi(f * g) == tensor_shuffle(hk_psi(f), hk_psi(g))

    @pytest.mark.parametrize("t", trees_up_to(5), ids=str)
    def test_projection_is_symmetrisation(self, t):
        assert hk_psi(t).map_basis(project_forest) == hk_psi_tilde(t)


class TestSymmetrised:
    def test_cherry(self):
        expected = forests(("o(o,o)", 1), ("o o(o)", 2), ("o o o", 2))
        assert hk_psi_tilde(parse_tree("o(o,o)")) == expected

    def test_inverse_on_ladder(self):
        assert hk_psi_tilde_inv(parse_tree("o(o)")) == forests(("o(o)", 1), ("o o", Fraction(-1, 2)))

    def test_cm_sigma(self):
        assert cm_sigma(parse_tree("o(o,o)")) == 2
        assert cm_sigma(parse_tree("o(o(o))")) == 1

    @pytest.mark.parametrize("f", [f for f in forests_up_to(4) if f.trees], ids=str)
    def test_inverse_pair(self, f):
        assert hk_psi_tilde(hk_psi_tilde_inv(f)) == LinComb.of(f)
        assert hk_psi_tilde_inv(hk_psi_tilde(f)) == LinComb.of(f)


class TestFlowIdentity:
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_residual_vanishes(self, n):
        assert hk_flow_identity_residual(n) == 0

    def test_bound(self):
        with pytest.raises(AlgebraError):
            hk_flow_identity_residual(0)
