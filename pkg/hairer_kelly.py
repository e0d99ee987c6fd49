"""Hairer-Kelly map into tensor words over trees, its symmetrisation and inverse"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from algebra import (
    UNDECORATED, UNIT, AlgebraError, Forest, LinComb, Tensor, Tree,
    UnsupportedInputError, as_lincomb, enumerate_forests, enumerate_trees,
    forest_sigma, is_undecorated, tree_factorial, tree_sigma,
)
from bck import bck_coproduct
from prelie import gl_product_all
from qshuffle import shuffle_sequences
from substitution import sub_coproduct

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TensorWord:
    """τ_1 ⊗ ⋯ ⊗ τ_n, letters are trees"""
    letters: tuple = ()

    def __post_init__(self):
        for t in self.letters:
            if not isinstance(t, Tree):
                raise AlgebraError(f"tensor word letters must be trees, got {t!r}")
        object.__setattr__(self, 'key', (len(self.letters), tuple(t.key for t in self.letters)))
        object.__setattr__(self, '_hash', hash(self.key))

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return isinstance(other, TensorWord) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        if not self.letters:
            return "e"
        return " ⊗ ".join(str(t) for t in self.letters)

    __repr__ = __str__


EMPTY_TENSOR_WORD = TensorWord()


def _require_undecorated(x):
    trees = [x] if isinstance(x, Tree) else list(x.trees)
    for t in trees:
        if not is_undecorated(t):
            raise UnsupportedInputError(f"Hairer-Kelly maps are defined on undecorated trees, got {t}")


def _as_forest(x):
    return Forest.of(x) if isinstance(x, Tree) else x


def tensor_shuffle(a, b):
    """Shuffle of two combinations of tensor words"""
    a, b = as_lincomb(a), as_lincomb(b)
    terms = []
    for u, cu in a.items():
        for v, cv in b.items():
            for seq, m in shuffle_sequences(u.letters, v.letters).items():
                terms.append((TensorWord(seq), cu * cv * m))
    return LinComb(terms)


@lru_cache(maxsize=None)
def _hk_psi_forest(f):
    if not f.trees:
        return LinComb.of(EMPTY_TENSOR_WORD)
    if len(f.trees) > 1:
        out = LinComb.of(EMPTY_TENSOR_WORD)
        for t in f.trees:
            out = tensor_shuffle(out, _hk_psi_forest(Forest.of(t)))
        return out
    parts = []
    # ψ(τ) = (ψ ⊗ γ)Δ(τ), γ = id − ηε drops the right leg 1
    for ten, c in bck_coproduct(f).items():
        if not ten.right.trees:
            continue
        if len(ten.right.trees) != 1:
            raise AlgebraError(f"right leg {ten.right} of a tree coproduct is not a tree")
        last = ten.right.trees[0]
        parts.append(c * _hk_psi_forest(ten.left).map_basis(
            lambda w, last=last: TensorWord(w.letters + (last,))))
    return LinComb.sum(parts)


def hk_psi(x):
    """ψ: BCK forests → shuffle algebra of tensor words over trees"""
    def one(f):
        f = _as_forest(f)
        _require_undecorated(f)
        return _hk_psi_forest(f)
    return as_lincomb(x).map(one)


def project_forest(w):
    """π: τ_1 ⊗ ⋯ ⊗ τ_n ↦ τ_1⋯τ_n"""
    if isinstance(w, TensorWord):
        return Forest(w.letters)
    return as_lincomb(w).map_basis(lambda x: Forest(x.letters))


def cm_sigma(s):
    """(cm·σ)(s) = |s|!/s!"""
    return Fraction(factorial(s.size), tree_factorial(s))


def _component_scale(combination, power):
    return LinComb((f, c * Fraction(factorial(len(f.trees))) ** power) for f, c in combination.items())


@lru_cache(maxsize=None)
def _psi_tilde_tree(t):
    return LinComb((x.left, c * cm_sigma(x.right)) for x, c in sub_coproduct(t, UNDECORATED).items())


def _multiplicative(f, per_tree):
    out = LinComb.of(UNIT)
    for t in f.trees:
        image = _component_scale(per_tree(t), -1)
        out = LinComb.sum(ca * cb * LinComb.of(a * b)
                          for a, ca in out.items() for b, cb in image.items())
    return out


def hk_psi_tilde(x):
    """ψ̃ = π∘ψ: on trees Σ F̄ (cm·σ)(t/F̄); on forests D∘Π(D⁻¹ψ̃(τ_i)), D(F) = k!·F for k trees"""
    def one(f):
        f = _as_forest(f)
        _require_undecorated(f)
        if len(f.trees) == 1:
            return _psi_tilde_tree(f.trees[0])
        return _component_scale(_multiplicative(f, _psi_tilde_tree), 1)
    return as_lincomb(x).map(one)


@lru_cache(maxsize=None)
def _psi_tilde_inv_tree(t):
    out = LinComb.of(Forest.of(t))
    whole = Forest.of(t)
    for x, c in sub_coproduct(t, UNDECORATED).items():
        if x.left == whole:
            continue
        out = out - c * cm_sigma(x.right) * _psi_tilde_inv_forest(x.left)
    return out


def _psi_tilde_inv_forest(f):
    if len(f.trees) == 1:
        return _psi_tilde_inv_tree(f.trees[0])
    # ψ̃⁻¹(τ_1⋯τ_n) = (1/n!) ψ̃⁻¹(τ_1)⋯ψ̃⁻¹(τ_n)
    out = LinComb.of(UNIT)
    for t in f.trees:
        image = _psi_tilde_inv_tree(t)
        out = LinComb.sum(ca * cb * LinComb.of(a * b)
                          for a, ca in out.items() for b, cb in image.items())
    return Fraction(1, factorial(len(f.trees))) * out


def hk_psi_tilde_inv(x):
    def one(f):
        f = _as_forest(f)
        _require_undecorated(f)
        return _psi_tilde_inv_forest(f)
    return as_lincomb(x).map(one)


def _tree_sequences(n):
    """All tensor words over undecorated trees with exactly n vertices in total"""
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for t in enumerate_trees(first):
            out.extend((t,) + rest for rest in _tree_sequences(n - first))
    return out


def hk_flow_identity_residual(max_vertices):
    """Σ (1/σ(G)) G⊗G − Σ_w (1/Πσ(τ_i)) (τ_1∗⋯∗τ_n) ⊗ ψ̃⁻¹(τ_1⋯τ_n), expected zero"""
    if max_vertices < 1:
        raise AlgebraError(f"max_vertices must be >= 1, got {max_vertices}")
    diagonal = LinComb((Tensor(g, g), Fraction(1, forest_sigma(g)))
                       for n in range(1, max_vertices + 1) for g in enumerate_forests(n))
    parts = []
    for n in range(1, max_vertices + 1):
        for seq in _tree_sequences(n):
            weight = Fraction(1)
            for t in seq:
                weight /= tree_sigma(t)
            left = gl_product_all(seq)
            right = _psi_tilde_inv_forest(Forest(seq))
            parts.append(weight * LinComb((Tensor(a, b), ca * cb)
                                          for a, ca in left.items() for b, cb in right.items()))
    log.debug("flow identity over forests up to %d vertices", max_vertices)
    return diagonal - LinComb.sum(parts)
