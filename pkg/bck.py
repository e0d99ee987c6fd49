"""Butcher-Connes-Kreimer coproduct, dual pairing and convolution of functionals"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from algebra import (
    UNIT, DegreeBoundError, AlgebraError, Forest, LinComb, Tensor, Tree,
    as_lincomb, build_subtree, child_lists, flatten, forest_sigma, tensor_product,
)

KINDS = ("character", "infinitesimal", "general")


def _admissible_cuts(kids, v):
    """Sets of edges below v (edges named by their lower vertex) with at most one per path"""
    options = [[]]
    for c in kids[v]:
        below = _admissible_cuts(kids, c)
        choices = [[c]] + below
        options = [o + ch for o in options for ch in choices]
    return options


@lru_cache(maxsize=None)
def _tree_coproduct(t):
    labels, parents = flatten(t)
    kids = child_lists(parents)
    terms = [(Tensor(Forest.of(t), UNIT), 1)]
    for cut in _admissible_cuts(kids, 0):
        cut_set = set(cut)
        pruned = Forest(tuple(build_subtree(c, labels, kids, lambda _: True) for c in cut))
        trunk = build_subtree(0, labels, kids, lambda c: c not in cut_set)
        terms.append((Tensor(pruned, Forest.of(trunk)), 1))
    return LinComb(terms)


def _forest_coproduct(forest, per_tree):
    out = LinComb.of(Tensor(UNIT, UNIT))
    for t in forest.trees:
        out = tensor_product(out, per_tree(t))
    return out


def bck_coproduct(x):
    """Δ on forests by admissible cuts: pruned parts on the left, trunks on the right"""
    def one(f):
        if isinstance(f, Tree):
            f = Forest.of(f)
        return _forest_coproduct(f, _tree_coproduct)
    return as_lincomb(x).map(one)


@lru_cache(maxsize=None)
def _tree_coproduct_recursive(t):
    below = _forest_coproduct(Forest(t.children), _tree_coproduct_recursive)
    grafted = below.map_basis(lambda ten: Tensor(ten.left, Forest.of(Tree(t.root, ten.right.trees))))
    return LinComb.of(Tensor(Forest.of(t), UNIT)) + grafted


def bck_coproduct_recursive(x):
    """Δ(B^i_+(F)) = B^i_+(F) ⊗ 1 + (id ⊗ B^i_+)Δ(F)"""
    def one(f):
        if isinstance(f, Tree):
            f = Forest.of(f)
        return _forest_coproduct(f, _tree_coproduct_recursive)
    return as_lincomb(x).map(one)


def counit(x):
    """ε: coefficient of the empty forest"""
    if isinstance(x, Tree):
        return Fraction(0)
    if isinstance(x, Forest):
        return Fraction(1) if not x.trees else Fraction(0)
    return as_lincomb(x).coefficient(UNIT)


def apply_left(fn, tensors):
    """(fn ⊗ id) on a combination of tensors"""
    return LinComb.sum(coeff * fn(t.left) * as_lincomb(t.right) for t, coeff in tensors.items())


def apply_right(fn, tensors):
    return LinComb.sum(coeff * fn(t.right) * as_lincomb(t.left) for t, coeff in tensors.items())


def coassociativity_defect(forest, coproduct=bck_coproduct):
    """(Δ⊗id)Δ − (id⊗Δ)Δ, triples written as (a ⊗ b) ⊗ c"""
    once = coproduct(forest)
    left = LinComb.sum(c * coproduct(t.left).map_basis(lambda s, r=t.right: Tensor(s, r))
                       for t, c in once.items())
    right = LinComb.sum(c * coproduct(t.right).map_basis(
        lambda s, a=t.left: Tensor(Tensor(a, s.left), s.right)) for t, c in once.items())
    return left - right


def pairing(d, g):
    """⟨d_F, G⟩ = σ(F) if F == G else 0"""
    if isinstance(d, Tree):
        d = Forest.of(d)
    if isinstance(g, Tree):
        g = Forest.of(g)
    return Fraction(forest_sigma(d)) if d == g else Fraction(0)


def pairing_lin(d, g):
    """Bilinear extension of the pairing"""
    d, g = as_lincomb(d), as_lincomb(g)
    return sum((cd * cg * pairing(x, y) for x, cd in d.items() for y, cg in g.items()), Fraction(0))


@dataclass(frozen=True)
class BckFunctional:
    """Linear functional on forests, defined up to degree_bound vertices"""
    kind: str
    values: dict = field(default_factory=dict)
    degree_bound: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise AlgebraError(f"unknown functional kind {self.kind!r}")

    def __call__(self, x):
        if isinstance(x, Tree):
            x = Forest.of(x)
        if x.size > self.degree_bound:
            raise DegreeBoundError(f"functional defined up to {self.degree_bound} vertices, "
                                   f"evaluated on {x}")
        if self.kind == "character":
            out = Fraction(1)
            for t in x.trees:
                out *= Fraction(self.values.get(Forest.of(t), 0))
            return out
        if self.kind == "infinitesimal":
            if len(x.trees) != 1:
                return Fraction(0)
            return Fraction(self.values.get(x, 0))
        return Fraction(self.values.get(x, 0))

    def evaluate(self, combination):
        return sum((c * self(b) for b, c in as_lincomb(combination).items()), Fraction(0))


def _forest_keys(values):
    out = {}
    for k, v in values.items():
        out[Forest.of(k) if isinstance(k, Tree) else k] = Fraction(v)
    return out


def character(values, degree_bound):
    return BckFunctional("character", _forest_keys(values), degree_bound)


def infinitesimal(values, degree_bound):
    return BckFunctional("infinitesimal", _forest_keys(values), degree_bound)


def general(values, degree_bound):
    return BckFunctional("general", _forest_keys(values), degree_bound)


def counit_functional(degree_bound):
    return general({UNIT: 1}, degree_bound)


def dual_functional(d, degree_bound):
    """d_F: σ(F) on F, zero elsewhere"""
    if isinstance(d, Tree):
        d = Forest.of(d)
    kind = "infinitesimal" if len(d.trees) == 1 else "general"
    return BckFunctional(kind, {d: Fraction(forest_sigma(d))}, degree_bound)


def convolve_bck(u, w, x):
    """(u ∗ w)(F) = Σ u(F_(1)) w(F_(2))"""
    return sum((c * u(t.left) * w(t.right) for t, c in bck_coproduct(x).items()), Fraction(0))


def convolution_functional(u, w, degree_bound):
    """u ∗ w as a callable, for chaining"""
    bound = min(degree_bound, getattr(u, 'degree_bound', degree_bound),
                getattr(w, 'degree_bound', degree_bound))

    def value(x):
        if isinstance(x, Tree):
            x = Forest.of(x)
        if x.size > bound:
            raise DegreeBoundError(f"convolution defined up to {bound} vertices, evaluated on {x}")
        return convolve_bck(u, w, x)
    value.degree_bound = bound
    return value
