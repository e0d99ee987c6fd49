"""Extraction-contraction coproduct, its coaction on forests and characters of H+"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache

from algebra import (
    FREE, UNIT, AlgebraError, DegreeBoundError, Forest, LinComb, Tensor, Tree,
    as_lincomb, build_subtree, child_lists, enumerate_weighted_trees, flatten,
    ladder_tree, semigroup_mul, tensor_product, tree_factorial,
)
from qshuffle import compositions

log = logging.getLogger(__name__)


def _contract(labels, parents, kids, kept, semigroup):
    """Blocks joined by kept edges; each block becomes one vertex decorated by its bracket"""
    n = len(labels)
    block_root = [0] * n
    for v in range(n):
        # preorder: a parent is always visited before its children
        block_root[v] = block_root[parents[v]] if v in kept else v
    members = {}
    for v in range(n):
        members.setdefault(block_root[v], []).append(v)

    def contracted(r):
        below = [c for v in members[r] for c in kids[v] if c not in kept]
        root = semigroup_mul([labels[v] for v in members[r]], semigroup)
        return Tree(root, tuple(contracted(c) for c in below))

    blocks = tuple(build_subtree(r, labels, kids, lambda c: c in kept) for r in members)
    return Forest(blocks), contracted(0)


@lru_cache(maxsize=None)
def _sub_coproduct(t, semigroup):
    labels, parents = flatten(t)
    kids = child_lists(parents)
    edges = list(range(1, len(labels)))  # edge named by its lower vertex
    terms = []
    for r in range(len(edges) + 1):
        for kept in itertools.combinations(edges, r):
            left, right = _contract(labels, parents, kids, frozenset(kept), semigroup)
            terms.append((Tensor(left, right), 1))
    return LinComb(terms)


def sub_coproduct(t, semigroup=None):
    """δ+(t) = Σ F̄ ⊗ t/F̄ over the subsets of E(t); the right leg is a Tree"""
    semigroup = semigroup or FREE
    return as_lincomb(t).map(lambda x: _sub_coproduct(x, semigroup))


def _tree_coaction(t, semigroup):
    return _sub_coproduct(t, semigroup).map_basis(lambda x: Tensor(x.left, Forest.of(x.right)))


def coaction(x, semigroup=None):
    """Φ: δ+ treewise, multiplied legwise; Φ(1) = 1 ⊗ 1"""
    semigroup = semigroup or FREE

    def one(f):
        if isinstance(f, Tree):
            f = Forest.of(f)
        out = LinComb.of(Tensor(UNIT, UNIT))
        for t in f.trees:
            out = tensor_product(out, _tree_coaction(t, semigroup))
        return out
    return as_lincomb(x).map(one)


def ladder_sub_coproduct(decorations, semigroup=None):
    """δ+ of a ladder written as the composition sum Σ ℓ_{I_1}⋯ℓ_{I_n} ⊗ ℓ_{[I_1]⋯[I_n]}"""
    decorations = list(decorations)
    terms = []
    for parts in compositions(len(decorations)):
        blocks, brackets, pos = [], [], 0
        for size in parts:
            block = decorations[pos:pos + size]
            blocks.append(ladder_tree(block))
            brackets.append(semigroup_mul(block, semigroup))
            pos += size
        terms.append((Tensor(Forest(tuple(blocks)), ladder_tree(brackets)), 1))
    return LinComb(terms)


def sub_coassociativity_defect(t, semigroup=None):
    """(δ+⊗id)δ+ − (id⊗δ+)δ+, triples written as (a ⊗ b) ⊗ c"""
    once = sub_coproduct(t, semigroup)
    left = LinComb.sum(c * coaction(x.left, semigroup).map_basis(lambda s, r=x.right: Tensor(s, r))
                       for x, c in once.items())
    right = LinComb.sum(c * sub_coproduct(x.right, semigroup).map_basis(
        lambda s, a=x.left: Tensor(Tensor(a, s.left), s.right)) for x, c in once.items())
    return left - right


class PlusCharacter:
    """Character of H+: tree values extended multiplicatively to forests.

    Lookup order for a tree: explicit values, then 1 on single vertices, then
    `rule`, then 0. With rule_on_singletons the rule also decides single vertices.
    """

    def __init__(self, values=None, rule=None, degree_bound=None, name="character",
                 rule_on_singletons=False):
        self.values = {_as_tree(k): Fraction(v) for k, v in (values or {}).items()}
        self.rule = rule
        self.degree_bound = degree_bound
        self.name = name
        self.rule_on_singletons = rule_on_singletons
        self._cache = {}

    @property
    def unit_on_singletons(self):
        return all(v == 1 for t, v in self.values.items() if t.size == 1)

    def tree_value(self, t):
        if self.degree_bound is not None and t.size > self.degree_bound:
            raise DegreeBoundError(f"{self.name} defined up to {self.degree_bound} vertices, "
                                   f"evaluated on {t}")
        if t in self.values:
            return self.values[t]
        if t.size == 1 and not (self.rule_on_singletons and self.rule):
            return Fraction(1)
        if self.rule is None:
            return Fraction(0)
        if t not in self._cache:
            self._cache[t] = Fraction(self.rule(t))
        return self._cache[t]

    def __call__(self, x):
        if isinstance(x, Tree):
            return self.tree_value(x)
        out = Fraction(1)
        for t in x.trees:
            out *= self.tree_value(t)
            if not out:
                break
        return out

    def evaluate(self, combination):
        return sum((c * self(b) for b, c in as_lincomb(combination).items()), Fraction(0))

    def __repr__(self):
        return f"PlusCharacter({self.name}, {len(self.values)} values)"


def _as_tree(x):
    if isinstance(x, Forest):
        if len(x.trees) != 1:
            raise AlgebraError(f"character values are given on trees, got forest {x}")
        return x.trees[0]
    return x


def unit_character():
    """Z_•: 1 on single vertices, 0 on every tree with an edge"""
    return PlusCharacter(name="unit")


def tree_character(values, degree_bound=None):
    return PlusCharacter(values, degree_bound=degree_bound, name="tree character")


def random_character(rng, degree_bound, alphabet=("o",), max_numerator=5, max_denominator=4):
    """Random rational values on every tree of weight ≤ degree_bound.

    Weight grading covers every decoration produced by contracting trees with
    at most degree_bound vertices under the free semigroup.
    """
    values = {}
    for w in range(2, degree_bound + 1):
        for t in enumerate_weighted_trees(w, alphabet):
            if t.size == 1:
                continue
            values[t] = Fraction(int(rng.integers(-max_numerator, max_numerator + 1)),
                                 int(rng.integers(1, max_denominator + 1)))
    return PlusCharacter(values, name="random character")


def inv_tree_factorial_char():
    """v(τ) = 1/τ!"""
    return PlusCharacter(rule=lambda t: Fraction(1, tree_factorial(t)), name="1/τ!")


def convolve_plus(u, w, x, semigroup=None):
    """(u ⊛ w)(F) = Σ u(F̄) w(F/F̄) over the coaction"""
    return sum((c * u(t.left) * w(t.right) for t, c in coaction(x, semigroup).items()), Fraction(0))


def convolution_character(u, w, semigroup=None):
    """u ⊛ w as a PlusCharacter (the coaction is multiplicative)"""
    bound = _min_bound(u, w)
    out = PlusCharacter(rule=lambda t: convolve_plus(u, w, t, semigroup), degree_bound=bound,
                        name=f"({getattr(u, 'name', u)} ⊛ {getattr(w, 'name', w)})",
                        rule_on_singletons=True)
    return out


def _min_bound(*chars):
    bounds = [c.degree_bound for c in chars if getattr(c, 'degree_bound', None) is not None]
    return min(bounds) if bounds else None


def psi_v(v, x, semigroup=None):
    """Ψ_v = (v ⊗ id)∘Φ on forests"""
    def one(f):
        return LinComb.sum(c * v(t.left) * LinComb.of(t.right)
                           for t, c in coaction(f, semigroup).items())
    return as_lincomb(x).map(one)


def plus_action(phi, b, semigroup=None):
    """φ ⊛ b for a BCK functional b: F ↦ b(Ψ_φ(F))"""
    def value(x):
        return sum((c * b(f) for f, c in psi_v(phi, x, semigroup).items()), Fraction(0))
    value.degree_bound = getattr(b, 'degree_bound', None)
    return value


def _check_unit_on_singletons(v, t):
    for d in t.decorations():
        value = v(Tree(d))
        if value != 1:
            raise AlgebraError(f"character must be 1 on single vertices, got {value} on {d}")


def _require_unit_on_singletons(v):
    """Explicit single-vertex values are checked before any solving"""
    for t, value in getattr(v, "values", {}).items():
        if t.size == 1 and value != 1:
            raise AlgebraError(f"character must be 1 on single vertices, got {value} on {t}")


def invert_character(v, degree_bound=None, semigroup=None):
    """v⁻ with v ⊛ v⁻ = Z_•, solved triangularly on the number of edges"""
    semigroup = semigroup or FREE
    _require_unit_on_singletons(v)
    bound = degree_bound if degree_bound is not None else v.degree_bound

    @lru_cache(maxsize=None)
    def inverse(t):
        _check_unit_on_singletons(v, t)
        if t.size == 1:
            return Fraction(1)
        total = Fraction(0)
        for x, c in _sub_coproduct(t, semigroup).items():
            if x.left.edges == 0:
                continue
            total += c * v(x.left) * inverse(x.right)
        return -total

    log.debug("inverting %s up to %s vertices", getattr(v, 'name', v), bound)
    return PlusCharacter(rule=inverse, degree_bound=bound, name=f"{getattr(v, 'name', 'v')}⁻",
                         rule_on_singletons=True)


def pseudo_antipode_inverse(v, degree_bound=None, semigroup=None):
    """v∘α = Σ_i (Z_• − v)^{⊛i}; the sum stops at |E(t)| since Z_• − v kills edgeless forests"""
    semigroup = semigroup or FREE
    _require_unit_on_singletons(v)
    unit = unit_character()

    def defect(f):
        return unit(f) - v(f)

    @lru_cache(maxsize=None)
    def power(i, f):
        if i == 0:
            return unit(f)
        return sum((c * defect(t.left) * power(i - 1, t.right)
                    for t, c in coaction(f, semigroup).items()), Fraction(0))

    def value(t):
        _check_unit_on_singletons(v, t)
        f = Forest.of(t)
        return sum((power(i, f) for i in range(t.edges + 1)), Fraction(0))

    bound = degree_bound if degree_bound is not None else v.degree_bound
    return PlusCharacter(rule=value, degree_bound=bound, name="pseudo-antipode inverse",
                         rule_on_singletons=True)
