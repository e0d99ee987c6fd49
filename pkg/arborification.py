"""Arborification onto (quasi-)shuffle words and the arborified Hoffman exponential"""

import logging
from fractions import Fraction
from functools import lru_cache
from math import factorial

from algebra import (
    EMPTY_WORD, FREE, AlgebraError, FreeSemigroup, Forest, LinComb, Tensor, Tree,
    UnsupportedInputError, Word, as_lincomb, cm, enumerate_trees,
    enumerate_weighted_trees, ladder_tree, letter, semigroup_mul, tree_sigma, trees_up_to,
)
from bck import bck_coproduct
from prelie import prelie_extend
from qshuffle import append_letter, quasi_shuffle
from substitution import PlusCharacter, inv_tree_factorial_char, psi_v

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _arborify_tree(t, contract, semigroup):
    below = LinComb.of(EMPTY_WORD)
    for c in t.children:
        below = quasi_shuffle(below, _arborify_tree(c, contract, semigroup), semigroup, contract)
    return append_letter(below, t.root)


def _arborify_forest(f, contract, semigroup):
    out = LinComb.of(EMPTY_WORD)
    for t in f.trees:
        out = quasi_shuffle(out, _arborify_tree(t, contract, semigroup), semigroup, contract)
    return out


def arborify(x, semigroup=None):
    """𝔞(B^i_+(F)) = (𝔞(τ_1) ⧢ ⋯ ⧢ 𝔞(τ_n)) i"""
    return _apply(x, False, semigroup)


def contract_arborify(x, semigroup=None):
    """𝔞^c: the same recursion with the quasi-shuffle"""
    return _apply(x, True, semigroup)


def _apply(x, contract, semigroup):
    semigroup = semigroup or FREE

    def one(f):
        if isinstance(f, Tree):
            return _arborify_tree(f, contract, semigroup)
        return _arborify_forest(f, contract, semigroup)
    return as_lincomb(x).map(one)


def arborify_by_cuts(x, contract=False, semigroup=None):
    """𝔞 / 𝔞^c from the BCK coproduct: the right legs made of bare roots give the last letter"""
    semigroup = semigroup or FREE

    @lru_cache(maxsize=None)
    def one(f):
        if not f.trees:
            return LinComb.of(EMPTY_WORD)
        parts = []
        for ten, c in bck_coproduct(f).items():
            roots = ten.right.trees
            if not roots or any(r.size != 1 for r in roots):
                continue
            if not contract and len(roots) != 1:
                continue
            last = semigroup_mul([r.root for r in roots], semigroup)
            parts.append(c * append_letter(one(ten.left), last))
        return LinComb.sum(parts)

    return as_lincomb(x).map(lambda f: one(Forest.of(f) if isinstance(f, Tree) else f))


def arbo_hoffman_exp(x, semigroup=None):
    """Ψ_v with v = 1/τ!"""
    return psi_v(inv_tree_factorial_char(), x, semigroup)


def _contracting_to(i, max_vertices, semigroup):
    """Trees with at most max_vertices vertices whose decorations bracket to i"""
    if isinstance(semigroup, FreeSemigroup):
        candidates = enumerate_weighted_trees(i.weight, set(i.letters))
    else:
        candidates = [t for n in range(1, max_vertices + 1)
                      for t in enumerate_trees(n, semigroup.letters)]
    return [t for t in candidates
            if t.size <= max_vertices and semigroup_mul(t.decorations(), semigroup) == i]


def arbo_hoffman_adjoint(i, max_vertices, semigroup=None):
    """Ψ*_v(•_i) = Σ_{[τ]=i} cm(τ)/|τ|! τ over trees with at most max_vertices vertices"""
    if max_vertices < 1:
        raise AlgebraError(f"max_vertices must be >= 1, got {max_vertices}")
    semigroup = semigroup or FREE
    i = letter(i)
    return LinComb((t, cm(t) / factorial(t.size)) for t in _contracting_to(i, max_vertices, semigroup))


def arbo_hoffman_adjoint_extend(x, max_vertices, semigroup=None):
    """Pre-Lie extension of the adjoint generator images to arbitrary trees"""
    x = as_lincomb(x)
    letters = {d for t in x.bases() for d in t.decorations()}
    assignment = {d: arbo_hoffman_adjoint(d, max_vertices, semigroup) for d in letters}
    return prelie_extend(assignment, x)


# --- Ladders ---

def ladder(word):
    """Ladder whose arborification is `word`: the first letter sits at the leaf"""
    return ladder_tree(reversed(word.letters))


def is_ladder(t):
    while t.children:
        if len(t.children) != 1:
            return False
        t = t.children[0]
    return True


def ladder_word(t):
    if isinstance(t, Forest):
        if len(t.trees) != 1:
            raise UnsupportedInputError(f"expected a single ladder, got {t}")
        t = t.trees[0]
    if not is_ladder(t):
        raise UnsupportedInputError(f"{t} is not a ladder")
    return Word(tuple(reversed(t.decorations())))


def ladder_character(f):
    """v(ℓ) = f_|ℓ| on ladders, 0 on every other tree"""
    return PlusCharacter(rule=lambda t: f[t.size] if is_ladder(t) else 0,
                         name="ladder character", rule_on_singletons=True)


# --- Flow adjoint ---

def _flow_trees(max_degree, alphabet, semigroup):
    """Trees graded by weight under the free semigroup, by vertex count under a table"""
    if isinstance(semigroup, FreeSemigroup):
        return [t for w in range(1, max_degree + 1) for t in enumerate_weighted_trees(w, alphabet)]
    return trees_up_to(max_degree, semigroup.letters)


def _flow_generator(a, x, pool, semigroup):
    """g(•_x) = Σ_{[τ]=x} a(τ)/σ(τ) τ over the trees of the pool"""
    return LinComb((t, a(t) / tree_sigma(t)) for t in pool
                   if semigroup_mul(t.decorations(), semigroup) == x)


def flow_adjoint_residual(a, max_weight, alphabet, semigroup=None):
    """Σ (1/σ(τ)) [g(τ) ⊗ τ − τ ⊗ Ψ_a(τ)] over trees of degree ≤ max_weight.

    Degree is the weight under the free semigroup and the vertex count under a
    table semigroup (whose trees are decorated by the table's letters). Terms
    whose left slot exceeds max_weight are dropped.
    """
    semigroup = semigroup or FREE
    free = isinstance(semigroup, FreeSemigroup)

    def degree(t):
        return t.weight if free else t.size

    trees = _flow_trees(max_weight, alphabet, semigroup)
    letters = {d for t in trees for d in t.decorations()}
    assignments = {}

    def assignment_for(t):
        # every other vertex of t contributes at least one vertex to a surviving term
        cap = max_weight if free else max_weight - t.size + 1
        if cap not in assignments:
            pool = [s for s in trees if degree(s) <= cap]
            assignments[cap] = {d: _flow_generator(a, d, pool, semigroup) for d in letters}
        return assignments[cap]

    left, right = [], []
    for t in trees:
        weight = Fraction(1, tree_sigma(t))
        image = prelie_extend(assignment_for(t), t).filter(lambda s: degree(s) <= max_weight)
        left.append(weight * image.map_basis(lambda s, t=t: Tensor(Forest.of(s), Forest.of(t))))
        right.append(weight * psi_v(a, t, semigroup).map_basis(lambda f, t=t: Tensor(Forest.of(t), f)))
    log.debug("flow adjoint over %d trees of degree <= %d", len(trees), max_weight)
    return LinComb.sum(left) - LinComb.sum(right)


def flow_truncation(max_vertices, alphabet=("o",)):
    """Σ_{|τ| ≤ N} (1/σ(τ)) τ ⊗ τ"""
    return LinComb((Tensor(Forest.of(t), Forest.of(t)), Fraction(1, tree_sigma(t)))
                   for n in range(1, max_vertices + 1) for t in enumerate_trees(n, alphabet))

