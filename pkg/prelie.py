"""Grafting pre-Lie product, Oudom-Guin extension and the Grossman-Larson product"""

import itertools
from functools import lru_cache

from algebra import (
    AUX_LETTER, LinComb, Forest, Tree, UNIT, UnsupportedInputError, AlgebraError,
    as_lincomb, bilinear, b_plus, b_minus, child_lists, flatten,
    forest_product_all, letter,
)


def _graft_everywhere(t1, t2):
    """Trees obtained by attaching t1 below each vertex of t2 (with repeats)"""
    out = [Tree(t2.root, t2.children + (t1,))]
    for idx, child in enumerate(t2.children):
        for grafted in _graft_everywhere(t1, child):
            kids = t2.children[:idx] + (grafted,) + t2.children[idx + 1:]
            out.append(Tree(t2.root, kids))
    return out


@lru_cache(maxsize=None)
def _graft_trees(t1, t2):
    return LinComb((t, 1) for t in _graft_everywhere(t1, t2))


def graft(t1, t2):
    """t1 ▷ t2: sum over the vertices of t2 of t1 grafted there; bilinear"""
    return bilinear(_graft_trees, t1, t2)


def _graft_onto_forest(t, forest):
    """t ▷ F by the Leibniz rule: graft t onto one tree of F at a time"""
    trees = forest.trees
    parts = []
    for idx, target in enumerate(trees):
        rest = trees[:idx] + trees[idx + 1:]
        parts.append(_graft_trees(t, target).map_basis(lambda g, rest=rest: Forest(rest + (g,))))
    return LinComb.sum(parts)


@lru_cache(maxsize=None)
def _forest_graft(forest, t):
    if not forest.trees:
        return LinComb.of(t)
    head, rest = forest.trees[0], Forest(forest.trees[1:])
    # (τ·F) ▷ t = τ ▷ (F ▷ t) − (τ ▷ F) ▷ t
    first = graft(head, _forest_graft(rest, t))
    second = _graft_onto_forest(head, rest).map(lambda f: _forest_graft(f, t))
    return first - second


def forest_graft(forest, t):
    """Oudom-Guin extension F ▷ t, linear in both arguments"""
    def one(f, tree):
        if isinstance(f, Tree):
            f = Forest.of(f)
        return _forest_graft(f, tree)
    return bilinear(one, forest, t)


def forest_graft_direct(forest, t):
    """Independent placement of every tree of F on a vertex of t"""
    labels, parents = flatten(t)
    kids = child_lists(parents)
    n = len(labels)
    out = []
    for placement in itertools.product(range(n), repeat=len(forest.trees)):
        extra = [[] for _ in range(n)]
        for tree, v in zip(forest.trees, placement):
            extra[v].append(tree)

        def build(v):
            return Tree(labels[v], tuple(build(c) for c in kids[v]) + tuple(extra[v]))
        out.append(build(0))
    return LinComb((tree, 1) for tree in out)


def left_power(a, b, n):
    """L^n_{a▷}(b) = a ▷ (L^{n-1}_{a▷}(b))"""
    if n < 0:
        raise AlgebraError(f"power must be >= 0, got {n}")
    out = as_lincomb(b)
    for _ in range(n):
        out = graft(a, out)
    return out


_AUX = letter(AUX_LETTER)


@lru_cache(maxsize=None)
def _gl_forests(f, g):
    grafted = _forest_graft(f, b_plus(_AUX, g))
    return grafted.map_basis(b_minus)


def gl_product(f, g):
    """Grossman-Larson product F * G = B_-(F ▷ B_+(G))"""
    def one(x, y):
        if isinstance(x, Tree):
            x = Forest.of(x)
        if isinstance(y, Tree):
            y = Forest.of(y)
        return _gl_forests(x, y)
    return bilinear(one, f, g)


def gl_product_all(parts):
    out = LinComb.of(UNIT)
    for p in parts:
        out = gl_product(out, p)
    return out


def generator_assignment(mapping):
    """Normalise {letter: tree-or-combination} into a GeneratorAssignment"""
    return {letter(k): as_lincomb(v) for k, v in mapping.items()}


def prelie_extend(assignment, t):
    """Unique pre-Lie morphism fixed by the images of the single vertices"""
    assignment = generator_assignment(assignment)

    @lru_cache(maxsize=None)
    def image(tree):
        if tree.root not in assignment:
            raise UnsupportedInputError(f"no image assigned to letter {tree.root}")
        below = forest_product_all(image(c) for c in tree.children)
        # B^i_+(F) = F ▷ •_i
        return forest_graft(below, assignment[tree.root])

    return as_lincomb(t).map(image)


def is_prelie_morphism_on(assignment, x, y):
    """extend(x ▷ y) == extend(x) ▷ extend(y)"""
    lhs = prelie_extend(assignment, graft(x, y))
    rhs = graft(prelie_extend(assignment, x), prelie_extend(assignment, y))
    return lhs == rhs


def associator(x, y, z):
    """(x ▷ y) ▷ z − x ▷ (y ▷ z)"""
    return graft(graft(x, y), z) - graft(x, graft(y, z))
