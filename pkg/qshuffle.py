"""Shuffle and quasi-shuffle products, compositions and Hoffman's exponential"""

from fractions import Fraction
from functools import lru_cache
from math import factorial

from algebra import (
    EMPTY_WORD, FREE, AlgebraError, DegreeBoundError, LinComb, Tensor, Word,
    as_lincomb, base_name, bilinear, letter, semigroup_mul,
)


@lru_cache(maxsize=None)
def _quasi_shuffle(u, v, semigroup, bracket):
    if not u.letters:
        return LinComb.of(v)
    if not v.letters:
        return LinComb.of(u)
    i, rest_u = u.letters[0], Word(u.letters[1:])
    j, rest_v = v.letters[0], Word(v.letters[1:])
    parts = [
        _prepend(i, _quasi_shuffle(rest_u, v, semigroup, bracket)),
        _prepend(j, _quasi_shuffle(u, rest_v, semigroup, bracket)),
    ]
    if bracket:
        parts.append(_prepend(semigroup.mul(i, j), _quasi_shuffle(rest_u, rest_v, semigroup, bracket)))
    return LinComb.sum(parts)


def _prepend(x, words):
    return words.map_basis(lambda w: Word((x,) + w.letters))


def quasi_shuffle(u, v, semigroup=None, bracket=True):
    """i v ⋆ j w = i(v ⋆ jw) + j(iv ⋆ w) + [i j](v ⋆ w); bracket=False gives the shuffle"""
    semigroup = semigroup or FREE
    return bilinear(lambda x, y: _quasi_shuffle(x, y, semigroup, bracket), u, v)


def shuffle(u, v):
    return quasi_shuffle(u, v, bracket=False)


def shuffle_sequences(u, v):
    """Shuffle of plain tuples, as a {tuple: multiplicity} dict"""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for head, tail_a, tail_b in ((u[0], u[1:], v), (v[0], u, v[1:])):
        for seq, m in shuffle_sequences(tail_a, tail_b).items():
            key = (head,) + seq
            out[key] = out.get(key, 0) + m
    return out


def deconcat(w):
    """All |w|+1 (prefix, suffix) splits"""
    return [(Word(w.letters[:k]), Word(w.letters[k:])) for k in range(len(w) + 1)]


def deconcat_lin(x):
    """△ as a combination of word tensors"""
    return as_lincomb(x).map(lambda w: LinComb((Tensor(a, b), 1) for a, b in deconcat(w)))


def tensor_apply(fn, x):
    """(fn ⊗ fn) on a combination of word tensors, fn linear with LinComb values"""
    def one(t):
        left, right = as_lincomb(fn(t.left)), as_lincomb(fn(t.right))
        return LinComb((Tensor(l, r), cl * cr) for l, cl in left.items() for r, cr in right.items())
    return as_lincomb(x).map(one)


def tensor_quasi_shuffle(a, b, semigroup=None, bracket=True):
    """Legwise quasi-shuffle of two combinations of word tensors"""
    def one(x, y):
        left = quasi_shuffle(x.left, y.left, semigroup, bracket)
        right = quasi_shuffle(x.right, y.right, semigroup, bracket)
        return LinComb((Tensor(l, r), cl * cr) for l, cl in left.items() for r, cr in right.items())
    return bilinear(one, a, b)


def append_letter(w, i):
    """R^i: w ↦ w i"""
    return as_lincomb(w).map_basis(lambda x: Word(x.letters + (letter(i),)))


def compositions(n):
    """All compositions of n in lexicographic order; n = 0 gives the empty composition"""
    if n < 0:
        raise AlgebraError(f"cannot compose a negative integer: {n}")
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return out


def contract_word(parts, w, semigroup=None):
    """I[w]: bracket consecutive blocks of w of the sizes given by I"""
    if sum(parts) != len(w):
        raise AlgebraError(f"composition {parts} does not match word length {len(w)}")
    out, pos = [], 0
    for size in parts:
        out.append(semigroup_mul(w.letters[pos:pos + size], semigroup))
        pos += size
    return Word(tuple(out))


class PowerSeries:
    """f = Σ_{n>0} f_n t^n, known up to degree `bound`"""

    def __init__(self, coeffs, bound=None, rule=None):
        self.coeffs = {int(n): Fraction(c) for n, c in dict(coeffs).items()}
        if 0 in self.coeffs:
            raise AlgebraError("power series must have no constant term")
        self.rule = rule
        if bound is None:
            bound = max(self.coeffs, default=0) if rule is None else float('inf')
        self.bound = bound

    @classmethod
    def from_list(cls, values):
        """[f_1, f_2, ...]"""
        return cls({n: v for n, v in enumerate(values, start=1)}, bound=len(values))

    def __getitem__(self, n):
        if n > self.bound:
            raise DegreeBoundError(f"series coefficient f_{n} requested, known up to degree {self.bound}")
        if n in self.coeffs:
            return self.coeffs[n]
        if self.rule is not None:
            return Fraction(self.rule(n))
        return Fraction(0)

    def truncated(self, bound):
        return PowerSeries({n: self[n] for n in range(1, bound + 1)}, bound=bound)

    def compose(self, other, bound=None):
        """(self ∘ other)(t) = self(other(t)), exact to degree `bound`"""
        if bound is None:
            bound = min(self.bound, other.bound)
        if bound == float('inf'):
            raise DegreeBoundError("composing two unbounded series needs an explicit bound")
        g = [Fraction(0)] + [other[n] for n in range(1, bound + 1)]
        power = [Fraction(1)] + [Fraction(0)] * bound
        total = [Fraction(0)] * (bound + 1)
        for k in range(1, bound + 1):
            power = _poly_mul(power, g, bound)
            fk = self[k]
            if fk:
                total = [a + fk * b for a, b in zip(total, power)]
        return PowerSeries({n: total[n] for n in range(1, bound + 1)}, bound=bound)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries) or self.bound != other.bound:
            return NotImplemented
        return all(self[n] == other[n] for n in range(1, int(self.bound) + 1))

    def __repr__(self):
        shown = min(self.bound, 6)
        return "PowerSeries(" + ", ".join(str(self[n]) for n in range(1, int(shown) + 1)) + ", ...)"


def _poly_mul(a, b, bound):
    out = [Fraction(0)] * (bound + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b[:bound + 1 - i]):
            out[i + j] += x * y
    return out


def identity_series():
    return PowerSeries({1: 1}, bound=float('inf'))


def exp_series():
    """exp(t) − 1"""
    return PowerSeries({}, rule=lambda n: Fraction(1, factorial(n)))


def log_series():
    """log(1 + t)"""
    return PowerSeries({}, rule=lambda n: Fraction((-1) ** (n - 1), n))


def _psi_word(f, w, semigroup):
    terms = []
    for parts in compositions(len(w)):
        coeff = Fraction(1)
        for size in parts:
            coeff *= f[size]
        if coeff:
            terms.append((contract_word(parts, w, semigroup), coeff))
    return LinComb(terms)


def psi_series(f, w, semigroup=None):
    """ψ_f(w) = Σ_{I ∈ C(|w|)} f_{i_1}⋯f_{i_m} I[w]"""
    semigroup = semigroup or FREE
    return as_lincomb(w).map(lambda x: _psi_word(f, x, semigroup))


def hoffman_exp(w, semigroup=None):
    return psi_series(exp_series(), w, semigroup)


def hoffman_log(w, semigroup=None):
    return psi_series(log_series(), w, semigroup)


def words_up_to(n, alphabet):
    """All words over base letters of length 0..n"""
    out = [EMPTY_WORD]
    layer = [EMPTY_WORD]
    letters = [letter(a) for a in sorted(base_name(a) for a in alphabet)]
    for _ in range(n):
        layer = [Word(w.letters + (x,)) for w in layer for x in letters]
        out.extend(layer)
    return out
