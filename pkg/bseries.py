"""Exact B-series of polynomial vector fields and the substitution law check"""

import itertools
import logging
from fractions import Fraction

import sympy as sp

from algebra import (
    UNDECORATED, AlgebraError, ParseError, UnsupportedInputError, enumerate_trees,
    base_name, letter, tree_sigma, vertex,
)
from substitution import convolve_plus

log = logging.getLogger(__name__)

H = sp.Symbol('h')


def _variables(dimension):
    return tuple(sp.Symbol(f'x{k}') for k in range(1, dimension + 1))


class PolyVectorField:
    """Σ_i f^i(x) ∂_i with polynomial components over the rationals"""

    def __init__(self, components, variables=None):
        components = tuple(sp.expand(sp.sympify(c)) for c in components)
        if not components:
            raise AlgebraError("a vector field needs at least one component")
        self.variables = tuple(variables) if variables is not None else _variables(len(components))
        if len(self.variables) != len(components):
            raise AlgebraError(f"{len(components)} components for {len(self.variables)} variables")
        self.components = components

    @property
    def dimension(self):
        return len(self.components)

    def _check(self, other):
        if self.dimension != other.dimension:
            raise AlgebraError(f"dimension mismatch: {self.dimension} and {other.dimension}")

    def __add__(self, other):
        self._check(other)
        return PolyVectorField([a + b for a, b in zip(self.components, other.components)], self.variables)

    def __sub__(self, other):
        self._check(other)
        return PolyVectorField([a - b for a, b in zip(self.components, other.components)], self.variables)

    def scaled(self, c):
        c = _rational(c)
        return PolyVectorField([c * a for a in self.components], self.variables)

    def derivative(self, directions):
        """D^n f[v_1, ..., v_n]: derivatives hit only f, never the v_k"""
        n = len(directions)
        out = [sp.Integer(0)] * self.dimension
        for idx in itertools.product(range(self.dimension), repeat=n):
            weight = sp.Integer(1)
            for v, j in zip(directions, idx):
                weight *= v.components[j]
            if weight == 0:
                continue
            symbols = [self.variables[j] for j in idx]
            for i, comp in enumerate(self.components):
                out[i] += weight * (sp.diff(comp, *symbols) if symbols else comp)
        return PolyVectorField(out, self.variables)

    def at(self, y0):
        """Evaluate at a rational point; h-dependence is kept"""
        point = dict(zip(self.variables, (_rational(v) for v in y0)))
        return [sp.expand(c.subs(point)) for c in self.components]

    def __eq__(self, other):
        if not isinstance(other, PolyVectorField) or self.dimension != other.dimension:
            return NotImplemented
        return all(sp.expand(a - b) == 0 for a, b in zip(self.components, other.components))

    def __hash__(self):
        return hash(self.components)

    def __str__(self):
        return "; ".join(str(c) for c in self.components)

    __repr__ = __str__


def _rational(value):
    if isinstance(value, Fraction):
        return sp.Rational(value.numerator, value.denominator)
    return sp.Rational(value)


def _fraction(value):
    value = sp.Rational(value)
    return Fraction(int(value.p), int(value.q))


def parse_field(text):
    """Components separated by ';', each a polynomial in x1..xd ('y' allowed in one dimension)"""
    chunks = [c.strip() for c in text.split(";")]
    if not all(chunks):
        raise ParseError("empty field component", text, 0)
    variables = _variables(len(chunks))
    names = {str(v): v for v in variables}
    if len(chunks) == 1:
        names['y'] = variables[0]
    components = []
    for chunk in chunks:
        try:
            expr = sp.sympify(chunk.replace("^", "**"), locals=names, rational=True)
        except (sp.SympifyError, SyntaxError, TypeError) as exc:
            raise ParseError(f"cannot read polynomial ({exc})", chunk, 0) from None
        extra = expr.free_symbols - set(variables)
        if extra:
            raise ParseError(f"unknown variables {sorted(map(str, extra))}", chunk, 0)
        if not expr.is_polynomial(*variables):
            raise ParseError("field components must be polynomials", chunk, 0)
        components.append(expr)
    return PolyVectorField(components, variables)


def random_quadratic_field(rng, dimension, max_coeff=3):
    """Random field with integer coefficients on monomials of degree ≤ 2"""
    variables = _variables(dimension)
    monomials = [sp.Integer(1)] + list(variables) + [a * b for a, b in
                                                     itertools.combinations_with_replacement(variables, 2)]
    components = [sum(int(rng.integers(-max_coeff, max_coeff + 1)) * m for m in monomials)
                  for _ in range(dimension)]
    return PolyVectorField(components, variables)


def field_prelie(f, g):
    """(f ▷ g)^i = Σ_j f^j ∂_j g^i"""
    f._check(g)
    return g.derivative([f])


def _field_for(fields, d):
    if isinstance(fields, PolyVectorField):
        return fields
    if d not in fields:
        raise UnsupportedInputError(f"no vector field assigned to letter {d}")
    return fields[d]


def _normalise_fields(fields):
    if isinstance(fields, PolyVectorField):
        return fields
    fields = {letter(k): v for k, v in fields.items()}
    dims = {f.dimension for f in fields.values()}
    if len(dims) > 1:
        raise AlgebraError(f"fields of different dimensions: {sorted(dims)}")
    return fields


def elementary_differential(fields, t, _cache=None):
    """𝔉[B^i_+(τ_1⋯τ_n)] = f_i^{(n)}(𝔉[τ_1], ..., 𝔉[τ_n])"""
    fields = _normalise_fields(fields)
    cache = {} if _cache is None else _cache
    if t not in cache:
        below = [elementary_differential(fields, c, cache) for c in t.children]
        f = _field_for(fields, t.root)
        for g in below:
            f._check(g)
        cache[t] = f.derivative(below)
    return cache[t]


def elementary_differential_lin(fields, combination):
    """Linear extension of 𝔉 to a combination of trees"""
    cache = {}
    parts = [elementary_differential(fields, t, cache).scaled(c) for t, c in combination.items()]
    if not parts:
        raise AlgebraError("elementary differential of the zero combination has no dimension")
    out = parts[0]
    for p in parts[1:]:
        out = out + p
    return out


def _alphabet(fields):
    if isinstance(fields, PolyVectorField):
        return ("o",)
    return tuple(base_name(k) for k in fields)


def bseries_truncated(a, fields, order, y0):
    """Taylor vectors c_0..c_N of B(a, f) = Σ h^{|τ|}/σ(τ) a(τ) 𝔉[τ] at y0; c_0 = y0"""
    fields = _normalise_fields(fields)
    y0 = [_rational(v) for v in y0]
    cache = {}
    out = [[_fraction(v) for v in y0]]
    for k in range(1, order + 1):
        total = [sp.Integer(0)] * len(y0)
        for t in enumerate_trees(k, _alphabet(fields)):
            coeff = _rational(Fraction(a(t)) / tree_sigma(t))
            if coeff == 0:
                continue
            value = elementary_differential(fields, t, cache).at(y0)
            total = [s + coeff * v for s, v in zip(total, value)]
        out.append([_fraction(v) for v in total])
    return out


class HSeriesField:
    """Σ_{k=0}^{order} h^k f_k, truncated at `order`"""

    def __init__(self, coeffs, order):
        self.order = order
        self.coeffs = {k: v for k, v in coeffs.items() if k <= order}

    def coefficient(self, k):
        if k in self.coeffs:
            return self.coeffs[k]
        any_field = next(iter(self.coeffs.values()))
        return PolyVectorField([0] * any_field.dimension, any_field.variables)

    def as_field(self):
        """Single field with h carried as a parameter"""
        any_field = next(iter(self.coeffs.values()))
        components = [sum((H ** k * f.components[i] for k, f in self.coeffs.items()), sp.Integer(0))
                      for i in range(any_field.dimension)]
        return PolyVectorField(components, any_field.variables)

    def __str__(self):
        return " + ".join(f"h^{k} * ({f})" for k, f in sorted(self.coeffs.items()))


def substitute_field(a, f, order):
    """f̃ = Σ_{|τ| ≤ N} h^{|τ|-1} a(τ)/σ(τ) 𝔉_f[τ] over undecorated trees"""
    if not isinstance(f, PolyVectorField):
        raise UnsupportedInputError("field substitution takes a single vector field")
    if order < 1:
        raise AlgebraError(f"substituted field needs order >= 1, got {order}")
    if Fraction(a(vertex("o"))) != 1:
        raise AlgebraError(f"substitution needs a(•) = 1, got {a(vertex('o'))}")
    cache = {}
    coeffs = {}
    for n in range(1, order + 1):
        part = PolyVectorField([0] * f.dimension, f.variables)
        for t in enumerate_trees(n):
            coeff = Fraction(a(t)) / tree_sigma(t)
            if coeff:
                part = part + elementary_differential(f, t, cache).scaled(coeff)
        coeffs[n - 1] = part
    return HSeriesField(coeffs, order - 1)


def _bseries_of_hseries(b, ftilde, order, y0):
    field = ftilde.as_field()
    y0r = [_rational(v) for v in y0]
    total = [sp.Integer(0)] * len(y0)
    cache = {}
    for n in range(1, order + 1):
        for t in enumerate_trees(n):
            coeff = _rational(Fraction(b(t)) / tree_sigma(t))
            if coeff == 0:
                continue
            value = elementary_differential(field, t, cache).at(y0r)
            total = [s + coeff * H ** n * v for s, v in zip(total, value)]
    out = [[_fraction(v) for v in y0r]]
    for k in range(1, order + 1):
        out.append([_fraction(sp.expand(s).coeff(H, k)) for s in total])
    return out


def substitution_law_residual(a, b, f, order, y0):
    """max |B(b, f̃) − B(a⊛b, f)| over the Taylor coefficients up to h^N"""
    ftilde = substitute_field(a, f, order)
    lhs = _bseries_of_hseries(b, ftilde, order, y0)

    def composed(t):
        return convolve_plus(a, b, t, UNDECORATED)
    rhs = bseries_truncated(composed, f, order, y0)
    worst = Fraction(0)
    for left, right in zip(lhs, rhs):
        for x, y in zip(left, right):
            worst = max(worst, abs(x - y))
    log.debug("substitution law residual %s through order %d", worst, order)
    return worst


def exact_flow_coefficients(f, order, y0):
    """c_0 = y0, c_n = L^{n-1}_{f▷}(f)(y0)/n!"""
    y0r = [_rational(v) for v in y0]
    out = [[_fraction(v) for v in y0r]]
    power = f
    scale = Fraction(1)
    for n in range(1, order + 1):
        if n > 1:
            power = field_prelie(f, power)
        scale /= n
        out.append([_fraction(_rational(scale) * v) for v in power.at(y0r)])
    return out
