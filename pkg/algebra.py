"""Canonical trees, forests, words and rational linear combinations"""

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import factorial

UNDECORATED_LETTER = "o"
AUX_LETTER = "#"  # never produced by the parser
UNIT_NAMES = ("1", "e")  # empty forest and empty word; such letters print as "[1]", "[e]"

_IDENT = re.compile(r"[A-Za-z0-9_]+")


class AlgebraError(ValueError):
    """Base error for invalid algebraic input"""


class ParseError(AlgebraError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


class DegreeBoundError(AlgebraError):
    """A functional or series was evaluated beyond the degree it is defined to"""


class UnsupportedInputError(AlgebraError):
    """Input outside what an operation is defined on"""


# --- Semigroups ---

@dataclass(frozen=True, order=True)
class SemigroupElement:
    """Decoration: a nonempty sorted multiset of base letters"""
    letters: tuple

    def __post_init__(self):
        if not self.letters:
            raise AlgebraError("semigroup element needs at least one letter")
        object.__setattr__(self, 'letters', tuple(sorted(self.letters)))

    @property
    def weight(self):
        return len(self.letters)

    @property
    def key(self):
        return (len(self.letters), self.letters)

    def __str__(self):
        if len(self.letters) == 1 and self.letters[0] not in UNIT_NAMES:
            return self.letters[0]
        return "[" + " ".join(self.letters) + "]"

    __repr__ = __str__


def letter(name):
    """Coerce a base-letter name (or an element) into a SemigroupElement"""
    if isinstance(name, SemigroupElement):
        return name
    return SemigroupElement((str(name),))


def base_name(a):
    """Name of a base letter given as a string or a single-letter element"""
    if isinstance(a, SemigroupElement):
        if a.weight != 1:
            raise AlgebraError(f"{a} is not a base letter")
        return a.letters[0]
    return str(a)


class FreeSemigroup:
    """Free commutative semigroup: the bracket is multiset union"""

    name = "free"

    def mul(self, x, y):
        return SemigroupElement(x.letters + y.letters)

    def __eq__(self, other):
        return isinstance(other, FreeSemigroup)

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return "FreeSemigroup()"


class TableSemigroup:
    """Finite commutative semigroup given by a multiplication table on letters"""

    name = "table"

    def __init__(self, table):
        entries = {}
        for pair, value in table.items():
            if isinstance(pair, str):
                pair = tuple(pair.split())
            a, b = pair
            entries[tuple(sorted((a, b)))] = str(value)
        self.table = entries
        self._frozen = frozenset(entries.items())
        self.letters = sorted({x for pair in entries for x in pair} | set(entries.values()))
        self._check_associative()

    def _check_associative(self):
        for a, b, c in itertools.product(self.letters, repeat=3):
            left = self._lookup(self._lookup(a, b), c)
            right = self._lookup(a, self._lookup(b, c))
            if left != right:
                raise AlgebraError(f"semigroup table is not associative at ({a}, {b}, {c})")

    def _lookup(self, a, b):
        try:
            return self.table[tuple(sorted((a, b)))]
        except KeyError:
            raise AlgebraError(f"semigroup table has no product for [{a} {b}]") from None

    def mul(self, x, y):
        if x.weight != 1 or y.weight != 1:
            raise AlgebraError(f"table semigroup elements are single letters, got {x} and {y}")
        return letter(self._lookup(x.letters[0], y.letters[0]))

    def __eq__(self, other):
        return isinstance(other, TableSemigroup) and self._frozen == other._frozen

    def __hash__(self):
        return hash(self._frozen)

    def __repr__(self):
        return f"TableSemigroup({self.table!r})"


FREE = FreeSemigroup()
# [o o] = o: contraction forgets nothing but shape
UNDECORATED = TableSemigroup({("o", "o"): "o"})


def semigroup_mul(xs, semigroup=None):
    """[x_1 ... x_n], with [x] = x"""
    semigroup = semigroup or FREE
    xs = [letter(x) for x in xs]
    if not xs:
        raise AlgebraError("empty semigroup product")
    return reduce(semigroup.mul, xs)


# --- Trees, forests, words ---

def _tree_key(t):
    return t.key


@dataclass(frozen=True, eq=False)
class Tree:
    """Decorated non-planar rooted tree, children kept in canonical order"""
    root: SemigroupElement
    children: tuple = ()

    def __post_init__(self):
        kids = tuple(sorted(self.children, key=_tree_key))
        object.__setattr__(self, 'children', kids)
        object.__setattr__(self, 'size', 1 + sum(c.size for c in kids))
        object.__setattr__(self, 'key', (self.size, self.root.key, tuple(c.key for c in kids)))
        object.__setattr__(self, '_hash', hash(self.key))

    @property
    def edges(self):
        return self.size - 1

    @property
    def weight(self):
        return self.root.weight + sum(c.weight for c in self.children)

    def decorations(self):
        """Vertex decorations in preorder"""
        out = [self.root]
        for c in self.children:
            out.extend(c.decorations())
        return out

    def __eq__(self, other):
        return isinstance(other, Tree) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        if not self.children:
            return str(self.root)
        return f"{self.root}(" + ",".join(str(c) for c in self.children) + ")"

    __repr__ = __str__


@dataclass(frozen=True, eq=False)
class Forest:
    """Multiset of trees; the empty forest is the unit"""
    trees: tuple = ()

    def __post_init__(self):
        trees = tuple(sorted(self.trees, key=_tree_key))
        object.__setattr__(self, 'trees', trees)
        object.__setattr__(self, 'size', sum(t.size for t in trees))
        object.__setattr__(self, 'key', (self.size, len(trees), tuple(t.key for t in trees)))
        object.__setattr__(self, '_hash', hash(self.key))

    @classmethod
    def of(cls, *trees):
        return cls(tuple(trees))

    @property
    def edges(self):
        return self.size - len(self.trees)

    @property
    def weight(self):
        return sum(t.weight for t in self.trees)

    def __len__(self):
        return len(self.trees)

    def __iter__(self):
        return iter(self.trees)

    def __mul__(self, other):
        if isinstance(other, Tree):
            other = Forest.of(other)
        if not isinstance(other, Forest):
            return NotImplemented
        return Forest(self.trees + other.trees)

    def __eq__(self, other):
        return isinstance(other, Forest) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        if not self.trees:
            return "1"
        return "·".join(str(t) for t in self.trees)

    __repr__ = __str__


UNIT = Forest()


@dataclass(frozen=True, eq=False)
class Word:
    """Finite sequence of semigroup elements; the empty word is the unit"""
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple(letter(x) for x in self.letters)
        object.__setattr__(self, 'letters', letters)
        object.__setattr__(self, 'key', tuple(x.key for x in letters))
        object.__setattr__(self, '_hash', hash(self.key))

    @classmethod
    def of(cls, *letters):
        return cls(tuple(letters))

    @property
    def weight(self):
        return sum(x.weight for x in self.letters)

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        return Word(self.letters + other.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and self.key == other.key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        if not self.letters:
            return "e"
        return ".".join(str(x) for x in self.letters)

    __repr__ = __str__


EMPTY_WORD = Word()


@dataclass(frozen=True, eq=False)
class Tensor:
    """Pure tensor of two basis objects"""
    left: object
    right: object

    def __post_init__(self):
        object.__setattr__(self, 'key', (self.left.key, self.right.key))
        object.__setattr__(self, '_hash', hash(self.key))

    def __eq__(self, other):
        return isinstance(other, Tensor) and self.left == other.left and self.right == other.right

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.key < other.key

    def __str__(self):
        return f"{self.left} ⊗ {self.right}"

    __repr__ = __str__


# --- Linear combinations ---

class LinComb:
    """Finite rational linear combination of basis objects; never stores zeros"""

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, 'items') else terms
            for basis, coeff in items:
                coeff = Fraction(coeff)
                if coeff:
                    total = clean.get(basis, 0) + coeff
                    if total:
                        clean[basis] = total
                    else:
                        clean.pop(basis, None)
        self._terms = clean

    @classmethod
    def of(cls, basis, coeff=1):
        return cls({basis: coeff})

    @classmethod
    def sum(cls, parts):
        acc = {}
        for part in parts:
            for basis, coeff in part._terms.items():
                acc[basis] = acc.get(basis, 0) + coeff
        return cls(acc)

    def items(self):
        """Terms in deterministic (canonical key) order"""
        return sorted(self._terms.items(), key=lambda kv: kv[0].key)

    def bases(self):
        return [b for b, _ in self.items()]

    def coefficient(self, basis):
        return self._terms.get(basis, Fraction(0))

    def map(self, fn):
        """Linear extension of fn: basis -> LinComb"""
        return LinComb.sum(coeff * as_lincomb(fn(basis)) for basis, coeff in self._terms.items())

    def map_basis(self, fn):
        """Linear extension of a basis-to-basis map"""
        acc = {}
        for basis, coeff in self._terms.items():
            image = fn(basis)
            acc[image] = acc.get(image, 0) + coeff
        return LinComb(acc)

    def filter(self, predicate):
        return LinComb({b: c for b, c in self._terms.items() if predicate(b)})

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other):
        return LinComb.sum([self, as_lincomb(other)])

    def __sub__(self, other):
        return LinComb.sum([self, -as_lincomb(other)])

    def __neg__(self):
        return LinComb({b: -c for b, c in self._terms.items()})

    def __mul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return LinComb({b: c * scalar for b, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, LinComb):
            other = as_lincomb(other)
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{coeff} * {basis}" for basis, coeff in self.items())

    __repr__ = __str__

    def to_dict(self):
        """Structured form mirroring the text format"""
        return [{"coeff": str(coeff), "basis": str(basis)} for basis, coeff in self.items()]


ZERO = LinComb()


def as_lincomb(x):
    if isinstance(x, LinComb):
        return x
    return LinComb.of(x)


def bilinear(fn, a, b):
    """Extend fn(basis, basis) -> LinComb bilinearly"""
    a, b = as_lincomb(a), as_lincomb(b)
    return LinComb.sum(ca * cb * as_lincomb(fn(x, y)) for x, ca in a.items() for y, cb in b.items())


def forest_product(a, b):
    """Product of two combinations of forests (or trees)"""
    return bilinear(lambda x, y: _as_forest(x) * _as_forest(y), a, b)


def forest_product_all(parts):
    return reduce(forest_product, parts, LinComb.of(UNIT))


def tensor_product(a, b):
    """Legwise product of two combinations of forest tensors"""
    return bilinear(lambda x, y: Tensor(_as_forest(x.left) * _as_forest(y.left),
                                        _as_forest(x.right) * _as_forest(y.right)), a, b)


def _as_forest(x):
    if isinstance(x, Tree):
        return Forest.of(x)
    return x


# --- Constructors ---

def b_plus(i, forest=UNIT):
    """Graft the trees of a forest onto a common new root decorated by i"""
    if isinstance(forest, Tree):
        forest = Forest.of(forest)
    return Tree(letter(i), forest.trees)


def b_minus(t):
    """Forest of the root's children"""
    return Forest(t.children)


def vertex(i):
    return Tree(letter(i))


def ladder_tree(decorations):
    """Ladder whose root carries decorations[0] and leaf decorations[-1]"""
    t = None
    for d in reversed(list(decorations)):
        t = Tree(letter(d), () if t is None else (t,))
    if t is None:
        raise AlgebraError("a ladder needs at least one vertex")
    return t


# --- Vertex-indexed view (preorder), used by cut and contraction enumerators ---

def flatten(t):
    """Preorder decorations and parent indices; parents[0] is None"""
    labels, parents = [], []

    def visit(node, parent):
        idx = len(labels)
        labels.append(node.root)
        parents.append(parent)
        for c in node.children:
            visit(c, idx)

    visit(t, None)
    return labels, parents


def child_lists(parents):
    kids = [[] for _ in parents]
    for v, p in enumerate(parents):
        if p is not None:
            kids[p].append(v)
    return kids


def build_subtree(v, labels, kids, keep):
    """Tree below vertex v following only children c with keep(c)"""
    return Tree(labels[v], tuple(build_subtree(c, labels, kids, keep) for c in kids[v] if keep(c)))


# --- Text formats ---

class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message):
        raise ParseError(message, self.text, self.pos)

    def skip_spaces(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def ident(self):
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.error("expected a letter")
        self.pos = m.end()
        return m.group(0)

    def letter(self):
        if self.peek() == "[":
            self.pos += 1
            self.skip_spaces()
            names = [self.ident()]
            while True:
                self.skip_spaces()
                if self.peek() == "]":
                    self.pos += 1
                    return SemigroupElement(tuple(names))
                names.append(self.ident())
        return letter(self.ident())

    def tree(self):
        root = self.letter()
        children = []
        if self.peek() == "(":
            self.pos += 1
            while True:
                self.skip_spaces()
                children.append(self.tree())
                self.skip_spaces()
                if self.peek() != ",":
                    break
                self.pos += 1
            self.expect(")")
        return Tree(root, tuple(children))

    def done(self):
        self.skip_spaces()
        if self.pos != len(self.text):
            self.error("unexpected trailing input")


def parse_tree(text):
    """Parse 'i1(i2,i3)' style text into a canonical Tree"""
    text = text.strip()
    if not text:
        raise ParseError("empty input", text, 0)
    p = _Parser(text)
    t = p.tree()
    p.done()
    return t


def parse_forest(text):
    """Trees joined by '·' or whitespace; '1' alone is the empty forest"""
    text = text.strip()
    if not text:
        raise ParseError("empty input", text, 0)
    if text == "1":
        return UNIT
    p = _Parser(text)
    trees = [p.tree()]
    while True:
        p.skip_spaces()
        if p.pos >= len(text):
            break
        if p.peek() == "·":
            p.pos += 1
            p.skip_spaces()
        trees.append(p.tree())
    return Forest(tuple(trees))


def parse_word(text):
    """Letters joined by '.'; 'e' alone is the empty word"""
    text = text.strip()
    if not text:
        raise ParseError("empty input", text, 0)
    if text == "e":
        return EMPTY_WORD
    p = _Parser(text)
    letters = [p.letter()]
    while p.peek() == ".":
        p.pos += 1
        letters.append(p.letter())
    p.done()
    return Word(tuple(letters))


def parse_fraction(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError("expected a rational p/q", text, 0) from None


def parse_lincomb(text, parse_basis):
    """Terms 'p/q * basis' joined by ' + '"""
    text = text.strip()
    if text == "0":
        return ZERO
    terms = []
    for chunk in text.split(" + "):
        coeff, sep, basis = chunk.partition(" * ")
        if not sep:
            raise ParseError("expected 'p/q * basis'", chunk, 0)
        terms.append((parse_basis(basis), parse_fraction(coeff)))
    return LinComb(terms)


# --- Statistics ---

@dataclass(frozen=True)
class TreeStats:
    vertices: int
    edges: int
    factorial: int
    sigma: int
    cm: Fraction = field(default=Fraction(1))


@lru_cache(maxsize=None)
def tree_factorial(t):
    """t! = |t| times the product of the children's factorials"""
    out = t.size
    for c in t.children:
        out *= tree_factorial(c)
    return out


def _multiplicity_classes(trees):
    return [(t, len(list(group))) for t, group in itertools.groupby(trees)]


@lru_cache(maxsize=None)
def tree_sigma(t):
    """|Aut(t)|: product over classes of identical children of sigma^m * m!"""
    out = 1
    for child, m in _multiplicity_classes(t.children):
        out *= tree_sigma(child) ** m * factorial(m)
    return out


def forest_sigma(forest):
    """|Aut(F)|, including the permutations of identical trees"""
    if isinstance(forest, Tree):
        return tree_sigma(forest)
    out = 1
    for t, m in _multiplicity_classes(forest.trees):
        out *= tree_sigma(t) ** m * factorial(m)
    return out


def cm(t):
    """Connes-Moscovici coefficient |t|!/(t! sigma(t))"""
    return Fraction(factorial(t.size), tree_factorial(t) * tree_sigma(t))


def tree_stats(t):
    return TreeStats(vertices=t.size, edges=t.edges, factorial=tree_factorial(t),
                     sigma=tree_sigma(t), cm=cm(t))


MAX_LINEAR_EXTENSION_VERTICES = 10


def linear_extension_count(t):
    """Count total orders of V(t) in which every parent precedes its children"""
    if t.size > MAX_LINEAR_EXTENSION_VERTICES:
        raise AlgebraError(f"refusing to enumerate orders of {t.size} vertices "
                           f"(limit {MAX_LINEAR_EXTENSION_VERTICES})")
    _, parents = flatten(t)
    kids = child_lists(parents)

    def count(available, remaining):
        if not remaining:
            return 1
        total = 0
        for v in available:
            total += count((available - {v}) | set(kids[v]), remaining - 1)
        return total

    return count(frozenset([0]), t.size)


# --- Enumeration ---

def _decorations_free(alphabet):
    """Decorations of weight k for weighted enumeration: all multisets of size k"""
    letters = sorted(str(a) for a in alphabet)

    def of_weight(k):
        return [SemigroupElement(c) for c in itertools.combinations_with_replacement(letters, k)]
    return of_weight


def _decorations_single(alphabet):
    letters = sorted(letter(a) for a in alphabet)

    def of_weight(k):
        return letters if k == 1 else []
    return of_weight


class _TreeGenerator:
    """Trees graded by a weight that sums decoration weights over vertices"""

    def __init__(self, decorations):
        self.decorations = decorations
        self._trees = {}
        self._forests = {}

    def trees(self, n):
        if n not in self._trees:
            out = []
            for k in range(1, n + 1):
                for root in self.decorations(k):
                    for f in self.forests(n - k):
                        out.append(Tree(root, f.trees))
            self._trees[n] = sorted(set(out), key=_tree_key)
        return self._trees[n]

    def forests(self, n):
        """All multisets of trees of total weight n"""
        if n not in self._forests:
            pool = [(t, m) for m in range(1, n + 1) for t in self.trees(m)]
            out = []

            def grow(start, remaining, chosen):
                if remaining == 0:
                    out.append(Forest(tuple(chosen)))
                    return
                for idx in range(start, len(pool)):
                    t, w = pool[idx]
                    if w <= remaining:
                        chosen.append(t)
                        grow(idx, remaining - w, chosen)
                        chosen.pop()

            grow(0, n, [])
            self._forests[n] = sorted(set(out), key=lambda f: f.key)
        return self._forests[n]


@lru_cache(maxsize=None)
def _vertex_generator(alphabet):
    return _TreeGenerator(_decorations_single(alphabet))


@lru_cache(maxsize=None)
def _weight_generator(alphabet):
    return _TreeGenerator(_decorations_free(alphabet))


def _alphabet_key(alphabet):
    if isinstance(alphabet, str):
        alphabet = [alphabet]
    out = tuple(sorted({base_name(a) for a in alphabet}))
    if not out:
        raise AlgebraError("alphabet must be nonempty")
    return out


def enumerate_trees(n, alphabet=(UNDECORATED_LETTER,)):
    """All canonical trees with exactly n vertices decorated by base letters"""
    if n < 1:
        raise AlgebraError(f"tree size must be >= 1, got {n}")
    return list(_vertex_generator(_alphabet_key(alphabet)).trees(n))


def enumerate_forests(n, alphabet=(UNDECORATED_LETTER,)):
    """All forests with exactly n vertices decorated by base letters (n=0 gives the unit)"""
    if n < 0:
        raise AlgebraError(f"forest size must be >= 0, got {n}")
    return list(_vertex_generator(_alphabet_key(alphabet)).forests(n))


def enumerate_weighted_trees(w, alphabet):
    """All trees of weight w whose vertices carry arbitrary free-semigroup decorations"""
    if w < 1:
        raise AlgebraError(f"tree weight must be >= 1, got {w}")
    return list(_weight_generator(_alphabet_key(alphabet)).trees(w))


def trees_up_to(n, alphabet=(UNDECORATED_LETTER,)):
    return [t for m in range(1, n + 1) for t in enumerate_trees(m, alphabet)]


def forests_up_to(n, alphabet=(UNDECORATED_LETTER,)):
    return [f for m in range(0, n + 1) for f in enumerate_forests(m, alphabet)]


def is_undecorated(t):
    return all(d == letter(UNDECORATED_LETTER) for d in t.decorations())
