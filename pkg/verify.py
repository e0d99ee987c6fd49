"""Verification suites: exhaustive and randomised checks of every algebraic identity"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

import numpy as np

import arborification
import bck
import bseries
import hairer_kelly
import marcus
import prelie
import qshuffle
import substitution
from algebra import (
    FREE, UNDECORATED, UNIT, AlgebraError, Forest, LinComb, Tensor, Tree, cm,
    enumerate_forests, enumerate_trees, forests_up_to, ladder_tree,
    linear_extension_count, tree_factorial, trees_up_to, vertex,
)

log = logging.getLogger(__name__)

SUITES = ("prelie", "bck", "qshuffle", "substitution", "diagram", "adjoint", "marcus", "hk", "bseries")


@dataclass
class VerifyParams:
    max_vertices: int = 5
    max_vertices_plain: int = 7
    max_word_length: int = 6
    bseries_order: int = 4
    random_trials: int = 10
    seed: int = 20240101
    workers: int = 4
    alphabet: tuple = ("a", "b")
    semigroup: object = FREE

    @classmethod
    def from_settings(cls, settings, **overrides):
        values = dict(settings.get("verify", {}))
        values["alphabet"] = tuple(settings.get("algebra", {}).get("alphabet", cls.alphabet))
        values.update({k: v for k, v in overrides.items() if v is not None})
        known = set(cls.__dataclass_fields__)
        return cls(**{k: v for k, v in values.items() if k in known})

    def describe(self):
        return {
            "max_vertices": self.max_vertices,
            "max_vertices_plain": self.max_vertices_plain,
            "max_word_length": self.max_word_length,
            "bseries_order": self.bseries_order,
            "random_trials": self.random_trials,
            "seed": self.seed,
            "alphabet": list(self.alphabet),
            "semigroup": getattr(self.semigroup, "name", str(self.semigroup)),
        }


@dataclass
class Check:
    """One identity on one subject; run() returns True when it holds"""
    name: str
    subject: str
    run: object
    size: int = 0


@dataclass
class VerifyReport:
    suite: str
    parameters: dict
    checks_run: int = 0
    failures: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self):
        return not self.failures

    def minimal_failures(self):
        """First (smallest) counterexample per check"""
        seen = {}
        for failure in self.failures:
            seen.setdefault(failure["check"], failure)
        return list(seen.values())

    def to_dict(self):
        return {
            "suite": self.suite,
            "parameters": self.parameters,
            "checks_run": self.checks_run,
            "passed": self.passed,
            "failures": self.minimal_failures(),
            "wall_time": round(self.wall_time, 3),
        }

    def lines(self):
        status = "ok" if self.passed else "FAILED"
        out = [f"{self.suite}: {self.checks_run} checks, {len(self.failures)} failures ({status})"]
        for failure in self.minimal_failures():
            detail = f" [{failure['detail']}]" if failure.get("detail") else ""
            out.append(f"  {failure['check']}: {failure['counterexample']}{detail}")
        return out


def _run_check(check):
    try:
        ok = bool(check.run())
        detail = ""
    except AlgebraError as e:
        ok, detail = False, str(e)
    except Exception as e:
        log.warning("%s %s raised %s: %s", check.name, check.subject, type(e).__name__, e)
        ok, detail = False, f"{type(e).__name__}: {e}"
    log.debug("%s %s: %s", check.name, check.subject, "ok" if ok else "FAIL")
    return check, ok, detail


def run_checks(suite, checks, params):
    started = time.monotonic()
    report = VerifyReport(suite=suite, parameters=params.describe())
    with ThreadPoolExecutor(max_workers=max(1, params.workers)) as pool:
        results = list(pool.map(_run_check, checks))
    report.checks_run = len(results)
    failed = [(c, d) for c, ok, d in results if not ok]
    failed.sort(key=lambda cd: (cd[0].name, cd[0].size, cd[0].subject))
    report.failures = [{"check": c.name, "counterexample": c.subject, "detail": d} for c, d in failed]
    report.wall_time = time.monotonic() - started
    log.info("%s: %d checks, %d failures in %.1fs", suite, report.checks_run,
             len(report.failures), report.wall_time)
    return report


def verify(suite, params=None):
    """Run one suite (or 'all') and return its report"""
    params = params or VerifyParams()
    if suite == "all":
        checks = [c for name in SUITES for c in _SUITE_CHECKS[name](params)]
        return run_checks("all", checks, params)
    if suite not in _SUITE_CHECKS:
        raise AlgebraError(f"unknown suite {suite!r}, expected one of {', '.join(SUITES + ('all',))}")
    return run_checks(suite, _SUITE_CHECKS[suite](params), params)


def _rng(params, salt=0):
    return np.random.default_rng(params.seed + salt)


def _random_fraction(rng, bound=5, denominator=4):
    return Fraction(int(rng.integers(-bound, bound + 1)), int(rng.integers(1, denominator + 1)))


# --- pre-Lie and Grossman-Larson ---

def _cm_expansion(n):
    return LinComb((t, cm(t)) for t in enumerate_trees(n))


def prelie_checks(params):
    o = vertex("o")
    checks = []
    for t in trees_up_to(min(params.max_vertices_plain, 10)):
        checks.append(Check("linear extensions", str(t),
                            lambda t=t: linear_extension_count(t) * tree_factorial(t) == factorial(t.size),
                            t.size))
    for n in range(1, params.max_vertices_plain + 1):
        checks.append(Check("iterated grafting", f"n={n}",
                            lambda n=n: prelie.left_power(o, o, n - 1) == _cm_expansion(n), n))
    for f in forests_up_to(min(3, params.max_vertices)):
        for t in trees_up_to(min(4, params.max_vertices)):
            checks.append(Check("forest graft", f"{f} ▷ {t}",
                                lambda f=f, t=t: prelie.forest_graft(f, t) == prelie.forest_graft_direct(f, t),
                                f.size + t.size))
    small = trees_up_to(max(1, min(params.max_vertices, 5) - 2))
    for x in small:
        for y in small:
            for z in small:
                if x.size + y.size + z.size > min(params.max_vertices, 5):
                    continue
                checks.append(Check("left pre-Lie identity", f"{x}, {y}, {z}",
                                    lambda x=x, y=y, z=z: prelie.associator(x, y, z) == prelie.associator(y, x, z),
                                    x.size + y.size + z.size))
    forests = [f for f in forests_up_to(min(params.max_vertices, 4)) if f.trees]
    for a in forests:
        for b in forests:
            for c in forests:
                if a.size + b.size + c.size > min(params.max_vertices, 4):
                    continue
                checks.append(Check("GL associativity", f"{a}, {b}, {c}",
                                    lambda a=a, b=b, c=c: prelie.gl_product(prelie.gl_product(a, b), c)
                                    == prelie.gl_product(a, prelie.gl_product(b, c)),
                                    a.size + b.size + c.size))
    return checks


# --- BCK ---

def _counit_laws(f):
    once = bck.bck_coproduct(f)
    left = bck.apply_left(bck.counit, once)
    right = bck.apply_right(bck.counit, once)
    return left == LinComb.of(f) and right == LinComb.of(f)


def _gl_duality(f, g):
    product = prelie.gl_product(f, g)
    for h in enumerate_forests(f.size + g.size):
        lhs = bck.pairing_lin(product, h)
        rhs = sum((c * bck.pairing(f, t.left) * bck.pairing(g, t.right)
                   for t, c in bck.bck_coproduct(h).items()), Fraction(0))
        if lhs != rhs:
            return False
    return True


def _graded(f):
    return all(x.left.size + x.right.size == f.size for x in bck.bck_coproduct(f).bases())


def _reduced_coproduct(t):
    f = Forest.of(t)
    return bck.bck_coproduct(f) - LinComb([(Tensor(f, UNIT), 1), (Tensor(UNIT, f), 1)])


def _lie_bracket(s, t, alphabet):
    """d_s ∗ d_t − d_t ∗ d_s = d_{s▷t − t▷s} on every forest of size |s| + |t|"""
    n = s.size + t.size
    ds, dt = bck.dual_functional(s, n), bck.dual_functional(t, n)
    bracket = prelie.graft(s, t) - prelie.graft(t, s)
    for h in enumerate_forests(n, alphabet):
        lhs = bck.convolve_bck(ds, dt, h) - bck.convolve_bck(dt, ds, h)
        if lhs != bck.pairing_lin(bracket, h):
            return False
    return True


def bck_checks(params):
    checks = []
    for t in trees_up_to(params.max_vertices, params.alphabet):
        f = Forest.of(t)
        checks.append(Check("BCK coassociativity", str(t),
                            lambda f=f: bck.coassociativity_defect(f) == 0, t.size))
        checks.append(Check("BCK cuts match recursion", str(t),
                            lambda f=f: bck.bck_coproduct(f) == bck.bck_coproduct_recursive(f), t.size))
        checks.append(Check("BCK primitive part", str(t),
                            lambda t=t: all(x.left.trees and x.right.trees
                                            for x in _reduced_coproduct(t).bases()), t.size))
    for d in params.alphabet:
        checks.append(Check("BCK single vertex is primitive", d,
                            lambda d=d: not _reduced_coproduct(vertex(d)), 1))
    for f in forests_up_to(params.max_vertices, params.alphabet):
        checks.append(Check("BCK counit", str(f), lambda f=f: _counit_laws(f), f.size))
        checks.append(Check("BCK grading", str(f), lambda f=f: _graded(f), f.size))
    small = trees_up_to(3, params.alphabet)
    for s in small:
        for t in small:
            if s != t and s.size + t.size <= min(params.max_vertices, 4):
                checks.append(Check("BCK Lie bracket", f"{s}, {t}",
                                    lambda s=s, t=t: _lie_bracket(s, t, params.alphabet), s.size + t.size))
    nonempty = [f for f in forests_up_to(params.max_vertices - 1) if f.trees]
    for f in nonempty:
        for g in nonempty:
            if f.size + g.size <= params.max_vertices:
                checks.append(Check("GL/BCK duality", f"{f}, {g}",
                                    lambda f=f, g=g: _gl_duality(f, g), f.size + g.size))
    return checks


# --- quasi-shuffle ---

def _random_series(rng, bound):
    return qshuffle.PowerSeries.from_list([1] + [_random_fraction(rng) for _ in range(bound - 1)])


def qshuffle_checks(params):
    sg = params.semigroup
    checks = []
    limit = params.max_word_length
    words = qshuffle.words_up_to(limit, params.alphabet)
    for u in words:
        for v in words:
            if len(u) + len(v) > limit:
                continue
            checks.append(Check("quasi-shuffle commutativity", f"{u}, {v}",
                                lambda u=u, v=v: qshuffle.quasi_shuffle(u, v, sg) == qshuffle.quasi_shuffle(v, u, sg),
                                len(u) + len(v)))
            if len(u) + len(v) <= min(limit, 5):
                checks.append(Check("quasi-shuffle bialgebra", f"{u}, {v}",
                                    lambda u=u, v=v: qshuffle.deconcat_lin(qshuffle.quasi_shuffle(u, v, sg))
                                    == qshuffle.tensor_quasi_shuffle(qshuffle.deconcat_lin(u),
                                                                     qshuffle.deconcat_lin(v), sg),
                                    len(u) + len(v)))
                checks.append(Check("Hoffman exponential morphism", f"{u}, {v}",
                                    lambda u=u, v=v: qshuffle.hoffman_exp(qshuffle.shuffle(u, v), sg)
                                    == qshuffle.quasi_shuffle(qshuffle.hoffman_exp(u, sg),
                                                              qshuffle.hoffman_exp(v, sg), sg),
                                    len(u) + len(v)))
    small = qshuffle.words_up_to(min(limit, 5) - 2, params.alphabet)
    for u in small:
        for v in small:
            for w in small:
                if len(u) + len(v) + len(w) > min(limit, 5):
                    continue
                checks.append(Check("quasi-shuffle associativity", f"{u}, {v}, {w}",
                                    lambda u=u, v=v, w=w: qshuffle.quasi_shuffle(qshuffle.quasi_shuffle(u, v, sg), w, sg)
                                    == qshuffle.quasi_shuffle(u, qshuffle.quasi_shuffle(v, w, sg), sg),
                                    len(u) + len(v) + len(w)))
    for w in words:
        checks.append(Check("log∘exp", str(w),
                            lambda w=w: qshuffle.hoffman_log(qshuffle.hoffman_exp(w, sg), sg) == LinComb.of(w), len(w)))
        checks.append(Check("exp∘log", str(w),
                            lambda w=w: qshuffle.hoffman_exp(qshuffle.hoffman_log(w, sg), sg) == LinComb.of(w), len(w)))
        if len(w) <= 5:
            checks.append(Check("Hoffman exponential comultiplicative", str(w),
                                lambda w=w: qshuffle.deconcat_lin(qshuffle.hoffman_exp(w, sg))
                                == qshuffle.tensor_apply(lambda x: qshuffle.hoffman_exp(x, sg),
                                                         qshuffle.deconcat_lin(w)), len(w)))
            for i in params.alphabet:
                checks.append(Check("R^i intertwining", f"{w}, {i}",
                                    lambda w=w, i=i: _r_intertwines(w, i), len(w)))
    rng = _rng(params, 1)
    bound = min(limit, 5)
    for trial in range(2 * params.random_trials):
        f, g = _random_series(rng, bound), _random_series(rng, bound)
        fg = f.compose(g, bound)
        for w in qshuffle.words_up_to(bound, params.alphabet):
            checks.append(Check("ψ_f∘ψ_g = ψ_{f∘g}", f"trial {trial}, f={f}, g={g}, w={w}",
                                lambda f=f, g=g, fg=fg, w=w: qshuffle.psi_series(f, qshuffle.psi_series(g, w, sg), sg)
                                == qshuffle.psi_series(fg, w, sg), len(w)))
    return checks


def _r_intertwines(w, i):
    lhs = qshuffle.deconcat_lin(qshuffle.append_letter(w, i))
    rw = qshuffle.append_letter(w, i).bases()[0]
    rhs = LinComb.of(Tensor(rw, qshuffle.EMPTY_WORD)) + qshuffle.deconcat_lin(w).map_basis(
        lambda t: Tensor(t.left, qshuffle.append_letter(t.right, i).bases()[0]))
    return lhs == rhs


# --- substitution ---

def _grading_ok(t, sg):
    return all(x.left.edges + x.right.edges == t.edges for x in substitution.sub_coproduct(t, sg).bases())


def _bialgebra_ok(v, f, sg):
    image = substitution.psi_v(v, f, sg)
    lhs = bck.bck_coproduct(image)
    rhs = LinComb.sum(c * _tensor_of(substitution.psi_v(v, t.left, sg), substitution.psi_v(v, t.right, sg))
                      for t, c in bck.bck_coproduct(f).items())
    return lhs == rhs


def _multiplicative_ok(v, f, g, sg):
    lhs = substitution.psi_v(v, f * g, sg)
    rhs = LinComb.sum(ca * cb * LinComb.of(a * b)
                      for a, ca in substitution.psi_v(v, f, sg).items()
                      for b, cb in substitution.psi_v(v, g, sg).items())
    return lhs == rhs


def _tensor_of(a, b):
    return LinComb((Tensor(x, y), ca * cb) for x, ca in a.items() for y, cb in b.items())


def _random_general(rng, bound):
    values = {f: _random_fraction(rng) for f in forests_up_to(bound)}
    return bck.general(values, bound)


def _mixed_action_ok(phi, b, c, f):
    bc = bck.convolution_functional(b, c, f.size)
    lhs = substitution.plus_action(phi, bc, UNDECORATED)(f)
    phib = substitution.plus_action(phi, b, UNDECORATED)
    phic = substitution.plus_action(phi, c, UNDECORATED)
    rhs = sum((k * phib(t.left) * phic(t.right) for t, k in bck.bck_coproduct(f).items()), Fraction(0))
    return lhs == rhs


def substitution_checks(params):
    sg = params.semigroup
    checks = []
    for t in trees_up_to(params.max_vertices, params.alphabet):
        checks.append(Check("δ+ coassociativity", str(t),
                            lambda t=t: substitution.sub_coassociativity_defect(t, sg) == 0, t.size))
        checks.append(Check("δ+ edge grading", str(t), lambda t=t: _grading_ok(t, sg), t.size))
    for n in range(1, params.max_vertices + 1):
        for t in enumerate_trees(n, params.alphabet):
            if all(len(s.children) <= 1 for s in _subtrees(t)):
                decorations = t.decorations()
                checks.append(Check("ladder formula", str(t),
                                    lambda t=t, d=decorations: substitution.sub_coproduct(t, sg)
                                    == substitution.ladder_sub_coproduct(d, sg), n))
    bound = min(params.max_vertices, 4)
    forests = [f for f in forests_up_to(bound, params.alphabet) if f.trees]
    rng = _rng(params, 2)
    for trial in range(max(1, params.random_trials // 5)):
        u = substitution.random_character(rng, bound, params.alphabet)
        v = substitution.random_character(rng, bound, params.alphabet)
        vu = substitution.convolution_character(v, u, sg)
        v_inv = substitution.invert_character(v, semigroup=sg)
        v_alpha = substitution.pseudo_antipode_inverse(v, semigroup=sg)
        for f in forests:
            checks.append(Check("Ψ_u∘Ψ_v = Ψ_{v⊛u}", f"trial {trial}, {f}",
                                lambda u=u, v=v, vu=vu, f=f: substitution.psi_v(u, substitution.psi_v(v, f, sg), sg)
                                == substitution.psi_v(vu, f, sg), f.size))
            checks.append(Check("Ψ_v bialgebra morphism", f"trial {trial}, {f}",
                                lambda v=v, f=f: _bialgebra_ok(v, f, sg), f.size))
            checks.append(Check("Ψ_{v⁻}∘Ψ_v = id", f"trial {trial}, {f}",
                                lambda v=v, vi=v_inv, f=f: substitution.psi_v(vi, substitution.psi_v(v, f, sg), sg)
                                == LinComb.of(f), f.size))
        for t in trees_up_to(bound, params.alphabet):
            checks.append(Check("inverse matches pseudo-antipode", f"trial {trial}, {t}",
                                lambda a=v_inv, b=v_alpha, t=t: a(t) == b(t), t.size))
        for f in forests:
            for g in forests:
                if f.size + g.size <= bound:
                    checks.append(Check("Ψ_v multiplicative", f"trial {trial}, {f}, {g}",
                                        lambda v=v, f=f, g=g: _multiplicative_ok(v, f, g, sg), f.size + g.size))
        phi = substitution.random_character(rng, bound)
        b, c = _random_general(rng, bound), _random_general(rng, bound)
        for f in forests_up_to(bound):
            checks.append(Check("φ⊛(b∗c) = (φ⊛b)∗(φ⊛c)", f"trial {trial}, {f}",
                                lambda phi=phi, b=b, c=c, f=f: _mixed_action_ok(phi, b, c, f), f.size))
    return checks


def _subtrees(t):
    yield t
    for c in t.children:
        yield from _subtrees(c)


# --- arborification diagram ---

def _arborification_map(contract):
    return arborification.contract_arborify if contract else arborification.arborify


def _coalgebra_ok(f, contract, sg):
    arb = _arborification_map(contract)
    lhs = qshuffle.deconcat_lin(arb(f, sg))
    rhs = LinComb.sum(c * _tensor_of(arb(t.left, sg), arb(t.right, sg)) for t, c in bck.bck_coproduct(f).items())
    return lhs == rhs


def diagram_checks(params):
    sg = params.semigroup
    checks = []
    for t in trees_up_to(params.max_vertices, params.alphabet):
        checks.append(Check("𝔞^c∘Ψ_v = exp_H∘𝔞", str(t),
                            lambda t=t: arborification.contract_arborify(arborification.arbo_hoffman_exp(t, sg), sg)
                            == qshuffle.hoffman_exp(arborification.arborify(t, sg), sg), t.size))
    for f in forests_up_to(params.max_vertices, params.alphabet):
        for contract in (False, True):
            tag = "𝔞^c" if contract else "𝔞"
            checks.append(Check(f"{tag} coalgebra morphism", str(f),
                                lambda f=f, c=contract: _coalgebra_ok(f, c, sg), f.size))
            checks.append(Check(f"{tag} by cuts", str(f),
                                lambda f=f, c=contract: arborification.arborify_by_cuts(f, c, sg)
                                == _arborification_map(c)(f, sg), f.size))
    forests = [f for f in forests_up_to(params.max_vertices - 1, params.alphabet) if f.trees]
    for f in forests:
        for g in forests:
            if f.size + g.size <= params.max_vertices:
                checks.append(Check("𝔞 algebra morphism", f"{f}, {g}",
                                    lambda f=f, g=g: arborification.arborify(f * g, sg)
                                    == qshuffle.shuffle(arborification.arborify(f, sg), arborification.arborify(g, sg)),
                                    f.size + g.size))
                checks.append(Check("𝔞^c algebra morphism", f"{f}, {g}",
                                    lambda f=f, g=g: arborification.contract_arborify(f * g, sg)
                                    == qshuffle.quasi_shuffle(arborification.contract_arborify(f, sg),
                                                              arborification.contract_arborify(g, sg), sg),
                                    f.size + g.size))
    rng = _rng(params, 3)
    for trial in range(params.random_trials):
        f = _random_series(rng, params.max_vertices)
        for w in qshuffle.words_up_to(params.max_vertices, params.alphabet)[1:]:
            checks.append(Check("ladder characters", f"trial {trial}, {w}",
                                lambda f=f, w=w: substitution.psi_v(arborification.ladder_character(f),
                                                                    arborification.ladder(w), sg)
                                .map_basis(arborification.ladder_word) == qshuffle.psi_series(f, w, sg), len(w)))
    return checks


# --- adjoint ---

def adjoint_checks(params):
    checks = []
    o = vertex("o")
    top = min(params.max_vertices_plain, 6)
    adjoint = arborification.arbo_hoffman_adjoint("o", top, UNDECORATED)
    for n in range(1, top + 1):
        checks.append(Check("adjoint generator", f"n={n}",
                            lambda n=n: factorial(n) * adjoint.filter(lambda t: t.size == n)
                            == prelie.left_power(o, o, n - 1), n))
    bound = min(params.max_vertices, 4)
    rng = _rng(params, 4)
    characters = [("1/τ!", substitution.inv_tree_factorial_char()), ("unit", substitution.unit_character())]
    characters += [(f"random {k}", substitution.random_character(rng, bound, params.alphabet))
                   for k in range(params.random_trials)]
    for name, a in characters:
        for n in range(1, bound + 1):
            checks.append(Check("flow adjoint", f"{name}, weight ≤ {n}",
                                lambda a=a, n=n: arborification.flow_adjoint_residual(a, n, params.alphabet) == 0, n))
    plain = [("1/τ!", substitution.inv_tree_factorial_char()), ("unit", substitution.unit_character())]
    plain += [(f"random {k}", substitution.random_character(rng, bound)) for k in range(params.random_trials)]
    for name, a in plain:
        for n in range(1, bound + 1):
            checks.append(Check("undecorated flow adjoint", f"{name}, vertices ≤ {n}",
                                lambda a=a, n=n: arborification.flow_adjoint_residual(a, n, ("o",), UNDECORATED)
                                == 0, n))
    v = substitution.inv_tree_factorial_char()
    v_inv = substitution.invert_character(v, semigroup=params.semigroup)
    for f in forests_up_to(bound, params.alphabet):
        checks.append(Check("inverse renormalisation", str(f),
                            lambda f=f: substitution.psi_v(v_inv, substitution.psi_v(v, f, params.semigroup),
                                                           params.semigroup) == LinComb.of(f), f.size))
    return checks


# --- Marcus ---

def marcus_checks(params):
    b = vertex(marcus.DIFFUSION)
    top = params.max_vertices
    field = marcus.marcus_modified_field(top)
    checks = [
        Check("Itô-Stratonovich term", "n=2",
              lambda: field[marcus.marcus_letter(2)] == Fraction(1, 2) * prelie.graft(b, b), 2),
        Check("third variation", "n=3",
              lambda: field[marcus.marcus_letter(3)]
              == Fraction(1, 6) * (LinComb.of(Tree(marcus.DIFFUSION, (b, b))) + LinComb.of(ladder_tree("111"))), 3),
    ]
    for n in range(1, top + 1):
        checks.append(Check("Marcus field matches adjoint", f"n={n}",
                            lambda n=n: arborification.arbo_hoffman_adjoint(marcus.marcus_letter(n), n)
                            .filter(lambda t: t.size == n) == field[marcus.marcus_letter(n)], n))
    wiener = marcus.marcus_specialise(field, "wiener")
    checks.append(Check("Wiener drift", "wiener",
                        lambda: wiener[marcus.DRIFT] == LinComb.of(vertex(marcus.DRIFT))
                        + Fraction(1, 2) * prelie.graft(b, b), 2))
    return checks


# --- Hairer-Kelly ---

def hk_checks(params):
    checks = []
    for t in trees_up_to(params.max_vertices):
        checks.append(Check("π∘ψ = ψ̃", str(t),
                            lambda t=t: hairer_kelly.hk_psi(t).map_basis(hairer_kelly.project_forest)
                            == hairer_kelly.hk_psi_tilde(t), t.size))
        checks.append(Check("ψ̃ triangular", str(t),
                            lambda t=t: all(len(f.trees) > 1 for f in
                                            (hairer_kelly.hk_psi_tilde(t) - LinComb.of(Forest.of(t))).bases()),
                            t.size))
    for f in forests_up_to(params.max_vertices):
        if not f.trees:
            continue
        checks.append(Check("ψ̃∘ψ̃⁻¹ = id", str(f),
                            lambda f=f: hairer_kelly.hk_psi_tilde(hairer_kelly.hk_psi_tilde_inv(f)) == LinComb.of(f),
                            f.size))
        checks.append(Check("ψ̃⁻¹∘ψ̃ = id", str(f),
                            lambda f=f: hairer_kelly.hk_psi_tilde_inv(hairer_kelly.hk_psi_tilde(f)) == LinComb.of(f),
                            f.size))
    small = [f for f in forests_up_to(min(params.max_vertices, 4) - 1) if f.trees]
    for f in small:
        for g in small:
            if f.size + g.size <= min(params.max_vertices, 4):
                checks.append(Check("ψ shuffle morphism", f"{f}, {g}",
                                    lambda f=f, g=g: hairer_kelly.hk_psi(f * g)
                                    == hairer_kelly.tensor_shuffle(hairer_kelly.hk_psi(f), hairer_kelly.hk_psi(g)),
                                    f.size + g.size))
    for n in range(1, min(params.max_vertices, 4) + 1):
        checks.append(Check("Hairer-Kelly flow identity", f"N={n}",
                            lambda n=n: hairer_kelly.hk_flow_identity_residual(n) == 0, n))
    return checks


# --- B-series ---

def _prelie_morphism_ok(f, s, t):
    lhs = bseries.elementary_differential_lin(f, prelie.graft(s, t))
    rhs = bseries.field_prelie(bseries.elementary_differential(f, s), bseries.elementary_differential(f, t))
    return lhs == rhs


def bseries_checks(params):
    order = params.bseries_order
    rng = _rng(params, 5)
    y = bseries.parse_field("y")
    y2 = bseries.parse_field("y^2")
    quadratic = bseries.random_quadratic_field(rng, 2)
    v = substitution.inv_tree_factorial_char()
    checks = [
        Check("flow of y' = y", "y", lambda: bseries.bseries_truncated(v, y, order, [1])
              == [[Fraction(1, factorial(k))] for k in range(order + 1)], order),
        Check("flow of y' = y^2", "y^2", lambda: bseries.bseries_truncated(v, y2, order, [1])
              == [[Fraction(1)] for _ in range(order + 1)], order),
        Check("flow expansion", "y^2", lambda: bseries.bseries_truncated(v, y2, order, [Fraction(1, 2)])
              == bseries.exact_flow_coefficients(y2, order, [Fraction(1, 2)]), order),
        Check("flow expansion", str(quadratic), lambda: bseries.bseries_truncated(v, quadratic, order, [1, -1])
              == bseries.exact_flow_coefficients(quadratic, order, [1, -1]), order),
    ]
    for s in trees_up_to(order):
        for t in trees_up_to(order):
            if s.size + t.size <= order + 1:
                checks.append(Check("elementary differentials are pre-Lie", f"{s}, {t}",
                                    lambda s=s, t=t: _prelie_morphism_ok(quadratic, s, t), s.size + t.size))
    pairs = [("1/τ!, 1/τ!", v, v)]
    for k in range(params.random_trials):
        pairs.append((f"random {k}", substitution.random_character(rng, order),
                      substitution.random_character(rng, order)))
    for name, a, b in pairs:
        checks.append(Check("substitution law", f"{name}, y^2",
                            lambda a=a, b=b: bseries.substitution_law_residual(a, b, y2, order, [1]) == 0, order))
    checks.append(Check("substitution law", f"1/τ!, 1/τ!, {quadratic}",
                        lambda: bseries.substitution_law_residual(v, v, quadratic, order, [1, 2]) == 0, order))
    a = pairs[-1][1]
    for k in range(1, order + 1):
        checks.append(Check("grading", f"h^{k}", lambda k=k: _grading_consistent(a, y2, k, order), k))
    return checks


def _grading_consistent(a, f, k, order):
    def truncated(t):
        return a(t) if t.size == k else Fraction(0)
    full = bseries.bseries_truncated(a, f, order, [1])
    only = bseries.bseries_truncated(truncated, f, order, [1])
    return full[k] == only[k]


_SUITE_CHECKS = {
    "prelie": prelie_checks,
    "bck": bck_checks,
    "qshuffle": qshuffle_checks,
    "substitution": substitution_checks,
    "diagram": diagram_checks,
    "adjoint": adjoint_checks,
    "marcus": marcus_checks,
    "hk": hk_checks,
    "bseries": bseries_checks,
}
