"""Command-line front end for the tree, word and B-series algebra"""

import argparse
import json
import logging
import sys

import arborification
import bck
import bseries
import hairer_kelly
import marcus
import prelie
import qshuffle
import settings as settings_store
import substitution
from algebra import (
    AlgebraError, ParseError, as_lincomb, parse_forest, parse_fraction,
    parse_lincomb, parse_tree, parse_word,
)
from verify import SUITES, VerifyParams, verify

log = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so run() owns the exit code"""

    def error(self, message):
        raise UsageError(message)


def _operand(text, parse_basis):
    """Either a single basis element or a 'p/q * basis + ...' combination"""
    if " * " in text or text.strip() == "0":
        return parse_lincomb(text, parse_basis)
    return as_lincomb(parse_basis(text))


def read_character(path, name=None):
    """Character file: one 'tree = p/q' per line, '#' starts a comment"""
    values = {}
    try:
        with open(path, 'r') as f:
            lines = f.readlines()
    except IOError as e:
        raise AlgebraError(f"cannot read character file {path}: {e}") from None
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tree_text, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"line {number}: expected 'tree = p/q'", line, 0)
        values[parse_tree(tree_text)] = parse_fraction(value)
    log.debug("read %d character values from %s", len(values), path)
    character = substitution.tree_character(values)
    character.name = name or str(path)
    return character


def _parse_coeffs(text):
    return qshuffle.PowerSeries.from_list([parse_fraction(c) for c in text.split(",") if c.strip()])


def _parse_point(text):
    return [parse_fraction(c) for c in text.split(",") if c.strip()]


# --- Subcommands: each returns (result, exit code) ---

def cmd_graft(args, ctx):
    return prelie.graft(_operand(args.left, parse_tree), _operand(args.right, parse_tree)), 0


def cmd_gl(args, ctx):
    return prelie.gl_product(_operand(args.left, parse_forest), _operand(args.right, parse_forest)), 0


def cmd_lpow(args, ctx):
    return prelie.left_power(_operand(args.left, parse_tree), _operand(args.right, parse_tree), args.n), 0


def cmd_coproduct(args, ctx):
    x = _operand(args.forest, parse_forest)
    if args.sub:
        return substitution.coaction(x, ctx["semigroup"]), 0
    return bck.bck_coproduct(x), 0


def cmd_qshuffle(args, ctx):
    return qshuffle.quasi_shuffle(_operand(args.left, parse_word), _operand(args.right, parse_word),
                                  ctx["semigroup"]), 0


def cmd_shuffle(args, ctx):
    return qshuffle.shuffle(_operand(args.left, parse_word), _operand(args.right, parse_word)), 0


def cmd_hoffman_exp(args, ctx):
    return qshuffle.hoffman_exp(_operand(args.word, parse_word), ctx["semigroup"]), 0


def cmd_hoffman_log(args, ctx):
    return qshuffle.hoffman_log(_operand(args.word, parse_word), ctx["semigroup"]), 0


def cmd_psi_f(args, ctx):
    return qshuffle.psi_series(_parse_coeffs(args.coeffs), _operand(args.word, parse_word), ctx["semigroup"]), 0


def cmd_psi_v(args, ctx):
    character = read_character(args.char)
    return substitution.psi_v(character, _operand(args.forest, parse_forest), ctx["semigroup"]), 0


def cmd_arborify(args, ctx):
    x = _operand(args.forest, parse_forest)
    if args.contract:
        return arborification.contract_arborify(x, ctx["semigroup"]), 0
    return arborification.arborify(x, ctx["semigroup"]), 0


def cmd_arbo_hoffman(args, ctx):
    image = arborification.arbo_hoffman_exp(_operand(args.forest, parse_forest), ctx["semigroup"])
    if args.arborify:
        return arborification.contract_arborify(image, ctx["semigroup"]), 0
    return image, 0


def cmd_marcus(args, ctx):
    field = marcus.marcus_modified_field(args.nmax)
    if args.noise:
        field = marcus.marcus_specialise(field, args.noise)
    return {marcus.marcus_label(k): v for k, v in sorted(field.items(), key=lambda kv: kv[0].key)}, 0


def cmd_hk_psi(args, ctx):
    return hairer_kelly.hk_psi(_operand(args.forest, parse_forest)), 0


def cmd_hk_psi_tilde(args, ctx):
    x = _operand(args.forest, parse_forest)
    if args.inverse:
        return hairer_kelly.hk_psi_tilde_inv(x), 0
    return hairer_kelly.hk_psi_tilde(x), 0


def cmd_bseries(args, ctx):
    field = bseries.parse_field(args.field)
    character = read_character(args.char) if args.char else substitution.inv_tree_factorial_char()
    y0 = _parse_point(args.y0) if args.y0 else [0] * field.dimension
    if len(y0) != field.dimension:
        raise AlgebraError(f"--y0 has {len(y0)} entries for a {field.dimension}-dimensional field")
    coeffs = bseries.bseries_truncated(character, field, args.order, y0)
    return {f"h^{k}": c for k, c in enumerate(coeffs)}, 0


def cmd_verify(args, ctx):
    params = VerifyParams.from_settings(
        ctx["settings"],
        max_vertices=args.max_vertices,
        max_vertices_plain=args.max_vertices_plain,
        max_word_length=args.max_word_length,
        bseries_order=args.order,
        random_trials=args.trials,
        seed=args.seed,
        workers=args.workers,
        alphabet=ctx["alphabet"],
        semigroup=ctx["semigroup"],
    )
    report = verify(args.suite, params)
    return report, 0 if report.passed else 1


# --- Output ---

def _structured(result):
    if hasattr(result, "to_dict"):
        return result.to_dict()
    if isinstance(result, dict):
        return {k: _structured(v) for k, v in result.items()}
    if isinstance(result, list):
        return [_structured(v) for v in result]
    return str(result)


def _text(result):
    if hasattr(result, "lines"):
        return "\n".join(result.lines())
    if isinstance(result, dict):
        return "\n".join(f"{k}: {_text(v)}" for k, v in result.items())
    if isinstance(result, list):
        return ", ".join(_text(v) for v in result)
    return str(result)


def build_parser():
    parser = _Parser(prog="arbor", description="Exact Hopf-algebra computations on trees and words")
    parser.add_argument("--format", choices=settings_store.FORMATS, default=None,
                        help="text (default) or structured JSON")
    parser.add_argument("--alphabet", default=None, help="comma-separated base letters, e.g. a,b")
    parser.add_argument("--semigroup", default=None, help="free | table | table:<file>")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def command(name, fn, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=fn)
        return p

    for name, fn, kind in (("graft", cmd_graft, "trees"), ("gl", cmd_gl, "forests"),
                           ("qshuffle", cmd_qshuffle, "words"), ("shuffle", cmd_shuffle, "words")):
        p = command(name, fn, f"{name} product of two {kind}")
        p.add_argument("left")
        p.add_argument("right")

    p = command("lpow", cmd_lpow, "L^n_{a▷}(b)")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("n", type=int)

    p = command("coproduct", cmd_coproduct, "BCK coproduct or substitution coaction")
    p.add_argument("forest")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--bck", action="store_true", help="admissible cuts (default)")
    mode.add_argument("--sub", action="store_true", help="extraction-contraction δ+")

    for name, fn in (("hoffman-exp", cmd_hoffman_exp), ("hoffman-log", cmd_hoffman_log)):
        command(name, fn, f"{name} of a word").add_argument("word")

    p = command("psi-f", cmd_psi_f, "ψ_f(w) for a power series f")
    p.add_argument("word")
    p.add_argument("--coeffs", required=True, help="f_1,f_2,... as p/q")

    p = command("psi-v", cmd_psi_v, "Ψ_v on a forest for a character file")
    p.add_argument("forest")
    p.add_argument("--char", required=True, help="file of 'tree = p/q' lines")

    p = command("arborify", cmd_arborify, "arborification of a forest")
    p.add_argument("forest")
    p.add_argument("--contract", action="store_true", help="contracting arborification")

    p = command("arbo-hoffman", cmd_arbo_hoffman, "Ψ_v with v = 1/τ!")
    p.add_argument("forest")
    p.add_argument("--arborify", action="store_true", help="also apply the contracting arborification")

    p = command("marcus", cmd_marcus, "Marcus canonical extension field")
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--noise", choices=marcus.NOISES, default=None)

    command("hk-psi", cmd_hk_psi, "Hairer-Kelly map ψ").add_argument("forest")
    p = command("hk-psi-tilde", cmd_hk_psi_tilde, "symmetrised Hairer-Kelly map")
    p.add_argument("forest")
    p.add_argument("--inverse", action="store_true")

    p = command("bseries", cmd_bseries, "Taylor coefficients of a B-series")
    p.add_argument("--field", required=True, help="components separated by ';'")
    p.add_argument("--char", default=None, help="character file (default 1/τ!)")
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--y0", default=None, help="comma-separated rationals")

    p = command("verify", cmd_verify, "run a verification suite")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--max-vertices", type=int, default=None)
    p.add_argument("--max-vertices-plain", type=int, default=None)
    p.add_argument("--max-word-length", type=int, default=None)
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=None)
    return parser


def run(argv):
    """Run one command and return its exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if args.verbose:
            logging.getLogger().setLevel(logging.DEBUG)
        settings = settings_store.load_settings()
        algebra_settings = settings["algebra"]
        alphabet = (settings_store.parse_alphabet(args.alphabet) if args.alphabet
                    else algebra_settings["alphabet"])
        semigroup = settings_store.resolve_semigroup(args.semigroup or algebra_settings["semigroup"],
                                                     algebra_settings.get("table"))
        ctx = {"settings": settings, "alphabet": tuple(alphabet), "semigroup": semigroup}
        result, code = args.func(args, ctx)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 2
    except AlgebraError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2

    fmt = args.format or settings["output"].get("format", "text")
    if fmt == "structured":
        print(json.dumps({"command": args.command, "result": _structured(result)}, indent=2,
                         ensure_ascii=False))
    else:
        print(_text(result))
    return code


def main():
    logging.basicConfig(level=logging.INFO, format='%(name)s: %(message)s')
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
