"""Command-line entry point: ``ggl <subcommand> ...``.

Results go to stdout (or ``--output``); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Sequence

from . import cancellation, density, entropy, modular, readability, words
from .errors import CapabilityError, CapError

DEFAULT_SEED = 0xC0FFEE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_seed, default=DEFAULT_SEED, help="RNG seed (default 0xC0FFEE)")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
    p.add_argument("--output", default=None, help="write results to this path instead of stdout")
    p.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS, help="progress on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ggl", description="Random group presentations, readability and genericity tools.")
    parser.add_argument("-v", "--verbose", action="store_true", help="progress messages on stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("count", help="number of cyclically reduced words of length n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="count by enumeration instead of formula")
    _common(p)

    p = sub.add_parser("enumerate", help="list cyclically reduced words of length n")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _common(p)

    p = sub.add_parser("sample", help="uniform random words or a density-model presentation")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=1, help="number of words")
    p.add_argument("--d", type=float, default=None, help="sample a presentation at density d")
    _common(p)

    for name, helptext in (("readable", "decide (mu[,L])-readability"), ("good", "decide (mu,L)-goodness")):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("word")
        p.add_argument("--k", type=int, required=True)
        p.add_argument("--mu", type=float, required=True)
        p.add_argument("--L", type=int, default=None, required=(name == "good"))
        p.add_argument("--mode", choices=readability.MODES, default="quotient")
        _common(p)

    p = sub.add_parser("check", help="small-cancellation and relator checks")
    p.add_argument("relators", nargs="+")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=1 / 6)
    p.add_argument("--coverage", action="store_true")
    p.add_argument("--no-proper-powers", action="store_true")
    p.add_argument("--primitive", action="store_true")
    _common(p)

    p = sub.add_parser("entropy", help="finite-n genericity entropy profile")
    p.add_argument("--predicate", choices=entropy.PREDICATES, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mu", type=float, default=0.3)
    p.add_argument("--L", type=int, default=2)
    p.add_argument("--lambda", dest="lam", type=float, default=1 / 6)
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "mc"), default="exact")
    p.add_argument("--samples", type=int, default=10_000)
    _common(p)

    p = sub.add_parser("density", help="suite pass fractions over density values")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    grid = p.add_mutually_exclusive_group(required=True)
    grid.add_argument("--d", type=float)
    grid.add_argument("--d-grid", help="comma-separated densities")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--suite", required=True)
    _common(p)

    p = sub.add_parser("modular", help="modular-group word counts, orbits and bounds")
    msub = p.add_subparsers(dest="modular_command", parser_class=_Parser, metavar="ACTION")
    msub.required = True
    q = msub.add_parser("count")
    q.add_argument("--n", type=int, required=True)
    _common(q)
    q = msub.add_parser("orbits")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--t", type=int, required=True)
    q.add_argument("--mode", choices=("canonical", "burnside"), default="canonical")
    _common(q)
    q = msub.add_parser("bounds")
    q.add_argument("--epsilon", type=float)
    q.add_argument("--t", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--n", type=int)
    q.add_argument("--m", type=int, default=1)
    _common(q)
    return parser


# --- output ------------------------------------------------------------------


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _table(args, header, rows) -> str:
    if args.format == "json":
        return _json([dict(zip(header, r)) for r in rows])
    return _csv(header, rows)


def _record(args, data: dict) -> str:
    if args.format == "csv":
        return _csv(list(data), [list(data.values())])
    return _json(data)


def _scalar(args, value, **context) -> str:
    if args.format is None:
        return f"{value}\n"
    return _record(args, {**context, "value": value})


# --- commands ----------------------------------------------------------------


def _cmd_count(args) -> str:
    if args.enumerate:
        value = sum(len(b) for b in words.enumerate_cyclic_blocks(args.n, args.k))
    else:
        value = words.count_cyclic(args.n, args.k)
    return _scalar(args, value, k=args.k, n=args.n)


def _cmd_enumerate(args) -> str:
    ws = [words.format_word(w, args.k) for w in words.enumerate_cyclic(args.n, args.k)]
    if args.format:
        return _table(args, ["word"], [[w] for w in ws])
    return "".join(w + "\n" for w in ws)


def _cmd_sample(args) -> str:
    if args.d is not None:
        pres = density.sample_presentation(density.DensityParams(args.k, args.n, args.d, args.seed))
        ws = pres.relators
    else:
        rng = words.as_rng(args.seed)
        ws = [words.sample_cyclic(args.n, args.k, rng) for _ in range(args.count)]
    text = [words.format_word(w, args.k) for w in ws]
    if args.format:
        return _table(args, ["word"], [[w] for w in text])
    return "".join(w + "\n" for w in text)


def _parse_word_arg(text: str, k: int, flag: str = "word") -> words.Word:
    try:
        return words.parse_word(text, k)
    except ValueError as exc:
        raise _UsageError(f"ggl: error: argument {flag}: {exc}") from None


def _witness(args, g):
    if g is None:
        return None
    data = g.to_json()
    return json.dumps(data, sort_keys=True) if args.format == "csv" else data


def _cmd_readable(args) -> str:
    w = _parse_word_arg(args.word, args.k)
    params = readability.ReadabilityParams(args.mu, args.k, args.L)
    if args.L is None:
        verdict = readability.is_mu_readable(w, params, args.mode)
    else:
        verdict = readability.is_muL_readable(w, params, args.mode)
    return _record(
        args,
        {
            "word": words.format_word(w, args.k),
            "k": args.k,
            "mu": args.mu,
            "L": args.L,
            "mode": verdict.mode,
            "readable": verdict.readable,
            "witness": _witness(args, verdict.witness),
        },
    )


def _cmd_good(args) -> str:
    w = _parse_word_arg(args.word, args.k)
    params = readability.ReadabilityParams(args.mu, args.k, args.L)
    value = readability.is_good(w, params, args.mode)
    return _record(
        args,
        {"word": words.format_word(w, args.k), "k": args.k, "mu": args.mu, "L": args.L, "good": value},
    )


def _cmd_check(args) -> str:
    rels = [_parse_word_arg(r, args.k, "relators") for r in args.relators]
    pres = cancellation.Presentation(args.k, tuple(rels))
    report = cancellation.is_c_prime(pres, args.lam)
    per = []
    for r, ratio in zip(pres.relators, report.ratios):
        entry = {"relator": words.format_word(r, args.k), "piece_ratio": ratio, "c_prime": ratio < args.lam}
        if args.coverage:
            entry["coverage"] = cancellation.covers_all_generators(r, args.k)
        if args.no_proper_powers:
            entry["proper_power"] = cancellation.is_proper_power(r)
        if args.primitive:
            entry["primitive"] = cancellation.is_primitive(r, args.k)
        per.append(entry)
    if args.format == "csv":
        header = list(per[0])
        return _csv(header, [[e[h] for h in header] for e in per])
    return _json({"lambda": args.lam, "max_piece": report.max_piece, "c_prime": report.satisfied, "relators": per})


def _cmd_entropy(args) -> str:
    if args.n_min < 1 or args.n_max < args.n_min:
        raise _UsageError("ggl entropy: error: argument --n-max: need 1 <= n-min <= n-max")
    pred = entropy.make_predicate(args.predicate, args.k, mu=args.mu, L=args.L, lam=args.lam)
    rng = words.as_rng(args.seed)
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        logging.getLogger("ggl").info("entropy: n=%d", n)
        est = entropy.count_complement(pred, n, args.k, args.mode, args.samples, rng)
        t = entropy.t_hat(est.value, n, args.k)
        rows.append([n, est.value, "" if t is None else repr(t), est.ci_lo, est.ci_hi])
    return _table(args, ["n", "gamma_bar", "t_hat", "ci_lo", "ci_hi"], rows)


def _cmd_density(args) -> str:
    if args.d is not None:
        grid = [args.d]
    else:
        try:
            grid = [float(x) for x in args.d_grid.split(",") if x.strip()]
        except ValueError:
            raise _UsageError("ggl density: error: argument --d-grid: expected comma-separated numbers") from None
    try:
        suite = density.parse_suite(args.suite)
    except ValueError as exc:
        raise _UsageError(f"ggl density: error: argument --suite: {exc}") from None
    rows = density.density_sweep(args.k, args.n, grid, args.trials, suite, args.seed)
    return _table(
        args,
        ["d", "pass_fraction", "ci_lo", "ci_hi", "trials"],
        [[r.d, r.pass_fraction, r.ci_lo, r.ci_hi, r.trials] for r in rows],
    )


def _cmd_modular(args) -> str:
    if args.modular_command == "count":
        return _scalar(args, modular.count_cyclic_modular(args.n), n=args.n)
    if args.modular_command == "orbits":
        return _scalar(args, modular.tuple_orbits(args.m, args.t, args.mode), m=args.m, t=args.t, mode=args.mode)
    out = {}
    if args.epsilon is not None and args.t is not None:
        jb = modular.j_lower_bound(args.epsilon, args.t)
        out.update(
            epsilon=args.epsilon,
            t=args.t,
            log2_J_dominant=jb.log2_value,
            J_valid=jb.valid,
            J_constant=jb.constant,
            ln_K=modular.k_formula(args.m, args.t),
        )
    if args.k is not None and args.n is not None:
        out.update(k=args.k, n=args.n, log2log2_I=modular.i_upper_bound(args.k, args.n))
    if not out:
        raise _UsageError("ggl modular bounds: error: argument --epsilon: give --epsilon and --t, or --k and --n")
    return _record(args, out)


COMMANDS = {
    "count": _cmd_count,
    "enumerate": _cmd_enumerate,
    "sample": _cmd_sample,
    "readable": _cmd_readable,
    "good": _cmd_good,
    "check": _cmd_check,
    "entropy": _cmd_entropy,
    "density": _cmd_density,
    "modular": _cmd_modular,
}


def dispatch(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=stderr)
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logger = logging.getLogger("ggl")
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    logger.setLevel(logging.INFO if args.verbose else logging.WARNING)
    logger.propagate = False
    try:
        text = COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=stderr)
        return 2
    except (CapError, CapabilityError) as exc:
        print(f"ggl {args.command}: {exc}", file=stderr)
        return 1
    except ValueError as exc:
        print(f"ggl {args.command}: error: {exc}", file=stderr)
        return 2
    finally:
        logger.removeHandler(handler)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(dispatch())
