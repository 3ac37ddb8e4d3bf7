"""Command line front end.

Exit codes: 0 success, 1 usage or validation error, 2 a mathematical
check failed (good ``l`` with ``rank T mod l != delta``, or a failing
verification verdict).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from dataclasses import dataclass

from . import cartan, degree, oracles, weyl
from .cartan import CartanError
from .weyl import CONVENTIONS, LEVI_INTERNAL, WeylError

GUARD_ENV = "PARDEG_GROUP_GUARD"
MAX_TABLE_ROWS = 256
SUITES = ("wdeco", "kernel", "kernel-vectors", "torus", "rank-invariance", "all")

EXIT_OK, EXIT_USAGE, EXIT_MATH = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    family: str | None
    rank: int | None
    levi: tuple[int, ...] | None
    l: int | None
    convention: str
    word_seed: int | None
    fmt: str
    out: str | None
    guard: int
    suite: str | None = None
    trials: int | None = None
    seed: int = 0
    cap: int = oracles.DEFAULT_TORUS_CAP


def parse_levi(text: str, n: int) -> tuple[int, ...]:
    text = text.strip().lower()
    if text == "all":
        return tuple(range(1, n + 1))
    if text in ("none", ""):
        return ()
    try:
        idx = sorted({int(tok) for tok in text.split(",") if tok.strip()})
    except ValueError:
        raise UsageError(f"malformed levi selector {text!r}; use e.g. '1,3', 'all' or 'none'")
    bad = [i for i in idx if not 1 <= i <= n]
    if bad:
        raise UsageError(f"levi index {bad[0]} out of range 1..{n}")
    return tuple(idx)


def _default_guard() -> int:
    raw = os.environ.get(GUARD_ENV)
    if raw is None:
        return weyl.DEFAULT_GROUP_GUARD
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{GUARD_ENV}={raw!r} is not an integer")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pardeg", description="Degree of parabolic quantum groups at roots of unity.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, need_type=True, need_l=False, fmt="json"):
        p.add_argument("--type", dest="type_", required=need_type, help="simple type, e.g. A3 or G2")
        p.add_argument("--l", type=int, required=need_l, help="order of the root of unity")
        p.add_argument("--convention", choices=CONVENTIONS, default=LEVI_INTERNAL)
        p.add_argument("--word-seed", type=int, default=None,
                       help="randomize the reduced words (default: deterministic)")
        p.add_argument("--format", dest="fmt", choices=("json", "csv", "text"), default=fmt)
        p.add_argument("--out", help="write to this path instead of stdout")
        p.add_argument("--guard", type=int, default=None,
                       help=f"maximal Weyl group order to enumerate (env {GUARD_ENV})")

    p = sub.add_parser("degree", help="degree report for one parabolic subset")
    common(p, need_l=True)
    p.add_argument("--levi", default="none", help="comma list of indices, 'all' or 'none'")

    p = sub.add_parser("table", help="degree reports for every parabolic subset")
    common(p, need_l=True)

    p = sub.add_parser("verify", help="run verification oracles")
    common(p, need_type=False)
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=0, help="seed for random torus matrices")
    p.add_argument("--cap", type=int, default=oracles.DEFAULT_TORUS_CAP,
                   help="largest torus representation dimension")

    p = sub.add_parser("roots", help="reduced word and convex order of positive roots")
    common(p, fmt="text")
    p.add_argument("--levi", default="none")
    return parser


def parse_config(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO)
    family = rank = levi = None
    if args.type_ is not None:
        family, rank = cartan.parse_type(args.type_)
        cartan.build_cartan(family, rank)
        if hasattr(args, "levi"):
            levi = parse_levi(args.levi, rank)
    if args.l is not None:
        degree.validate_l(args.l)
    cfg = RunConfig(
        command=args.command, family=family, rank=rank, levi=levi, l=args.l,
        convention=args.convention, word_seed=args.word_seed, fmt=args.fmt, out=args.out,
        guard=args.guard if args.guard is not None else _default_guard(),
    )
    if args.command == "table" and 2 ** rank > MAX_TABLE_ROWS:
        raise UsageError(f"table for rank {rank} has {2 ** rank} rows, above the guard {MAX_TABLE_ROWS}")
    if args.command == "verify":
        cfg.suite, cfg.trials, cfg.seed, cfg.cap = args.suite, args.trials, args.seed, args.cap
        needs_type = cfg.suite != "torus"
        needs_l = cfg.suite in ("kernel", "torus", "rank-invariance", "all")
        if needs_type and family is None:
            raise UsageError(f"suite {cfg.suite} requires --type")
        if needs_l and cfg.l is None:
            cfg.l = 5
        if cfg.trials is not None and cfg.trials < 1:
            raise UsageError("--trials must be positive")
    if cfg.l is not None and args.command == "verify" and cfg.suite in ("torus", "all"):
        if not oracles.exactla.is_prime(cfg.l):
            raise UsageError(f"torus suite needs a prime l, got {cfg.l}")
    return cfg


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=degree.REPORT_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        row = dict(row)
        row["levi"] = " ".join(map(str, row["levi"]))
        row["word"] = " ".join(map(str, row["word"]))
        writer.writerow(row)
    return buf.getvalue()


def _text_report(r: degree.DegreeReport) -> str:
    lines = [
        f"type {r.family}{r.rank}, levi {list(r.levi) or 'none'}, l = {r.l} ({'good' if r.good else 'not good'})",
        f"  N = {r.N}, h = {r.h}, k = {r.k}, n = {r.rank}",
        f"  l(w0) = {r.len_w0}, l(w0_levi) = {r.len_w0_levi}, s = rk(w0 - w0_levi) = {r.s}",
        f"  rank T over Q = {r.rank_T_rational}, mod {r.l} = {r.rank_T_mod_l}"
        + (" (from invariant factors, l composite)" if r.extrapolated else ""),
        f"  delta = {r.delta}, degree = {r.l}^{r.degree_exponent}, deg(tau) = {r.l}^{r.deg_tau_exponent}",
        f"  word = {' '.join(map(str, r.word)) or '(empty)'}  [{r.convention}]",
    ]
    if r.discrepancy:
        lines.append("  DISCREPANCY: rank of T mod l differs from delta")
    return "\n".join(lines) + "\n"


def cmd_degree(cfg: RunConfig) -> int:
    r = degree.degree_report(cfg.family, cfg.rank, cfg.levi, cfg.l, cfg.convention, cfg.word_seed)
    if cfg.fmt == "json":
        _emit(_dumps(r.to_dict()), cfg)
    elif cfg.fmt == "csv":
        _emit(_csv([r.to_dict()]), cfg)
    else:
        _emit(_text_report(r), cfg)
    return EXIT_MATH if r.discrepancy else EXIT_OK


def cmd_table(cfg: RunConfig) -> int:
    reports = degree.sweep_table(cfg.family, cfg.rank, cfg.l, cfg.convention, cfg.word_seed)
    rows = [r.to_dict() for r in reports]
    if cfg.fmt == "json":
        _emit(_dumps(rows), cfg)
    elif cfg.fmt == "csv":
        _emit(_csv(rows), cfg)
    else:
        _emit("".join(_text_report(r) for r in reports), cfg)
    return EXIT_MATH if any(r.discrepancy for r in reports) else EXIT_OK


def _run_suite(name: str, cfg: RunConfig) -> list[oracles.LemmaVerdict]:
    if name == "torus":
        trials = cfg.trials or (20 if cfg.suite == "torus" else 5)
        return oracles.torus_trials(cfg.l, trials, cfg.seed, cap=cfg.cap)
    rs = cartan.root_system(cfg.family, cfg.rank)
    if name == "wdeco":
        return [oracles.verify_wdeco(rs, cfg.guard)]
    out = []
    for levi in degree.subsets(rs.rank):
        pd = weyl.parabolic_datum(rs, levi, cfg.word_seed)
        if name == "kernel":
            out.append(oracles.verify_kernel_dimension(pd, cfg.l))
        elif name == "kernel-vectors":
            out.append(oracles.probe_kernel_vectors(pd, cfg.convention))
        elif name == "rank-invariance":
            out.append(oracles.rank_invariance(pd, cfg.l, max(cfg.trials or 3, 2)))
    return out


def cmd_verify(cfg: RunConfig) -> int:
    names = [s for s in SUITES if s != "all"] if cfg.suite == "all" else [cfg.suite]
    verdicts = []
    for name in names:
        verdicts.extend(_run_suite(name, cfg))
    failures = sum(not v.passed for v in verdicts)
    summary = {
        "suite": cfg.suite,
        "type": f"{cfg.family}{cfg.rank}" if cfg.family else None,
        "l": cfg.l,
        "seed": cfg.seed,
        "passed": failures == 0,
        "failures": failures,
        "verdicts": [v.to_dict() for v in verdicts],
    }
    if cfg.fmt == "text":
        lines = [f"{'PASS' if v.passed else 'FAIL'}  {v.lemma:16s} {v.instance}" for v in verdicts]
        lines.append(f"{len(verdicts) - failures}/{len(verdicts)} passed")
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit(_dumps(summary), cfg)
    return EXIT_MATH if failures else EXIT_OK


def cmd_roots(cfg: RunConfig) -> int:
    rs = cartan.root_system(cfg.family, cfg.rank)
    pd = weyl.parabolic_datum(rs, cfg.levi, cfg.word_seed)
    word = weyl.coset_factorize(pd)
    betas = weyl.beta_sequence(pd, word, cfg.convention)
    levi_roots = set(pd.levi_positive_roots)
    outside = [b for b in betas.levi if b not in levi_roots]
    data = {
        "type": rs.datum.label,
        "levi": list(pd.levi),
        "convention": cfg.convention,
        "word": list(word),
        "wbar_word": list(word[:pd.k]),
        "levi_word": list(word[pd.k:]),
        "full": [list(b) for b in betas.full],
        "levi_roots": [list(b) for b in betas.levi],
        "complement": [list(b) for b in betas.complement],
        "levi_outside_levi_system": [list(b) for b in outside],
    }
    if cfg.fmt == "text":
        fmt = root_label
        lines = [
            f"type {rs.datum.label}, levi {list(pd.levi) or 'none'}, convention {cfg.convention}",
            f"word       ({','.join(map(str, word))})",
            f"full       {', '.join(map(fmt, betas.full))}",
            f"levi       {', '.join(map(fmt, betas.levi)) or '(none)'}",
            f"complement {', '.join(map(fmt, betas.complement)) or '(none)'}",
        ]
        if outside:
            lines.append(f"warning: levi list has roots outside the Levi system: {', '.join(map(fmt, outside))}")
        _emit("\n".join(lines) + "\n", cfg)
    else:
        _emit(_dumps(data), cfg)
    return EXIT_OK


def root_label(b) -> str:
    """``a1+2a2`` style label of a root in simple-root coordinates."""
    terms = []
    for i, c in enumerate(b, start=1):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else str(abs(c))
        terms.append(f"{sign}{mag}a{i}")
    s = "".join(terms)
    return s[1:] if s.startswith("+") else s or "0"


COMMANDS = {"degree": cmd_degree, "table": cmd_table, "verify": cmd_verify, "roots": cmd_roots}


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except (UsageError, CartanError, WeylError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[cfg.command](cfg)
    except weyl.GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
