"""Command-line surface: experiment runners, verification, and table emitters.

Subcommands: ``expt1``, ``expt2``, ``verify``, ``dims``, ``parity``.  All
tabular output is CSV with a header row, reals printed with 12 significant
digits, and rows sorted on the leading columns, so identical invocations
produce byte-identical files.  Exit codes: 0 success, 1 verification
failure, 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import eqspace, parity, training, verify

__all__ = ["main", "build_parser"]


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _write_lines(path: str, lines: list[str]) -> None:
    try:
        Path(path).write_text("\n".join(lines) + "\n")
    except OSError as exc:
        raise SystemExit(f"cannot write {path}: {exc}")


def _load_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` lines; '#' starts a comment."""
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        print(f"cannot read config file {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            print(f"bad config line: {raw!r}", file=sys.stderr)
            raise SystemExit(2)
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _parse_depths(text: str) -> list[int]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part and not part.startswith("-"):
            lo, hi = part.split("-", 1)
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out or any(d < 1 for d in out):
        raise argparse.ArgumentTypeError(f"bad depth list {text!r}")
    return out


def build_parser(config: dict | None = None) -> argparse.ArgumentParser:
    """Build the CLI parser; ``config`` values become per-subcommand defaults."""
    parser = argparse.ArgumentParser(
        prog="eqgc",
        description="Equivariant quantum graph circuits: experiments and verification.",
    )
    parser.add_argument("--config", help="flat key=value file; flags take precedence")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_out):
        p.add_argument("--out", default=default_out, help="output CSV path")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--tol", type=float, default=None, help="tolerance override")

    p1 = sub.add_parser("expt1", help="one-parameter circuit on the 1-WL pair")
    common(p1, "expt1.csv")
    p1.add_argument("--points", type=int, default=201, help="alpha grid size on [-pi, pi]")

    p2 = sub.add_parser("expt2", help="train on the cycle-classification dataset")
    common(p2, "expt2.csv")
    p2.add_argument("--depths", type=_parse_depths, default=list(range(1, 15)))
    p2.add_argument("--seeds", type=int, default=10)
    p2.add_argument("--epochs", type=int, default=100)
    p2.add_argument("--lr", type=float, default=0.01)
    p2.add_argument("--decay", type=float, default=0.99)

    pv = sub.add_parser("verify", help="run every verification suite")
    common(pv, "verify.txt")
    pv.add_argument("--report", action="store_true", help="also write the report to --out")

    pd = sub.add_parser("dims", help="equivariant-space dimension tables")
    common(pd, "dims.csv")
    pd.add_argument("--n-max", type=int, default=8)
    pd.add_argument("--s-max", type=int, default=3)

    pp = sub.add_parser("parity", help="observable outcomes of the cycle circuit")
    common(pp, "parity.csv")
    pp.add_argument("--n", type=int, default=6)

    if config:
        # parser-level defaults override argument defaults but lose to flags
        for p in (parser, p1, p2, pv, pd, pp):
            p.set_defaults(**config)
    return parser


def cmd_expt1(args) -> int:
    alphas = np.linspace(-np.pi, np.pi, args.points)
    rows = training.experiment1(alphas)
    lines = ["alpha,k,prob_g1,prob_g2,accuracy"]
    for row in rows:
        for k in range(7):
            lines.append(
                ",".join(
                    [
                        _fmt(row["alpha"]),
                        str(k),
                        _fmt(row["probs_g1"][k]),
                        _fmt(row["probs_g2"][k]),
                        _fmt(row["accuracy"]),
                    ]
                )
            )
    _write_lines(args.out, lines)
    print(f"wrote {args.out}: {len(rows)} alphas")
    return 0


def cmd_expt2(args) -> int:
    results = training.experiment2(
        sorted(set(args.depths)),
        args.seeds,
        epochs=args.epochs,
        lr=args.lr,
        decay=args.decay,
        base_seed=args.seed,
    )
    lines = ["depth,seed,epoch,loss,train_ss,train_ms,eval_ss,eval_ms,grad_norm"]
    for (depth, seed) in sorted(results):
        for row in results[(depth, seed)].metrics:
            lines.append(
                ",".join(
                    [
                        str(depth),
                        str(seed),
                        str(row.epoch),
                        _fmt(row.loss),
                        _fmt(row.train_ss),
                        _fmt(row.train_ms),
                        _fmt(row.eval_ss),
                        _fmt(row.eval_ms),
                        _fmt(row.grad_max),
                    ]
                )
            )
    _write_lines(args.out, lines)
    print(f"wrote {args.out}: {len(results)} runs")
    return 0


def cmd_verify(args) -> int:
    results = verify.all_suites(args.seed, tol=args.tol)
    lines = [r.line() for r in results]
    for line in lines:
        print(line)
    failures = [r for r in results if not r.passed]
    summary = f"{len(results) - len(failures)}/{len(results)} checks passed"
    print(summary)
    if args.report:
        _write_lines(args.out, lines + [summary])
    return 1 if failures else 0


def cmd_dims(args) -> int:
    if args.n_max > 12:
        print("dims: --n-max is limited to 12", file=sys.stderr)
        return 2
    lines = ["n,s,full_dim,diag_dim,rank_verified"]
    for n in range(1, args.n_max + 1):
        for s in range(2, args.s_max + 1):
            full = str(eqspace.full_dimension(n)) if s == 2 else ""
            verified = "no"
            if s == 2 and n <= 5:
                verified = "yes" if eqspace.rank_oracle(n) == eqspace.full_dimension(n) else "FAILED"
            lines.append(f"{n},{s},{full},{eqspace.diagonal_dimension(n, s)},{verified}")
    _write_lines(args.out, lines)
    print(f"wrote {args.out}")
    return 1 if any(line.endswith("FAILED") for line in lines) else 0


def cmd_parity(args) -> int:
    if not 1 <= args.n <= 20:
        print("parity: --n must be in 1..20", file=sys.stderr)
        return 2
    n = args.n
    lines = ["n,bitstring,prob"]
    for index in sorted(parity.observable_set(n)):
        prob = parity.observable_probability(n, True)
        lines.append(f"{n},{index:0{n}b},{_fmt(prob)}")
    _write_lines(args.out, lines)
    print(f"wrote {args.out}: {len(lines) - 1} observable bitstrings")
    return 0


_COMMANDS = {
    "expt1": cmd_expt1,
    "expt2": cmd_expt2,
    "verify": cmd_verify,
    "dims": cmd_dims,
    "parity": cmd_parity,
}

_INT_KEYS = {"points", "seeds", "epochs", "seed", "n", "n_max", "s_max"}
_FLOAT_KEYS = {"lr", "decay", "tol"}


def _convert_config(defaults: dict[str, str]) -> dict:
    converted = {}
    for key, value in defaults.items():
        if key in _INT_KEYS:
            converted[key] = int(value)
        elif key in _FLOAT_KEYS:
            converted[key] = float(value)
        elif key == "depths":
            converted[key] = _parse_depths(value)
        else:
            converted[key] = value
    return converted


def main(argv: list[str] | None = None) -> int:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    found, _ = pre.parse_known_args(argv)
    config = _convert_config(_load_config_file(found.config)) if found.config else None
    args = build_parser(config).parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
