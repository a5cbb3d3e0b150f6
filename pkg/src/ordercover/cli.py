"""Command-line interface: score, induce, signif, synth, asymptotic.

Every command emits a JSON report (TSV mirror available via --format tsv)
embedding {command, version, seed}.  Randomized commands refuse to run
without --seed; pass ``--seed auto`` to have one drawn and printed, so every
published number stays reproducible.

Exit codes: 0 success, 1 computation error, 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import __version__
from .cover import min_df_for_chain, resolve_max_len, score_order
from .data import ParseError, load_dense, load_sparse, save_dense, split, synthetic, SYNTHETIC_KINDS
from .ordering import SIMILARITY_KINDS, fiedler_order, greedy_order, similarity_matrix
from .significance import evaluate_order_set, sample_random_orders
from .validation import check_order

INDUCE_METHODS = SIMILARITY_KINDS + ("greedy",) + tuple(f"greedy+{k}" for k in SIMILARITY_KINDS)

_ASYMPTOTIC_MAX_ITEMS = 12


class UsageError(Exception):
    """Bad flag combinations or malformed inputs; exits with code 2."""


def _parse_seed(text: str) -> int:
    if text == "auto":
        seed = int(np.random.SeedSequence().entropy) % (2**32)
        print(f"chosen seed: {seed}", file=sys.stderr)
        return seed
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"--seed must be an integer or 'auto', got {text!r}") from None


def _load_data(args) -> np.ndarray:
    if getattr(args, "sparse_cols", None):
        return load_sparse(args.data, args.sparse_cols)
    return load_dense(args.data)


def read_order_file(path, n_cols: int) -> np.ndarray:
    """Read one line of whitespace-separated 1-based attribute indices."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    try:
        values = [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"{path}: order file must contain integers") from None
    if len(values) != n_cols:
        raise ParseError(f"{path}: order has {len(values)} entries, dataset has {n_cols} columns")
    order = np.asarray(values, dtype=np.intp) - 1
    try:
        return check_order(order, n_cols)
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None


def write_order_file(path, order) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(" ".join(str(int(i) + 1) for i in order))
        fh.write("\n")


def _tsv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _render(report: dict, fmt: str) -> str:
    if fmt == "tsv":
        flat = {k: v for k, v in report.items() if not isinstance(v, (list, dict))}
        return "\t".join(flat.keys()) + "\n" + "\t".join(_tsv_cell(v) for v in flat.values()) + "\n"
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def _emit(report: dict, fmt: str, out_path=None) -> None:
    text = _render(report, fmt)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(command: str, seed) -> dict:
    return {"command": command, "version": __version__, "seed": seed}


def _induce_order(X: np.ndarray, method: str, seed: int, max_len) -> np.ndarray:
    if method not in INDUCE_METHODS:
        raise UsageError(f"unknown method {method!r}; expected one of {', '.join(INDUCE_METHODS)}")
    if method == "greedy":
        return greedy_order(X, np.arange(X.shape[1]), max_len)
    base = method.split("+")[-1]
    order = fiedler_order(similarity_matrix(X, base), seed=seed)
    if method.startswith("greedy+"):
        order = greedy_order(X, order, max_len)
    return order


def cmd_score(args) -> None:
    X = _load_data(args)
    n, k = X.shape
    order = read_order_file(args.order, k) if args.order else np.arange(k)
    length = resolve_max_len(n, k, args.max_len)
    t0 = time.perf_counter()
    cover, cs = score_order(X, order, length)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    report = _meta("score", None)
    report.update(
        score=cs.total,
        log_likelihood=cs.log_likelihood,
        df=cs.df,
        penalty=cs.penalty,
        cover=[[s + 1, e + 1] for s, e in cover],
        L_max=length,
        wall_time_ms=wall_ms,
    )
    _emit(report, args.format, args.out)


def cmd_induce(args) -> None:
    seed = _parse_seed(args.seed)
    X = _load_data(args)
    if args.train_fraction is not None:
        X_train, _ = split(X, args.train_fraction, seed)
    else:
        X_train = X
    order = _induce_order(X_train, args.method, seed, args.max_len)
    write_order_file(args.out, order)
    report = _meta("induce", seed)
    report.update(
        method=args.method,
        train_rows=int(X_train.shape[0]),
        order=[int(i) + 1 for i in order],
        out=args.out,
    )
    _emit(report, args.format)


def cmd_signif(args) -> None:
    seed = _parse_seed(args.seed)
    if bool(args.order) == bool(args.method):
        raise UsageError("pass exactly one of --order or --method")
    X = _load_data(args)
    train, test = split(X, args.train_fraction, seed)
    if args.method:
        candidates = [_induce_order(train, args.method, seed, args.max_len)]
    else:
        candidates = [read_order_file(p, X.shape[1]) for p in args.order]
    rep = evaluate_order_set(
        train, test, candidates, n_random=args.samples, seed=seed, max_len=args.max_len
    )
    report = _meta("signif", seed)
    report.update(rep.to_dict())
    report.update(train_rows=int(train.shape[0]), test_rows=int(test.shape[0]))
    if args.method:
        report["method"] = args.method
    _emit(report, args.format, args.out)


def cmd_synth(args) -> None:
    seed = _parse_seed(args.seed)
    X = synthetic(args.kind, args.cols, args.rows, args.param, seed=seed)
    save_dense(args.out, X)
    report = _meta("synth", seed)
    report.update(kind=args.kind, rows=int(X.shape[0]), cols=int(X.shape[1]),
                  param=args.param, out=args.out)
    _emit(report, args.format)


def cmd_asymptotic(args) -> None:
    seed = _parse_seed(args.seed)
    if not 2 <= args.items <= _ASYMPTOTIC_MAX_ITEMS:
        raise UsageError(f"--items must lie in 2..{_ASYMPTOTIC_MAX_ITEMS}")
    try:
        rows_list = [int(tok) for tok in args.rows_list.split(",") if tok]
    except ValueError:
        raise UsageError(f"--rows-list must be comma-separated integers, got {args.rows_list!r}") from None
    if not rows_list:
        raise UsageError("--rows-list is empty")

    k = args.items
    edges = [(i, i + 1) for i in range(k - 1)]
    orders = sample_random_orders(k, args.orders, seed)
    if args.include_identity:
        orders = [np.arange(k)] + orders
    dfs = [min_df_for_chain(o, edges) for o in orders]

    results = []
    tsv_rows = []
    for idx, n_rows in enumerate(rows_list):
        X = synthetic("path", k, n_rows, args.noise, seed=seed + idx)
        scores = np.array([score_order(X, o)[1].total for o in orders])
        m = len(scores)
        if m > 1:
            diff = scores[:, None] - scores[None, :]
            greater = (diff > 1e-6).sum(axis=1)
            ties = (np.abs(diff) <= 1e-6).sum(axis=1) - 1  # drop self-comparison
            pemps = (greater + 0.5 * ties) / (m - 1)
        else:
            pemps = np.full(1, np.nan)
        if m > 1 and np.std(pemps) > 0 and np.std(dfs) > 0:
            rho = float(np.corrcoef(pemps, dfs)[0, 1])
        else:
            rho = None
        per_order = [
            {"df": int(d), "p_emp": None if np.isnan(p) else float(p), "score": float(s)}
            for d, p, s in zip(dfs, pemps, scores)
        ]
        results.append({"n_rows": n_rows, "rho": rho, "orders": per_order})
        for rec in per_order:
            tsv_rows.append((n_rows, rec["df"], rec["p_emp"], rec["score"]))

    if args.format == "tsv":
        lines = [f"# command=asymptotic version={__version__} seed={seed}"]
        for res in results:
            lines.append(f"# n_rows={res['n_rows']} rho={res['rho']}")
        lines.append("n_rows\tdf\tp_emp\tscore")
        for n_rows, df, pe, sc in tsv_rows:
            lines.append(f"{n_rows}\t{df}\t{_tsv_cell(pe)}\t{sc!r}")
        text = "\n".join(lines) + "\n"
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return
    report = _meta("asymptotic", seed)
    report.update(items=k, noise=args.noise, n_orders=len(orders), rows=results)
    _emit(report, "json", args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordercover",
        description="Measure, induce and significance-test column orders on binary data.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_data(p):
        p.add_argument("--data", required=True, help="dataset file (dense 0/1 rows)")
        p.add_argument("--sparse-cols", type=int, default=None,
                       help="treat --data as a sparse index file with this many columns")

    p = sub.add_parser("score", help="score an order (default: identity) on a dataset")
    add_data(p)
    p.add_argument("--order", default=None, help="order file (one line, 1-based indices)")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("induce", help="induce an order from data and write it to a file")
    add_data(p)
    p.add_argument("--method", required=True, help=f"one of {', '.join(INDUCE_METHODS)}")
    p.add_argument("--seed", required=True, help="integer seed, or 'auto'")
    p.add_argument("--train-fraction", type=float, default=None,
                   help="induce from this random fraction of the rows")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--out", required=True, help="order file to write")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("signif", help="split the data, score orders on the held-out half")
    add_data(p)
    p.add_argument("--order", action="append", default=[], help="order file; repeatable")
    p.add_argument("--method", default=None, help="induce the candidate from the train half")
    p.add_argument("--samples", type=int, default=1000, help="number of random orders")
    p.add_argument("--train-fraction", type=float, default=0.5)
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--seed", required=True, help="integer seed, or 'auto'")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_signif)

    p = sub.add_parser("synth", help="generate a synthetic dataset file")
    p.add_argument("--kind", required=True, choices=SYNTHETIC_KINDS)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--param", type=float, default=None)
    p.add_argument("--seed", required=True, help="integer seed, or 'auto'")
    p.add_argument("--out", required=True, help="dataset file to write")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("asymptotic", help="score-vs-model-size trend over growing samples")
    p.add_argument("--rows-list", required=True, help="comma-separated sample sizes")
    p.add_argument("--orders", type=int, default=1000, help="random orders per sample size")
    p.add_argument("--noise", type=float, default=0.25)
    p.add_argument("--items", type=int, default=10)
    p.add_argument("--include-identity", action="store_true",
                   help="prepend the generating (identity) order to the sample")
    p.add_argument("--seed", required=True, help="integer seed, or 'auto'")
    p.add_argument("--format", choices=("json", "tsv"), default="json")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.set_defaults(func=cmd_asymptotic)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (UsageError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
