"""Command-line interface: ``tdpm generate|embed|pipeline|sweep``.

Exit codes: 0 success, 2 invalid arguments, 3 data/parse error,
4 numeric/degeneracy error, 5 disconnected graph.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import asdict
from pathlib import Path

from threadpoolctl import threadpool_limits

from . import dataset
from .errors import DataIOError, InvalidArgumentError, TdpmError
from .pipeline import (DEFAULT_H, DEFAULT_K, TdpmConfig, isomap_report, mds_report,
                       sensitivity_sweep, tdpm_embed, tdpm_then_isomap)
from .tangent import SYMMETRIZE_MODES

log = logging.getLogger("tdpm")

EXIT_OK = 0
EXIT_USAGE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tdpm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="sample a synthetic manifold to CSV")
    g.add_argument("--manifold", choices=sorted(dataset.GENERATORS), required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", type=Path, required=True)
    g.add_argument("--params-out", type=Path,
                   help="also write the intrinsic parameters (for plot colouring)")

    e = sub.add_parser("embed", help="embed a point CSV with TDPM, ISOMAP or classical MDS")
    e.add_argument("--method", choices=("tdpm", "isomap", "mds"), default="tdpm")
    e.add_argument("--input", type=Path, required=True)
    e.add_argument("--k", type=int, default=DEFAULT_K)
    e.add_argument("--dim", type=int, default=2)
    e.add_argument("--tangent-dim", type=int)
    e.add_argument("--symmetrize", choices=SYMMETRIZE_MODES, default="mean")
    e.add_argument("--isomap-k", type=int, help="ISOMAP neighbour count (defaults to --k)")
    e.add_argument("--largest-component", action="store_true")
    e.add_argument("--params", type=Path, help="intrinsic-parameter CSV appended to the output")
    e.add_argument("--out", type=Path, required=True)
    e.add_argument("--report", type=Path)

    p = sub.add_parser("pipeline", help="TDPM to h dimensions, then ISOMAP to --dim")
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--h", type=int, default=DEFAULT_H)
    p.add_argument("--k", type=int, default=DEFAULT_K)
    p.add_argument("--tangent-dim", type=int,
                   help="tangent-space rank for the TDPM stage (defaults to --dim)")
    p.add_argument("--symmetrize", choices=SYMMETRIZE_MODES, default="mean")
    p.add_argument("--isomap-k", type=int, default=DEFAULT_K)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--largest-component", action="store_true")
    p.add_argument("--params", type=Path)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--report", type=Path)

    s = sub.add_parser("sweep", help="TDPM over a grid of k and n")
    s.add_argument("--manifold", choices=("swissroll", "scurve"), required=True)
    s.add_argument("--k-list", type=_int_list, default=[8, 10, 12, 14])
    s.add_argument("--n-list", type=_int_list, default=[100, 400, 700, 1000])
    s.add_argument("--dim", type=int, default=2)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", type=Path, required=True)
    return parser


def _write_json(path: Path, payload) -> None:
    try:
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise DataIOError(f"cannot write {path}: {exc.strerror or exc}") from exc


def _load_params(path, n):
    if path is None:
        return None
    params = dataset.load_csv(path)
    if params.shape[1] != n:
        raise InvalidArgumentError(f"{path} has {params.shape[1]} rows, input has {n}")
    return params


def _emit(report, args, params, elapsed_ms):
    emb = report.embedding
    if params is not None and emb.indices is not None:
        params = params[:, emb.indices]
    dataset.write_embedding_csv(args.out, emb, params)
    if args.report is not None:
        payload = report.to_dict()
        payload["timing_ms"] = round(elapsed_ms, 3)
        _write_json(args.report, payload)
    log.info("%s: stress=%.4g corr=%.4g negative_mass=%.4g", report.method,
             report.normalized_stress, report.distance_correlation, report.negative_mass)


def cmd_generate(args) -> None:
    sample = dataset.generate(args.manifold, args.n, args.seed)
    dataset.write_points_csv(args.out, sample.data)
    if args.params_out is not None:
        dataset.write_points_csv(args.params_out, sample.params, prefix="p")


def cmd_embed(args) -> None:
    X = dataset.load_csv(args.input)
    params = _load_params(args.params, X.shape[1])
    start = time.perf_counter()
    if args.method == "tdpm":
        cfg = TdpmConfig(k=args.k, d=args.dim, tangent_dim=args.tangent_dim,
                         symmetrize_mode=args.symmetrize)
        report = tdpm_embed(X, cfg)
    elif args.method == "isomap":
        k = args.isomap_k if args.isomap_k is not None else args.k
        report = isomap_report(X, k, args.dim, largest_component_only=args.largest_component)
    else:
        report = mds_report(X, args.dim)
    _emit(report, args, params, (time.perf_counter() - start) * 1e3)


def cmd_pipeline(args) -> None:
    X = dataset.load_csv(args.input)
    params = _load_params(args.params, X.shape[1])
    tangent_dim = args.tangent_dim if args.tangent_dim is not None else args.dim
    cfg = TdpmConfig(k=args.k, d=args.h, tangent_dim=tangent_dim,
                     symmetrize_mode=args.symmetrize)
    start = time.perf_counter()
    report = tdpm_then_isomap(X, cfg, args.isomap_k, args.dim,
                              largest_component_only=args.largest_component)
    _emit(report, args, params, (time.perf_counter() - start) * 1e3)


def cmd_sweep(args) -> None:
    n_max = max(args.n_list, default=0)
    sample = dataset.generate(args.manifold, n_max, args.seed)
    result = sensitivity_sweep(sample, args.k_list, args.n_list, args.dim, workers=args.workers)
    out: Path = args.out
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataIOError(f"cannot create {out}: {exc.strerror or exc}") from exc
    for (k, n), cell in sorted(result.cells.items()):
        if isinstance(cell, str):
            log.warning("k=%d n=%d failed: %s", k, n, cell)
            continue
        dataset.write_embedding_csv(out / f"embedding_k{k}_n{n}.csv", cell.embedding,
                                    sample.params[:, :n])
    summary = result.summary()
    summary.update(manifold=args.manifold, seed=args.seed)
    _write_json(out / "summary.json", summary)


COMMANDS = {
    "generate": cmd_generate,
    "embed": cmd_embed,
    "pipeline": cmd_pipeline,
    "sweep": cmd_sweep,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        # single-threaded BLAS keeps outputs byte-identical across machines' core counts
        with threadpool_limits(limits=1):
            COMMANDS[args.command](args)
    except TdpmError as exc:
        print(f"tdpm {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
