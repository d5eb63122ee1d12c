import argparse
import sys
from typing import List, Optional

from loguru import logger

from src.cli import output
from src.cli.commands import COMMANDS, RunConfig, parse_tolerances
from src.graph.families import FAMILIES
from src.utils.config_loader import load_config, resolve_threads
from src.utils.errors import Gamma2Error
from src.utils.logger import setup_logger
from src.verify.records import VerificationReport
from src.verify.runner import DEFAULT_SEED


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the result to this file instead of stdout")
    common.add_argument("--format", choices=output.FORMATS, default="json", dest="fmt")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: GAMMA2_THREADS or all cores)")
    common.add_argument("--tol", action="append", default=[], metavar="KEY=VALUE", help="override a verification tolerance")
    common.add_argument("--interior", action="store_true", help="restrict curvature to untruncated 2-balls")
    common.add_argument("--cap-exact-cheeger", type=int, default=None, metavar="N")
    common.add_argument("--log-level", default=None)
    common.add_argument("--config", default=None, help="alternate YAML configuration")
    return common


def _graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("family", nargs="?", help=f"one of: {', '.join(sorted(FAMILIES))}")
    p.add_argument("params", nargs="*", help="family parameters")
    p.add_argument("--input", dest="input_path", help="edge-list or .json graph file")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(prog="gamma2", description="Bakry-Emery curvature toolkit for finite graphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="emit a family graph")
    _graph_input(p)
    p.add_argument("--graph-format", choices=("edgelist", "json"), default="edgelist")

    p = sub.add_parser("curvature", parents=[common], help="local curvature and Ric(G)")
    _graph_input(p)

    p = sub.add_parser("spectrum", parents=[common], help="Laplacian spectrum and spectral gap")
    _graph_input(p)
    p.add_argument("--sparse", action="store_true", help="also report the iterative gap estimate")

    p = sub.add_parser("cheeger", parents=[common], help="Cheeger constant")
    _graph_input(p)
    method = p.add_mutually_exclusive_group()
    method.add_argument("--exact", dest="method", action="store_const", const="exact")
    method.add_argument("--sweep", dest="method", action="store_const", const="sweep")
    method.add_argument("--testset", dest="method", action="store_const", const="testset")

    p = sub.add_parser("logsobolev", parents=[common], help="log-Sobolev constant estimate")
    _graph_input(p)
    p.add_argument("--trials", type=int, default=None)

    p = sub.add_parser("heat", parents=[common], help="heat kernel P_t")
    _graph_input(p)
    p.add_argument("--t", type=float, default=1.0)

    p = sub.add_parser("verify", parents=[common], help="run the verification corpus")
    p.add_argument("--corpus", default="standard")
    return parser


def _run_config(args: argparse.Namespace, config: dict) -> RunConfig:
    app_cfg = config.get("app", {}) or {}
    options = {
        key: getattr(args, key)
        for key in ("graph_format", "sparse", "method", "trials", "t", "corpus")
        if getattr(args, key, None) is not None
    }
    cap = args.cap_exact_cheeger or int((config.get("cheeger", {}) or {}).get("exact_cap", 22))
    seed = args.seed if args.seed is not None else int(app_cfg.get("seed", DEFAULT_SEED))
    return RunConfig(
        command=args.command,
        family=getattr(args, "family", None),
        params=tuple(getattr(args, "params", ()) or ()),
        input_path=getattr(args, "input_path", None),
        out=args.out,
        fmt=args.fmt,
        seed=seed,
        threads=resolve_threads(config, args.threads),
        tolerances=parse_tolerances(args.tol),
        interior_only=args.interior,
        cap_exact_cheeger=cap,
        options=options,
        config=config,
    )


def _render(cfg: RunConfig, payload, rows) -> str:
    if isinstance(payload, str):
        return payload
    if isinstance(payload, VerificationReport):
        if cfg.fmt == "json":
            return output.json_lines((r.to_dict() for r in payload.records), payload.summary())
        if cfg.fmt == "text":
            return output.to_text(output.canonical(payload.summary()))
        return output.to_csv(rows)
    return output.render(payload, rows, cfg.fmt)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config)
        log_cfg = config.get("logging", {}) or {}
        setup_logger(
            level=(args.log_level or log_cfg.get("level", "INFO")).upper(),
            log_file=log_cfg.get("file"),
            rotation=log_cfg.get("rotation", "10 MB"),
            retention=log_cfg.get("retention", "10 days"),
        )
        cfg = _run_config(args, config)
        payload, rows, code = COMMANDS[cfg.command](cfg)
        # None: the command already wrote its own output
        if payload is not None:
            output.write(_render(cfg, payload, rows), cfg.out)
        return code
    except Gamma2Error as e:
        logger.error(f"{type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
