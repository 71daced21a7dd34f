"""``hetseq`` command line: ``simulate`` and ``validate``.

Exit codes: 0 success, 2 configuration error, 3 data/parse error,
4 degenerate run.
"""

from __future__ import annotations

import argparse
import json
import sys

from .data import DgpConfig, TauSpec
from .errors import ConfigError, DegenerateFoldError, DegenerateRunError, DomainError, ParseError
from .learner import LearnerKind, LearnerSpec
from .pipeline import DegeneratePolicy, RunConfig, Scheme
from .simharness import SimConfig, format_table, resolve_parallelism, simulate, validate_file

EXIT_OK, EXIT_CONFIG, EXIT_DATA, EXIT_DEGENERATE = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _knn_k(value: str):
    return None if value == "auto" else int(value)


def _run_args(p):
    p.add_argument("--k-folds", type=int, default=5)
    p.add_argument("--learner", choices=[k.value for k in LearnerKind], default="knn")
    p.add_argument("--knn-k", type=_knn_k, default=None, help="neighbours per arm, or 'auto'")
    p.add_argument("--scheme", choices=[s.value for s in Scheme], default="all")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hetseq", description="Validate treatment heterogeneity across folds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sim = sub.add_parser("simulate", help="rejection rates on simulated RCTs")
    sim.add_argument("--n", type=int, default=1000)
    sim.add_argument("--p", type=int, default=10)
    sim.add_argument("--pi", type=float, default=0.5)
    sim.add_argument("--noise-sd", type=float, default=1.0)
    sim.add_argument("--tau", choices=[t.value for t in TauSpec], default="zero")
    sim.add_argument("--reps", type=int, default=2000)
    sim.add_argument("--parallelism", default="auto", help="worker processes, or 'auto'")
    sim.add_argument("--degenerate", choices=[d.value for d in DegeneratePolicy], default="skip")
    sim.add_argument("--out", help="write the JSON report here")
    _run_args(sim)

    val = sub.add_parser("validate", help="test a CSV dataset (columns y, d, z1..zp)")
    val.add_argument("--input", required=True)
    val.add_argument("--degenerate", choices=[d.value for d in DegeneratePolicy], default="error")
    val.add_argument("--json", action="store_true", help="print JSON instead of the text report")
    _run_args(val)
    return parser


def _run_config(args) -> RunConfig:
    return RunConfig(K=args.k_folds, learner=LearnerSpec(args.learner, args.knn_k),
                     scheme=args.scheme, alpha=args.alpha, degenerate_policy=args.degenerate)


def _simulate(args) -> int:
    parallelism = None if args.parallelism == "auto" else int(args.parallelism)
    cfg = SimConfig(
        dgp=DgpConfig(n=args.n, p=args.p, pi=args.pi, tau_spec=TauSpec(args.tau), noise_sd=args.noise_sd),
        run=_run_config(args),
        reps=args.reps,
        base_seed=args.seed,
        parallelism=resolve_parallelism(parallelism),
    )
    report = simulate(cfg)
    print(format_table(report))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(report.to_json())
    return EXIT_OK


def _validate(args) -> int:
    cfg = _run_config(args)
    result, text = validate_file(args.input, cfg, args.seed)
    if args.json:
        print(json.dumps({"config": cfg.as_dict(), "seed": args.seed, **result.as_dict()},
                         indent=2, sort_keys=True))
    else:
        print(text)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = _simulate if args.command == "simulate" else _validate
    try:
        return handler(args)
    except ParseError as exc:
        print(f"hetseq: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DegenerateFoldError, DegenerateRunError) as exc:
        print(f"hetseq: degenerate run: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ConfigError, DomainError, ValueError) as exc:
        print(f"hetseq: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"hetseq: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
