"""Command line front end: one experiment kind per invocation.

Writes <out>/records.csv and <out>/manifest.json.  Exit code 0 on success,
2 when a pass/fail kind (tail-check, certify) fails its check, 1 on any
config or I/O error.
"""

import argparse
import sys

from .harness import KINDS, ExperimentConfig, run


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="spectop",
        description="Spectral-gap experiments on random graphs and simplicial complexes.",
    )
    ap.add_argument("kind", choices=KINDS, help="experiment to run")
    ap.add_argument("--n", type=int, help="number of vertices")
    ap.add_argument("--d", type=int, help="complex dimension where applicable")
    ap.add_argument("--p", type=float, help="literal edge/face probability")
    ap.add_argument("--coeff", type=float,
                    help="probability given as coeff * log(n) / n")
    ap.add_argument("--c", type=float,
                    help="poisson-betti window constant (resolves its own p)")
    ap.add_argument("--trials", type=int, default=1, help="independent trials")
    ap.add_argument("--seed", type=int, default=0, dest="master_seed",
                    help="master seed; trial seeds are derived from it")
    ap.add_argument("--M", type=float, default=10.0,
                    help="low-degree cutoff ratio for certify")
    ap.add_argument("--out", default="runs", help="output directory")
    ap.add_argument("--grid", type=int, default=12, dest="grid_points",
                    help="number of coarse scan points for t-hit")
    ap.add_argument("--import", dest="import_path", metavar="EDGE_LIST",
                    help="certify a fixed graph from an edge-list file")
    ap.add_argument("--workers", type=int, default=1, help="trial worker threads")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = ExperimentConfig(**vars(args))
    try:
        result = run(cfg)
    except (ValueError, OSError) as exc:
        print(f"spectop: error: {exc}", file=sys.stderr)
        return 1
    print(f"{result.csv_path}: {len(result.records)} rows")
    if cfg.kind in ("tail-check", "certify") and not result.ok:
        print(f"spectop: {cfg.kind} FAILED", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
