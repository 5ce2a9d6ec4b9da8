"""Run catalog tasks and print a regression table against the manifests' expectations."""
import argparse
import sys
from pathlib import Path

from grouporder.harness.run import ReportStore, RunOptions, run_catalog


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("patterns", nargs="*", help="task ids or globs such as 9.*; default all")
    ap.add_argument("--out", type=Path, default=Path("runs"))
    ap.add_argument("--budget", type=float, help="override per-task seconds")
    ap.add_argument("--external-bin", help="directory holding prover9 and mace4")
    args = ap.parse_args(argv)

    store = ReportStore(args.out)
    opts = RunOptions(external_bin=args.external_bin, budget_seconds=args.budget)
    reports = run_catalog(args.patterns, store, opts)
    missed = 0
    for r in reports:
        print(r.line(), flush=True)
        missed += r.expect_met is False
    print(f"{len(reports)} tasks, {missed} expectation mismatches; reports in {store.dir}")
    return 1 if missed else 0


if __name__ == "__main__":
    sys.exit(main())
