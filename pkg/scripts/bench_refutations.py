"""Time the built-in prover on catalog refutation tasks and check each proof."""
import argparse
import sys

from grouporder.harness.run import RunOptions, execute_task, load_catalog, select

TASKS = ["1.2", "2.2", "7.2", "8.2", "10.4", "12.1", "15.1", "16.2"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("tasks", nargs="*", default=TASKS)
    ap.add_argument("--budget", type=float, default=120)
    args = ap.parse_args(argv)

    catalog = load_catalog()
    failed = 0
    for tid in args.tasks:
        prior = {}
        for spec in select(catalog, [tid]):
            opts = RunOptions(budget_seconds=args.budget) if spec.id == tid else None
            report, _ = execute_task(spec, prior, opts)
            prior[spec.id] = report
        failed += report.observed != "refutation"
        print(report.line(), flush=True)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
