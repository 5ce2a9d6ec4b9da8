"""Time the built-in finder on the catalog's model tasks, size by size."""
import argparse
import sys
import time

from grouporder.harness.run import load_catalog
from grouporder.modelfinder.search import SearchBudget, find_model_report
from grouporder.theories import compile_theory

TASKS = ["1.1", "2.1", "3.1", "4.1", "7.1", "10.1", "10.3", "17.4", "5.1", "9.1", "9.3", "9.5", "9.7"]


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("tasks", nargs="*", default=TASKS)
    ap.add_argument("--max-size", type=int, default=14)
    ap.add_argument("--seconds-per-size", type=float, default=900)
    args = ap.parse_args(argv)

    specs = {s.id: s for s in load_catalog()}
    for tid in args.tasks:
        cs = compile_theory(specs[tid].theory)
        t0 = time.monotonic()
        rep = find_model_report(cs, SearchBudget(1, args.max_size, args.seconds_per_size))
        sizes = " ".join(f"{s.size}:{s.status}/{s.seconds:.2f}s" for s in rep.sizes)
        print(f"{tid:>5}  size {rep.size}  minimal {rep.minimal}  {time.monotonic() - t0:7.2f}s  [{sizes}]",
              flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
