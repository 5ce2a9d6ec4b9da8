"""Rebuild the size-120 stand-in model for task 8.1 from unit quaternions."""
import argparse
import sys
from pathlib import Path

from grouporder.harness.run import catalog_dir, load_catalog
from grouporder.modelfinder.check import check_model
from grouporder.oracles import poincare_sphere_model
from grouporder.theories import compile_theory


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=catalog_dir() / "poincare_icosahedral120.model")
    ap.add_argument("--check", action="store_true", help="compare with the existing file instead of writing")
    args = ap.parse_args(argv)

    model = poincare_sphere_model()
    spec = next(s for s in load_catalog() if s.id == "8.1")
    res = check_model(model, compile_theory(spec.theory))
    if not res.ok:
        print(f"model fails the 8.1 theory: {res.reason}", file=sys.stderr)
        return 1
    text = model.dumps()
    if args.check:
        same = args.out.exists() and args.out.read_text() == text
        print("up to date" if same else f"{args.out} differs")
        return 0 if same else 1
    args.out.write_text(text)
    print(f"wrote {args.out} (size {model.size}, a={model.constants['a']}, b={model.constants['b']})")
    return 0


if __name__ == "__main__":
    sys.exit(main())
