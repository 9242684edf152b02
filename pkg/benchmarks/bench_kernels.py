"""Compare the Cython kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py --repeat 5
"""

import argparse
import json

from monopaths.bench import run


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    out = run(args.repeat, args.seed)
    print(json.dumps(out, indent=2, sort_keys=True))
    for name, row in sorted(out["kernels"].items()):
        if "cython" in row:
            print(f"{name:20s} python {row['python'] * 1e3:9.3f} ms  cython {row['cython'] * 1e3:9.3f} ms  x{row['speedup']:.1f}")
        else:
            print(f"{name:20s} python {row['python'] * 1e3:9.3f} ms  (no compiled kernels)")


if __name__ == "__main__":
    main()
