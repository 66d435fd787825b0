"""Compare the numba-compiled class-number kernels with the pure-Python fallback.

Each variant runs in its own interpreter because the backend is chosen at import
time from RPE_DISABLE_NUMBA. The compiled timing excludes the first (compiling)
call.

    python3 benchmarks/bench_numtheory.py --limit 5000 --repeat 3
"""

import argparse
import json
import os
import subprocess
import sys

CHILD = r"""
import json, sys, time
from rpe import _accel
from rpe.numtheory import class_number_table, fundamental_range
limit, repeat = int(sys.argv[1]), int(sys.argv[2])
ds = fundamental_range(3, limit)
class_number_table(ds[:4])
best = float("inf")
for _ in range(repeat):
    t0 = time.perf_counter()
    h, forms = class_number_table(ds)
    best = min(best, time.perf_counter() - t0)
print(json.dumps({"numba": _accel.NUMBA_ENABLED, "count": len(ds), "seconds": best,
                  "checksum": int(h.sum()), "agree": bool((h == forms).all())}))
"""


def run_variant(disable: bool, limit: int, repeat: int) -> dict:
    env = dict(os.environ, RPE_DISABLE_NUMBA="1" if disable else "0")
    out = subprocess.run(
        [sys.executable, "-c", CHILD, str(limit), str(repeat)],
        env=env, check=True, capture_output=True, text=True,
    )
    return json.loads(out.stdout)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=3000, help="largest d")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    jit = run_variant(False, args.limit, args.repeat)
    py = run_variant(True, args.limit, args.repeat)
    if jit["checksum"] != py["checksum"]:
        sys.exit("backends disagree")
    print(f"fundamental -d with 3 <= d <= {args.limit}: {jit['count']}")
    print(f"{'backend':<10}{'seconds':>12}{'sum=forms':>12}")
    for name, r in (("numba", jit), ("python", py)):
        print(f"{name:<10}{r['seconds']:>12.4f}{str(r['agree']):>12}")
    print(f"speedup {py['seconds'] / jit['seconds']:.1f}x")


if __name__ == "__main__":
    main()
