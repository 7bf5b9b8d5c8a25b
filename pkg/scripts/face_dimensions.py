"""Face dimension of the maximal-family inequality for a range of N."""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass

from gmestab.faces import analyze_face


@dataclass(frozen=True)
class FaceConfig:
    n_min: int = 3
    n_max: int = 9
    dense_limit: int = 12


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=FaceConfig.n_min)
    p.add_argument("--n-max", type=int, default=FaceConfig.n_max)
    p.add_argument("--dense-limit", type=int, default=FaceConfig.dense_limit)
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    cfg = FaceConfig(args.n_min, args.n_max, args.dense_limit)
    reports = []
    for n in range(cfg.n_min, cfg.n_max + 1):
        t0 = time.perf_counter()
        rep = analyze_face(n, dense_limit=cfg.dense_limit)
        reports.append((rep, time.perf_counter() - t0))
    if args.json:
        print(json.dumps([r.to_json() for r, _ in reports], indent=2))
    else:
        print(f"{'N':>3} {'k_min':>5} {'states':>6} {'dim':>4} {'expected':>8} {'max resid':>10} {'sec':>6}")
        for r, dt in reports:
            print(f"{r.n:>3} {r.k:>5} {len(r.values):>6} {r.dimension:>4} {r.expected:>8} "
                  f"{max(r.residuals):>10.1e} {dt:>6.2f}")
    if not all(r.passed for r, _ in reports):
        raise SystemExit(1)


if __name__ == "__main__":
    main()
