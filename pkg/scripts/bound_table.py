"""Classical and quantum bounds of the synthesized inequalities.

Brute-force classical bound next to the closed forms, plus the dense
quantum value (max eigenvalue of the canonical Bell operator) where it fits.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass


from gmestab.bell import classical_bound, max_eigenvalue, synth_cyclic_inequality, \
    synth_max_inequality


@dataclass(frozen=True)
class TableConfig:
    n_min: int = 2
    n_max: int = 12
    dense_max: int = 10
    workers: int = 1
    family: str = "max"


def row(cfg: TableConfig, n: int) -> dict:
    e = synth_max_inequality(n) if cfg.family == "max" else synth_cyclic_inequality(n)
    t0 = time.perf_counter()
    cb = classical_bound(e, brute_limit=max(cfg.n_max, 14), workers=cfg.workers)
    out = {"N": n, "terms": len(e), "beta_C": str(cb.exact), "claimed_beta_C": str(e.classical_bound),
           "beta_Q": float(e.quantum_bound), "brute_seconds": round(time.perf_counter() - t0, 3)}
    if n <= cfg.dense_max:
        out["max_eig"] = max_eigenvalue(e)
    return out


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    for f in TableConfig.__dataclass_fields__.values():
        p.add_argument("--" + f.name.replace("_", "-"), type=type(f.default), default=f.default)
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    cfg = TableConfig(**{k: getattr(args, k) for k in TableConfig.__dataclass_fields__})
    ns = range(cfg.n_min, cfg.n_max + 1)
    if cfg.family == "cyclic":
        ns = [n for n in ns if n % 2 == 0 and n >= 6]
    rows = [row(cfg, n) for n in ns]
    if args.json:
        print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
        return
    print(f"{'N':>3} {'terms':>5} {'beta_C':>7} {'claimed':>7} {'beta_Q':>12} {'max eig':>12} {'sec':>7}")
    for r in rows:
        eig = f"{r['max_eig']:.9f}" if "max_eig" in r else "-"
        print(f"{r['N']:>3} {r['terms']:>5} {r['beta_C']:>7} {r['claimed_beta_C']:>7} "
              f"{r['beta_Q']:>12.9f} {eig:>12} {r['brute_seconds']:>7}")
    if any(r["beta_C"] != r["claimed_beta_C"] for r in rows):
        raise SystemExit("classical bound mismatch")
    if any(abs(r.get("max_eig", r["beta_Q"]) - r["beta_Q"]) > 1e-9 for r in rows):
        raise SystemExit("quantum value mismatch")


if __name__ == "__main__":
    main()
