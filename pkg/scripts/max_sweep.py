"""Sweep the maximal-dimension family: both builders, validation, GME and completion."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from gmestab.constructions import (
    _block_strings,
    _closed_form_strings,
    h_operators,
    k_min,
)
from gmestab.gme import is_gme_rank
from gmestab.stabilizer import StabilizerSet, validate


@dataclass(frozen=True)
class SweepConfig:
    n_min: int = 2
    n_max: int = 200
    completion: bool = True


def check(cfg: SweepConfig, n: int) -> list[str]:
    problems = []
    closed, blocks = _closed_form_strings(n), _block_strings(n)
    if closed != blocks:
        problems.append("builders disagree")
    s = StabilizerSet.from_strings(closed)
    rep = validate(s)
    k = k_min(n)
    if not (rep.valid and rep.independent and rep.subspace_dim == 2 ** (n - k)):
        problems.append(f"validation {rep}")
    if not is_gme_rank(s):
        problems.append("not GME")
    if cfg.completion and n > k:
        full = s.extend(h_operators(n))
        rep = validate(full)
        if not (rep.independent and rep.subspace_dim == 1):
            problems.append(f"completion {rep}")
    return problems


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-min", type=int, default=SweepConfig.n_min)
    p.add_argument("--n-max", type=int, default=SweepConfig.n_max)
    p.add_argument("--no-completion", action="store_true")
    args = p.parse_args()
    cfg = SweepConfig(args.n_min, args.n_max, not args.no_completion)
    t0 = time.perf_counter()
    failures = {}
    for n in range(cfg.n_min, cfg.n_max + 1):
        probs = check(cfg, n)
        if probs:
            failures[n] = probs
    dt = time.perf_counter() - t0
    print(f"N={cfg.n_min}..{cfg.n_max}: {len(failures)} failures in {dt:.2f}s")
    for n, probs in failures.items():
        print(f"  N={n}: {'; '.join(probs)}")
    if failures:
        raise SystemExit(1)


if __name__ == "__main__":
    main()
