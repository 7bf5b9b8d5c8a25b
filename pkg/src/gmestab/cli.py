"""Command-line entry point.

Exit codes: 0 pass, 2 validation failure, 3 bound mismatch, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from . import bell, faces, gme, selftest
from .config import DEFAULT_LIMITS, Limits
from .constructions import (
    ConstructionMismatch,
    construction2_generators,
    ghz_generators,
    h_operators,
    k_min,
    max_generators,
)
from .exact import QSqrt2
from .pauli import format_pauli_text, paulis_to_json
from .stabilizer import InvalidStabilizer, ResourceLimit, StabilizerSet, codeword_basis, validate

EXIT_OK, EXIT_INVALID, EXIT_BOUND, EXIT_LIMIT = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    command: str
    action: str | None = None
    n: int | None = None
    file: str | None = None
    family: str = "max"
    cyclic: bool = False
    dense_limit: int = DEFAULT_LIMITS.dense_limit
    brute_limit: int = DEFAULT_LIMITS.brute_limit
    trials: int = 20
    seed: int = 0
    tol: float = 1e-9
    workers: int = 1
    json: bool = False

    def __post_init__(self):
        for name in ("dense_limit", "brute_limit", "trials", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.tol <= 0:
            raise ValueError("tol must be positive")

    @property
    def limits(self) -> Limits:
        return DEFAULT_LIMITS.with_(dense_limit=self.dense_limit, brute_limit=self.brute_limit)

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "RunConfig":
        fields = cls.__dataclass_fields__
        return cls(**{k: v for k, v in vars(ns).items() if k in fields and v is not None})


class StageFailure(Exception):
    def __init__(self, code: int, stage: str, detail: str):
        super().__init__(f"{stage}: {detail}")
        self.code, self.stage, self.detail = code, stage, detail


def _num(q: QSqrt2) -> dict:
    return {"exact": str(q), "value": float(q), "coeff": q.to_json()}


def _emit(cfg: RunConfig, payload: dict, text: str) -> None:
    if cfg.json:
        print(json.dumps(payload, indent=2, sort_keys=True, default=float))
    else:
        print(text)


def _need_n(cfg: RunConfig) -> int:
    if cfg.n is None:
        raise ValueError("--n is required")
    return cfg.n


# commands -------------------------------------------------------------------------

def cmd_check_gme(cfg: RunConfig) -> int:
    if not cfg.file:
        raise ValueError("check-gme needs a generator file")
    s = StabilizerSet.from_file(cfg.file)
    info = gme.explain(s)
    if not info["validation"]["valid"]:
        _emit(cfg, info, f"invalid stabilizer: {info['validation']}")
        return EXIT_INVALID
    gme_ = info["rank_criterion"]
    lines = [f"N={s.n} k={s.k} dim={info['validation']['subspace_dim']}",
             f"dim K = {info['dim_K']} (GME needs {s.n - 1})",
             f"GME: {'yes' if gme_ else 'no'}"]
    if "oracle" in info:
        lines.append(f"bipartition oracle agrees: {info['oracle'] == gme_}")
        if info["oracle"] != gme_:
            _emit(cfg, info, "\n".join(lines))
            return EXIT_INVALID
    _emit(cfg, info, "\n".join(lines))
    return EXIT_OK


def _construct(cfg: RunConfig, family: str) -> StabilizerSet | list:
    n = _need_n(cfg)
    if family == "ghz":
        return ghz_generators(n)
    if family == "c2":
        return construction2_generators(n, cfg.cyclic)
    if family == "max":
        return max_generators(n)
    if family == "h":
        return h_operators(n)
    raise ValueError(f"unknown family {family}")


def cmd_construct(cfg: RunConfig) -> int:
    res = _construct(cfg, cfg.action)
    ops = list(res.generators) if isinstance(res, StabilizerSet) else res
    _emit(cfg, paulis_to_json(ops), format_pauli_text(ops).rstrip())
    return EXIT_OK


def _expression(cfg: RunConfig) -> bell.BellExpression:
    if cfg.file:
        return bell.BellExpression.from_json(Path(cfg.file).read_text())
    if cfg.family == "chsh":
        return bell.chsh()
    n = _need_n(cfg)
    if cfg.family == "max":
        return bell.synth_max_inequality(n)
    if cfg.family == "cyclic":
        return bell.synth_cyclic_inequality(n)
    raise ValueError(f"unknown family {cfg.family}")


def _family_set(cfg: RunConfig) -> tuple[StabilizerSet, list | None]:
    if cfg.family == "chsh":
        return StabilizerSet.from_strings(["XX", "ZZ"]), None
    n = _need_n(cfg)
    if cfg.family == "max":
        return max_generators(n), None
    return construction2_generators(n, cyclic=True), bell.cyclic_weights(n)


def cmd_bell(cfg: RunConfig) -> int:
    expr = _expression(cfg)
    if cfg.action == "synth":
        _emit(cfg, expr.to_json(), f"{expr.name or 'expression'}: {expr}\n"
              f"classical bound {expr.classical_bound}, quantum bound {expr.quantum_bound}")
        return EXIT_OK
    if cfg.action == "classical":
        cb = bell.classical_bound(expr, cfg.brute_limit, workers=cfg.workers)
        ok = expr.classical_bound is None or cb.exact == expr.classical_bound
        payload = {"classical_bound": _num(cb.exact), "claimed": None if expr.classical_bound is None
                   else _num(expr.classical_bound), "match": ok,
                   "witness": [[p, x, v] for (p, x), v in sorted(cb.witness.items())]}
        _emit(cfg, payload, f"brute-force classical bound {cb.exact} (claimed "
              f"{expr.classical_bound}): {'match' if ok else 'MISMATCH'}")
        return EXIT_OK if ok else EXIT_BOUND
    if cfg.file:
        raise ValueError(f"bell {cfg.action} needs --family, not --file")
    s, weights = _family_set(cfg)
    beta = float(expr.quantum_bound)
    if cfg.action == "quantum":
        eig = bell.max_eigenvalue(expr, dense_limit=cfg.dense_limit)
        sub = bell.quantum_value_on_subspace(expr, s, dense_limit=cfg.dense_limit)
        ok = max(abs(eig - beta), abs(sub.min - beta), abs(sub.max - beta)) <= cfg.tol
        payload = {"quantum_bound": beta, "max_eigenvalue": eig,
                   "subspace_min": sub.min, "subspace_max": sub.max, "match": ok}
        _emit(cfg, payload, f"beta_Q={beta:.12f} max eig={eig:.12f} "
              f"subspace=[{sub.min:.12f}, {sub.max:.12f}]: {'match' if ok else 'MISMATCH'}")
        return EXIT_OK if ok else EXIT_BOUND
    if cfg.action == "sos":
        res = bell.max_sos_residual(expr, s, weights, trials=cfg.trials, seed=cfg.seed)
        ok = res <= cfg.tol
        _emit(cfg, {"max_residual": res, "trials": cfg.trials, "seed": cfg.seed, "passed": ok},
              f"SOS max residual over {cfg.trials} random observable sets: {res:.3e}"
              f" ({'pass' if ok else 'FAIL'})")
        return EXIT_OK if ok else EXIT_BOUND
    raise ValueError(f"unknown bell action {cfg.action}")


def cmd_selftest(cfg: RunConfig) -> int:
    n = _need_n(cfg)
    s = max_generators(n)
    obs = bell.canonical_observables(n)
    basis = codeword_basis(s, cfg.dense_limit)
    reports = [selftest.verify_stabilization(obs, basis[:, j], s) for j in range(basis.shape[1])]
    pair_err = max(selftest.canonical_error(p, selftest.canonicalize_pair(p))
                   for p in selftest.propagated_pairs(obs))
    ok = all(r.passed for r in reports) and pair_err <= 1e-8
    lines = ["codeword  max residual  fidelity"]
    lines += [f"{j:8d}  {r.max_residual:.3e}     {r.fidelity:.12f}" for j, r in enumerate(reports)]
    lines.append(f"canonicalization error of propagated pairs: {pair_err:.3e}")
    lines.append(f"{'PASS' if ok else 'FAIL'} ({selftest.SCOPE_NOTE})")
    _emit(cfg, {"N": n, "codewords": [r.to_json() for r in reports],
                "pair_error": pair_err, "passed": ok, "note": selftest.SCOPE_NOTE},
          "\n".join(lines))
    return EXIT_OK if ok else EXIT_INVALID


def cmd_faces(cfg: RunConfig) -> int:
    rep = faces.analyze_face(_need_n(cfg), dense_limit=cfg.dense_limit, tol=cfg.tol)
    lines = [f"N={rep.n} k_min={rep.k} face dimension {rep.dimension} "
             f"(expected {rep.expected}), beta_Q={rep.quantum_bound:.12f}",
             "state  value             residual"]
    lines += [f"{j:5d}  {v:.12f}  {r:.2e}" for j, (v, r) in enumerate(zip(rep.values, rep.residuals))]
    lines.append(f"max overlap {rep.max_overlap:.2e}; signs recovered: {rep.signs_recovered}")
    _emit(cfg, rep.to_json(), "\n".join(lines))
    return EXIT_OK if rep.passed else EXIT_BOUND


# certificate ----------------------------------------------------------------------

def certify(cfg: RunConfig) -> dict:
    """Run the full pipeline for the maximal family at one N."""
    n = _need_n(cfg)
    stages: list[dict] = []
    cert = {"N": n, "seed": cfg.seed, "trials": cfg.trials, "tol": cfg.tol,
            "limits": {"dense": cfg.dense_limit, "brute": cfg.brute_limit}, "stages": stages}

    def stage(name: str, code: int, fn: Callable[[], dict], skip: str | None = None):
        if skip:
            stages.append({"stage": name, "status": "skipped", "reason": skip})
            return
        try:
            info = fn()
        except ResourceLimit as e:
            raise StageFailure(EXIT_LIMIT, name, str(e)) from e
        except (InvalidStabilizer, ConstructionMismatch, faces.FaceMembershipError) as e:
            raise StageFailure(code, name, str(e)) from e
        ok = info.pop("ok")
        stages.append({"stage": name, "status": "pass" if ok else "fail", **info})
        if not ok:
            raise StageFailure(code, name, json.dumps(info, default=float))

    k = k_min(n)
    dense_ok = n <= cfg.dense_limit
    ctx: dict = {}

    def construct():
        ctx["set"] = s = max_generators(n)
        return {"ok": s.k == k, "k_min": k, "generators": s.words()}

    def validation():
        rep = validate(ctx["set"])
        return {"ok": rep.valid and rep.subspace_dim == 2 ** (n - k), **rep.to_json()}

    def gme_stage():
        rank = gme.is_gme_rank(ctx["set"])
        out = {"rank_criterion": rank}
        ok = rank
        if n <= DEFAULT_LIMITS.oracle_limit:
            out["oracle"] = gme.is_gme_oracle(ctx["set"])
            ok = ok and out["oracle"]
        return {"ok": ok, **out}

    def synth():
        ctx["expr"] = e = bell.synth_max_inequality(n)
        return {"ok": e.classical_bound < e.quantum_bound, "terms": len(e),
                "beta_C": _num(e.classical_bound), "beta_Q": _num(e.quantum_bound)}

    def classical():
        cb = bell.classical_bound(ctx["expr"], cfg.brute_limit, workers=cfg.workers)
        return {"ok": cb.exact == ctx["expr"].classical_bound, "brute_force": _num(cb.exact)}

    def sos():
        res = bell.max_sos_residual(ctx["expr"], ctx["set"], trials=cfg.trials, seed=cfg.seed)
        return {"ok": res <= cfg.tol, "max_residual": res}

    def quantum():
        beta = float(ctx["expr"].quantum_bound)
        sub = bell.quantum_value_on_subspace(ctx["expr"], ctx["set"], dense_limit=cfg.dense_limit)
        err = max(abs(sub.min - beta), abs(sub.max - beta))
        return {"ok": err <= cfg.tol, "min": sub.min, "max": sub.max, "error": err}

    def face():
        rep = faces.analyze_face(n, dense_limit=cfg.dense_limit, tol=cfg.tol)
        return {"ok": rep.passed, "face_dimension": rep.dimension, "expected": rep.expected,
                "max_overlap": rep.max_overlap}

    too_big = f"N={n} exceeds dense limit {cfg.dense_limit}"
    try:
        stage("construct", EXIT_INVALID, construct)
        stage("validate", EXIT_INVALID, validation)
        stage("gme", EXIT_INVALID, gme_stage)
        stage("synth", EXIT_BOUND, synth)
        stage("classical", EXIT_BOUND, classical,
              None if n <= cfg.brute_limit else f"N={n} exceeds brute limit {cfg.brute_limit}")
        stage("sos", EXIT_BOUND, sos, None if dense_ok else too_big)
        stage("quantum", EXIT_BOUND, quantum, None if dense_ok else too_big)
        stage("face", EXIT_BOUND, face, None if dense_ok else too_big)
    except StageFailure as e:
        cert.update(passed=False, exit_code=e.code, failed_stage=e.stage, detail=e.detail)
        return cert
    cert.update(passed=True, exit_code=EXIT_OK)
    return cert


def cmd_certify(cfg: RunConfig) -> int:
    cert = certify(cfg)
    lines = [f"certificate for N={cert['N']}"]
    for st in cert["stages"]:
        extra = {k: v for k, v in st.items() if k not in ("stage", "status", "generators")}
        lines.append(f"  {st['stage']:<10} {st['status']:<8} {json.dumps(extra, default=float)}")
    lines.append("PASS" if cert["passed"] else f"FAIL at {cert['failed_stage']}: {cert['detail']}")
    _emit(cfg, cert, "\n".join(lines))
    return cert["exit_code"]


# parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--n", type=int)
    common.add_argument("--file")
    common.add_argument("--dense-limit", type=int)
    common.add_argument("--brute-limit", type=int)
    common.add_argument("--trials", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--workers", type=int)
    common.add_argument("--json", action="store_true")

    p = argparse.ArgumentParser(prog="gmestab", description=__doc__.splitlines()[0],
                                parents=[common])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check-gme", parents=[common], help="validate a generator file and test GME")
    c.add_argument("path", nargs="?")

    c = sub.add_parser("construct", parents=[common], help="print a generator family")
    c.add_argument("action", choices=["ghz", "c2", "max", "h"])
    c.add_argument("--cyclic", action="store_true")

    c = sub.add_parser("bell", parents=[common], help="Bell expressions and their bounds")
    c.add_argument("action", choices=["synth", "classical", "quantum", "sos"])
    c.add_argument("--family", choices=["max", "cyclic", "chsh"],
                   help="inequality family (default max)")

    c = sub.add_parser("selftest", parents=[common], help="self-testing ingredients")
    c.add_argument("action", choices=["verify"])

    sub.add_parser("faces", parents=[common], help="face dimension of the maximal inequality")
    sub.add_parser("certify", parents=[common], help="full certification pipeline")
    return p


COMMANDS = {
    "check-gme": cmd_check_gme,
    "construct": cmd_construct,
    "bell": cmd_bell,
    "selftest": cmd_selftest,
    "faces": cmd_faces,
    "certify": cmd_certify,
}


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    if getattr(ns, "path", None) and not getattr(ns, "file", None):
        ns.file = ns.path
    try:
        cfg = RunConfig.from_args(ns)
        return COMMANDS[cfg.command](cfg)
    except ResourceLimit as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (InvalidStabilizer, ConstructionMismatch) as e:
        print(f"validation failure: {e}", file=sys.stderr)
        return EXIT_INVALID
    except faces.FaceMembershipError as e:
        print(f"bound mismatch: {e}", file=sys.stderr)
        return EXIT_BOUND
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
