"""twyang verify: run check suites and write one JSON record per check."""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .report import Case, Report

SUITE_NAMES = ("qybe", "scalar-k", "rtt", "twisted-core", "determinants",
               "iso-a", "iso-so3", "iso-so4", "drinfeld", "dsl")

ALGEBRAS = ("gl2", "gl3", "gl4", "sp2", "so3", "so4")

# smallest truncation order per suite (series-based checks only)
MIN_ORDER = {"iso-a": 2, "iso-so3": 2, "drinfeld": 4}


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    type: str | None = None
    n_sites: int = 1
    order: int = 6
    points: str = "symbolic"
    seed: int | None = None
    dsl_file: str | None = None
    out: str | None = None


# ------------------------------------------------------------ helpers

def _rep(alg, cfg: SuiteConfig, start=1, n=None):
    from .reps import rep_for
    return rep_for(alg, cfg.n_sites if n is None else n, cfg.points, start, cfg.seed)


def _pair(s):
    from .rkmat import PairType
    try:
        return PairType.parse(s)
    except ValueError as e:
        raise ConfigError(str(e)) from None


def _pick(cfg, names, aliases=None):
    """Keys of a suite, narrowed by --type; unknown names are config errors."""
    if cfg.type is None:
        return list(names)
    key = (aliases or {}).get(cfg.type, cfg.type)
    if isinstance(key, (list, tuple)):
        return list(key)
    if key not in names:
        raise ConfigError("type %r not known to suite %s (choose from %s)" % (
            cfg.type, cfg.suite, ", ".join(names)))
    return [key]


# ------------------------------------------------------------ suites
# each suite: keys(cfg) -> [(key, supported)], run(cfg, key) -> Report

def _qybe_keys(cfg):
    keys = _pick(cfg, ALGEBRAS + ("special-r", "rv"))
    return [(k, True) for k in keys]


def _qybe_run(cfg, key):
    from . import rkmat
    if key == "special-r":
        return rkmat.special_r_identities()
    if key == "rv":
        return rkmat.rv_matrix_and_factorizations()
    return rkmat.check_qybe(key)


def _pair_keys(cfg):
    from .rkmat import PAIR_TYPES
    if cfg.type is None:
        return [(k, True) for k in PAIR_TYPES]
    return [(str(_pair(cfg.type)), True)]


def _det_keys(cfg):
    if cfg.type is None:
        return [("AI:2", True), ("AII:2", True)]
    pt = _pair(cfg.type)
    return [(str(pt), pt.family in ("AI", "AII") and pt.N == 2)]


def _scalar_k_run(cfg, key):
    from .rkmat import check_p_identity, check_scalar_reflection, p_gamma_theta
    from .polyrat import U
    pt = _pair(key)
    rep = check_scalar_reflection(pt)
    if pt.bcd:
        rep.check("p-identity", check_p_identity, pt)
    if pt.family == "AIII" and pt.q == 0 and pt.N == 2:
        th = p_gamma_theta(pt, U)[2]
        want = 2 * U / (2 * U - 1)
        rep.check("theta", lambda: None if th == want else "theta = %s" % th)
    return rep


def _rtt_keys(cfg):
    return [(k, True) for k in _pick(cfg, ALGEBRAS)]


def _rtt_run(cfg, key):
    from .reps import check_rtt
    return check_rtt(_rep(key, cfg))


def _core_run(cfg, key):
    from .reps import check_rtt
    from .twistgen import (build_s, c_series_extract, check_reflection_eq, check_symmetry,
                           z_w_qdet_sdet)
    pt = _pair(key)
    t = _rep(pt.algebra, cfg)
    rep = Report("twisted-core")
    rep.extend(check_rtt(t), "rtt:")
    S = build_s(t, pt)
    rep.check("const", S.check_const)
    rep.extend(check_reflection_eq(S), "RE:")
    if pt.family != "AIII":
        rep.extend(check_symmetry(S), "RES:")
        rep.extend(c_series_extract(S)[1], "c:")
    rep.extend(z_w_qdet_sdet(S)[1], "central:")
    if t.algebra.kind == "b" or t.N == 2:
        rep.extend(z_w_qdet_sdet(t)[1], "central:")
    return rep


def _det_run(cfg, key):
    from . import isomaps
    from .polyrat import U
    from .reps import Y2, trivial_rep
    from .twistgen import build_s, sdet2, z_w_qdet_sdet
    rep = Report("determinants")
    t = _rep(Y2, cfg)
    S = build_s(t, key)
    rep.extend(z_w_qdet_sdet(S)[1], "")
    S0 = build_s(trivial_rep(Y2), key)
    want = 1 if key == "AI:2" else isomaps.gamma2(U)
    d = sdet2(S0, U)
    rep.check("sdet(I)", lambda: None if d == want else "sdet = %s" % d)
    # w-transport through ψ₁ and ψ̂₂
    if key == "AI:2":
        _, r1 = isomaps.psi1(t)
        _, r2 = isomaps.psi2_hat(t)
        for c in list(r1) + list(r2):
            if "sdet" in c.case_id:
                rep.cases.append(c)
    return rep


def _iso_a_keys(cfg):
    return [(k, True) for k in _pick(cfg, ("psi1", "psi2", "psi2hat", "sp2"))]


def _iso_a_run(cfg, key):
    from . import isomaps
    from .reps import Y2
    t = _rep(Y2, cfg)
    if key == "sp2":
        return isomaps.sp2_twisted_maps(t, cfg.order)
    return {"psi1": isomaps.psi1, "psi2": isomaps.psi2, "psi2hat": isomaps.psi2_hat}[key](t)[1]


def _iso_so3_keys(cfg):
    return [(k, True) for k in _pick(cfg, ("q0", "q1"), {"BD0:3": "q0", "BDI:2,1": "q1"})]


def _iso_so3_run(cfg, key):
    from . import isomaps
    from .reps import Y2
    return isomaps.so3_twisted_maps(_rep(Y2, cfg), int(key[1]), cfg.order)


def _iso_so4_keys(cfg):
    aliases = {"DIII:2": "DIII", "BD0:4": "D0", "BDI:2,2": "DI"}
    return [(k, True) for k in _pick(cfg, ("psi3", "DIII", "D0", "DI", "transport"), aliases)]


def _iso_so4_run(cfg, key):
    from . import isomaps
    from .reps import Y2
    n = cfg.n_sites
    if key == "transport":
        a1, a2, b1, b2 = (_rep(Y2, cfg, start=k, n=1) for k in (1, 2, 3, 4))
        rep = isomaps.transport_commutes("psi1", a1, a2)
        return rep.extend(isomaps.transport_commutes("psi3", a1, a2, b1, b2))
    tA, tB = _rep(Y2, cfg, 1), _rep(Y2, cfg, 1 + n)
    if key == "psi3":
        return isomaps.psi3(tA, tB)[1]
    return isomaps.so4_embeddings(tA, tB, key, cfg.order)


def _drinfeld_keys(cfg):
    names = ("gauss", "phi", "phi+", "phi-", "coproduct")
    aliases = {"sp2": list(names), "CI:1": ["phi+"], "C0:2": ["phi-"]}
    return [(k, True) for k in _pick(cfg, names, aliases)]


def _drinfeld_run(cfg, key):
    from . import drinfeld as dr
    from .polyrat import U
    from .reps import SP2
    t = _rep(SP2, cfg)
    D = cfg.order
    if key == "gauss":
        g = dr.gauss_decompose(t.value(U), 2 * D)
        return dr.check_gauss_relations(g, D)
    if key == "phi":
        return dr.phi_generators(t, D).report
    if key == "phi+":
        return dr.phi_plus_generators(t, D).report
    if key == "phi-":
        return dr.phi_minus_generators(t, D).report
    a, b = _rep(SP2, cfg, 1, 1), _rep(SP2, cfg, 2, 1)
    return dr.check_coproduct(a, b, min(D, 4))


def _dsl_files(cfg):
    from .identdsl import SUITES, suite_path
    if cfg.dsl_file:
        p = Path(cfg.dsl_file)
        # "suites/<name>" also finds the files shipped with the package
        if not p.exists() and p.parent.name in ("suites", "") and suite_path(p.name).exists():
            p = suite_path(p.name)
        return [str(p)]
    return [str(suite_path(s)) for s in SUITES]


def _dsl_keys(cfg):
    from .identdsl import DslSyntaxError, parse_file
    out = []
    for f in _dsl_files(cfg):
        try:
            parse_file(f)
        except OSError as e:
            raise ConfigError("cannot read %s: %s" % (f, e)) from None
        except DslSyntaxError as e:
            raise ConfigError("%s:%s" % (f, e)) from None
        out.append((f, True))
    return out


def _dsl_run(cfg, key):
    from .identdsl import evaluate_check, parse_file, suite_context
    return evaluate_check(parse_file(key), suite_context(key))


SUITES = {
    "qybe": (_qybe_keys, _qybe_run),
    "scalar-k": (_pair_keys, _scalar_k_run),
    "rtt": (_rtt_keys, _rtt_run),
    "twisted-core": (_pair_keys, _core_run),
    "determinants": (_det_keys, _det_run),
    "iso-a": (_iso_a_keys, _iso_a_run),
    "iso-so3": (_iso_so3_keys, _iso_so3_run),
    "iso-so4": (_iso_so4_keys, _iso_so4_run),
    "drinfeld": (_drinfeld_keys, _drinfeld_run),
    "dsl": (_dsl_keys, _dsl_run),
}


# ------------------------------------------------------------ running

def validate(cfg: SuiteConfig):
    if cfg.suite not in SUITES:
        raise ConfigError("unknown suite %r" % cfg.suite)
    if cfg.n_sites < 0:
        raise ConfigError("n-sites must be >= 0")
    if cfg.points not in ("symbolic", "rational"):
        raise ConfigError("points must be symbolic or rational")
    need = MIN_ORDER.get(cfg.suite)
    if need is not None and cfg.order < need:
        raise ConfigError("suite %s needs --order >= %d" % (cfg.suite, need))
    if cfg.dsl_file and cfg.suite != "dsl":
        raise ConfigError("--dsl-file only applies to the dsl suite")
    return SUITES[cfg.suite][0](cfg)


def _run_one(cfg: SuiteConfig, key):
    t0 = time.perf_counter()
    try:
        rep = SUITES[cfg.suite][1](cfg, key)
    except (ArithmeticError, ValueError) as e:
        return [Case(key, "fail", "error: %s" % e, (time.perf_counter() - t0) * 1000)]
    cases = list(rep)
    out = []
    for c in cases:
        cid = c.case_id
        if len(cases) == 1 or cid == key:
            cid = key
        elif not cid.startswith(key + ":"):
            cid = "%s:%s" % (key, cid)
        out.append(Case(cid, c.status, c.witness, c.elapsed_ms))
    return out


def run_suite(cfg: SuiteConfig, jobs: int = 1):
    """Records for every case; raises ConfigError on a bad configuration."""
    keys = validate(cfg)
    results = {}
    todo = [k for k, ok in keys if ok]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=min(jobs, len(todo))) as ex:
            futs = {k: ex.submit(_run_one, cfg, k) for k in todo}
            for k, f in futs.items():
                results[k] = f.result()
    else:
        for k in todo:
            results[k] = _run_one(cfg, k)
    records = []
    for k, ok in keys:
        cases = results[k] if ok else [Case(k, "skip", "", 0.0)]
        for c in cases:
            records.append({"suite": cfg.suite, "case_id": c.case_id, "status": c.status,
                            "witness": c.witness, "elapsed_ms": round(c.elapsed_ms, 1)})
    return records


def emit_report(records, fh):
    for r in records:
        fh.write(json.dumps(r, ensure_ascii=False, separators=(",", ":")) + "\n")


def build_parser():
    p = argparse.ArgumentParser(prog="twyang", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)
    v = sub.add_parser("verify", help="run a check suite")
    v.add_argument("--suite", required=True)
    v.add_argument("--type", default=None, help="algebra, pair type or case name")
    v.add_argument("--n-sites", type=int, default=1)
    v.add_argument("--order", type=int, default=6, help="series truncation order D")
    v.add_argument("--points", default="symbolic", help="symbolic | rational")
    v.add_argument("--seed", type=int, default=None, help="randomize rational points")
    v.add_argument("--dsl-file", default=None)
    v.add_argument("--out", default=None, help="NDJSON output file (default stdout)")
    v.add_argument("--jobs", type=int, default=min(4, os.cpu_count() or 1))
    sub.add_parser("suites", help="list suite names")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.cmd == "suites":
        print("\n".join(SUITE_NAMES))
        return 0
    cfg = SuiteConfig(args.suite, args.type, args.n_sites, args.order, args.points,
                      args.seed, args.dsl_file, args.out)
    try:
        records = run_suite(cfg, max(1, args.jobs))
    except ConfigError as e:
        print("twyang: error: %s" % e, file=sys.stderr)
        return 2
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            emit_report(records, fh)
    else:
        emit_report(records, sys.stdout)
    nfail = sum(r["status"] == "fail" for r in records)
    npass = sum(r["status"] == "pass" for r in records)
    nskip = len(records) - nfail - npass
    print("%s: %d pass, %d fail, %d skip" % (cfg.suite, npass, nfail, nskip), file=sys.stderr)
    return 1 if nfail else 0


if __name__ == "__main__":
    sys.exit(main())
