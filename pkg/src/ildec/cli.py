"""Command-line driver: instance generation, decoding, Monte Carlo
success-probability estimation and exponent curve / table reproduction.

All randomized subcommands are seeded; identical configuration and seed
give byte-identical outputs.  Exit codes: 0 success, 2 validation error,
3 budget exhausted, 4 infeasible / no solution.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import analysis
from .codes import gv_relative_distance, random_code
from .decoders import (
    SternParams,
    bruteforce_decoder,
    cf_decode,
    interleaved_prange,
    random_prange,
    random_stern,
)
from .errors import (
    BudgetExhausted,
    DomainError,
    Exhausted,
    IldecError,
    Infeasible,
    NoErrorToFind,
    NoSolution,
    NoVerifiedCandidate,
    TooLarge,
)
from .gfq import PrimeField
from .matq import _rref_inplace, sample_superinformation_set
from .interleave import (
    IdInstance,
    PlantedInstance,
    instance_from_json,
    instance_to_json,
    plant_instance,
)

_VALIDATION = (DomainError, TooLarge, ValueError)
_BUDGET = (BudgetExhausted, Exhausted)
_INFEASIBLE = (Infeasible, NoSolution, NoVerifiedCandidate, NoErrorToFind)


def _fail(code: int, err: Exception) -> int:
    obj = {"error": {"type": type(err).__name__, "message": str(err)}}
    print(json.dumps(obj, sort_keys=True), file=sys.stderr)
    return code


def _write(path: str | None, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


# --- gen -------------------------------------------------------------------


def _cmd_gen(args) -> int:
    F = PrimeField(args.q)
    rng = np.random.default_rng(args.seed)
    code = random_code(args.n, args.k, F, rng)
    t = args.t
    if t is None:
        # error weights are typically just below the GV distance
        t = max(1, math.ceil(gv_relative_distance(args.k / args.n, args.q) * args.n) - 1)
    inst = plant_instance(code, args.ell, t, rng)
    _write(args.out, instance_to_json(inst, keep_secret=args.keep_secret))
    return 0


# --- decode ----------------------------------------------------------------


def _cmd_decode(args) -> int:
    with open(args.infile) as fh:
        inst = instance_from_json(fh.read())
    if isinstance(inst, PlantedInstance):
        inst = inst.public()
    rng = np.random.default_rng(args.seed)
    verify = not args.no_verify
    if args.alg == "random-prange":
        out = random_prange(inst, rng, args.budget, verify)
    elif args.alg == "random-stern":
        out = random_stern(inst, None, rng, args.budget, verify)
    elif args.alg == "cf":
        w = args.w if args.w is not None else inst.t
        out = cf_decode(inst, w, rng, args.budget, verify)
    elif args.alg == "interleaved-prange":
        out = interleaved_prange(inst, rng, args.budget, verify)
    else:
        out = bruteforce_decoder(inst)
    doc = {
        "alg": args.alg,
        "support": list(out.support.indices),
        "iterations_used": out.iterations_used,
        "error_matrix": out.error_matrix.tolist() if out.error_matrix else None,
    }
    print(json.dumps(doc, sort_keys=True))
    return 0


# --- mc --------------------------------------------------------------------


def _mc_trial(alg: str, q: int, n: int, k: int, ell: int, t: int, seed, idx: int) -> bool:
    """One independent single-iteration success event on a freshly planted
    instance, matching the closed forms exactly: dependent error rows on
    the sampled column set for interleaved Prange, the error combination
    captured by the chosen redundancy set for random Prange."""
    rng = np.random.default_rng([seed, idx])
    code = random_code(n, k, PrimeField(q), rng)
    inst = plant_instance(code, ell, t, rng)
    planted = inst.T_supp.zero_based()
    if alg == "interleaved-prange":
        J = sample_superinformation_set(inst.code.G, ell, rng)
        hit = np.intersect1d(J.zero_based(), planted)
        block = inst.E.a[:, hit].copy()
        rk, _ = _rref_inplace(block, q)
        return rk < ell
    # random Prange: the error combination must land on the redundancy set
    x = rng.integers(0, q, size=ell, dtype=np.int64)
    while not x.any():
        x = rng.integers(0, q, size=ell, dtype=np.int64)
    e = (x @ inst.E.a) % q
    sel = rng.choice(n, size=n - k, replace=False)
    return bool(np.all(e[np.setdiff1d(np.arange(n), sel)] == 0))


def _mc_chunk(payload) -> int:
    alg, q, n, k, ell, t, seed, lo, hi = payload
    return sum(_mc_trial(alg, q, n, k, ell, t, seed, i) for i in range(lo, hi))


def mc_estimate(
    alg: str, q: int, n: int, k: int, ell: int, t: int, trials: int, seed: int, workers: int = 1
) -> dict:
    """Empirical per-iteration success frequency with a 95% normal CI.

    Trials use per-index derived seeds, so the result is independent of
    the worker count and scheduling order.
    """
    if trials < 1:
        raise DomainError("trials must be >= 1")
    if workers <= 1:
        succ = _mc_chunk((alg, q, n, k, ell, t, seed, 0, trials))
    else:
        bounds = np.linspace(0, trials, workers + 1, dtype=int)
        payloads = [
            (alg, q, n, k, ell, t, seed, int(lo), int(hi))
            for lo, hi in zip(bounds[:-1], bounds[1:])
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            succ = sum(pool.map(_mc_chunk, payloads))
    p_hat = succ / trials
    half = 1.96 * math.sqrt(max(p_hat * (1 - p_hat), 1e-300) / trials)
    if alg == "interleaved-prange":
        log_p = analysis.ip_success_prob(n, k, ell, t, q)
    else:
        log_p = analysis.rp_success_prob(n, k, t, q)
    return {
        "alg": alg,
        "trials": trials,
        "successes": succ,
        "p_hat": p_hat,
        "ci95": [max(0.0, p_hat - half), min(1.0, p_hat + half)],
        "closed_form": float(q) ** log_p,
        "closed_form_logq": log_p,
        "seed": seed,
    }


def _cmd_mc(args) -> int:
    res = mc_estimate(
        args.alg, args.q, args.n, args.k, args.ell, args.t, args.trials, args.seed, args.workers
    )
    print(json.dumps(res, sort_keys=True))
    return 0


# --- exponent / tables ------------------------------------------------------


def _curve_point(alg: str, mode: str, R: float, q: int, gamma: float, n_asym: int):
    params = analysis.AsymptoticParams(q, R, gamma)
    if mode == "simulated":
        if alg == "stern":
            raise DomainError("no simulated curve for Random Stern")
        return analysis.simulated_exponent(alg, n_asym, params)
    if alg == "ip":
        return analysis.exponent_ip(params)
    if alg == "rp":
        return analysis.exponent_rp(params)
    return analysis.exponent_stern(params)


def _cmd_exponent(args) -> int:
    lines = ["R,e,Wp,Lp"]
    grid = np.arange(args.grid_step, 1.0, args.grid_step)
    for R in grid:
        try:
            pt = _curve_point(args.alg, args.mode, float(R), args.q, args.gamma, args.n_asym)
        except DomainError:
            continue
        if pt.optimizer_state is not None:
            wp, lp = pt.optimizer_state
            lines.append(f"{pt.R:.6f},{pt.e:.6f},{wp:.6f},{lp:.6f}")
        else:
            lines.append(f"{pt.R:.6f},{pt.e:.6f},,")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


_TABLE_ROWS = {
    "simulated": [("Simulated Interleaved Prange", "ip"), ("Simulated Random Prange", "rp")],
    "upper-bound": [
        ("Upper Bound Interleaved Prange", "ip"),
        ("Upper Bound Random Prange", "rp"),
        ("Upper Bound Random Stern", "stern"),
    ],
}


def _cmd_tables(args) -> int:
    rows = []
    for label, alg in _TABLE_ROWS[args.mode]:
        r_star, e_star = analysis.maximize_over_rate(
            lambda R: _curve_point(alg, args.mode, R, args.q, args.gamma, args.n_asym).e,
            args.grid_step,
        )
        rows.append((label, alg, e_star, r_star))
    width = max(len(r[0]) for r in rows)
    print(f"{'Algorithm':<{width}}  {'e(R*,q)':>10}  {'R*':>8}")
    for label, _, e, r in rows:
        print(f"{label:<{width}}  {e:10.6f}  {r:8.6f}")
    if args.out:
        csv = ["algorithm,e,R"] + [f"{alg},{e:.6f},{r:.6f}" for _, alg, e, r in rows]
        _write(args.out, "\n".join(csv) + "\n")
    return 0


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ildec", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a planted instance (JSON)")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--ell", type=int, default=2)
    g.add_argument("--t", type=int, default=None)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default="-")
    g.add_argument("--keep-secret", action="store_true")
    g.set_defaults(func=_cmd_gen)

    d = sub.add_parser("decode", help="run one decoder on an instance file")
    d.add_argument(
        "--alg",
        required=True,
        choices=["random-prange", "random-stern", "cf", "interleaved-prange", "bruteforce"],
    )
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--budget", type=int, default=10**7)
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--w", type=int, default=None, help="target codeword weight (cf only)")
    d.add_argument("--no-verify", action="store_true")
    d.set_defaults(func=_cmd_decode)

    m = sub.add_parser("mc", help="Monte Carlo per-iteration success frequency")
    m.add_argument("--alg", required=True, choices=["random-prange", "interleaved-prange"])
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--k", type=int, required=True)
    m.add_argument("--ell", type=int, required=True)
    m.add_argument("--t", type=int, required=True)
    m.add_argument("--trials", type=int, required=True)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--workers", type=int, default=1)
    m.set_defaults(func=_cmd_mc)

    e = sub.add_parser("exponent", help="exponent curve as CSV")
    e.add_argument("--alg", required=True, choices=["rp", "stern", "ip"])
    e.add_argument("--mode", default="upper-bound", choices=["upper-bound", "simulated"])
    e.add_argument("--q", type=int, default=7)
    e.add_argument("--gamma", type=float, default=20.0)
    e.add_argument("--grid-step", type=float, default=1e-3)
    e.add_argument("--n-asym", type=int, default=10**5)
    e.add_argument("--out", default="-")
    e.set_defaults(func=_cmd_exponent)

    t = sub.add_parser("tables", help="reproduce the cost comparison tables")
    t.add_argument("--q", type=int, default=7)
    t.add_argument("--gamma", type=float, default=20.0)
    t.add_argument("--mode", default="simulated", choices=["upper-bound", "simulated"])
    t.add_argument("--grid-step", type=float, default=1e-3)
    t.add_argument("--n-asym", type=int, default=10**5)
    t.add_argument("--out", default=None)
    t.set_defaults(func=_cmd_tables)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _BUDGET as err:
        return _fail(3, err)
    except _INFEASIBLE as err:
        return _fail(4, err)
    except _VALIDATION as err:
        return _fail(2, err)
    except OSError as err:
        return _fail(2, err)


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
