"""Command-line entry point: ``fourq <subcommand> ...`` emitting JSON reports.

Exit status: 0 success, 1 a verification failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

import mpmath

from fourq import actions, curves, decomp, siegel
from fourq.dihedral import check_q, r, s, subgroup_generated
from fourq.errors import FourqError, InvalidParameterError
from fourq.kernel import CycNum, cyc_to_complex
from fourq.reps import character_table, fixed_dim
from fourq.report import Check

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
PRECISION_ENV = "FOURQ_PRECISION"
DEFAULT_PRECISION = 30
MIN_PRECISION = 9


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int | None = None
    lam: str | None = None
    vector: str | None = None
    gens: str | None = None
    output: str | None = None
    precision: int = DEFAULT_PRECISION
    budget: int = siegel.DEFAULT_BUDGET
    seed: int = 0
    mode: str = "enumerate"


class UsageError(FourqError):
    pass


# -- shared helpers ---------------------------------------------------------------------


def default_precision() -> int:
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None


def _approx(z: Any, digits: int) -> str:
    if isinstance(z, CycNum):
        return mpmath.nstr(cyc_to_complex(z, digits), digits)
    return mpmath.nstr(mpmath.mpc(z), digits)


def _require_q(cfg: RunConfig) -> int:
    if cfg.q is None:
        raise UsageError("--q is required")
    try:
        return check_q(cfg.q)
    except InvalidParameterError as exc:
        raise UsageError(f"invalid q: {exc}") from None


# -- fixed-dimension table -------------------------------------------------------------

FIXED_DIM_EXPECTED = {
    "V2": (0, 0, 0, 0, 1, 1),
    "V3": (1, 0, 1, 0, 0, 0),
    "V4": (0, 1, 0, 1, 0, 0),
    "V5": (1, 1, 1, 1, 0, 0),
    "V6": (1, 1, 1, 1, 2, 0),
}


def table_columns(q: int) -> list[tuple[str, Any]]:
    """The subgroups <s>, <sr>, <sr^-2>, <sr^-1>, <r^q>, <r^(q+2)>."""
    return [
        ("<s>", subgroup_generated([s(q, 0)])),
        ("<sr>", subgroup_generated([s(q, 1)])),
        ("<sr^-2>", subgroup_generated([s(q, -2)])),
        ("<sr^-1>", subgroup_generated([s(q, -1)])),
        ("<r^q>", subgroup_generated([r(q, q)])),
        ("<r^(q+2)>", subgroup_generated([r(q, q + 2)])),
    ]


def fixed_dim_table(q: int) -> dict[str, tuple]:
    table = character_table(q)
    cols = table_columns(q)
    return {label: tuple(fixed_dim(table.irrep(label), h) for _, h in cols) for label in FIXED_DIM_EXPECTED}


# -- reproduce-paper ---------------------------------------------------------------------


def reproduce_paper(q: int, *, seed: int = 0, budget: int = siegel.DEFAULT_BUDGET) -> dict:
    """Run every check tied to a stated result and collect pass/fail items."""
    check_q(q)
    items: list[Check] = []
    half = (q - 1) // 2

    got = fixed_dim_table(q)
    items.append(Check("fixed-dimension table", got == FIXED_DIM_EXPECTED, {k: list(v) for k, v in got.items()}))

    vectors = actions.enumerate_vectors(q)
    items.append(Check("generating-vector count 6q(q-1)", len(vectors) == 6 * q * (q - 1), len(vectors)))

    orbits = actions.topological_orbits(q, vectors)
    items.append(Check("single topological class", orbits.orbit_count == 1, orbits.orbit_sizes))

    classes = actions.essential_classes(q, vectors)
    s0, s1 = actions.sigma0(q), actions.sigma1(q)
    reps = {tuple(c.representative.elements): c.dims for c in classes}
    ok = (
        len(classes) == 2
        and reps.get(tuple(s0.elements), (None,) * 6)[2] == 0
        and reps.get(tuple(s1.elements), (None,) * 6)[2] == 1
    )
    items.append(Check("two essential classes (sigma_0, sigma_1)", ok, [c.to_json() for c in classes]))

    d0 = decomp.dimension_vector(s0)
    d1 = decomp.dimension_vector(s1)
    items.append(Check("dimensions for sigma_0", d0 == (0, 0, 0, 1, half, 0), list(d0)))
    items.append(Check("dimensions for sigma_1", d1 == (0, 0, 1, 0, half, 0), list(d1)))
    all_ok = all(
        sorted(decomp.dimension_vector(v)[2:4]) == [0, 1]
        and decomp.dimension_vector(v)[:2] + decomp.dimension_vector(v)[4:] == (0, 0, half, 0)
        for v in vectors
    )
    items.append(Check("dimension vectors of all generating vectors", all_ok))

    h4 = subgroup_generated([r(q, -2), s(q, -1)])
    h5 = subgroup_generated([s(q, 0)])
    hyp = subgroup_generated([r(q, q)])
    genus = {name: decomp.quotient_decomposition(s0, h, d0)[0] for name, h in (("H4", h4), ("H5", h5), ("<r^q>", hyp))}
    items.append(Check("quotient genera H4, H5, <r^q>", genus == {"H4": 1, "H5": half, "<r^q>": 0}, genus))
    ids = decomp.identify_jacobian_factors(s0, d0)
    ok = decomp.admits(ids, "B4", h4) and decomp.admits(ids, "B5", h5)
    items.append(Check("Jacobian identification B4 ~ J(S/H4), B5 ~ J(S/<s>)", ok, [x.to_json() for x in ids]))

    cw = decomp.chevalley_weil(s0)
    mult = cw.as_dict()
    table = character_table(q)
    w4w5 = set(table.rational[3].constituents) | set(table.rational[4].constituents)
    expected = {v.label: int(v.label in w4w5) for v in table.irreps}
    chi = decomp.analytic_character(cw)
    idx = {str(c.representative): i for i, c in enumerate(table.classes)}
    chi_vals = {
        "1": chi[idx["1"]],
        "s": chi[idx["s"]],
        "s r": chi[idx["s r"]],
        "r^q": chi[idx[f"r^{q}"]],
        "r": chi[idx["r"]],
    }
    chi_ok = chi_vals == {"1": q, "s": -1, "s r": 1, "r^q": -q, "r": 0} and all(
        chi[i] == 0 for i in range(4, len(chi))
    )
    items.append(Check("Chevalley-Weil: rho_a = W4 + W5", mult == expected and cw.total_dimension() == q, mult))
    items.append(Check("analytic character (q, -1, 1, -q, 0)", chi_ok, {k: str(v) for k, v in chi_vals.items()}))

    shim = decomp.shimura_dimension(s0, cw)
    items.append(Check("Shimura dimension (q+1)/2", shim == (q + 1) // 2, shim))

    for report in (
        curves.verify_automorphisms(q),
        curves.verify_covering_map(q, "1/3"),
        curves.verify_covering_map(q, "2+3i"),
        curves.wiman_check(q),
    ):
        items.append(Check(report.name, report.passed, [c.name for c in report.failures()] or None))

    jr = curves.j_ratfun()
    lam = curves.RatFun.gen(curves.LAMBDA_VAR)
    items.append(Check("j invariant under lambda -> 1/lambda, 1-lambda", jr.compose(1 / lam) == jr and jr.compose(1 - lam) == jr))

    if q == 5:
        rho_r, rho_s = siegel.symplectic_rep_q5()
        gen_report = siegel.generator_checks(rho_r, rho_s, 5)
        items.append(Check("symplectic generators", gen_report.passed, [c.name for c in gen_report.failures()] or None))
        fam = siegel.invariant_family([rho_r, rho_s])
        items.append(Check("invariant family dimension 3", fam.dimension == 3, fam.dimension))
        items.append(Check("family dimension equals Shimura dimension", fam.dimension == shim))
        paper = siegel.verify_paper_family([rho_r, rho_s])
        items.append(Check("published (u, v, w) family spans the invariant family", paper.passed, paper.to_json()))
        witness = siegel.sample_siegel_point(fam, budget, seed)
        items.append(Check("positive-definite witness", witness is not None, witness.to_json() if witness else None))

    return {
        "q": q,
        "passed": all(c.passed for c in items),
        "items": [c.to_json() for c in items],
    }


# -- subcommands ---------------------------------------------------------------------------


def cmd_decompose(cfg: RunConfig) -> tuple[dict, bool]:
    q = _require_q(cfg)
    v = actions.parse_vector(cfg.vector, q) if cfg.vector else actions.sigma0(q)
    report = decomp.decompose(q, v)
    ok = report.sum_check == q and report.cw_consistent
    return report.to_json(), ok


def cmd_vectors(cfg: RunConfig) -> tuple[dict, bool]:
    q = _require_q(cfg)
    vectors = actions.enumerate_vectors(q)
    out: dict = {"q": q, "count": len(vectors)}
    ok = len(vectors) == 6 * q * (q - 1)
    if cfg.mode == "enumerate":
        out["vectors"] = [v.to_json() for v in vectors]
    elif cfg.mode == "classify":
        out["normal_forms"] = [
            {"vector": v.to_json(), **{k: x for k, x in actions.normalize(v).to_json().items() if k != "vector"}}
            for v in vectors
        ]
        out["essential_classes"] = [c.to_json() for c in actions.essential_classes(q, vectors)]
    elif cfg.mode == "orbits":
        out.update(actions.topological_orbits(q, vectors).to_json())
    else:
        raise UsageError(f"unknown vectors mode {cfg.mode!r}")
    return out, ok


def _parse_lambda(text: str | None) -> curves.LambdaValue:
    if text is None:
        raise UsageError("--lambda is required")
    try:
        return curves.parse_lambda(text)
    except InvalidParameterError as exc:
        raise UsageError(f"invalid lambda: {exc}") from None


def cmd_curve(cfg: RunConfig) -> tuple[dict, bool]:
    q = _require_q(cfg)
    if cfg.lam is None:
        model = curves.curve_model(q)
        auto = curves.verify_automorphisms(q)
        return {"model": model.to_json(), "automorphisms": auto.to_json()}, auto.passed and model.squarefree
    lam = _parse_lambda(cfg.lam)
    try:
        model = curves.curve_model(q, lam)
    except InvalidParameterError as exc:
        raise UsageError(f"invalid lambda: {exc}") from None
    out: dict = {"model": model.to_json()}
    ok = model.squarefree
    admissible, _ = curves.admissibility(lam)
    if lam.is_exact and admissible:
        cover = curves.verify_covering_map(q, lam)
        out["covering_map"] = cover.to_json()
        ok = ok and cover.passed
    if lam.is_exact:
        out["c_approx"] = _approx(model.c, cfg.precision)
    try:
        quotient = curves.elliptic_quotient(lam)
        quotient["j"] = curves._json_value(quotient["j"])
    except InvalidParameterError:
        quotient = None  # lambda in {0, 1}: no Legendre quotient
    out["elliptic_quotient"] = quotient
    return out, ok


def cmd_classify(cfg: RunConfig) -> tuple[dict, bool]:
    lam = _parse_lambda(cfg.lam)
    cls = curves.classify_lambda(lam)
    out = cls.to_json()
    if lam.is_exact:
        out["lambda_approx"] = _approx(lam.exact, cfg.precision)
        if cls.j is not None:
            out["j_approx"] = _approx(cls.j, cfg.precision)
            out["moduli_field_bounds"] = curves.moduli_field_bounds(lam)
    return out, True


def cmd_wiman(cfg: RunConfig) -> tuple[dict, bool]:
    report = curves.wiman_check(_require_q(cfg))
    return report.to_json(), report.passed


def cmd_siegel(cfg: RunConfig) -> tuple[dict, bool]:
    if cfg.gens:
        _, gens = siegel.load_generators(cfg.gens)
        fam = siegel.invariant_family(gens)
        witness = siegel.sample_siegel_point(fam, cfg.budget, cfg.seed)
        out = fam.to_json()
        out["witness"] = witness.to_json() if witness else None
        return out, True
    q = _require_q(cfg)
    if q != 5:
        raise UsageError("bundled symplectic data exists only for q = 5; pass --gens for other q")
    rho_r, rho_s = siegel.symplectic_rep_q5()
    fam = siegel.invariant_family([rho_r, rho_s])
    witness = siegel.sample_siegel_point(fam, cfg.budget, cfg.seed)
    paper = siegel.verify_paper_family([rho_r, rho_s])
    out = fam.to_json()
    out["witness"] = witness.to_json() if witness else None
    out["paper_family"] = paper.to_json()
    return out, fam.dimension == 3 and witness is not None and paper.passed


def cmd_shimura(cfg: RunConfig) -> tuple[dict, bool]:
    q = _require_q(cfg)
    v = actions.parse_vector(cfg.vector, q) if cfg.vector else actions.sigma0(q)
    dim = decomp.shimura_dimension(v)
    return {"q": q, "vector": v.to_json(), "shimura_dim": dim}, dim == (q + 1) // 2


def cmd_reproduce(cfg: RunConfig) -> tuple[dict, bool]:
    q = _require_q(cfg)
    report = reproduce_paper(q, seed=cfg.seed, budget=cfg.budget)
    return report, report["passed"]


COMMANDS = {
    "decompose": cmd_decompose,
    "vectors": cmd_vectors,
    "curve": cmd_curve,
    "classify-lambda": cmd_classify,
    "wiman": cmd_wiman,
    "siegel-family": cmd_siegel,
    "shimura-dim": cmd_shimura,
    "reproduce-paper": cmd_reproduce,
}


def run(cfg: RunConfig, stdout=None) -> int:
    stdout = stdout or sys.stdout
    if cfg.command not in COMMANDS:
        print(f"error: unknown subcommand {cfg.command!r}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.precision < MIN_PRECISION:
        print(f"error: precision must be >= {MIN_PRECISION}, got {cfg.precision}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report, ok = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except actions.GeneratingVectorError as exc:
        print(f"error: invalid vector ({', '.join(exc.codes)}): {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvalidParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if cfg.output:
        try:
            Path(cfg.output).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"error: cannot write output file: {exc}", file=sys.stderr)
            return EXIT_USAGE
    else:
        stdout.write(text)
    return EXIT_OK if ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", "-o", help="write the JSON report here instead of stdout")
    common.add_argument("--precision", type=int, default=None, help=f"digits for numeric output (env {PRECISION_ENV})")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=siegel.DEFAULT_BUDGET, help="Siegel witness search budget")

    parser = argparse.ArgumentParser(prog="fourq", description="Riemann surfaces of genus q with 4q automorphisms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", parents=[common], help="group-algebra decomposition for a generating vector")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--vector", help='comma-separated elements, e.g. "s, s r^8, r^5, r^7"')

    p = sub.add_parser("vectors", parents=[common], help="enumerate, classify or orbit generating vectors")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--mode", choices=("enumerate", "classify", "orbits"), default="enumerate")

    p = sub.add_parser("curve", parents=[common], help="curve model and symbolic checks")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--lambda", dest="lam")

    p = sub.add_parser("classify-lambda", parents=[common], help="admissibility, reality, orbit and j")
    p.add_argument("--lambda", dest="lam", required=True)

    p = sub.add_parser("wiman", parents=[common], help="Wiman type II identity")
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("siegel-family", parents=[common], help="invariant period-matrix family")
    p.add_argument("--q", type=int)
    p.add_argument("--gens", help="JSON generator file {g, matrices}")

    p = sub.add_parser("shimura-dim", parents=[common], help="dimension of the Shimura family")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--vector")

    p = sub.add_parser("reproduce-paper", parents=[common], help="run every check and report pass/fail")
    p.add_argument("--q", type=int, required=True)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        precision = args.precision if args.precision is not None else default_precision()
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cfg = RunConfig(
        command=args.command,
        q=getattr(args, "q", None),
        lam=getattr(args, "lam", None),
        vector=getattr(args, "vector", None),
        gens=getattr(args, "gens", None),
        output=args.output,
        precision=precision,
        budget=args.budget,
        seed=args.seed,
        mode=getattr(args, "mode", "enumerate"),
    )
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
