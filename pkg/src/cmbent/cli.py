"""Command-line front end: ``cmbent <command> [--n N] [--k K] [--a SPEC] ...``.

Exit codes: 0 success (or all checks matched), 1 a verification mismatch,
2 invalid parameters.  JSON output has sorted keys and carries no timestamps
unless ``--timestamps`` is given, so runs are byte-for-byte reproducible.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import __version__, charsum, cmdual, cosets, gf3, trits, walsh
from .errors import InternalInconsistency, InvalidInput, NotCovered
from .gf3 import FieldCtx, FieldElement

EXIT_OK, EXIT_MISMATCH, EXIT_INVALID = 0, 1, 2
CSV_MAX_N = 11
A_SCAN_MAX_N = 6


class UsageError(InvalidInput):
    pass


@dataclass
class RunConfig:
    command: str
    n: int | None
    k: int | None
    a_spec: str | None
    output: str | None
    format: str
    modulus_file: str | None
    threads: int
    force: bool
    a_scan: bool
    timestamps: bool

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        return cls(
            command=ns.command,
            n=ns.n,
            k=ns.k,
            a_spec=ns.a,
            output=ns.output,
            format=ns.format,
            modulus_file=ns.modulus_file,
            threads=max(1, ns.threads),
            force=ns.force,
            a_scan=ns.a_scan,
            timestamps=ns.timestamps,
        )


@dataclass
class Result:
    payload: object  # JSON-able dict, or a CSV string
    exit_code: int = EXIT_OK


# -- helpers -------------------------------------------------------------------


def _require(value: int | None, flag: str) -> int:
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _ctx(cfg: RunConfig) -> FieldCtx:
    n = _require(cfg.n, "--n")
    table = gf3.load_modulus_file(cfg.modulus_file) if cfg.modulus_file else None
    return gf3.ctx_new(n, table=table)


def resolve_a(ctx: FieldCtx, spec: str, a_scan: bool = False) -> list[FieldElement]:
    """Field elements named by an ``--a`` value."""
    if a_scan:
        if ctx.n > A_SCAN_MAX_N:
            raise UsageError(f"--a-scan is limited to n <= {A_SCAN_MAX_N}")
        return [ctx.from_index(i) for i in range(1, ctx.q)]
    if spec == "one":
        return [ctx.one]
    if spec == "generator":
        return [ctx.generator]
    if spec == "all-classes":
        # 1 is a square; a primitive element never is
        return [ctx.one, ctx.generator]
    try:
        e = int(spec)
    except ValueError:
        raise UsageError(f"--a must be one, generator, all-classes or an integer, got {spec!r}") from None
    return [gf3.pow_(ctx.generator, e)]


def _a_label(cfg: RunConfig, default: str) -> str:
    return "scan" if cfg.a_scan else (cfg.a_spec or default)


def _a_json(ctx: FieldCtx, a: FieldElement) -> dict:
    return {"index": a.index, "power": ctx.log(a), "eta": gf3.eta(ctx, a)}


def _map(cfg: RunConfig, fn: Callable, items: Sequence) -> list:
    if cfg.threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        return list(pool.map(fn, items))  # map keeps the input order


def _csv(header: Sequence[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# -- commands ------------------------------------------------------------------


def cmd_cosets(cfg: RunConfig) -> Result:
    n = _require(cfg.n, "--n")
    parts = cosets.cosets_mod(n)
    if cfg.format == "csv":
        return Result(_csv(["leader", "size", "members"],
                           ((c.leader, c.size, " ".join(map(str, c.members))) for c in parts)))
    return Result({
        "n": n,
        "modulus": 3**n - 1,
        "count": len(parts),
        "leaders": [c.leader for c in parts],
        "cosets": [{"leader": c.leader, "size": c.size, "members": list(c.members)} for c in parts],
    })


def cmd_walsh(cfg: RunConfig) -> Result:
    ctx = _ctx(cfg)
    k = _require(cfg.k, "--k")
    trits.check_cm_parameters(ctx.n, k)
    if cfg.format == "csv" and ctx.n > CSV_MAX_N and not cfg.force:
        raise UsageError(f"CSV dumps are capped at n <= {CSV_MAX_N}; pass --force to override")
    a_values = resolve_a(ctx, cfg.a_spec or "one", cfg.a_scan)

    def run(a: FieldElement):
        spec = walsh.walsh_fast(walsh.cm_function(ctx, a, k))
        return spec, walsh.classify(spec)

    results = _map(cfg, run, a_values)
    if cfg.format == "csv":
        rows = []
        for a, (spec, _) in zip(a_values, results):
            p = ctx.log(a)
            rows.extend((p, i, x, y) for i, (x, y) in enumerate(zip(spec.a.tolist(), spec.b.tolist())))
        return Result(_csv(["a_power", "lambda_index", "a", "b"], rows))
    return Result({
        "n": ctx.n,
        "k": k,
        "d": (3**k + 1) // 2,
        "a": _a_label(cfg, "one"),
        "runs": [
            {"a": _a_json(ctx, a), "report": rep.to_json(include_dual=False), "spectrum": spec.to_json()}
            for a, (spec, rep) in zip(a_values, results)
        ],
    })


def _verify_one(ctx: FieldCtx, k: int, a: FieldElement, s: cmdual.ExponentSet, closed_ok: bool) -> dict:
    params = cmdual.CmParams(ctx.n, k, a)
    spec = walsh.walsh_fast(walsh.cm_function(ctx, a, k))
    rep = walsh.classify(spec)
    out: dict = {"a": _a_json(ctx, a), "is_bent": rep.is_bent, "weakly_regular": rep.weakly_regular}
    if not rep.weakly_regular:
        out["match"] = False
        return out
    dual = rep.dual.values
    universal = cmdual.universal_dual_table(params, s)
    out["universal_matches"] = int((universal == dual).sum())
    reg = cmdual.regularity(params)
    out["unit"] = rep.unit.to_json()
    out["regular"] = rep.regular
    out["unit_matches_prefactor"] = reg.unit == rep.unit
    out["lambda0_matches"] = spec[0] == walsh.render_unit(ctx.n, reg.unit)
    out["dual_is_bent"] = walsh.bent_check(walsh.walsh_fast(rep.dual))
    ok = (
        out["universal_matches"] == ctx.q
        and out["unit_matches_prefactor"]
        and out["lambda0_matches"]
        and out["dual_is_bent"]
    )
    if closed_ok:
        closed = cosets.trace_poly_table(ctx, cmdual.closed_form_dual(params))
        out["closed_form_matches"] = int((closed == dual).sum())
        ok = ok and out["closed_form_matches"] == ctx.q
    out["points"] = ctx.q
    out["match"] = bool(ok)
    return out


def cmd_verify(cfg: RunConfig) -> Result:
    ctx = _ctx(cfg)
    k = _require(cfg.k, "--k")
    n = ctx.n
    a_values = resolve_a(ctx, cfg.a_spec or "all-classes", cfg.a_scan)
    cmdual.CmParams(n, k, a_values[0])  # parameter validation before the heavy work
    s = cmdual.enumerate_s(n, k)

    report: dict = {"n": n, "k": k, "a": _a_label(cfg, "all-classes"), "S_size": len(s), "leaders": list(s.coset_leaders)}
    try:
        terms = cmdual.closed_form_terms(n, k)
        report["dual_terms"] = [{"sign": t.sign, "a_power": t.a_power, "lambda_power": t.lam_power} for t in terms]
        report["closed_form"] = "covered"
        report["case_lemmas"] = cmdual.verify_case_lemmas(n, k, s).to_json()
        uvw = cmdual.case_uvw(n, k)
        report["uvw"] = {"case": uvw.case_tag.value, "t": uvw.t, "u": uvw.u, "v": uvw.v, "w": uvw.w}
        covered = True
    except NotCovered as exc:
        report["dual_terms"] = []
        report["closed_form"] = f"NotCovered: {exc}"
        covered = False

    runs = _map(cfg, lambda a: _verify_one(ctx, k, a, s, covered), a_values)
    report["runs"] = runs
    report["all_match"] = all(r["match"] for r in runs)
    return Result(report, EXIT_OK if report["all_match"] else EXIT_MISMATCH)


def cmd_enumerate_s(cfg: RunConfig) -> Result:
    n, k = _require(cfg.n, "--n"), _require(cfg.k, "--k")
    s = cmdual.enumerate_s(n, k)
    if cfg.format == "csv":
        return Result(_csv(["j", "leader", "sigma_j", "sigma_mjd"],
                           ((j, cosets.coset_of(j, n).leader, *s.per_coset[cosets.coset_of(j, n).leader])
                            for j in s.members)))
    return Result(s.to_json())


def cmd_gauss(cfg: RunConfig) -> Result:
    ctx = _ctx(cfg)
    ident = charsum.check_gauss_identities(ctx)
    inv = [charsum.check_inversion(ctx, ctx.from_index(i)) for i in range(1, ctx.q)]
    inv_err = max(r.max_abs_error for r in inv)
    ok = ident.ok and all(r.ok for r in inv)
    body = ident.to_json()
    body["identities"]["inversion_max"] = inv_err
    body["max_abs_error"] = max(body["max_abs_error"], inv_err)
    body["ok"] = ok
    return Result(body, EXIT_OK if ok else EXIT_MISMATCH)


def cmd_scan(cfg: RunConfig) -> Result:
    n = _require(cfg.n, "--n")
    ks = [cfg.k] if cfg.k is not None else trits.valid_ks(n)
    scans = _map(cfg, lambda k: trits.weight_floor_scan(n, k), ks)
    h = trits.half(n)
    ok = all(sc.min == n and sc.argmin == {h} for sc in scans)
    if cfg.format == "csv":
        return Result(_csv(["n", "k", "min", "argmin"],
                           ((sc.n, sc.k, sc.min, " ".join(map(str, sorted(sc.argmin)))) for sc in scans)))
    return Result({"n": n, "scans": [sc.to_json() for sc in scans], "floor_ok": ok},
                  EXIT_OK if ok else EXIT_MISMATCH)


def cmd_field_info(cfg: RunConfig) -> Result:
    ctx = _ctx(cfg)
    g = ctx.generator
    return Result({
        "n": ctx.n,
        "q": ctx.q,
        "modulus": list(ctx.modulus),
        "modulus_str": " + ".join(f"{c}x^{i}" for i, c in reversed(list(enumerate(ctx.modulus))) if c),
        "irreducible": gf3.is_irreducible(ctx.modulus),
        "generator": {"index": g.index, "coeffs": list(g.coeffs)},
        "alpha_primitive": ctx.is_primitive(ctx.alpha),
        "trace_gram": ctx.gram.tolist(),
    })


COMMANDS: dict[str, Callable[[RunConfig], Result]] = {
    "cosets": cmd_cosets,
    "walsh": cmd_walsh,
    "verify": cmd_verify,
    "enumerate-s": cmd_enumerate_s,
    "gauss": cmd_gauss,
    "scan": cmd_scan,
    "field-info": cmd_field_info,
}


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="extension degree, 1..13")
    common.add_argument("--k", type=int, help="odd k with gcd(n, k) = 1; d = (3^k + 1)/2")
    common.add_argument("--a", help="one | generator | all-classes | integer power of the generator")
    common.add_argument("--a-scan", action="store_true", help=f"use every nonzero a (n <= {A_SCAN_MAX_N})")
    common.add_argument("--modulus-file", help="file of 'n: c0 c1 ... cn' lines overriding the builtin moduli")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", help="write here instead of stdout")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--force", action="store_true", help=f"allow CSV spectrum dumps above n = {CSV_MAX_N}")
    common.add_argument("--timestamps", action="store_true", help="add a generation timestamp to JSON output")

    parser = argparse.ArgumentParser(prog="cmbent", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def render(cfg: RunConfig, result: Result) -> str:
    if isinstance(result.payload, str):
        return result.payload
    payload = result.payload
    if cfg.timestamps and isinstance(payload, dict):
        payload = dict(payload, generated_at=_dt.datetime.now(_dt.timezone.utc).isoformat())
    return json.dumps(payload, sort_keys=True, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def execute(cfg: RunConfig) -> tuple[int, str]:
    """Run a parsed configuration; returns (exit code, rendered text)."""
    if cfg.format == "csv" and cfg.command in ("verify", "gauss", "field-info"):
        raise UsageError(f"{cfg.command} only produces JSON")
    result = COMMANDS[cfg.command](cfg)
    return result.exit_code, render(cfg, result)


def main(argv: Sequence[str] | None = None) -> int:
    cfg = RunConfig.from_args(build_parser().parse_args(argv))
    try:
        code, text = execute(cfg)
    except InvalidInput as exc:
        print(f"cmbent: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InternalInconsistency as exc:
        print(f"cmbent: internal check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
