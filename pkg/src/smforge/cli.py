"""Command-line front end: forms, class polynomials, Y0(2) tests,
independence checks, and the elimination pipelines, with JSON report
persistence.

Exit codes: 0 full success, 1 inconclusive outcome, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    precision_bits: int = 256
    cache_dir: str | None = None
    out_dir: str = "reports"
    json_output: bool = False
    min_abs: int | None = None
    max_abs: int | None = None

    def __post_init__(self):
        if self.precision_bits < 64:
            raise UsageError("--prec must be at least 64 bits")

    @classmethod
    def from_args(cls, args) -> "RunConfig":
        # precedence: flag > environment > default
        cache = getattr(args, "cache", None) or os.environ.get("SMFORGE_CACHE")
        return cls(
            precision_bits=getattr(args, "prec", None) or 256,
            cache_dir=cache,
            out_dir=getattr(args, "outdir", None) or "reports",
            json_output=bool(getattr(args, "json", False)),
            min_abs=getattr(args, "min", None),
            max_abs=getattr(args, "max", None),
        )


def _check_disc(value: int) -> int:
    from .forms import InvalidDiscriminant, _check_disc as check

    try:
        return check(value)
    except InvalidDiscriminant as exc:
        raise UsageError(str(exc))


# ---------------------------------------------------------------------------
# report persistence
# ---------------------------------------------------------------------------


def report_to_json(report) -> dict:
    out = report.to_dict()
    out["version"] = SCHEMA_VERSION
    return out


def report_filename(report) -> str:
    parts = [report.case] + [str(abs(d)) for d in report.discs]
    if len(report.discs) < 2:
        parts.append("all")
    return "_".join(parts[:3]) + ".json"


def emit_report(report, config: RunConfig) -> str:
    """Write one report as stable JSON (sorted keys, fixed layout); the
    write is atomic so concurrent emitters never interleave."""
    os.makedirs(config.out_dir, exist_ok=True)
    path = os.path.join(config.out_dir, report_filename(report))
    data = json.dumps(report_to_json(report), sort_keys=True, indent=1)
    fd, tmp = tempfile.mkstemp(dir=config.out_dir)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(data + "\n")
        os.replace(tmp, path)
    except OSError:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def validate_report(doc: dict) -> list[str]:
    """Schema conformance errors for one report document (empty = valid);
    mirrors report_schema.json without needing a validator package."""
    from .elimination import CASES, OUTCOMES

    errors = []
    required = {
        "case": str, "discs": list, "outcome": str,
        "constants": dict, "transcript": list, "version": int,
    }
    for key, typ in required.items():
        if key not in doc:
            errors.append(f"missing key {key}")
        elif not isinstance(doc[key], typ):
            errors.append(f"{key} has type {type(doc[key]).__name__}")
    if errors:
        return errors
    if doc["case"] not in CASES:
        errors.append(f"unknown case {doc['case']}")
    if doc["outcome"] not in OUTCOMES:
        errors.append(f"unknown outcome {doc['outcome']}")
    if not all(isinstance(d, int) for d in doc["discs"]):
        errors.append("discs must be integers")
    if not all(isinstance(t, str) for t in doc["transcript"]):
        errors.append("transcript must be strings")
    if not all(isinstance(v, str) for v in doc["constants"].values()):
        errors.append("constants must be stringified")
    return errors


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_forms(args, config: RunConfig) -> int:
    from .forms import enumerate_forms

    disc = _check_disc(args.disc)
    forms = enumerate_forms(disc)
    if config.json_output:
        print(json.dumps([{"a": f.a, "b": f.b, "c": f.c} for f in forms]))
    else:
        for f in forms:
            print(f.a, f.b, f.c)
    return 0


def _cmd_hilbert(args, config: RunConfig) -> int:
    from mpmath import workprec

    from .modular import class_polynomial, set_cache_dir

    disc = _check_disc(args.disc)
    if config.cache_dir:
        set_cache_dir(config.cache_dir)
    with workprec(config.precision_bits):
        poly = class_polynomial(disc)
    coeffs = list(reversed(poly.coefficients))  # leading first
    if config.json_output:
        print(json.dumps(
            {"disc": disc, "degree": poly.degree, "coefficients": coeffs}
        ))
    else:
        print(disc, poly.degree)
        print(" ".join(str(c) for c in coeffs))
    return 0


def _cmd_y0(args, config: RunConfig) -> int:
    from .y0 import on_y02, parse_surd, reduce_surd

    try:
        tau = parse_surd(args.tau)
        tau2 = parse_surd(args.tau2)
    except ValueError as exc:
        raise UsageError(str(exc))
    if not (tau.is_upper() and tau2.is_upper()):
        raise UsageError("both surds must lie in the upper half-plane")
    tau, _ = reduce_surd(tau)
    tau2, _ = reduce_surd(tau2)
    member, witness = on_y02(tau, tau2)
    if config.json_output:
        print(json.dumps({
            "on_y02": member,
            "witness": witness.description if witness else None,
        }))
    else:
        print("on Y0(2):", "yes" if member else "no")
        if witness:
            print("witness:", witness.description)
    return 0


def _parse_element_spec(text: str):
    """'1728' (a rational) or '-23:0' (conjugate #0 of the discriminant's
    singular modulus, in reduced-form order)."""
    if ":" in text:
        d, i = text.split(":", 1)
        return ("conjugate", int(d), int(i))
    return ("rational", Fraction(text))


def _cmd_indep(args, config: RunConfig) -> int:
    from mpmath import workprec

    from .forms import enumerate_forms
    from .modular import class_polynomial, set_cache_dir
    from .numberfield import build_field, mult_independent, roots_in_field

    if config.cache_dir:
        set_cache_dir(config.cache_dir)
    try:
        specs = [_parse_element_spec(args.alpha),
                 _parse_element_spec(args.beta)]
    except ValueError as exc:
        raise UsageError(str(exc))

    discs = []
    for s in specs:
        if s[0] == "conjugate":
            d = _check_disc(s[1])
            if not 0 <= s[2] < len(enumerate_forms(d)):
                raise UsageError(f"conjugate index {s[2]} out of range for {d}")
            if d not in discs:
                discs.append(d)

    with workprec(max(config.precision_bits, 256)):
        gens = [class_polynomial(d) for d in discs] or [1]
        field = build_field(gens)
        elems = []
        for s in specs:
            if s[0] == "rational":
                elems.append(field.from_rational(s[1]))
            else:
                d, i = s[1], s[2]
                roots = roots_in_field(
                    field,
                    list(class_polynomial(d).coefficients),
                    lambda d=d: _conjugate_values(field, d),
                )
                elems.append(roots[i][0])
        res = mult_independent(elems[0], elems[1])

    verdict = {
        "status": res.status,
        "method": res.method,
        "prime": res.certificate.prime if res.certificate else None,
        "valuations": (
            [res.certificate.v_alpha, res.certificate.v_beta]
            if res.certificate else None
        ),
        "ratio": list(res.dependence[:2]) if res.dependence else None,
        "zeta_checked": res.dependence is not None,
    }
    if config.json_output:
        print(json.dumps(verdict))
    else:
        print("status:", res.status, f"({res.method})")
        if verdict["prime"] is not None:
            print("prime:", verdict["prime"],
                  "valuations:", verdict["valuations"])
        if res.dependence:
            k, l = res.dependence[:2]
            print(f"dependence: alpha^{k} = zeta * beta^{l}")
    return 0 if res.status != "inconclusive" else 1


def _conjugate_values(field, disc):
    from .modular import eval_j, tau_of_form
    from .forms import enumerate_forms

    return [eval_j(tau_of_form(disc, f)) for f in enumerate_forms(disc)]


def _emit_all(reports, config: RunConfig) -> list[str]:
    """Emit every report, disambiguating repeated (case, discs) names."""
    used: dict[str, int] = {}
    paths = []
    for r in reports:
        name = report_filename(r)
        seen = used.get(name, 0)
        used[name] = seen + 1
        if seen:
            name = name[:-5] + f"_{seen + 1}.json"
        os.makedirs(config.out_dir, exist_ok=True)
        path = os.path.join(config.out_dir, name)
        data = json.dumps(report_to_json(r), sort_keys=True, indent=1)
        fd, tmp = tempfile.mkstemp(dir=config.out_dir)
        with os.fdopen(fd, "w") as fh:
            fh.write(data + "\n")
        os.replace(tmp, path)
        paths.append(path)
    return paths


def _run_reports(reports, config: RunConfig, label: str) -> int:
    _emit_all(reports, config)
    counts = {}
    for r in reports:
        counts[r.outcome] = counts.get(r.outcome, 0) + 1
    if config.json_output:
        print(json.dumps([report_to_json(r) for r in reports], sort_keys=True))
    else:
        print(f"{label}: {len(reports)} reports -> {config.out_dir}/")
        for outcome in ("eliminated", "survivor", "inconclusive"):
            if counts.get(outcome):
                print(f"  {outcome}: {counts[outcome]}")
        for r in reports:
            if r.outcome == "survivor":
                print("  survivor:", tuple(r.discs))
    return 1 if counts.get("inconclusive") else 0


def _cmd_eliminate(args, config: RunConfig) -> int:
    from mpmath import workprec

    from . import elimination
    from .modular import set_cache_dir

    if config.cache_dir:
        set_cache_dir(config.cache_dir)
    progress = None if config.json_output else _progress
    with workprec(config.precision_bits):
        if args.which == "linear":
            kw = {}
            if config.min_abs:
                kw["min_abs"] = config.min_abs
            if config.max_abs:
                kw["max_abs"] = config.max_abs
            reports = elimination.eliminate_linear(progress, **kw)
        else:
            reports = elimination.eliminate_mult(progress)
    return _run_reports(reports, config, f"eliminate {args.which}")


def _progress(msg: str):
    print(f"  .. {msg}", file=sys.stderr, flush=True)


def _cmd_verify(args, config: RunConfig) -> int:
    from mpmath import workprec

    from .elimination import EXPECTED_LINEAR_SURVIVORS, verify_all
    from .modular import set_cache_dir

    if args.target != "paper":
        raise UsageError(f"unknown verify target {args.target!r}")
    if config.cache_dir:
        set_cache_dir(config.cache_dir)
    with workprec(config.precision_bits):
        result = verify_all(None if config.json_output else _progress)
    _emit_all(result.linear_reports + result.mult_reports, config)
    summary = {
        "linear_survivors": [list(t) for t in result.linear_survivors],
        "expected_survivors": [list(t) for t in EXPECTED_LINEAR_SURVIVORS],
        "mult_survivors": [list(t) for t in result.mult_survivors],
        "mult_inconclusive": [list(t) for t in result.mult_inconclusive],
        "ok": result.ok,
    }
    if config.json_output:
        print(json.dumps(summary, sort_keys=True))
    else:
        print("linear survivors:", result.linear_survivors)
        print("mult survivors:", result.mult_survivors)
        print("mult inconclusive:", result.mult_inconclusive)
        print("verified" if result.ok else "NOT verified")
    return 0 if result.ok else 1


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="smforge")
    parser.add_argument("--prec", type=int, help="working precision in bits")
    parser.add_argument("--cache", help="class polynomial cache directory")
    parser.add_argument("--outdir", help="report output directory")
    parser.add_argument("--json", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forms")
    p.add_argument("--disc", type=int, required=True)

    p = sub.add_parser("hilbert")
    p.add_argument("--disc", type=int, required=True)

    p = sub.add_parser("y0")
    p.add_argument("--tau", required=True)
    p.add_argument("--tau2", required=True)

    p = sub.add_parser("indep")
    p.add_argument("--alpha", required=True)
    p.add_argument("--beta", required=True)

    p = sub.add_parser("eliminate")
    p.add_argument("which", choices=["linear", "mult"])
    p.add_argument("--min", type=int, help="smallest |disc'| in the sweep")
    p.add_argument("--max", type=int, help="largest |disc'| in the sweep")

    p = sub.add_parser("verify")
    p.add_argument("target", choices=["paper"])

    for sp in sub.choices.values():
        sp.add_argument("--prec", type=int)
        sp.add_argument("--cache")
        sp.add_argument("--outdir")
        sp.add_argument("--json", action="store_true")
    return parser


_HANDLERS = {
    "forms": _cmd_forms,
    "hilbert": _cmd_hilbert,
    "y0": _cmd_y0,
    "indep": _cmd_indep,
    "eliminate": _cmd_eliminate,
    "verify": _cmd_verify,
}


def dispatch(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        config = RunConfig.from_args(args)
        return _HANDLERS[args.command](args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> int:
    return dispatch(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
