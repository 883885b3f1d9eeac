"""Command-line entry point: ``superdenom <command> [flags]``.

Exit status: 0 pass or informational, 1 mathematical mismatch, 2 usage
error, 3 internal assertion (enumeration shell bounds).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import identities as ids
from .lattice import Weight
from .products import DegenerateFactor, build_R, expand
from .series import IncompatibleCones, NotAUnit, SparseSeries, SupportViolation, support_weights
from .series import to_json as series_json

COMMANDS = (
    "verify",
    "y-extract",
    "finite",
    "lemma-form",
    "slnn-form",
    "isotropy",
    "jacobi",
    "probe-illdefined",
    "classical-weyl",
    "dump",
)
FAMILIES = ("gl", "sl", "d", "d21a")
FORMATS = ("json", "csv", "text")
EXPRESSIONS = ("R", "Rhat", "f", "Y", "FT'")
SL_COMMANDS = ("verify", "y-extract", "dump")

EXIT_PASS, EXIT_MISMATCH, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3

DEFAULT_ORDER = {"jacobi": 200, "probe-illdefined": 5}


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    family: str = "gl"
    n: int = 1
    order: int = 10
    format: str = "json"
    out: Optional[str] = None
    threads: int = 1
    expr: str = "FT'"
    group: str = "W''"
    block: str = "prime"

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.family not in FAMILIES:
            raise UsageError(f"unknown family {self.family!r}")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        if self.n < 1:
            raise UsageError("--n must be at least 1")
        if self.order < 0:
            raise UsageError("--order must be non-negative")
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")
        if self.family == "d21a" and self.n != 1:
            raise UsageError("d21a is D(2|1); use --n 1")
        if self.family == "sl" and self.command not in SL_COMMANDS:
            raise UsageError(f"--family sl is only accepted by {', '.join(SL_COMMANDS)}")
        if self.command == "slnn-form" and self.family != "gl":
            raise UsageError("slnn-form is defined for the gl family only")
        if self.command == "probe-illdefined" and self.family not in ("d", "d21a"):
            raise UsageError("probe-illdefined is defined for the d family only")
        if self.command == "jacobi" and self.order < 1:
            raise UsageError("jacobi needs --order >= 1")
        if self.command == "probe-illdefined" and self.order < 1:
            raise UsageError("probe-illdefined needs --order (kmax) >= 1")
        if self.command == "dump":
            if self.expr not in EXPRESSIONS:
                raise UsageError(f"unknown expression {self.expr!r}")
            if self.family == "sl" and self.expr not in ("f", "Y"):
                raise UsageError("the sl specialization applies to f and Y only")
        if self.group not in ("W'", "W''"):
            raise UsageError("--group must be W' or W''")
        if self.block not in ("prime", "doubleprime"):
            raise UsageError("--block must be prime or doubleprime")


# --- report rendering -------------------------------------------------------

def _weight_columns(w) -> list:
    if isinstance(w, Weight):
        return [" ".join(map(str, w.eps2)), " ".join(map(str, w.del2)), w.imag]
    return [str(w), "", ""]


def render_report(rep: ids.VerificationReport, fmt: str) -> str:
    d = rep.to_dict()
    if fmt == "json":
        return json.dumps(d, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["identity", "family", "n", "order", "verdict", "lhs_terms", "rhs_terms", "mismatch_count", "elapsed_ms"])
        w.writerow([d[k] for k in ("identity", "family", "n", "order", "verdict", "lhs_terms", "rhs_terms", "mismatch_count", "elapsed_ms")])
        if rep.mismatches:
            w.writerow([])
            w.writerow(["eps2", "del2", "imag", "lhs", "rhs"])
            for weight, a, b in rep.mismatches:
                w.writerow(_weight_columns(weight) + [str(a), str(b)])
        return buf.getvalue()
    lines = [
        f"{d['identity']} {d['family']} n={d['n']} order={d['order']}: {d['verdict'].upper()}",
        f"  lhs terms {d['lhs_terms']}, rhs terms {d['rhs_terms']}, mismatches {d['mismatch_count']}, {d['elapsed_ms']} ms",
    ]
    for k, v in sorted(d.get("details", {}).items()):
        lines.append(f"  {k}: {json.dumps(v, sort_keys=True)}")
    for weight, a, b in rep.mismatches:
        lines.append(f"  at {weight}: lhs {a} rhs {b}")
    return "\n".join(lines) + "\n"


# --- dump -----------------------------------------------------------------

def dump_series(cfg: RunConfig) -> SparseSeries:
    family = "gl" if cfg.family == "sl" else cfg.family
    rs = ids.resolve_family(family, cfg.n)
    if cfg.expr == "R":
        return expand(rs, build_R(rs).shifted(rs.rho), cfg.order)
    if cfg.expr == "Rhat":
        return ids.rhat_rho(rs, cfg.order)
    if cfg.expr == "f":
        return ids.f_closed_form(rs, cfg.order)
    if cfg.expr == "Y":
        return ids.extract_Y(family, cfg.n, cfg.order, cfg.threads)
    return ids.translation_sum(rs, cfg.order, cfg.threads)


def _sl_specialize(s: SparseSeries, n: int, order: int) -> list[int]:
    # sl has one Cartan direction fewer, hence the extra (1-q)^inf_q factor;
    # reliable through q^K, the same depth the sl report check uses
    K = order // (3 * n)
    out = [0] * (K + 1)
    for w, c in support_weights(s):
        k = s.base.imag - w.imag
        if k <= K:
            out[k] += c
    return ids.q_mul(out, ids.pochhammer_q(-1, K), K)


def render_dump(cfg: RunConfig, s: SparseSeries) -> str:
    if cfg.family == "sl":
        coeffs = _sl_specialize(s, cfg.n, cfg.order)
        obj = {"family": "sl", "n": cfg.n, "order": cfg.order, "expr": cfg.expr, "specialization": "e^str=1",
               "q_coefficients": [str(c) for c in coeffs]}
        if cfg.format == "json":
            return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
        if cfg.format == "csv":
            return "q_degree,coefficient\n" + "".join(f"{k},{c}\n" for k, c in enumerate(coeffs))
        return " + ".join(f"{c}*q^{k}" for k, c in enumerate(coeffs) if c) + "\n"
    if cfg.format == "json":
        return series_json(s) + "\n"
    rows = [(w, c) for w, c in support_weights(s)]
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        rs = s.rs
        w.writerow([f"eps2_{i}" for i in range(1, rs.m + 1)] + [f"del2_{i}" for i in range(1, rs.n + 1)] + ["imag", "coefficient"])
        for weight, c in rows:
            w.writerow(list(weight.eps2) + list(weight.del2) + [weight.imag, str(c)])
        return buf.getvalue()
    head = f"{cfg.expr} for {s.rs.name}, base {s.base}, order {s.order}, {len(rows)} terms\n"
    return head + "".join(f"  {c:+d} e^({w})\n" for w, c in rows)


# --- dispatch ---------------------------------------------------------------

def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg``; returns (exit status, rendered output)."""
    cfg.validate()
    c, fam, n, N, t = cfg.command, cfg.family, cfg.n, cfg.order, cfg.threads
    if c == "dump":
        return EXIT_PASS, render_dump(cfg, dump_series(cfg))
    if c == "verify":
        rep = ids.verify_affine_identity(fam, n, N, t)
    elif c == "y-extract":
        rep = ids.extract_Y_report(fam, n, N, t)
    elif c == "finite":
        rep = ids.finite_denominator_check(fam, n, cfg.group)
    elif c == "lemma-form":
        rep = ids.lemma_form_check(fam, n, N, t)
    elif c == "slnn-form":
        rep = ids.slnn_alternative_form(n, N, t)
    elif c == "isotropy":
        rep = ids.check_support_isotropy(fam, n, N, t)
    elif c == "jacobi":
        rep = ids.jacobi_check(N)
    elif c == "probe-illdefined":
        rep = ids.d_illdefined_probe(n, N)
    else:
        rep = ids.verify_classical_weyl(ids.resolve_family(fam, n), cfg.block)
    return (EXIT_PASS if rep.passed else EXIT_MISMATCH), render_report(rep, cfg.format)


def build_parser() -> argparse.ArgumentParser:
    env_format = os.environ.get("SUPERDENOM_FORMAT", "json")
    env_threads = os.environ.get("SUPERDENOM_THREADS", "1")
    p = argparse.ArgumentParser(prog="superdenom", description="Exact checks of affine denominator identities.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--family", choices=FAMILIES, default="gl")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--order", type=int, default=None,
                   help="truncation height (jacobi: top q-degree; probe-illdefined: kmax)")
    p.add_argument("--format", choices=FORMATS, default=env_format if env_format in FORMATS else None)
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    p.add_argument("--threads", type=int, default=None, help=f"worker processes (default {env_threads})")
    p.add_argument("--expr", choices=EXPRESSIONS, default="FT'", help="dump target")
    p.add_argument("--group", choices=("W'", "W''"), default="W''", help="finite: summation group")
    p.add_argument("--block", choices=("prime", "doubleprime"), default="prime", help="classical-weyl: even block")
    return p


def config_from_args(argv: Optional[Sequence[str]] = None) -> RunConfig:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.format is None:
        raise UsageError(f"SUPERDENOM_FORMAT must be one of {', '.join(FORMATS)}")
    threads = a.threads
    if threads is None:
        try:
            threads = int(os.environ.get("SUPERDENOM_THREADS", "1"))
        except ValueError:
            raise UsageError("SUPERDENOM_THREADS must be an integer") from None
    order = a.order if a.order is not None else DEFAULT_ORDER.get(a.command, 10)
    return RunConfig(a.command, a.family, a.n, order, a.format, a.out, threads, a.expr, a.group, a.block)


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        cfg = config_from_args(argv)
        cfg.validate()
    except SystemExit as exc:  # argparse already printed the message
        return EXIT_USAGE if exc.code else EXIT_PASS
    except UsageError as exc:
        print(f"superdenom: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        status, text = run(cfg)
    except SupportViolation as exc:
        print(f"superdenom: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (ids.ShellError, AssertionError, DegenerateFactor, IncompatibleCones, NotAUnit) as exc:
        print(f"superdenom: internal assertion: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"superdenom: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
