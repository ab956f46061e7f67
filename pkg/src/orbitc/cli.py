"""Command-line front end.

Exit codes
  0   AbsolutelyContinuous (decide), or command finished without findings
  1   Singular
  2   Unknown
  3   input or domain error
  4   capacity exceeded
  5   sweep: an AbsolutelyContinuous verdict without a certificate in the
      allotted trials (oracle evidence disagrees; not a proof of anything)
  64  an exact certificate contradicts a Singular verdict
  65  explore-open found an exact full-rank certificate (a proof)
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .classifier import (
    Reason,
    Status,
    TorusElement,
    all_element_types,
    annihilator,
    decide,
    element_type,
    group_annihilator,
    group_decide,
    reduction_chain,
)
from .errors import CapacityError, DomainError
from .linalg import DEFAULT_RTOL
from .parsing import parse_element, parse_group_element
from .roots import DEFAULT_WEYL_CAP, type_label, subsystem_type
from .span_oracle import SpanReport, dimension_shortcut, verify_span
from .wright import wright_check

log = logging.getLogger("orbitc")

EXIT_CODES = {Status.ABSOLUTELY_CONTINUOUS: 0, Status.SINGULAR: 1, Status.UNKNOWN: 2}
EXIT_ERROR = 3
EXIT_CAPACITY = 4
EXIT_ORACLE_EVIDENCE = 5
EXIT_INCONSISTENT = 64
EXIT_PROOF = 65

CONJECTURE_NOTE = "conjectured singular (unproven; computer evidence suggests failure for n = 6, 7)"


@dataclass
class Config:
    trials: int = 8
    seed: int = 0
    mode: str = "exact"
    tolerance: float = DEFAULT_RTOL
    weyl_cap: int = DEFAULT_WEYL_CAP
    output_format: str = "json"
    conjecture_annotations: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise DomainError("--trials must be at least 1")
        if not self.tolerance > 0:
            raise DomainError("--tol must be positive")
        if self.mode not in ("numeric", "exact"):
            raise DomainError("--mode must be numeric or exact")

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> "Config":
        seed = ns.seed
        if seed is None:
            env = os.environ.get("ORBITC_SEED")
            try:
                seed = int(env) if env else 0
            except ValueError:
                raise DomainError(f"ORBITC_SEED must be an integer, got {env!r}") from None
        return cls(ns.trials, seed, ns.mode, ns.tol, ns.weyl_cap, ns.format, not ns.no_annotations)


# ------------------------------------------------------------------ output


def _exactify(obj, exact: bool):
    """Render numbers as strings in exact mode; Fractions always as strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (int, float)):
        return str(obj) if exact else obj
    if isinstance(obj, dict):
        return {k: _exactify(v, exact) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_exactify(v, exact) for v in obj]
    return obj


def _emit_json(obj, cfg: Config, out) -> None:
    json.dump(_exactify(obj, cfg.mode == "exact"), out, indent=2)
    out.write("\n")


def _emit_rows(rows: list[dict], cfg: Config, out) -> None:
    if cfg.output_format == "json":
        _emit_json(rows, cfg, out)
        return
    if not rows:
        return
    cols = list(rows[0])
    if cfg.output_format == "csv":
        w = csv.DictWriter(out, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _cell(v) for k, v in r.items()})
        return
    cells = [[_cell(r[c]) for c in cols] for r in rows]
    widths = [max(len(x) for x in col) for col in zip(cols, *cells)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out.write(fmt.format(*cols).rstrip() + "\n")
    out.write(fmt.format(*("-" * w for w in widths)).rstrip() + "\n")
    for row in cells:
        out.write(fmt.format(*row).rstrip() + "\n")


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    if v is None:
        return ""
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


# ---------------------------------------------------------------- commands


def classify_record(X: TorusElement) -> dict:
    t = element_type(X)
    phi = annihilator(X)
    return {
        "element": X.spec,
        "family": X.family,
        "rank": X.rank,
        "type": t.label,
        "J": t.J,
        "parts": list(t.parts),
        "sign_class": t.sign,
        "S": t.S,
        "dominant": "zero_block" if t.dominant_zero_block else "SU",
        "annihilator_size": len(phi),
        "annihilator_type": type_label(subsystem_type(phi)),
        "reduction_chain": [Y.spec for Y in reduction_chain(X)],
    }


def cmd_classify(ns, cfg: Config, out) -> int:
    X = parse_element(ns.element)
    rec = classify_record(X)
    if cfg.output_format == "json":
        _emit_json(rec, cfg, out)
    else:
        _emit_rows([rec], cfg, out)
    return 0


def _span_json(rep: SpanReport) -> dict:
    d = rep.to_json()
    d["full_rank"] = rep.full_rank
    return d


def decide_record(xs: list[TorusElement], cfg: Config, verify: bool = False,
                  wright: bool = False) -> tuple[dict, int]:
    v = decide(xs, cfg.weyl_cap)
    rec = {
        "tuple": [X.spec for X in xs],
        "family": xs[0].family,
        "rank": xs[0].rank,
        "types": [element_type(X).label for X in xs],
        "S": [element_type(X).S for X in xs],
        "verdict": v.to_json(),
    }
    if v.reason is Reason.OPEN_CASE and cfg.conjecture_annotations:
        rec["annotation"] = CONJECTURE_NOTE
    code = EXIT_CODES[v.status]
    if verify:
        proof = dimension_shortcut(xs)
        if proof is not None:
            rec["dimension_shortcut"] = str(proof)
        rep = verify_span(xs, trials=cfg.trials, seed=cfg.seed, mode=cfg.mode, rtol=cfg.tolerance)
        rec["span"] = _span_json(rep)
        rec["agreement"] = _agreement(v.status, rep)
        if v.status is Status.SINGULAR and rep.certificate is not None and rep.certificate.exact:
            rec["diagnostic"] = "exact full-rank certificate contradicts the Singular verdict"
            code = EXIT_INCONSISTENT
    if wright:
        rec["wright"] = wright_check(xs, cfg.weyl_cap).to_json()
    return rec, code


def _agreement(status: Status, rep: SpanReport) -> str:
    if status is Status.ABSOLUTELY_CONTINUOUS:
        if rep.certificate is None:
            return "disagree: no full-rank trial"
        return "agree: certified" if rep.certificate.exact else "agree: numeric full rank"
    if status is Status.SINGULAR:
        if rep.certificate is None:
            return "agree: deficient in all trials (evidence)"
        return "CONTRADICTION" if rep.certificate.exact else "disagree: numeric full rank"
    if rep.certificate is not None and rep.certificate.exact:
        return "open case: exact certificate of absolute continuity found"
    return "open case: no certificate"


def cmd_decide(ns, cfg: Config, out) -> int:
    xs = [parse_element(s) for s in ns.elements]
    rec, code = decide_record(xs, cfg, ns.verify, ns.wright)
    if cfg.output_format == "json":
        _emit_json(rec, cfg, out)
    else:
        flat = {k: v for k, v in rec.items() if k not in ("span", "wright", "verdict")}
        flat["status"] = rec["verdict"]["status"]
        flat["reason"] = rec["verdict"]["reason"]
        if "span" in rec:
            flat["max_rank"] = rec["span"]["max_rank"]
            flat["target_dim"] = rec["span"]["target_dim"]
        _emit_rows([flat], cfg, out)
        if ns.wright and cfg.output_format == "table":
            out.write("\n" + wright_check(xs, cfg.weyl_cap).table() + "\n")
    if code == EXIT_INCONSISTENT:
        print(f"orbitc: {rec['diagnostic']}", file=sys.stderr)
    return code


def cmd_group_decide(ns, cfg: Config, out) -> int:
    xs = [parse_group_element(s) for s in ns.elements]
    v = group_decide(xs, cfg.weyl_cap)
    rec = {
        "tuple": [f"{x.family}{x.rank}:[" + ",".join(map(str, x.angles)) + "]" for x in xs],
        "group_types": [type_label(subsystem_type(group_annihilator(x))) for x in xs],
        "verdict": v.to_json(),
    }
    _emit_json(rec, cfg, out)
    return EXIT_CODES[v.status]


def sweep_rows(family: str, rank: int, L: int, cfg: Config, verify: bool = False):
    types = all_element_types(family, rank)
    rows = []
    for combo in itertools.combinations_with_replacement(types, L):
        xs = [t.witness() for t in combo]
        v = decide(xs, cfg.weyl_cap)
        row = {
            "types": [t.label for t in combo],
            "status": v.status.value,
            "reason": v.reason.value,
            "case": v.case,
            "chains": [" -> ".join(Y.spec for Y in reduction_chain(X)) for X in xs],
        }
        if verify:
            rep = verify_span(xs, trials=cfg.trials, seed=cfg.seed, mode=cfg.mode, rtol=cfg.tolerance)
            row["max_rank"] = rep.max_rank
            row["target_dim"] = rep.target_dim
            row["agreement"] = _agreement(v.status, rep)
        rows.append(row)
    return rows


def cmd_sweep(ns, cfg: Config, out) -> int:
    rows = sweep_rows(ns.family, ns.rank, ns.L, cfg, ns.verify)
    if cfg.output_format != "json":
        for r in rows:
            r["types"] = ", ".join(r["types"])
            r["chains"] = " | ".join(r["chains"])
    _emit_rows(rows, cfg, out)
    agreements = [r.get("agreement", "") for r in rows]
    if any(a == "CONTRADICTION" for a in agreements):
        return EXIT_INCONSISTENT
    if any(a.startswith("disagree") for a in agreements):
        return EXIT_ORACLE_EVIDENCE
    return 0


def open_pair(n: int, second: str = "su1") -> list[TorusElement]:
    """(SU(n), SU(n-1)) in D_n, the second as SU(n-1)xSU(1) or SU(n-1)xD1."""
    first = TorusElement("D", n, tuple([1] * n))
    if second == "d1":
        other = TorusElement("D", n, tuple([0] + [2] * (n - 1)))
    else:
        other = TorusElement("D", n, tuple([2] * (n - 1) + [3]))
    return [first, other]


def explore_open(n: int, trials: int, seed: int, mode: str, rtol: float = DEFAULT_RTOL,
                 second: str = "su1") -> tuple[SpanReport, list[int]]:
    """Run the span oracle in batches of 1, 2, 4, ... trials (up to ``trials``
    total) on the open pair, stopping early only on a full-rank trial."""
    if n < 6:
        raise DomainError(f"the pair is an exceptional Singular case for n = {n}; the open case needs n >= 6")
    xs = open_pair(n, second)
    total: SpanReport | None = None
    batches = []
    done, size = 0, 1
    while done < trials:
        size = min(size, trials - done)
        rep = verify_span(xs, trials=size, seed=seed, mode=mode, rtol=rtol, first_trial=done)
        if total is None:
            total = rep
        else:
            total.trials.extend(rep.trials)
            total.certificate = total.certificate or rep.certificate
        done += size
        batches.append(done)
        size *= 2
        if total.certificate is not None:
            break
    return total, batches


def cmd_explore_open(ns, cfg: Config, out) -> int:
    rep, batches = explore_open(ns.n, cfg.trials if ns.trials_open is None else ns.trials_open,
                                cfg.seed, cfg.mode, cfg.tolerance, ns.second)
    xs = open_pair(ns.n, ns.second)
    rec = {
        "pair": [X.spec for X in xs],
        "types": [element_type(X).label for X in xs],
        "verdict": decide(xs, cfg.weyl_cap).to_json(),
        "batches": batches,
        "max_rank": rep.max_rank,
        "target_dim": rep.target_dim,
        "span": _span_json(rep),
    }
    if rep.certificate is not None and rep.certificate.exact:
        rec["finding"] = "PROOF: exact full-rank certificate, the convolution is absolutely continuous"
        code = EXIT_PROOF
    elif rep.certificate is not None:
        rec["finding"] = "numeric full rank (evidence of absolute continuity, not a proof)"
        code = 0
    else:
        rec["finding"] = "no full-rank trial (evidence only; no verdict asserted)"
        code = 0
    if cfg.conjecture_annotations:
        rec["annotation"] = CONJECTURE_NOTE
    _emit_json(rec, cfg, out)
    return code


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=int, default=8, help="oracle trials (default 8)")
    common.add_argument("--seed", type=int, default=None, help="master seed (default $ORBITC_SEED or 0)")
    common.add_argument("--mode", choices=("numeric", "exact"), default="exact")
    common.add_argument("--tol", type=float, default=DEFAULT_RTOL, help="relative SVD tolerance (numeric mode)")
    common.add_argument("--weyl-cap", type=int, default=DEFAULT_WEYL_CAP)
    common.add_argument("--format", choices=("json", "csv", "table"), default="json")
    common.add_argument("--no-annotations", action="store_true", help="omit conjecture annotations")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="orbitc", description="Absolute continuity of convolutions of orbital measures "
                                "in the classical Lie algebras.")
    p.add_argument("--version", action="version", version=f"orbitc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", parents=[common], help="type, S statistic and annihilator of an element")
    c.add_argument("element", help="e.g. 'B5:[0,0,1,1,1]' or 'D4:SU(4)-'")
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("decide", parents=[common], help="decide a tuple")
    d.add_argument("elements", nargs="+")
    d.add_argument("--verify", action="store_true", help="cross-check with the span oracle")
    d.add_argument("--wright", action="store_true", help="evaluate Wright's criterion")
    d.set_defaults(func=cmd_decide)

    g = sub.add_parser("group-decide", parents=[common], help="decide a tuple of group torus elements "
                       "(angles in units of pi)")
    g.add_argument("elements", nargs="+")
    g.set_defaults(func=cmd_group_decide)

    s = sub.add_parser("sweep", parents=[common], help="verdicts for all type tuples at a rank")
    s.add_argument("family", choices=("A", "B", "C", "D"))
    s.add_argument("rank", type=int)
    s.add_argument("-L", type=int, default=2, help="tuple length (default 2)")
    s.add_argument("--verify", action="store_true")
    s.set_defaults(func=cmd_sweep)

    e = sub.add_parser("explore-open", parents=[common], help="span oracle on the open pair (SU(n), SU(n-1)) in D_n")
    e.add_argument("n", type=int)
    e.add_argument("--second", choices=("su1", "d1"), default="su1",
                   help="second element of type SU(n-1)xSU(1) or SU(n-1)xD1")
    e.add_argument("--open-trials", dest="trials_open", type=int, default=None,
                   help="total trials (default: --trials)")
    e.set_defaults(func=cmd_explore_open)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = Config.from_args(ns)
        return ns.func(ns, cfg, out)
    except CapacityError as exc:
        print(f"orbitc: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except DomainError as exc:
        print(f"orbitc: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def run(argv: list[str]) -> tuple[int, str]:
    """Run the CLI and capture stdout (used by tests)."""
    buf = io.StringIO()
    code = main(argv, buf)
    return code, buf.getvalue()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
