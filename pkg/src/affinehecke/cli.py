"""Command line front end: describe, walk, verify, eigen, gram.

All exact values are printed as strings.  Output is deterministic for given
flags; a JSON config file may supply any flag and explicit flags win.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from . import suites
from .affine import NonGenericError, WordError, geodesic_word
from .innerprod import orthogonality_check
from .rootsys import RootSystem, RootSystemError, parse_type
from .spectrum import DegeneracyError, SpectrumError, eigenfunction, orbit, partition_of

TYPE_A_SUITES = ("exchange", "center", "triangularity", "adjoint")
FORMATS = ("json", "csv", "text")


@dataclass
class RunConfig:
    command: str
    type: Optional[str] = None
    rank: Optional[int] = None
    d: Optional[int] = None
    n: Optional[int] = None
    kappa: Optional[int] = None
    degree: Optional[int] = None
    partition: Optional[str] = None
    composition: Optional[str] = None
    xi: List[str] = field(default_factory=list)
    suite: Optional[str] = None
    form: Optional[str] = None
    format: Optional[str] = None
    output: Optional[str] = None


class UsageError(ValueError):
    pass


def _ints(text: str, what: str) -> List[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"{what} must be a comma separated list of integers, got {text!r}")


def _vector(text: str) -> List[Fraction]:
    try:
        return [Fraction(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"cannot parse vector {text!r}")


def _root_system(cfg: RunConfig) -> RootSystem:
    if not cfg.type:
        raise UsageError("--type is required")
    try:
        return parse_type(cfg.type, cfg.rank)
    except RootSystemError as exc:
        raise UsageError(str(exc))


def _xi_list(cfg: RunConfig, rs: RootSystem):
    out = []
    for text in cfg.xi:
        v = _vector(text)
        if len(v) != rs.ambient_dim:
            raise UsageError(f"xi {text!r} needs {rs.ambient_dim} coordinates")
        out.append(tuple(v))
    return out or None


def _type_a_n(cfg: RunConfig) -> int:
    if cfg.n is not None:
        n = cfg.n
    elif cfg.type:
        rs = _root_system(cfg)
        if rs.family != "A":
            raise UsageError("this suite needs type A (or --n)")
        n = rs.rank + 1
    else:
        raise UsageError("--n is required")
    if n < 2:
        raise UsageError("--n must be at least 2")
    return n


# -- commands -------------------------------------------------------------------

def cmd_describe(cfg: RunConfig):
    rs = _root_system(cfg)
    if cfg.format == "text":
        info = rs.describe()
        lines = [rs.to_text(), f"positive_roots: {len(info['positive_roots'])}"]
        lines += ["  " + ", ".join(r) for r in info["positive_roots"]]
        lines.append("highest_root: " + ", ".join(info["highest_root"]))
        lines.append("minuscule_weights: " + "; ".join(", ".join(w) for w in info["minuscule_weights"]))
        lines += [f"braid_order {b['pair'][0]},{b['pair'][1]}: {b['m']}" for b in info["braid_orders"]]
        return 0, "\n".join(lines) + "\n"
    return 0, rs.describe()


def cmd_walk(cfg: RunConfig):
    rs = _root_system(cfg)
    if len(cfg.xi) != 1:
        raise UsageError("walk needs exactly one --xi")
    (xi,) = _xi_list(cfg, rs)
    try:
        word = geodesic_word(rs, xi)
    except (NonGenericError, WordError, RootSystemError, ValueError) as exc:
        return 1, {"error": type(exc).__name__, "reason": str(exc)}
    return 0, word.to_json()


def cmd_verify(cfg: RunConfig):
    name = cfg.suite
    if name not in suites.SUITES:
        raise UsageError(f"unknown suite {name!r}; choose from {', '.join(suites.SUITES)}")
    kw = {} if cfg.d is None else {"d": cfg.d}
    if name in TYPE_A_SUITES:
        n = _type_a_n(cfg)
        if name == "exchange":
            rep = suites.exchange_suite(n, **kw)
        elif name == "center":
            rep = suites.center_suite(n, **kw)
        elif name == "triangularity":
            rep = suites.triangularity_suite(n, **kw)
        else:
            rep = suites.adjoint_suite(n, 1 if cfg.kappa is None else cfg.kappa, **kw)
    else:
        rs = _root_system(cfg)
        xis = _xi_list(cfg, rs)
        if name == "quadratic":
            rep = suites.quadratic_suite(rs, **kw)
        elif name == "braid":
            rep = suites.braid_suite(rs, **kw)
        elif name == "yang-baxter":
            rep = suites.yang_baxter_suite(rs, **kw)
        elif name == "unitarity":
            rep = suites.unitarity_suite(rs, **kw)
        elif name == "affine-hecke":
            rep = suites.affine_hecke_suite(rs, xis=xis, form=cfg.form or "stated", **kw)
        elif name == "commute":
            rep = suites.commute_suite(rs, xis=xis, **kw)
        else:
            rep = suites.bernstein_suite(rs, xis=xis, **kw)
    return (0 if rep.ok else 1), rep.to_json()


def _eigen_targets(cfg: RunConfig) -> List[tuple]:
    if cfg.composition:
        ks = [tuple(_ints(cfg.composition, "--composition"))]
    elif cfg.partition:
        ks = orbit(_ints(cfg.partition, "--partition"))
    else:
        raise UsageError("eigen needs --partition or --composition")
    n = cfg.n if cfg.n is not None else len(ks[0])
    for k in ks:
        if len(k) != n or any(x < 0 for x in k):
            raise UsageError(f"composition {k} must have {n} non-negative entries")
    return [tuple(k) for k in ks]


def cmd_eigen(cfg: RunConfig):
    records = []
    for k in _eigen_targets(cfg):
        try:
            rec = eigenfunction(len(k), k)
        except DegeneracyError as exc:
            return 1, {"error": "degeneracy", "composition": list(k), "reason": str(exc)}
        except SpectrumError as exc:
            return 1, {"error": type(exc).__name__, "composition": list(k), "reason": str(exc)}
        records.append(rec)
    status = 0 if all(r.verified for r in records) else 1
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["composition", "partition", "multiplet", "eigenfunction", "verified"])
        for r in records:
            w.writerow([",".join(map(str, r.composition)), ",".join(map(str, partition_of(r.composition))),
                        "; ".join(str(v) for v in r.multiplet), r.eigenfunction.to_string(), r.verified])
        return status, buf.getvalue()
    return status, {"n": len(records[0].composition), "records": [r.to_json() for r in records]}


def cmd_gram(cfg: RunConfig):
    if cfg.n is None or cfg.kappa is None:
        raise UsageError("gram needs --n and --kappa")
    degree = 1 if cfg.degree is None else cfg.degree
    if cfg.n < 1 or cfg.kappa < 0 or degree < 0:
        raise UsageError("--n must be positive, --kappa and --degree non-negative")
    rep = orthogonality_check(cfg.n, cfg.kappa, degree)
    status = 0 if rep.ok and not rep.skipped else 1
    data = rep.to_json()
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        labels = [",".join(map(str, k)) for k in data["compositions"]]
        w.writerow([data["variable"]] + labels)
        for label, row in zip(labels, data["gram"]):
            w.writerow([label] + row)
        return status, buf.getvalue()
    return status, data


COMMANDS = {
    "describe": cmd_describe,
    "walk": cmd_walk,
    "verify": cmd_verify,
    "eigen": cmd_eigen,
    "gram": cmd_gram,
}


# -- parsing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default values for any flag")
    common.add_argument("--output", help="write the result to this file instead of stdout")
    common.add_argument("--format", choices=FORMATS, help="output format (default json)")

    rsys = argparse.ArgumentParser(add_help=False)
    rsys.add_argument("--type", help="A2, B3, G2, A1xA1 or a family letter with --rank")
    rsys.add_argument("--rank", type=int)

    parser = argparse.ArgumentParser(prog="affinehecke", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("describe", parents=[common, rsys], help="roots, highest root, minuscule weights, braid orders")
    p = sub.add_parser("walk", parents=[common, rsys], help="alcove-walk word of a translation")
    p.add_argument("--xi", action="append", help="coweight as comma separated coordinates")
    p = sub.add_parser("verify", parents=[common, rsys], help="run an invariant suite")
    p.add_argument("--suite", choices=suites.SUITES)
    p.add_argument("-d", "--window", dest="d", type=int, help="window size")
    p.add_argument("--n", type=int, help="number of variables for the type A suites")
    p.add_argument("--kappa", type=int)
    p.add_argument("--xi", action="append", help="translation for affine-hecke, commute, bernstein")
    p.add_argument("--form", choices=("stated", "derived"),
                   help="affine-hecke relation form (default stated)")
    p = sub.add_parser("eigen", parents=[common], help="simultaneous eigenfunctions of S_1..S_n")
    p.add_argument("--n", type=int)
    p.add_argument("--partition")
    p.add_argument("--composition")
    p = sub.add_parser("gram", parents=[common], help="Gram matrix of the eigenfunctions")
    p.add_argument("--n", type=int)
    p.add_argument("--kappa", type=int)
    p.add_argument("--degree", type=int)
    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    values = {k: v for k, v in vars(args).items() if k != "config"}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config!r}: {exc}")
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        for key, val in loaded.items():
            key = key.replace("-", "_")
            if key == "window":
                key = "d"
            if key not in RunConfig.__dataclass_fields__ or key == "command":
                raise UsageError(f"unknown config key {key!r}")
            if values.get(key) in (None, []):
                values[key] = val if key != "xi" or isinstance(val, list) else [val]
    known = {k: v for k, v in values.items() if k in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**known)
    cfg.xi = list(cfg.xi or [])
    cfg.format = cfg.format or "json"
    if cfg.format not in FORMATS:
        raise UsageError(f"unknown format {cfg.format!r}")
    if cfg.format == "csv" and cfg.command not in ("eigen", "gram"):
        raise UsageError("csv output exists for eigen and gram only")
    if cfg.format == "text" and cfg.command != "describe":
        raise UsageError("text output exists for describe only")
    if cfg.command == "verify" and not cfg.suite:
        raise UsageError("verify needs --suite")
    return cfg


def render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, indent=2) + "\n"


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = make_config(args)
        status, result = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        parser.error(str(exc))
    text = render(result)
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
