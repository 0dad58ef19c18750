"""Command line front end: ``hl satake|structure|kostka|lr|galleries``.

Weights are comma separated integers in fundamental coordinates
``<alpha_i, .>`` unless ``--basis coroot`` is given.  Every output starts with
a header that echoes the root datum, parameters and coordinate convention.

Exit codes: 0 success, 1 check mismatch, 2 parse error, 3 unsupported rank,
4 cache write failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__, coeffs, sym_oracle
from .affine_weyl import AffineWeyl
from .galleries import enumerate_pf, format_gallery
from .hecke import HeckeAlgebra
from .qpoly import ParamSpec, ParamSpecError
from .root_datum import RootDatum, RootDatumError

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_RANK, EXIT_CACHE = 0, 1, 2, 3, 4
COMMANDS = ("satake", "structure", "kostka", "lr", "galleries")
FORMATS = ("json", "csv", "latex", "text")
CACHE_ENV = "HL_CACHE_DIR"


class CliError(Exception):
    def __init__(self, msg, code=EXIT_PARSE):
        super().__init__(msg)
        self.code = code


@dataclass
class RunConfig:
    command: str
    type: str
    lattice: str = "adjoint"
    params: dict = field(default_factory=dict)
    lam: str | None = None
    mu: str | None = None
    nu: str | None = None
    basis: str = "fundamental"
    route: str | None = None
    check: str | None = None
    format: str | None = None
    list: bool = False
    cache_dir: str | None = None
    jobs: int = 1
    max_rank: int = 4

    def cache_key(self) -> str:
        d = asdict(self)
        for k in ("cache_dir", "jobs"):
            d.pop(k)
        d["version"] = __version__
        blob = json.dumps(d, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:32]


# ------------------------------------------------------------- parsing
def parse_params(text) -> dict:
    """``s1=1,s0=2`` -> {"s1": 1, "s0": 2}."""
    if not text:
        return {}
    if isinstance(text, dict):
        return {str(k): int(v) for k, v in text.items()}
    out = {}
    for item in str(text).split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise CliError(f"bad parameter {item!r}; expected letter=value")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = int(v)
        except ValueError:
            raise CliError(f"bad parameter value in {item!r}") from None
    return out


def parse_weight(datum: RootDatum, text, basis: str, what: str):
    if text is None:
        raise CliError(f"--{what} is required")
    try:
        coords = [int(x) for x in str(text).replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise CliError(f"--{what}: expected comma separated integers, got {text!r}") from None
    try:
        return datum.coweight(coords, basis)
    except ValueError as e:
        raise CliError(f"--{what}: {e}") from None


def _dominant(datum, mu, what):
    if not datum.is_dominant(mu):
        raise CliError(f"--{what} must be dominant, got {mu}")
    return mu


# ------------------------------------------------------------- rendering
def header_lines(datum: RootDatum, p: ParamSpec, cfg: RunConfig) -> list:
    params = ",".join(f"{k}={v}" for k, v in p.describe().items())
    lines = [
        f"hl {cfg.command} type={datum.describe()} lattice={datum.lattice} params={params}",
        f"coordinates: fundamental <alpha_i, .> (input basis: {cfg.basis}); "
        f"polynomials in q, q^(k/2) for half powers",
    ]
    return lines


def _poly_json(f):
    d = f.to_json()
    d["q"] = f.format()
    return d


def render_table(table: coeffs.CoeffTable, fmt: str, head: list) -> str:
    datum = table.datum
    if fmt == "json":
        obj = table.to_json()
        obj["coefficients"] = {coeffs.coords_key(k): _poly_json(v) for k, v in table.coefficients.items()}
        obj["context"]["header"] = head
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        for line in head:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["weight", "rho_height", "polynomial", "v_exponent", "coefficient"])
        for k, f in table.coefficients.items():
            for e, c in sorted(f.items(), reverse=True):
                w.writerow([coeffs.coords_key(k), str(datum.rho_pair(k)), f.format(), e, c])
        return buf.getvalue()
    if fmt == "latex":
        out = [f"% {line}" for line in head]
        name = "L_{\\lambda\\mu}" if table.kind == "satake" else "C_{\\lambda\\mu}^{\\nu}"
        var = "\\mu" if table.kind == "satake" else "\\nu"
        out.append("\\begin{tabular}{ll}")
        out.append(f"${var}$ & ${name}$ \\\\ \\hline")
        for k, f in table.coefficients.items():
            out.append(f"$({coeffs.coords_key(k)})$ & ${f.format('latex')}$ \\\\")
        out.append("\\end{tabular}")
        return "\n".join(out) + "\n"
    out = list(head)
    width = max((len(coeffs.coords_key(k)) for k in table.coefficients), default=1)
    for k, f in table.coefficients.items():
        out.append(f"{coeffs.coords_key(k).rjust(width)}  {f.format()}")
    if table.census:
        out.append(f"galleries: {table.census.get('galleries')} (type {table.census.get('type')})")
    return "\n".join(out) + "\n"


def render_value(name: str, value: int, fmt: str, head: list, context: dict, checks: dict) -> str:
    if fmt == "json":
        obj = {"context": dict(context, header=head), name: value, "checks": checks}
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return "".join(f"# {h}\n" for h in head) + f"{name}\n{value}\n"
    if fmt == "latex":
        return "".join(f"% {h}\n" for h in head) + f"${value}$\n"
    return f"{value}\n"


# ---------------------------------------------------------------- running
def _build(cfg: RunConfig):
    try:
        datum = RootDatum(cfg.type, cfg.lattice)
    except (RootDatumError, ValueError) as e:
        raise CliError(str(e)) from None
    if datum.rank > cfg.max_rank:
        raise CliError(f"rank {datum.rank} exceeds --max-rank {cfg.max_rank}", EXIT_RANK)
    aff = AffineWeyl(datum)
    try:
        p = ParamSpec(aff, parse_params(cfg.params))
    except (ParamSpecError, ValueError) as e:
        raise CliError(str(e)) from None
    return datum, aff, p


def _mismatch(msg_lines):
    raise CliError("check failed:\n" + "\n".join(msg_lines), EXIT_MISMATCH)


def _run_satake(cfg, datum, aff, p):
    lam = _dominant(datum, parse_weight(datum, cfg.lam, cfg.basis, "lambda"), "lambda")
    route = cfg.route or "div"
    routes = coeffs.SATAKE_ROUTES if route == "all" else (route,)
    if route != "all" and route not in coeffs.SATAKE_ROUTES:
        raise CliError(f"unknown route {route!r}")
    tables = [coeffs.satake(datum, lam, p, r, jobs=cfg.jobs, aff=aff) for r in routes]
    table = tables[0]
    checks = {}
    if len(tables) > 1:
        bad = coeffs.compare(tables)
        if bad:
            _mismatch(bad)
        checks["routes"] = "agree: " + ",".join(routes)
        table.route = "all"
    if cfg.check == "oracle":
        if p.is_equal:
            bad = table.diff(coeffs.satake_oracle(datum, lam, aff))
            if bad:
                _mismatch(bad)
            checks["hall_littlewood"] = "pass"
        if not coeffs.hecke_satake_identity(HeckeAlgebra(p), table):
            _mismatch(["Hecke identity W_lam sum q_mu^-1 L Y_mu = 1_0 T 1_0 fails"])
        checks["hecke"] = "pass"
    table.checks = checks
    return render_table(table, cfg.format or "json", header_lines(datum, p, cfg))


def _run_structure(cfg, datum, aff, p):
    lam = _dominant(datum, parse_weight(datum, cfg.lam, cfg.basis, "lambda"), "lambda")
    mu = _dominant(datum, parse_weight(datum, cfg.mu, cfg.basis, "mu"), "mu")
    route = cfg.route or "div"
    routes = coeffs.STRUCTURE_ROUTES if route == "all" else (route,)
    if route != "all" and route not in coeffs.STRUCTURE_ROUTES:
        raise CliError(f"unknown route {route!r}")
    tables = [coeffs.structure(datum, lam, mu, p, r, jobs=cfg.jobs, aff=aff) for r in routes]
    table = tables[0]
    checks = {}
    if len(tables) > 1:
        bad = coeffs.compare(tables)
        if bad:
            _mismatch(bad)
        checks["routes"] = "agree: " + ",".join(routes)
        table.route = "all"
    if cfg.check == "oracle":
        if p.is_equal:
            bad = table.diff(coeffs.structure_oracle(datum, lam, mu, aff))
            if bad:
                _mismatch(bad)
            checks["hall_littlewood"] = "pass"
        bad = table.diff(coeffs.structure_hecke(HeckeAlgebra(p), lam, mu))
        if bad:
            _mismatch(bad)
        checks["hecke"] = "pass"
    table.checks = checks
    return render_table(table, cfg.format or "json", header_lines(datum, p, cfg))


def _context(cfg, datum, p, **weights):
    ctx = {"kind": cfg.command, "type": datum.describe(), "lattice": datum.lattice,
           "coordinates": "fundamental (<alpha_i, .>)", "params": p.describe()}
    ctx.update({k: list(v) for k, v in weights.items()})
    return ctx


def _run_kostka(cfg, datum, aff, p):
    lam = _dominant(datum, parse_weight(datum, cfg.lam, cfg.basis, "lambda"), "lambda")
    mu = parse_weight(datum, cfg.mu, cfg.basis, "mu")
    value = coeffs.kostka_ls(datum, lam, mu, aff)
    checks = {}
    if cfg.check == "oracle":
        expected = sym_oracle.freudenthal(datum, lam, mu)
        if expected != value:
            _mismatch([f"LS count {value} != Freudenthal {expected}"])
        checks["freudenthal"] = "pass"
    head = header_lines(datum, p, cfg)
    return render_value("kostka", value, cfg.format or "text", head,
                        _context(cfg, datum, p, **{"lambda": lam, "mu": mu}), checks)


def _run_lr(cfg, datum, aff, p):
    lam = _dominant(datum, parse_weight(datum, cfg.lam, cfg.basis, "lambda"), "lambda")
    mu = _dominant(datum, parse_weight(datum, cfg.mu, cfg.basis, "mu"), "mu")
    nu = _dominant(datum, parse_weight(datum, cfg.nu, cfg.basis, "nu"), "nu")
    value = coeffs.littlewood_richardson(datum, lam, mu, nu, aff)
    checks = {}
    if cfg.check == "oracle":
        expected = sym_oracle.klimyk(datum, lam, mu).get(nu, 0)
        if expected != value:
            _mismatch([f"LS count {value} != Klimyk {expected}"])
        checks["klimyk"] = "pass"
    head = header_lines(datum, p, cfg)
    return render_value("lr", value, cfg.format or "text", head,
                        _context(cfg, datum, p, **{"lambda": lam, "mu": mu, "nu": nu}), checks)


def _run_galleries(cfg, datum, aff, p):
    lam = _dominant(datum, parse_weight(datum, cfg.lam, cfg.basis, "lambda"), "lambda")
    t = aff.minimal_gallery_type(aff.n_lambda(lam))
    head = header_lines(datum, p, cfg) + [f"type t^lambda = {aff.word_names(t)}"]
    fmt = cfg.format or "text"
    if cfg.list:
        rows = []
        for w in range(aff.W.order):
            for sigma in enumerate_pf(aff, t, (datum.zero, w)):
                rows.append(sigma)
        if fmt == "json":
            obj = {"context": dict(_context(cfg, datum, p, **{"lambda": lam}), header=head),
                   "galleries": [format_gallery(s, p) for s in rows]}
            return json.dumps(obj, sort_keys=True, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            for line in head:
                buf.write(f"# {line}\n")
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(["start_dir", "actions", "weight", "end_dir", "L"])
            for s in rows:
                w.writerow([repr(aff.W.elem(s.initial_direction)), s.action_string(),
                            coeffs.coords_key(s.weight), repr(aff.W.elem(s.final_direction)),
                            coeffs.StatPolys(p).poly(s.stats(), "L").format()])
            return buf.getvalue()
        return "".join(f"# {h}\n" for h in head) + "".join(format_gallery(s, p) + "\n" for s in rows)
    table = coeffs.satake(datum, lam, p, "div", jobs=cfg.jobs, aff=aff)
    census = table.census
    if fmt == "json":
        obj = {"context": dict(_context(cfg, datum, p, **{"lambda": lam}), header=head), "gallery_census": census}
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    lines = [f"# {h}" for h in head]
    lines.append(f"galleries: {census['galleries']}")
    for k, c in census["by_weight"].items():
        ls = census.get("ls_by_weight", {}).get(k)
        lines.append(f"{k}: {c}" + (f" (LS {ls})" if ls is not None else ""))
    return "\n".join(lines) + "\n"


RUNNERS = {"satake": _run_satake, "structure": _run_structure, "kostka": _run_kostka,
           "lr": _run_lr, "galleries": _run_galleries}


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute a configuration; returns (exit status, text to print)."""
    if cfg.command not in RUNNERS:
        raise CliError(f"unknown command {cfg.command!r}")
    if cfg.format is not None and cfg.format not in FORMATS:
        raise CliError(f"unknown format {cfg.format!r}")
    cache_file = None
    if cfg.cache_dir:
        cache_file = Path(cfg.cache_dir) / f"{cfg.command}-{cfg.cache_key()}.json"
        if cache_file.is_file():
            try:
                return EXIT_OK, json.loads(cache_file.read_text())["output"]
            except (OSError, ValueError, KeyError):
                pass  # unreadable entry: recompute and overwrite
    datum, aff, p = _build(cfg)
    out = RUNNERS[cfg.command](cfg, datum, aff, p)
    if cache_file is not None:
        try:
            cache_file.parent.mkdir(parents=True, exist_ok=True)
            tmp = cache_file.with_suffix(".tmp")
            tmp.write_text(json.dumps({"config": asdict(cfg) | {"cache_dir": None}, "output": out},
                                      sort_keys=True))
            os.replace(tmp, cache_file)
        except OSError as e:
            raise CliError(f"cannot write cache entry {cache_file}: {e}", EXIT_CACHE) from None
    return EXIT_OK, out


# ------------------------------------------------------------ argparse
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hl", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with the same keys as the flags")
    common.add_argument("--type", help="Cartan type, e.g. A2, C2, G2, A1xA1")
    common.add_argument("--lattice", choices=("adjoint", "simply_connected"))
    common.add_argument("--params", help="parameters d(s), e.g. s1=1,s2=2,s0=2 (default all 1)")
    common.add_argument("--basis", choices=("fundamental", "coroot"),
                        help="coordinates of weights: <alpha_i, .> (default) or simple coroots")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--check", choices=("oracle",), help="run the independent oracles inline")
    common.add_argument("--cache-dir", help=f"result cache directory (default ${CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--jobs", type=int, help="worker processes for gallery enumeration")
    common.add_argument("--max-rank", type=int)
    common.add_argument("--lambda", dest="lam")

    sp = sub.add_parser("satake", parents=[common], help="Satake coefficients L_{lambda mu}")
    sp.add_argument("--route", choices=coeffs.SATAKE_ROUTES + ("all",))
    sp = sub.add_parser("structure", parents=[common], help="structure constants C_{lambda mu}^nu")
    sp.add_argument("--mu")
    sp.add_argument("--route", choices=coeffs.STRUCTURE_ROUTES + ("all",))
    sp = sub.add_parser("kostka", parents=[common], help="Kostka number by LS-galleries")
    sp.add_argument("--mu")
    sp = sub.add_parser("lr", parents=[common], help="Littlewood-Richardson coefficient by LS-galleries")
    sp.add_argument("--mu")
    sp.add_argument("--nu")
    sp = sub.add_parser("galleries", parents=[common], help="gallery census or listing for t^lambda")
    sp.add_argument("--list", action="store_true", help="one line per gallery")
    return parser


_KEYS = ("type", "lattice", "params", "lam", "mu", "nu", "basis", "route", "check", "format",
         "list", "cache_dir", "jobs", "max_rank")
_ALIASES = {"lambda": "lam", "cache-dir": "cache_dir", "max-rank": "max_rank"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    merged = {}
    if ns.config:
        try:
            raw = json.loads(Path(ns.config).read_text())
        except (OSError, ValueError) as e:
            raise CliError(f"cannot read config {ns.config}: {e}") from None
        for k, v in raw.items():
            k = _ALIASES.get(k, k.replace("-", "_"))
            if k not in _KEYS:
                raise CliError(f"unknown config key {k!r}")
            if k in ("lam", "mu", "nu") and isinstance(v, list):
                v = ",".join(str(x) for x in v)
            merged[k] = v
    for k in _KEYS:
        val = getattr(ns, k, None)
        if val is not None and val is not False:
            merged[k] = val
    if not merged.get("type"):
        raise CliError("--type is required")
    if getattr(ns, "no_cache", False):
        merged["cache_dir"] = None
    elif not merged.get("cache_dir"):
        merged["cache_dir"] = os.environ.get(CACHE_ENV) or None
    merged["params"] = parse_params(merged.get("params"))
    try:
        merged["jobs"] = max(1, int(merged.get("jobs") or 1))
        merged["max_rank"] = int(merged.get("max_rank") or 4)
    except (TypeError, ValueError):
        raise CliError("--jobs and --max-rank take integers") from None
    merged.setdefault("lattice", "adjoint")
    merged.setdefault("basis", "fundamental")
    return RunConfig(command=ns.command, **merged)


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        code, out = run(cfg)
    except CliError as e:
        print(f"hl: {e}", file=sys.stderr)
        return e.code
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
