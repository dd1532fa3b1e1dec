"""Command-line entry point: compute sector series, run checks, list sectors.

Every numeric input is an exact rational written ``p/q`` or an integer.
Results go to stdout (or ``--output``) as canonical JSON; errors go to stderr
as one JSON object with a stable ``code`` field.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Any, Mapping, Sequence

from aleinst.algebra import AlgebraError, GradedSeries, UniRatFunc
from aleinst.lattice import LatticeError, cartan, list_sectors
from aleinst.localization import VanishingFactor
from aleinst.nekrasov import ADJOINT, FUNDAMENTAL, MATTERS, PURE
from aleinst.reports import CheckReport

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_CONFIG = 2

SERIES_KINDS = ("ale", "vw", "circ")
CHECKS = ("appendix-b", "appendix-d", "edge-oracles", "vw", "sw-limit", "blowup", "degrees")
SYMBOLIC = "symbolic"

_RATIONAL = re.compile(r"^[+-]?\d+(/[+-]?\d+)?$")


class ConfigError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# parsing helpers


def parse_rational(text: Any, what: str = "value") -> Fraction:
    """Exact rational from ``p/q``, an integer string or a JSON integer."""
    if isinstance(text, bool):
        raise ConfigError("bad-rational", f"{what}: expected a rational, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL.match(text.strip()):
        raise ConfigError("bad-rational", f"{what}: expected p/q, got {text!r}")
    try:
        return Fraction(text.strip())
    except ZeroDivisionError:
        raise ConfigError("bad-rational", f"{what}: zero denominator in {text!r}") from None


def parse_list(value: Any, what: str) -> list:
    """Comma-separated string or JSON list of rationals."""
    if isinstance(value, str):
        parts = [s for s in value.split(",")] if value.strip() else []
    elif isinstance(value, list):
        parts = value
    else:
        raise ConfigError("bad-list", f"{what}: expected a comma list, got {value!r}")
    return [parse_rational(x, what) for x in parts]


def parse_int_list(value: Any, what: str) -> list:
    out = parse_list(value, what)
    if any(x.denominator != 1 for x in out):
        raise ConfigError("bad-list", f"{what}: entries must be integers")
    return [int(x) for x in out]


def parse_int(value: Any, what: str) -> int:
    x = parse_rational(value, what)
    if x.denominator != 1:
        raise ConfigError("bad-int", f"{what}: expected an integer, got {value!r}")
    return int(x)


# ---------------------------------------------------------------------------
# serialization


def format_rational(x) -> str:
    return str(Fraction(x))


def format_coeff(c) -> Any:
    if isinstance(c, UniRatFunc):
        return {"num": [format_rational(x) for x in c.num], "den": [format_rational(x) for x in c.den]}
    if isinstance(c, (int, Fraction)):
        return format_rational(c)
    raise TypeError(f"cannot serialize coefficient of type {type(c).__name__}")


def sector_key(v: Sequence) -> str:
    return ",".join(format_rational(x) for x in v)


def series_rows(series: GradedSeries) -> list:
    rows = []
    for (eq, eu), c in sorted(series.terms.items()):
        row = {"q": format_rational(eq)}
        if eu:
            row["u"] = format_rational(eu)
        row["coeff"] = format_coeff(c)
        rows.append(row)
    return rows


def sectors_document(sectors: Mapping) -> dict:
    """Canonical JSON-ready form: sectors in vector order, terms by ascending exponent."""
    out = {}
    for v in sorted(sectors):
        series = sectors[v]
        if series:
            out[sector_key(v)] = series_rows(series)
    return {"sectors": out}


def dumps(doc: Mapping) -> str:
    return json.dumps(doc, separators=(",", ":"), ensure_ascii=False)


def serialize(obj, fmt: str = "json") -> bytes:
    """Bytes for a sector mapping or a CheckReport."""
    if isinstance(obj, CheckReport):
        doc = obj.to_json()
        if fmt == "text":
            lines = [f"{doc['check']}: {doc['status']}"] + [f"  {d}" for d in doc["details"]]
            return ("\n".join(lines) + "\n").encode()
        return (dumps(doc) + "\n").encode()
    doc = sectors_document(obj)
    if fmt == "text":
        lines = []
        for key, rows in doc["sectors"].items():
            lines.append(f"sector {key}")
            for row in rows:
                u = f" u^{row['u']}" if "u" in row else ""
                lines.append(f"  q^{row['q']}{u}: {json.dumps(row['coeff'])}")
        return ("\n".join(lines) + "\n").encode() if lines else b""
    return (dumps(doc) + "\n").encode()


def _parse_coeff(value):
    if isinstance(value, dict):
        return UniRatFunc([Fraction(x) for x in value["num"]], [Fraction(x) for x in value["den"]])
    return Fraction(value)


def parse_sectors(data: bytes | str) -> dict:
    """Inverse of ``serialize`` for sector documents; series cutoffs are the top exponent present."""
    doc = json.loads(data)
    out = {}
    for key, rows in doc["sectors"].items():
        v = tuple(Fraction(x) for x in key.split(","))
        terms = {(Fraction(r["q"]), Fraction(r.get("u", "0"))): _parse_coeff(r["coeff"]) for r in rows}
        top = max((e for e, _ in terms), default=Fraction(0))
        out[v] = GradedSeries(terms, top)
    return out


# ---------------------------------------------------------------------------
# configuration


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError("config-unreadable", f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config-syntax", f"{path}: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(data, dict):
        raise ConfigError("config-syntax", f"{path}: top level must be an object")
    return {k.replace("-", "_"): v for k, v in data.items()}


def merge_config(args: argparse.Namespace, allowed: Sequence[str], defaults: Mapping) -> dict:
    """File values, overridden by flags given on the command line, then defaults."""
    cfg = _load_config(getattr(args, "config", None))
    unknown = sorted(set(cfg) - set(allowed) - {"command", "check"})
    if unknown:
        raise ConfigError("config-unknown-key", f"unknown keys: {', '.join(unknown)}")
    for name in allowed:
        if getattr(args, name, None) is not None:
            cfg[name] = getattr(args, name)
    for name, value in defaults.items():
        cfg.setdefault(name, value)
    return cfg


def _require(cfg: Mapping, *names: str) -> None:
    missing = [n for n in names if cfg.get(n) is None]
    if missing:
        raise ConfigError("config-missing", f"missing required settings: {', '.join(missing)}")


def _geometry(cfg: Mapping) -> tuple:
    _require(cfg, "k", "w")
    k = parse_int(cfg["k"], "k")
    w = tuple(parse_int_list(cfg["w"], "w"))
    if cfg.get("rank") is not None and parse_int(cfg["rank"], "rank") != sum(w):
        raise ConfigError("rank-mismatch", f"rank {cfg['rank']} but w sums to {sum(w)}")
    if len(w) != k:
        raise ConfigError("bad-holonomy", f"w needs {k} entries, got {len(w)}")
    return k, sum(w), w


def _epsilons(cfg: Mapping) -> tuple:
    """(ε1, ε2) as rationals, or (x, c·x) for ``symbolic:c``."""
    eps = cfg.get("eps")
    if isinstance(eps, str) and eps.startswith(SYMBOLIC):
        _, _, slope = eps.partition(":")
        c = parse_rational(slope or "-1", "eps slope")
        x = UniRatFunc.x()
        return x, x * c
    values = parse_list(eps, "eps")
    if len(values) != 2:
        raise ConfigError("bad-eps", "eps needs two entries")
    if 0 in values:
        raise ConfigError("degenerate-point", "epsilons must be nonzero")
    return tuple(values)


def _mass(cfg: Mapping, matter: str, symbolic_eps: bool):
    mu = cfg.get("mu")
    if matter == PURE:
        if mu is not None:
            raise ConfigError("config-conflict", "pure matter takes no mass")
        return None
    if mu is None:
        raise ConfigError("config-missing", f"{matter} matter needs --mu")
    if mu == SYMBOLIC:
        if symbolic_eps or matter != ADJOINT:
            raise ConfigError("config-conflict", "only the adjoint mass may be symbolic, and not with symbolic eps")
        return UniRatFunc.x()
    values = parse_list(mu, "mu")
    if matter == ADJOINT:
        if len(values) != 1:
            raise ConfigError("bad-mu", "adjoint matter takes one mass")
        return values[0]
    return tuple(values)


# ---------------------------------------------------------------------------
# commands


COMPUTE_KEYS = ("k", "rank", "w", "matter", "mu", "a", "eps", "max_order", "sector",
                "sector_bound", "series", "workers", "format", "output", "config")


def run_compute(cfg: Mapping) -> tuple[bytes, int]:
    from aleinst.ale import AleParams, z_ale, z_ale_sector, z_circ, z_circ_sector, z_vw, z_vw_sector

    k, r, w = _geometry(cfg)
    _require(cfg, "max_order")
    cutoff = parse_rational(cfg["max_order"], "max-order")
    if cutoff < 0:
        raise ConfigError("bad-cutoff", "max-order must be nonnegative")
    kind = cfg["series"]
    if kind not in SERIES_KINDS:
        raise ConfigError("bad-series", f"series must be one of {', '.join(SERIES_KINDS)}")
    sector = None
    if cfg.get("sector") is not None:
        sector = tuple(parse_list(cfg["sector"], "sector"))
        if len(sector) != k - 1:
            raise ConfigError("bad-sector", f"sector needs {k - 1} entries")
    workers = parse_int(cfg["workers"], "workers") if cfg.get("workers") is not None else None

    if kind == "vw":
        if sector is not None:
            return serialize({sector: z_vw_sector(k, w, sector, cutoff)}, cfg["format"]), EXIT_OK
        return serialize(z_vw(k, r, w, cutoff), cfg["format"]), EXIT_OK

    _require(cfg, "a", "eps")
    matter = cfg["matter"]
    if matter not in MATTERS:
        raise ConfigError("bad-matter", f"matter must be one of {', '.join(MATTERS)}")
    e1, e2 = _epsilons(cfg)
    mu = _mass(cfg, matter, isinstance(e1, UniRatFunc))
    a = tuple(parse_list(cfg["a"], "a"))
    bound = parse_rational(cfg["sector_bound"], "sector-bound") if cfg.get("sector_bound") is not None else None
    p = AleParams(k, w, e1, e2, a, matter=matter, mu=mu, cutoff=cutoff, sector_bound=bound)
    if sector is not None:
        one = z_ale_sector(p, sector) if kind == "ale" else z_circ_sector(p, sector)
        return serialize({sector: one}, cfg["format"]), EXIT_OK
    full = z_ale(p, workers=workers) if kind == "ale" else z_circ(p, workers=workers)
    for v in full.excluded:
        _warn("sector-excluded", f"sector {sector_key(v)} removed by the flavour gate")
    for v, low in sorted(full.dropped.items()):
        _warn("sector-dropped", f"sector {sector_key(v)} (lowest q^{low}) lies beyond the sector bound")
    return serialize(full, cfg["format"]), EXIT_OK


CHECK_KEYS = ("k", "rank", "w", "matter", "max_order", "ranges", "points", "seed", "samples",
              "format", "output", "config")


def _check_report(name: str, cfg: Mapping) -> CheckReport:
    from aleinst import verify

    points = parse_int(cfg["points"], "points") if cfg.get("points") is not None else None
    seed = parse_int(cfg["seed"], "seed") if cfg.get("seed") is not None else verify.DEFAULT_SEED
    extra = {"points": points} if points is not None else {}
    if name == "appendix-b":
        _require(cfg, "k")
        ranges = cfg.get("ranges") or verify.STATED
        if ranges not in (verify.STATED, verify.CORRECTED):
            raise ConfigError("bad-ranges", "ranges must be stated or corrected")
        return verify.check_appendix_b(parse_int(cfg["k"], "k"), ranges)
    if name == "appendix-d":
        return verify.check_appendix_d_regression(seed=seed, **extra)
    if name == "edge-oracles":
        return verify.check_edge_oracles(seed=seed, **extra)
    k, r, w = _geometry(cfg)
    order = parse_rational(cfg.get("max_order") or 2, "max-order")
    if name == "vw":
        return verify.check_vw(k, r, w, order)
    if name == "degrees":
        samples = parse_int(cfg["samples"], "samples") if cfg.get("samples") is not None else None
        return verify.check_dimension_rank_degrees(k, r, w, order, samples)
    if order.denominator != 1:
        raise ConfigError("bad-int", "max-order must be an integer for this check")
    if name == "sw-limit":
        matter = cfg.get("matter") or PURE
        if matter == FUNDAMENTAL:
            raise ConfigError("bad-matter", "the limit check covers pure and adjoint matter")
        return verify.check_sw_limit(k, r, w, matter, int(order), seed=seed, **extra)
    if name == "blowup":
        if k != 2:
            raise ConfigError("bad-geometry", "the blowup check needs k = 2")
        return verify.check_blowup_ratio_k2(r, w, int(order), seed=seed, **extra)
    raise ConfigError("unknown-check", f"unknown check {name!r}")


def run_check(name: str, cfg: Mapping) -> tuple[bytes, int]:
    if name not in CHECKS:
        raise ConfigError("unknown-check", f"check must be one of {', '.join(CHECKS)}")
    report = _check_report(name, cfg)
    if report.status == "flagged":
        _warn("check-flagged", f"{report.check} reported flagged rows")
    code = EXIT_CHECK_FAILED if report.status == "fail" else EXIT_OK
    if code:
        _error("check-failed", f"{report.check} failed with {len(report.details)} rows")
    return serialize(report, cfg["format"]), code


LIST_KEYS = ("k", "rank", "w", "bound", "format", "output", "config")


def run_list_sectors(cfg: Mapping) -> tuple[bytes, int]:
    k, r, w = _geometry(cfg)
    _require(cfg, "bound")
    bound = parse_rational(cfg["bound"], "bound")
    cd = cartan(k)
    vectors = sorted(list_sectors(k, w, bound))
    if cfg["format"] == "text":
        return "".join(f"{sector_key(v)}\t{cd.pair(v, v) / (2 * r)}\n" for v in vectors).encode(), EXIT_OK
    return (dumps({"sectors": [sector_key(v) for v in vectors]}) + "\n").encode(), EXIT_OK


# ---------------------------------------------------------------------------
# plumbing


def _emit(kind: str, code: str, message: str) -> None:
    sys.stderr.write(dumps({kind: code, "message": message}) + "\n")


def _warn(code: str, message: str) -> None:
    _emit("warning", code, message)


def _error(code: str, message: str) -> None:
    _emit("error", code, message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of settings; flags override it")
    p.add_argument("--format", choices=("json", "text"))
    p.add_argument("--output", help="write the result here instead of stdout")


def _geometry_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", help="orbifold order")
    p.add_argument("--rank", help="gauge rank; must equal the sum of w")
    p.add_argument("--w", help="holonomy multiplicities, comma separated")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aleinst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    comp = sub.add_parser("compute", help="instanton series per sector")
    _geometry_flags(comp)
    comp.add_argument("--matter", choices=MATTERS)
    comp.add_argument("--mu", help="mass(es) p/q, or 'symbolic' for a rational function in the adjoint mass")
    comp.add_argument("--a", help="Coulomb parameters, comma separated")
    comp.add_argument("--eps", help="e1,e2 or 'symbolic:c' for e1 = x, e2 = c x")
    comp.add_argument("--max-order", dest="max_order", help="q-cutoff")
    comp.add_argument("--sector", help="single sector vector, comma separated")
    comp.add_argument("--sector-bound", dest="sector_bound", help="keep sectors with vCv/2r at most this")
    comp.add_argument("--series", choices=SERIES_KINDS, help="ale (default), vw counting, or circ with u grading")
    comp.add_argument("--workers", help="process count; defaults to ALEINST_WORKERS or 1")
    _common(comp)

    chk = sub.add_parser("check", help="run one verification")
    chk.add_argument("check", choices=CHECKS)
    _geometry_flags(chk)
    chk.add_argument("--matter", choices=(PURE, ADJOINT))
    chk.add_argument("--max-order", dest="max_order")
    chk.add_argument("--ranges", choices=("stated", "corrected"))
    chk.add_argument("--points")
    chk.add_argument("--seed")
    chk.add_argument("--samples")
    _common(chk)

    ls = sub.add_parser("list-sectors", help="sector vectors under a bound")
    _geometry_flags(ls)
    ls.add_argument("--bound")
    _common(ls)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[bytes, int, str | None]:
    """Parse, dispatch, and return (payload, exit code, output path)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "compute":
        cfg = merge_config(args, COMPUTE_KEYS, {"matter": PURE, "series": "ale", "format": "json"})
        payload, code = run_compute(cfg)
    elif args.command == "check":
        cfg = merge_config(args, CHECK_KEYS, {"format": "json"})
        payload, code = run_check(args.check, cfg)
    else:
        cfg = merge_config(args, LIST_KEYS, {"format": "json"})
        payload, code = run_list_sectors(cfg)
    return payload, code, cfg.get("output")


def main(argv: Sequence[str] | None = None) -> int:
    try:
        payload, code, output = run(argv)
    except ConfigError as exc:
        _error(exc.code, str(exc))
        return EXIT_CONFIG
    except VanishingFactor as exc:
        _error("degenerate-point", str(exc))
        return EXIT_CONFIG
    except LatticeError as exc:
        _error("invalid-geometry", str(exc))
        return EXIT_CONFIG
    except (AlgebraError, ValueError) as exc:
        _error("invalid-input", str(exc))
        return EXIT_CONFIG
    if output:
        with open(output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    raise SystemExit(main())
