"""Command-line front end.

Every subcommand reads a measure and/or spectrum, runs one analysis and writes
plot-ready CSV or JSON into ``--out``. Each file starts with ``#`` header lines
carrying the config hash, seed and tolerances, so re-running a config gives
byte-identical output. Exit codes: 0 success, 2 config error, 3 numerical
failure.
"""
import argparse
import hashlib
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

import numpy as np

from . import kaczmarz as kz
from . import rkhs
from .lambda_sets import parse_spectrum, separation
from .measures import (
    TWO_PI,
    AtomicMeasure,
    TransformConfig,
    TruncationError,
    chaos_game_sample,
    fourier_transform,
    load_measure,
    measure_to_dict,
    moments,
)
from .spectral_analysis import DEFAULT_PROBES, gram_matrix, pair_verdict, parseval_profile

EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

COMMANDS = ("ft", "gram", "check-pair", "parseval", "kaczmarz", "attractor", "rkhs-check")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    measure: Optional[str] = None
    spectrum: Optional[str] = None
    convention: Optional[str] = None
    level: Optional[int] = None
    tol: float = 1e-8
    transform_tol: float = 1e-12
    max_depth: int = 200
    probes: list = field(default_factory=lambda: list(DEFAULT_PROBES))
    out: str = "."
    seed: int = 0
    tmin: float = 0.0
    tmax: float = 8 * math.pi
    num: int = 257
    N: int = 16
    function: str = "indicator:0"
    depth: int = 12
    xnum: int = 65
    n: int = 10000
    burn_in: int = 50
    test_function: Optional[str] = None
    M: int = 1

    def c(self):
        return parse_convention(self.convention, self.command)

    def transform_config(self):
        return TransformConfig(self.transform_tol, self.max_depth)

    def digest(self):
        # output location does not affect results
        d = {k: v for k, v in asdict(self).items() if k != "out"}
        blob = json.dumps(d, sort_keys=True, default=str).encode()
        return hashlib.sha256(blob).hexdigest()


def parse_convention(text, command="ft"):
    if text is None:
        return 1.0 if command in ("ft", "rkhs-check") else TWO_PI
    t = str(text).strip().lower().replace(" ", "")
    if t in ("2pi", "2*pi", "tau"):
        return TWO_PI
    try:
        return float(t)
    except ValueError:
        raise ConfigError(f"bad convention {text!r}; use 1, 2pi or a number") from None


def fmt(x):
    return format(float(x) + 0.0, ".17g")  # + 0.0 folds -0 into 0


def _header(cfg, extra=()):
    lines = [
        f"# spectralpairs {cfg.command}",
        f"# config_sha256={cfg.digest()}",
        f"# seed={cfg.seed}",
        f"# tol={fmt(cfg.tol)} transform_tol={fmt(cfg.transform_tol)} max_depth={cfg.max_depth}",
        f"# convention={fmt(cfg.c())}",
    ]
    lines.extend(f"# {e}" for e in extra)
    return "\n".join(lines) + "\n"


def write_csv(path, cfg, columns, rows, extra=()):
    body = [",".join(columns)]
    for row in rows:
        body.append(",".join(v if isinstance(v, str) else fmt(v) for v in row))
    path.write_text(_header(cfg, extra) + "\n".join(body) + "\n")
    return path


def write_json(path, cfg, payload):
    meta = {"command": cfg.command, "config_sha256": cfg.digest(), "seed": cfg.seed,
            "tol": cfg.tol, "transform_tol": cfg.transform_tol, "convention": cfg.c()}
    path.write_text(json.dumps({"meta": meta, **payload}, indent=2, sort_keys=True, default=_jsonable) + "\n")
    return path


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def parse_function(spec):
    """Functions on [0, 1] for the Kaczmarz expansion.

    ``indicator:a`` (indicator of the point a), ``interval:a,b``,
    ``exp:m`` (e_m), ``cos:m``, ``power:p`` and ``one``.
    """
    kind, _, arg = spec.partition(":")
    if kind == "one":
        return lambda x: np.ones_like(np.asarray(x, dtype=float))
    if kind == "indicator":
        a = float(arg)
        return lambda x: (np.asarray(x) == a).astype(float)
    if kind == "interval":
        a, b = (float(v) for v in arg.split(","))
        return lambda x: ((np.asarray(x) >= a) & (np.asarray(x) < b)).astype(float)
    if kind == "exp":
        m = int(arg)
        return lambda x: np.exp(2j * np.pi * m * np.asarray(x))
    if kind == "cos":
        m = int(arg)
        return lambda x: np.cos(2 * np.pi * m * np.asarray(x))
    if kind == "power":
        p = float(arg)
        return lambda x: np.asarray(x, dtype=float) ** p
    raise ConfigError(f"unknown function spec {spec!r}")


def resolve(cfg):
    """Parse and validate every referenced input before computing anything."""
    needs_measure = cfg.command in ("ft", "gram", "check-pair", "parseval", "kaczmarz", "attractor")
    needs_spectrum = cfg.command in ("gram", "check-pair", "parseval")
    out = {}
    try:
        cfg.c()
        cfg.transform_config()
        if cfg.measure is not None:
            out["measure"] = load_measure(cfg.measure)
        elif needs_measure:
            raise ConfigError("--measure is required")
        if cfg.spectrum is not None:
            spec = parse_spectrum(cfg.spectrum)
            if cfg.level is not None:
                spec = spec.at_level(cfg.level)
            out["spectrum"] = spec
        elif needs_spectrum:
            raise ConfigError("--spectrum is required")
        if cfg.command == "kaczmarz":
            out["function"] = parse_function(cfg.function)
        if cfg.command == "rkhs-check":
            tf = json.loads(cfg.test_function) if cfg.test_function else {"family": "gaussian"}
            out["phi"] = rkhs.TestFunction.from_dict(tf)
            if "measure" not in out and "spectrum" not in out:
                raise ConfigError("rkhs-check needs --measure (atomic) or --spectrum")
            if "measure" in out and not isinstance(out["measure"], AtomicMeasure):
                raise ConfigError("rkhs-check needs an atomic measure")
        if cfg.command == "attractor" and isinstance(out.get("measure"), AtomicMeasure):
            raise ConfigError("attractor needs an IFS or uniform measure")
        if cfg.num < 1 or cfg.N < 0 or cfg.n < 1 or cfg.depth < 0:
            raise ConfigError("grid sizes and counts must be positive")
    except ConfigError:
        raise
    except (ValueError, KeyError, FileNotFoundError, json.JSONDecodeError) as exc:
        raise ConfigError(str(exc)) from exc
    return out


def cmd_ft(cfg, res, outdir):
    t = np.linspace(cfg.tmin, cfg.tmax, cfg.num)
    vals = np.atleast_1d(fourier_transform(res["measure"], t, cfg.transform_config(), convention=cfg.c()))
    rows = [(ti, v.real, v.imag, abs(v)) for ti, v in zip(t, vals)]
    return [write_csv(outdir / "ft.csv", cfg, ["t", "re", "im", "abs"], rows)]


def _gram_rows(gram):
    lam = gram.frequencies
    rows = []
    for i in range(len(lam)):
        for j in range(len(lam)):
            v = gram.entries[i, j]
            rows.append((str(lam[i]), str(lam[j]), v.real, v.imag, abs(v)))
    return rows


def cmd_gram(cfg, res, outdir):
    gram = gram_matrix(res["measure"], res["spectrum"], cfg.c(), cfg.transform_config())
    return [write_csv(outdir / "gram.csv", cfg, ["lambda_i", "lambda_j", "re", "im", "abs"], _gram_rows(gram))]


def cmd_check_pair(cfg, res, outdir):
    measure, spectrum = res["measure"], res["spectrum"]
    report = pair_verdict(measure, spectrum, cfg.probes, cfg.c(), cfg.transform_config(), cfg.tol)
    gram = gram_matrix(measure, spectrum, cfg.c(), cfg.transform_config())
    payload = {"measure": measure_to_dict(measure), "spectrum": spectrum.elements.tolist(),
               "report": report.to_dict()}
    return [
        write_json(outdir / "pair_report.json", cfg, payload),
        write_csv(outdir / "gram.csv", cfg, ["lambda_i", "lambda_j", "re", "im", "abs"], _gram_rows(gram)),
    ]


def cmd_parseval(cfg, res, outdir):
    spectrum = res["spectrum"]
    top = spectrum.level if spectrum.is_digit_set else None
    levels = list(range(0, top + 1)) if top is not None else [None]
    prof = parseval_profile(res["measure"], spectrum, cfg.probes, levels, cfg.c(), cfg.transform_config())
    rows = []
    for t in cfg.probes:
        for m, s in zip(levels, prof[t]):
            rows.append(("" if m is None else str(m), t, s, 1.0 - s))
    return [write_csv(outdir / "parseval.csv", cfg, ["level", "probe", "sum", "deficit"], rows)]


def cmd_kaczmarz(cfg, res, outdir):
    measure, f, N = res["measure"], res["function"], cfg.N
    if cfg.c() != TWO_PI:
        raise ConfigError("kaczmarz works with e_n(x) = exp(2 pi i n x); use --convention 2pi")
    mom = moments(measure, N, TWO_PI, cfg.transform_config())
    frame = kz.FrameSystem.from_moments(mom, N)
    fh, norm_sq = kz.function_moments(measure, f, N, cfg.depth)
    coeffs = kz.frame_coefficients(fh, frame, N)
    resid = kz.parseval_residual(fh, norm_sq, frame, N)
    quad = "exact" if isinstance(measure, AtomicMeasure) else f"cylinder depth={cfg.depth}"
    extra = [f"function={cfg.function}", f"f_hat={quad}", f"norm_sq={fmt(norm_sq)}"]
    a = frame.alpha.values
    files = [
        write_csv(outdir / "alpha.csv", cfg, ["n", "re_alpha", "im_alpha"],
                  [(str(n), a[n].real, a[n].imag) for n in range(N + 1)], extra),
        write_csv(outdir / "residual.csv", cfg, ["N", "residual"],
                  [(str(n), resid[n]) for n in range(N + 1)], extra),
    ]
    x = np.linspace(0.0, 1.0, cfg.xnum)
    if isinstance(measure, AtomicMeasure):
        x = np.unique(np.concatenate([x, measure.points[:, 0]]))
    fx = kz.reconstruct(coeffs, x, N)
    files.append(write_csv(outdir / "reconstruction.csv", cfg, ["x", "re", "im"],
                           [(xi, v.real, v.imag) for xi, v in zip(x, np.atleast_1d(fx))], extra))
    return files


def cmd_attractor(cfg, res, outdir):
    pts = chaos_game_sample(res["measure"], cfg.n, cfg.seed, cfg.burn_in)
    pts = pts.reshape(len(pts), -1)
    cols = ["x", "y", "z"][: pts.shape[1]]
    return [write_csv(outdir / "attractor.csv", cfg, cols, pts.tolist(), [f"burn_in={cfg.burn_in}"])]


def cmd_rkhs_check(cfg, res, outdir):
    phi = res["phi"]
    records = {}
    if "measure" in res:
        mu = res["measure"]
        b = rkhs.bochner_check(mu, phi)
        s = rkhs.sobolev_norm_check(mu, phi)
        records["bochner"] = {"lhs": b.lhs, "rhs": b.rhs, "defect": b.defect}
        records["sobolev"] = {"lhs": s.plain, "rhs": s.weighted, "defect": s.defect}
    if "spectrum" in res:
        spec = res["spectrum"]
        top = spec.level if spec.is_digit_set else None
        levels = list(range(1, top + 1)) if top else [None]
        tb = rkhs.tempered_bound_check(spec, phi, cfg.M, levels)
        records["tempered_bound"] = {
            "holds": tb.holds, "seminorm": tb.seminorm,
            "levels": tb.levels, "lhs": tb.pairings,
            "rhs": [tb.seminorm * c for c in tb.constants],
        }
        F = rkhs.FLambda(spec, cfg.c())
        elem = rkhs.RKHSElement.from_test_function(phi, F)
        records["rkhs_norm"] = {"norm": elem.norm, "separation": separation(spec).separation}
    return [write_json(outdir / "rkhs_check.json", cfg, {"records": records})]


HANDLERS = {
    "ft": cmd_ft,
    "gram": cmd_gram,
    "check-pair": cmd_check_pair,
    "parseval": cmd_parseval,
    "kaczmarz": cmd_kaczmarz,
    "attractor": cmd_attractor,
    "rkhs-check": cmd_rkhs_check,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON run config; flags override its keys")
    common.add_argument("--measure", help="config path, shipped name (nu4, nu3, two_atom, uniform, sierpinski) or inline JSON")
    common.add_argument("--spectrum", help="'base:digits:level' such as 4:0,1:6, or a JSON list")
    common.add_argument("--convention", help="frequency constant c: 1 or 2pi")
    common.add_argument("--level", type=int)
    common.add_argument("--tol", type=float)
    common.add_argument("--out")
    common.add_argument("--seed", type=int)

    parser = argparse.ArgumentParser(prog="spectralpairs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common])
        if name == "ft":
            p.add_argument("--tmin", type=float)
            p.add_argument("--tmax", type=float)
            p.add_argument("--num", type=int)
        if name in ("check-pair", "parseval"):
            p.add_argument("--probes", type=lambda s: [float(v) for v in s.split(",")])
        if name == "kaczmarz":
            p.add_argument("--N", type=int)
            p.add_argument("--function")
            p.add_argument("--depth", type=int)
            p.add_argument("--xnum", type=int)
        if name == "attractor":
            p.add_argument("--n", type=int)
            p.add_argument("--burn-in", type=int, dest="burn_in")
        if name == "rkhs-check":
            p.add_argument("--test-function", dest="test_function")
            p.add_argument("--M", type=int)
    return parser


def make_config(args):
    values = {}
    if args.config:
        try:
            values.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    for key, val in vars(args).items():
        if key not in ("config", "command") and val is not None:
            values[key] = val
    if isinstance(values.get("measure"), dict):
        values["measure"] = json.dumps(values["measure"], sort_keys=True)
    if isinstance(values.get("test_function"), dict):
        values["test_function"] = json.dumps(values["test_function"], sort_keys=True)
    if values.get("convention") is not None:
        values["convention"] = str(values["convention"])
    known = RunConfig.__dataclass_fields__
    unknown = set(values) - set(known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
    return RunConfig(command=args.command, **values)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        res = resolve(cfg)
        outdir = Path(cfg.out)
        outdir.mkdir(parents=True, exist_ok=True)
        files = HANDLERS[cfg.command](cfg, res, outdir)
    except ConfigError as exc:
        print(f"spectralpairs: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except TruncationError as exc:
        print(f"spectralpairs: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for f in files:
        print(f)
    return 0


if __name__ == "__main__":
    sys.exit(main())
