"""Command-line front end.

    dyckzeros pf --n 3
    dyckzeros zeros --n-range 16:64:16 --out results --jobs 4
    dyckzeros approx --n 16 --beta 4,0 --format json
    dyckzeros leading
    dyckzeros compare --n 32
    dyckzeros limacon --samples 256 --format svg
    dyckzeros figure --id 5L

Settings come from flags, then an optional flat ``key=value`` file given
by ``--config``.  The environment variable DYCKZEROS_OUTPUT_DIR may
replace the configured output directory, and nothing else.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, Decimal
from pathlib import Path

import mpmath as mp

from . import __version__
from . import asymptotics as asy
from .exactpf import partition_polynomial
from .rootfind import PrecisionPolicy, find_zeros, zeros_csv_rows
from .singularity import distance_to_outer_lobe, sample_limacon

__all__ = ["RunConfig", "build_parser", "main", "load_config", "write_atomic"]

ENV_OUTPUT_DIR = "DYCKZEROS_OUTPUT_DIR"
FORMATS = ("csv", "json", "svg")
APPROX_DIGITS = 15
MATCH_TOLERANCE = 0.15


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    n_list: list[int] = field(default_factory=list)
    precision_bits: int | None = None
    beta: complex = 0j
    output_dir: Path = Path(".")
    format: str = "csv"
    k_range: tuple[int, int] | None = None
    jobs: int = 1
    samples: int = 64
    match_tolerance: float = MATCH_TOLERANCE

    def __post_init__(self):
        if any(n < 1 for n in self.n_list):
            raise UsageError("every n must be >= 1")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")
        if self.precision_bits is not None and self.precision_bits < 64:
            raise UsageError("--precision-bits must be at least 64")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")
        if self.samples < 1:
            raise UsageError("--samples must be positive")
        if not self.match_tolerance > 0:
            raise UsageError("match_tolerance must be positive")

    @property
    def policy(self) -> PrecisionPolicy:
        if self.precision_bits is None:
            return PrecisionPolicy()
        return PrecisionPolicy(base_bits=self.precision_bits, per_n_bits=0)

    def require_n(self) -> list[int]:
        if not self.n_list:
            raise UsageError("no half-length given; use --n or --n-range")
        return self.n_list


# argument parsing


def parse_n_range(text: str) -> list[int]:
    """``A:B`` or ``A:B:STEP``, inclusive of B."""
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError(f"bad --n-range {text!r}; expected A:B or A:B:STEP")
    try:
        lo, hi = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
    except ValueError:
        raise UsageError(f"bad --n-range {text!r}; expected integers") from None
    if step < 1 or hi < lo:
        raise UsageError(f"bad --n-range {text!r}; need A <= B and STEP >= 1")
    return list(range(lo, hi + 1, step))


def parse_k_range(text: str) -> tuple[int, int]:
    """``A:B`` inclusive, or a single ``A``."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            k = int(parts[0])
            return k, k
        if len(parts) == 2:
            lo, hi = int(parts[0]), int(parts[1])
            if hi >= lo:
                return lo, hi
    except ValueError:
        pass
    raise UsageError(f"bad --k {text!r}; expected A:B with A <= B")


def parse_beta(text: str) -> complex:
    """``RE,IM`` or a bare real part."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"bad --beta {text!r}; expected RE,IM")


def load_config(path: str | os.PathLike) -> dict[str, str]:
    """Flat ``key=value`` lines; ``#`` starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        out[key.replace("-", "_")] = value
    return out


_CONFIG_KEYS = {
    "n", "n_range", "precision_bits", "beta", "k", "format", "out", "output_dir",
    "jobs", "samples", "match_tolerance",
}


def _default(value, fallback):
    return fallback if value is None else value


def resolve_config(args: argparse.Namespace) -> RunConfig:
    file_cfg = load_config(args.config) if args.config else {}
    unknown = set(file_cfg) - _CONFIG_KEYS
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")

    def pick(name, key=None):
        val = getattr(args, name, None)
        return val if val is not None else file_cfg.get(key or name)

    n_list: list[int] = []
    n_arg = pick("n")
    if n_arg is not None:
        items = n_arg if isinstance(n_arg, list) else str(n_arg).split(",")
        try:
            n_list.extend(int(x) for x in items)
        except ValueError:
            raise UsageError(f"bad n value {n_arg!r}") from None
    n_range = pick("n_range")
    if n_range:
        n_list.extend(parse_n_range(n_range))

    out = args.out
    if out is None:
        out = os.environ.get(ENV_OUTPUT_DIR) or file_cfg.get("output_dir") or file_cfg.get("out") or "."

    bits = pick("precision_bits")
    beta = pick("beta")
    k = pick("k")
    try:
        return RunConfig(
            n_list=n_list,
            precision_bits=int(bits) if bits is not None else None,
            beta=parse_beta(beta) if isinstance(beta, str) else (beta or 0j),
            output_dir=Path(out),
            format=pick("format") or "csv",
            k_range=parse_k_range(k) if isinstance(k, str) else k,
            jobs=int(_default(pick("jobs"), 1)),
            samples=int(_default(pick("samples"), 64)),
            match_tolerance=float(_default(pick("match_tolerance"), MATCH_TOLERANCE)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad configuration value: {exc}") from None


# output


def write_atomic(path: Path, data: str | bytes) -> Path:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    raw = data.encode() if isinstance(data, str) else data
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(raw)
        # mkstemp creates 0600; give the usual umask-derived mode instead
        mask = os.umask(0)
        os.umask(mask)
        os.chmod(tmp, 0o666 & ~mask)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    return path


def _csv_text(header: list[str] | None, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _typed(value: str, keep_text: bool):
    if keep_text:
        return value
    for kind in (int, float):
        try:
            return kind(value)
        except ValueError:
            pass
    return value


# certified zeros carry more digits than a JSON double holds
_TEXT_COLUMNS = {"re", "im"}


def _json_text(header: list[str], rows, meta: dict, exact: bool = False) -> str:
    records = [
        {h: _typed(v, exact and h in _TEXT_COLUMNS) for h, v in zip(header, row)}
        for row in rows
    ]
    return json.dumps({"meta": meta, "records": records}, indent=2) + "\n"


def _meta(n, bits, method: str) -> dict:
    return {"n": n, "precision_bits": bits, "method": method, "version": __version__}


def _g(x: float, digits: int = APPROX_DIGITS) -> str:
    return format(float(x) + 0.0, f".{digits}g")


def _emit(cfg: RunConfig, stem: str, header, rows, meta, svg_points=None, exact=False) -> Path:
    if cfg.format == "csv":
        return write_atomic(cfg.output_dir / f"{stem}.csv", _csv_text(header, rows))
    if cfg.format == "json":
        return write_atomic(cfg.output_dir / f"{stem}.json", _json_text(header, rows, meta, exact))
    if svg_points is None:
        raise UsageError(f"svg output is not available for {stem.split('_')[0]}")
    from .figures import scatter_svg

    return write_atomic(cfg.output_dir / f"{stem}.svg", scatter_svg(svg_points, title=stem))


def _map(cfg: RunConfig, fn, items):
    items = list(items)
    if cfg.jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=min(cfg.jobs, len(items))) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# commands


def cmd_pf(cfg: RunConfig) -> int:
    for n in cfg.require_n():
        coeffs = partition_polynomial(n).coeffs
        if cfg.format == "csv":
            path = write_atomic(cfg.output_dir / f"pf_n{n}.csv", ",".join(map(str, coeffs)) + "\n")
        elif cfg.format == "json":
            doc = {"meta": _meta(n, None, "exact"), "records": [{"n": n, "coefficients": list(coeffs)}]}
            path = write_atomic(cfg.output_dir / f"pf_n{n}.json", json.dumps(doc, indent=2) + "\n")
        else:
            raise UsageError("svg output is not available for pf")
        print(path)
    return 0


ZERO_HEADER = ["n", "index", "re", "im", "residual"]


def _zeros_job(args):
    n, policy = args
    return find_zeros(partition_polynomial(n), policy)


def cmd_zeros(cfg: RunConfig) -> int:
    ns = cfg.require_n()
    for n, zs in zip(ns, _map(cfg, _zeros_job, [(n, cfg.policy) for n in ns])):
        rows = zeros_csv_rows(zs)
        points = [complex(z) for z in zs.all_zeros]
        path = _emit(cfg, f"zeros_n{n}", ZERO_HEADER, rows, _meta(n, zs.precision_bits, "aberth"), points, exact=True)
        print(path)
    return 0


APPROX_HEADER = ["n", "k", "branch", "method", "beta_re", "beta_im", "re", "im"]


def approx_rows(n: int, k_range, beta: complex) -> tuple[list[list[str]], int]:
    """Rows for both branches; the second value counts failed refinements."""
    lo, hi = k_range if k_range else (0, n - 1)
    rows, failed = [], 0
    for k in range(lo, hi + 1):
        for br in (asy.Branch.PLUS, asy.Branch.MINUS):
            az = asy.a_double_prime(k, n, br)
            if beta != 0:
                try:
                    az = asy.refine_zero_beta(k, n, beta, az.value, branch=br)
                except (asy.DriftedBranch, asy.NonConvergence, ZeroDivisionError):
                    failed += 1
                    continue
            rows.append([
                str(n), str(k), az.branch.value, az.method.value,
                _g(beta.real), _g(beta.imag), _g(az.value.real), _g(az.value.imag),
            ])
    return rows, failed


def cmd_approx(cfg: RunConfig) -> int:
    method = "BetaRefined" if cfg.beta != 0 else "ADoublePrime"
    for n in cfg.require_n():
        if n < 2:
            raise UsageError("approximate zeros need n >= 2")
        rows, failed = approx_rows(n, cfg.k_range, cfg.beta)
        if failed:
            print(f"n={n}: {failed} refinements left their sector or did not converge", file=sys.stderr)
        points = [complex(float(r[6]), float(r[7])) for r in rows]
        path = _emit(cfg, f"approx_n{n}", APPROX_HEADER, rows, _meta(n, None, method), points)
        print(path)
    return 0


def _fixed(x, places: int = 15) -> str:
    with mp.workdps(places + 20):
        d = Decimal(mp.nstr(mp.mpf(x), places + 15, strip_zeros=False))
    # truncate rather than round, matching how the constants are usually quoted
    return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_DOWN))


def _fixed_complex(z) -> str:
    z = mp.mpc(z)
    im = _fixed(abs(z.imag))
    return f"{_fixed(z.real)} {'-' if z.imag < 0 else '+'} {im}i"


def cmd_leading(cfg: RunConfig) -> int:
    c = asy.solve_leading_constants()
    if cfg.format == "json":
        doc = {
            "meta": _meta(None, None, "newton"),
            "records": [
                {"name": name, "re": _fixed(val.real), "im": _fixed(val.imag)}
                for name, val in (("c1", c.c1), ("c2", c.c2), ("c1_next", c.c1_next))
            ],
        }
        print(json.dumps(doc, indent=2))
        return 0
    print(f"c1      = {_fixed_complex(c.c1)}")
    print(f"c2      = {_fixed_complex(c.c2)}")
    print(f"c1_next = {_fixed_complex(c.c1_next)}")
    print("a1(n)   = 2 + c1/sqrt(n) + c2/n + O(n^(-3/2))")
    print("a2(n)   = 2 + c1_next/sqrt(n) + O(1/n)")
    return 0


COMPARE_HEADER = [
    "n", "index", "re", "im", "nearest_k", "approx_re", "approx_im",
    "distance", "outer_lobe_distance", "matched",
]


def compare_rows(n: int, policy: PrecisionPolicy, tolerance: float):
    zs = find_zeros(partition_polynomial(n), policy)
    approx = [asy.a_double_prime(k, n, asy.Branch.PLUS).value for k in range(n)] if n >= 2 else []
    rows, dists, unmatched = [], [], []
    for idx, z in enumerate(zs.as_complex(), start=1):
        if approx:
            k = min(range(len(approx)), key=lambda j: abs(approx[j] - z))
            d = abs(approx[k] - z)
            a = approx[k]
        else:
            k, d, a = -1, math.inf, complex(math.nan, math.nan)
        matched = d <= tolerance
        if not matched:
            unmatched.append(z)
        dists.append(d)
        rows.append([
            str(n), str(idx), _g(z.real), _g(z.imag), str(k), _g(a.real), _g(a.imag),
            _g(d), _g(distance_to_outer_lobe(z)), "yes" if matched else "no",
        ])
    return zs.precision_bits, rows, dists, unmatched


def _compare_job(args):
    return compare_rows(*args)


def cmd_compare(cfg: RunConfig) -> int:
    ns = cfg.require_n()
    jobs = [(n, cfg.policy, cfg.match_tolerance) for n in ns]
    for n, (bits, rows, dists, unmatched) in zip(ns, _map(cfg, _compare_job, jobs)):
        points = [complex(float(r[2]), float(r[3])) for r in rows]
        path = _emit(cfg, f"compare_n{n}", COMPARE_HEADER, rows, _meta(n, bits, "ADoublePrime"), points)
        if dists:
            summary = f"max={max(dists):.6g} mean={sum(dists) / len(dists):.6g}"
        else:
            summary = "no non-trivial zeros"
        listed = ", ".join(f"{z.real:.6g}{z.imag:+.6g}i" for z in unmatched)
        print(f"n={n} zeros={len(rows)} {summary} unmatched={len(unmatched)}"
              + (f" [{listed}]" if unmatched else ""))
        print(path)
    return 0


LIMACON_HEADER = ["phi", "re", "im", "lobe"]


def cmd_limacon(cfg: RunConfig) -> int:
    pts = sample_limacon(cfg.samples)
    rows = [[_g(p.phi), _g(p.point.real), _g(p.point.imag), p.lobe.value] for p in pts]
    stem = f"limacon_s{cfg.samples}"
    if cfg.format == "svg":
        from .figures import WINDOWS, scatter_svg

        svg = scatter_svg([p.point for p in pts], title=stem, window=WINDOWS["2"])
        path = write_atomic(cfg.output_dir / f"{stem}.svg", svg)
    else:
        path = _emit(cfg, stem, LIMACON_HEADER, rows, _meta(None, None, "closed-form"))
    print(path)
    return 0


def cmd_figure(cfg: RunConfig, fig_id: str) -> int:
    from .figures import render

    path = write_atomic(cfg.output_dir / f"figure_{fig_id.upper()}.svg", render(fig_id))
    print(path)
    return 0


# entry point


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", action="append", type=int, help="half-length (repeatable)")
    common.add_argument("--n-range", help="A:B or A:B:STEP, inclusive")
    common.add_argument("--precision-bits", type=int, help="fixed working precision for zeros")
    common.add_argument("--beta", help="constant beta as RE,IM")
    common.add_argument("--k", help="index range A:B, inclusive")
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--out", help=f"output directory (else ${ENV_OUTPUT_DIR}, else config, else .)")
    common.add_argument("--config", help="flat key=value settings file")
    common.add_argument("--jobs", type=int, help="worker processes for independent n")

    parser = _Parser(prog="dyckzeros", description="Zeros of the adsorbing Dyck path partition function.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("pf", parents=[common], help="exact coefficients of D_2n")
    sub.add_parser("zeros", parents=[common], help="certified zeros of D_2n")
    sub.add_parser("approx", parents=[common], help="closed-form or beta-refined approximate zeros")
    sub.add_parser("leading", parents=[common], help="leading-zero constants c1, c2, c1_next")
    sub.add_parser("compare", parents=[common], help="exact zeros against a''_+")
    lim = sub.add_parser("limacon", parents=[common], help="sample both lobes of the limacon")
    lim.add_argument("--samples", type=int, help="points per lobe (default 64)")
    fig = sub.add_parser("figure", parents=[common], help="regenerate a figure as SVG")
    from .figures import FIGURES

    fig.add_argument("--id", required=True, type=str.upper, choices=FIGURES, dest="fig_id")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command == "figure":
            return cmd_figure(cfg, args.fig_id)
        handler = {
            "pf": cmd_pf,
            "zeros": cmd_zeros,
            "approx": cmd_approx,
            "leading": cmd_leading,
            "compare": cmd_compare,
            "limacon": cmd_limacon,
        }[args.command]
        return handler(cfg)
    except KeyboardInterrupt:
        print("dyckzeros: interrupted", file=sys.stderr)
        return 130
    except Exception as exc:  # every failure becomes one line on stderr
        msg = " ".join(str(exc).split()) or type(exc).__name__
        print(f"dyckzeros: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
