"""Command-line interface: one binary for all pipelines.

Subcommands: dims, series, gk, guess, fit, gapcheck, sweep, operadize,
envelope, preset-list.  Output is CSV by default (JSON carries full
metadata, gnuplot emits a plottable block); every numeric value is an
exact integer or rational unless explicitly labelled as a floating
estimate.  Exit codes: 0 success, 1 usage error, 2 computation error.

Sweep rows may be computed in parallel (OPLAB_THREADS); output is ordered
by presentation key before emission, so results are byte-identical across
runs and thread counts.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import algebra as alg
from . import monomial as mono
from . import series as ser
from .branch import closed_set_counts, example_at_most_one_index2
from .constructions import min_envelope_dims, operadize, symmetric_envelope_dims
from .dims import DimSeries
from .monomial import MonomialOperadPresentation, PresentationSyntaxError
from .order import TreeOrder
from .trees import Alphabet, parse_monomial
from .trees import format_monomial


class UsageError(Exception):
    """Bad arguments, unknown presets, malformed files."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # route argparse failures to exit code 1
        raise UsageError(message)


# ---------------------------------------------------------------------------
# preset catalog
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Preset:
    name: str
    kind: str  # "presentation" | "dims"
    description: str
    build: Callable
    parametrized: bool = False


def _binary_operad(relation_literals: Sequence[str], name: str) -> MonomialOperadPresentation:
    alphabet = Alphabet.of(a=2)
    rels = [parse_monomial(lit, alphabet) for lit in relation_literals]
    return MonomialOperadPresentation(alphabet, rels, name=name)


_SHUFFLE = "a(a(*,*),a(*,*))"       # (a o_2 a) o_1 a
_CHAIN11 = "a(a(a(*,*),*),*)"       # a o_1 a o_1 a
_CHAIN21 = "a(*,a(a(*,*),*))"       # a o_2 a o_1 a
_CHAIN22 = "a(*,a(*,a(*,*)))"       # a o_2 a o_2 a


def _free_operad(arity: int) -> MonomialOperadPresentation:
    if arity < 1:
        raise UsageError("free-operad arity must be >= 1")
    return MonomialOperadPresentation(Alphabet.of(a=arity), (), name=f"free-operad:{arity}")


def _parse_param(name: str, text: str, kind: str):
    try:
        if kind == "int":
            return int(text)
        return alg.as_fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"preset {name!r}: cannot parse parameter {text!r}") from None


def _catalog() -> dict[str, Preset]:
    entries = [
        Preset("ex53-1", "presentation",
               "single binary generator, shuffle relation only; dims 2^(n-2)",
               lambda: _binary_operad([_SHUFFLE], "ex53-1")),
        Preset("ex53-2", "presentation",
               "fibonacci operad: shuffle relation plus the 1,1-chain",
               lambda: _binary_operad([_SHUFFLE, _CHAIN11], "ex53-2")),
        Preset("fibonacci", "presentation",
               "alias of ex53-2",
               lambda: _binary_operad([_SHUFFLE, _CHAIN11], "fibonacci")),
        Preset("ex53-3", "presentation",
               "single binary generator; dims eventually constant 2",
               lambda: _binary_operad([_SHUFFLE, _CHAIN21, _CHAIN22], "ex53-3")),
        Preset("ex62", "dims",
               "gapped slow-growth algebra dims 1,2,3+delta (degree-indexed)",
               lambda n: alg.example62_dims(max(2, n))),
        Preset("example62", "dims",
               "alias of ex62",
               lambda n: alg.example62_dims(max(2, n))),
        Preset("ex64-partition", "dims",
               "partition numbers p(n) (degree-indexed)",
               alg.partition_dims),
        Preset("partition", "dims",
               "alias of ex64-partition",
               alg.partition_dims),
        Preset("ex46-avoidance", "dims",
               "single-branched words with at most one index-2 letter; exactly h words at height h",
               lambda n: closed_set_counts(example_at_most_one_index2(), n)),
    ]
    out = {p.name: p for p in entries}
    out["ex34"] = Preset("ex34:<alpha>", "dims",
                         "operad dims with partial sums floor(n^alpha) (arity-indexed)",
                         lambda n, a: alg.floor_power_dims(a, n), True)
    out["floorpow"] = Preset("floorpow:<alpha>", "dims",
                             "alias of ex34:<alpha>",
                             lambda n, a: alg.floor_power_dims(a, n), True)
    out["ex35"] = Preset("ex35:<r>", "dims",
                         "staircase algebra dims with growth exponent r in (2,3) (degree-indexed)",
                         lambda n, r: alg.warfield_dims(r, n), True)
    out["warfield"] = Preset("warfield:<r>", "dims",
                             "alias of ex35:<r>",
                             lambda n, r: alg.warfield_dims(r, n), True)
    out["polyring"] = Preset("polyring:<d>", "dims",
                             "polynomial ring dims C(n+d-1, d-1) (degree-indexed)",
                             lambda n, d: alg.polynomial_ring_dims(d, n), True)
    out["free"] = Preset("free:<d>", "dims",
                         "free algebra dims d^n (degree-indexed)",
                         lambda n, d: alg.free_algebra_dims(d, n), True)
    out["free-operad"] = Preset("free-operad:<arity>", "presentation",
                                "free operad on one generator of the given arity",
                                _free_operad, True)
    return out


CATALOG = _catalog()


def resolve_preset(spec: str):
    """Split ``name`` or ``name:param`` and return (Preset, param or None)."""
    base, _, param = spec.partition(":")
    preset = CATALOG.get(base)
    if preset is None:
        raise UsageError(f"unknown preset {spec!r}; run 'oplab preset-list'")
    if preset.parametrized:
        if not param:
            raise UsageError(f"preset {base!r} needs a parameter, e.g. {preset.name!r}")
        kind = "int" if preset.name.endswith(("<d>", "<arity>")) else "fraction"
        return preset, _parse_param(base, param, kind)
    if param:
        raise UsageError(f"preset {base!r} takes no parameter")
    return preset, None


def preset_dims(spec: str, n: int, engine: str = "dp") -> tuple[DimSeries, str]:
    """Dimension sequence of a preset up to index n, with a source label."""
    preset, param = resolve_preset(spec)
    if preset.kind == "presentation":
        p = preset.build(param) if preset.parametrized else preset.build()
        return mono.dim_by_arity(p, n, engine=engine), spec
    dims = preset.build(n, param) if preset.parametrized else preset.build(n)
    return dims, spec


def preset_presentation(spec: str) -> MonomialOperadPresentation:
    preset, param = resolve_preset(spec)
    if preset.kind != "presentation":
        raise UsageError(f"preset {spec!r} is a dimension preset, not an operad presentation")
    return preset.build(param) if preset.parametrized else preset.build()


# ---------------------------------------------------------------------------
# IO helpers
# ---------------------------------------------------------------------------

def _read_text(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _load_presentation_file(path: str) -> MonomialOperadPresentation:
    try:
        return mono.parse_presentation(_read_text(path), name=Path(path).stem)
    except PresentationSyntaxError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_csv_coeffs(text: str) -> list[Fraction]:
    coeffs: dict[int, Fraction] = {}
    for row in csv.reader(io.StringIO(text)):
        if not row:
            continue
        try:
            n = int(row[0])
            value = Fraction(row[1])
        except (ValueError, IndexError, ZeroDivisionError):
            continue  # header or comment row
        coeffs[n] = value
    if not coeffs:
        raise UsageError("no numeric rows found in CSV input")
    top = max(coeffs)
    return [coeffs.get(i, Fraction(0)) for i in range(top + 1)]


def _source_of(args) -> Optional[str]:
    if getattr(args, "source", None) and getattr(args, "preset", None):
        raise UsageError("pass either --source or --preset, not both")
    return getattr(args, "source", None) or getattr(args, "preset", None)


def _resolve_series_source(source: Optional[str], n: Optional[int],
                           engine: str) -> tuple[list[Fraction], str, dict]:
    """A coefficient list from a preset, a presentation/algebra file, or CSV."""
    meta: dict = {}
    if source is None or source == "-":
        text = sys.stdin.read()
        return _load_csv_coeffs(text), "stdin", meta
    path = Path(source)
    if path.exists():
        text = _read_text(source)
        head = next((ln.split("#", 1)[0].strip() for ln in text.splitlines()
                     if ln.split("#", 1)[0].strip()), "")
        if source.endswith(".csv") or (head and head[0].isdigit()) or "," in head:
            return _load_csv_coeffs(text), source, meta
        if head.startswith("var"):
            try:
                a = alg.parse_algebra(text, name=path.stem)
            except alg.AlgebraSyntaxError as exc:
                raise UsageError(f"{source}: {exc}") from None
            if n is None:
                raise UsageError("a max index is required for file sources")
            dims = alg.hilbert_dims(a, n)
            meta["index_kind"] = dims.index_kind
            return [Fraction(v) for v in dims.values], source, meta
        p = _load_presentation_file(source)
        if n is None:
            raise UsageError("a max index is required for file sources")
        dims = mono.dim_by_arity(p, n, engine=engine)
        meta["index_kind"] = dims.index_kind
        meta["exact"] = dims.exact
        meta["sha256"] = _presentation_hash(p)
        return [Fraction(v) for v in dims.values], source, meta
    if n is None:
        raise UsageError("a max index is required for preset sources")
    dims, label = preset_dims(source, n, engine=engine)
    meta["index_kind"] = dims.index_kind
    meta["exact"] = dims.exact
    return [Fraction(v) for v in dims.values], label, meta


def _presentation_hash(p: MonomialOperadPresentation) -> str:
    return hashlib.sha256(mono.format_presentation(p).encode()).hexdigest()


def _fmt_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _log_col(n: int, s: Fraction) -> str:
    if n < 2 or s <= 0:
        return ""
    s = Fraction(s)
    value = (ser.log_of_int(s.numerator) - ser.log_of_int(s.denominator)) / math.log(n)
    return f"{value:.6f}"


def _emit_table(out, values: Sequence[Fraction], index_label: str, value_label: str) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([index_label, value_label, "partial_sum", f"log_n_{'partial_sum'}"])
    acc = Fraction(0)
    for n, v in enumerate(values):
        acc += Fraction(v)
        writer.writerow([n, _fmt_fraction(v), _fmt_fraction(acc), _log_col(n, acc)])


def _emit_gnuplot(out, values: Sequence[Fraction], label: str) -> None:
    out.write(f"# {label}\n$data << EOD\n")
    acc = Fraction(0)
    for n, v in enumerate(values):
        acc += Fraction(v)
        out.write(f"{n} {_fmt_fraction(v)} {_fmt_fraction(acc)}\n")
    out.write("EOD\n")


def _json_report(command: str, label: str, values: Sequence[Fraction], meta: dict) -> str:
    payload = {
        "command": command,
        "source": label,
        "truncation": len(values) - 1,
        "values": [_fmt_fraction(v) for v in values],
    }
    payload.update(meta)
    return json.dumps(payload, sort_keys=True)


def _parallel_map(fn, items):
    threads_raw = os.environ.get("OPLAB_THREADS", "").strip()
    threads = int(threads_raw) if threads_raw.isdigit() else 1
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _get_presentation(args) -> MonomialOperadPresentation:
    if getattr(args, "presentation", None):
        p = _load_presentation_file(args.presentation)
    elif getattr(args, "preset", None):
        p = preset_presentation(args.preset)
    else:
        raise UsageError("pass --presentation <file> or --preset <name>")
    if getattr(args, "order", None) or getattr(args, "rank", None):
        kind = args.order or "deglex"
        rank = args.rank.split(",") if args.rank else None
        try:
            TreeOrder.for_alphabet(p.alphabet, kind, rank)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return p


def cmd_dims(args, out) -> int:
    p = _get_presentation(args)
    dims = mono.dim_by_arity(p, args.max_arity, engine=args.engine,
                             weight_cap=args.weight_cap)
    meta = {"engine": args.engine, "exact": dims.exact, "index_kind": dims.index_kind,
            "sha256": _presentation_hash(p)}
    label = args.presentation or args.preset
    if args.emit == "json":
        out.write(_json_report("dims", label, dims.values, meta) + "\n")
    elif args.emit == "gnuplot":
        _emit_gnuplot(out, dims.values, f"dims {label}")
    else:
        _emit_table(out, dims.values, "index", "dim")
    return 0


def cmd_series(args, out) -> int:
    coeffs, label, meta = _resolve_series_source(_source_of(args), args.max, args.engine)
    if args.emit == "json":
        out.write(_json_report("series", label, coeffs, meta) + "\n")
    elif args.emit == "gnuplot":
        _emit_gnuplot(out, coeffs, f"series {label}")
    else:
        _emit_table(out, coeffs, "n", "coeff")
    return 0


def cmd_gk(args, out) -> int:
    coeffs, label, _meta = _resolve_series_source(_source_of(args), args.N, args.engine)
    if any(c.denominator != 1 for c in coeffs):
        raise UsageError("growth estimation needs integer dimension data")
    report = ser.gk_estimate([int(c) for c in coeffs])
    if args.emit == "json":
        payload = {
            "command": "gk", "source": label, "n_max": report.n_max,
            "pointwise": round(report.pointwise, 6),
            "slope": round(report.slope, 6),
            "pointwise_max": round(report.pointwise_max, 6),
            "exp_flag": report.exp_flag,
            "window": list(report.window),
            "note": "floating estimates of limsup log_n(partial sums)",
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(f"# growth estimate for {label} (floating estimates)\n")
        out.write(f"pointwise,{report.pointwise:.6f}\n")
        out.write(f"slope,{report.slope:.6f}\n")
        out.write(f"pointwise_max,{report.pointwise_max:.6f}\n")
        out.write(f"exp_flag,{str(report.exp_flag).lower()}\n")
        out.write(f"window,{report.window[0]}..{report.window[1]}\n")
    return 0


def cmd_fit(args, out) -> int:
    coeffs, label, _meta = _resolve_series_source(_source_of(args), args.max, args.engine)
    window = ser.SeriesWindow(tuple(coeffs))
    fit = ser.fit_rational(window, args.max_den, args.max_num)
    if fit is None:
        out.write(f"no rational fit at bounds (den<={args.max_den}, num<={args.max_num}, "
                  f"N={window.truncation}) for {label}\n")
        return 0
    num = "[" + ", ".join(_fmt_fraction(c) for c in fit.numerator) + "]"
    den = "[" + ", ".join(_fmt_fraction(c) for c in fit.denominator) + "]"
    out.write(f"rational fit for {label}: numerator={num} denominator={den} "
              f"(holdout verified)\n")
    return 0


def cmd_guess(args, out) -> int:
    coeffs, label, _meta = _resolve_series_source(_source_of(args), args.max, args.engine)
    window = ser.SeriesWindow(tuple(coeffs))
    cand = ser.guess_holonomic(window, args.max_order, args.max_degree)
    if cand is None:
        out.write(f"no recurrence found at bounds (R={args.max_order}, D={args.max_degree}, "
                  f"N={window.truncation}) for {label}\n")
        return 0
    polys = " ".join(
        f"p{i}={list(poly)}" for i, poly in enumerate(cand.polynomials))
    out.write(f"recurrence for {label}: order={cand.order} degree={cand.degree} {polys} "
              f"window={cand.fit_window[0]}..{cand.fit_window[1]} (holdout verified)\n")
    return 0


def cmd_gapcheck(args, out) -> int:
    p = _get_presentation(args)
    report = mono.gap_dichotomy_check(p, args.max_weight)
    label = args.presentation or args.preset
    if args.emit == "json":
        payload = {
            "command": "gapcheck", "source": label, "horizon": args.max_weight,
            "criterion_d": report.criterion_d, "growth_class": report.growth_class,
            "weight_counts": list(report.weight_counts.values),
            "partial_sums": list(report.partial_sums.values),
            "affine_fit": None if report.affine_fit is None else
                [_fmt_fraction(report.affine_fit[0]), _fmt_fraction(report.affine_fit[1])],
            "first_violation": report.first_violation,
            "sha256": _presentation_hash(p),
        }
        out.write(json.dumps(payload, sort_keys=True) + "\n")
        return 0
    out.write(f"# criterion_d={report.criterion_d if report.criterion_d is not None else 'none'}\n")
    out.write(f"# growth_class={report.growth_class}\n")
    if report.affine_fit is not None:
        a, b = report.affine_fit
        out.write(f"# affine_fit=a:{_fmt_fraction(a)},b:{_fmt_fraction(b)}\n")
        out.write(f"# first_violation="
                  f"{report.first_violation if report.first_violation is not None else 'none'}\n")
    _emit_table(out, report.weight_counts.values, "index", "dim")
    return 0


def cmd_operadize(args, out) -> int:
    try:
        a = alg.parse_algebra(_read_text(args.algebra), name=Path(args.algebra).stem)
    except alg.AlgebraSyntaxError as exc:
        raise UsageError(f"{args.algebra}: {exc}") from None
    p = operadize(a)
    text = mono.format_presentation(p)
    if args.emit == "-":
        out.write(text)
    else:
        Path(args.emit).write_text(text)
        out.write(f"wrote {args.emit} ({len(p.relations)} relations, "
                  f"sha256={_presentation_hash(p)})\n")
    return 0


def cmd_envelope(args, out) -> int:
    dims, label = preset_dims(args.preset, args.max_index)
    if args.kind == "min":
        profile = min_envelope_dims(dims, source=label)
    else:
        profile = symmetric_envelope_dims(dims, source=label)
    values = profile.dims.values[:args.max_index + 1]
    meta = {"kind": profile.kind, "index_kind": "arity", "exact": profile.dims.exact}
    if args.emit == "json":
        out.write(_json_report("envelope", label, values, meta) + "\n")
    elif args.emit == "gnuplot":
        _emit_gnuplot(out, values, f"envelope {args.kind} {label}")
    else:
        _emit_table(out, values, "index", "dim")
    return 0


def sweep_family(relation_weight: int) -> list[MonomialOperadPresentation]:
    """Every presentation on one binary generator with a subset of the
    weight-<=relation_weight monomials as relations (the pool is enumerated,
    not hard-coded)."""
    if relation_weight not in (2, 3):
        raise UsageError("sweep supports relation weights 2 and 3")
    free = _free_operad(2)
    pool = [t for t in mono.enumerate_irr(free, relation_weight)
            if 2 <= t.weight <= relation_weight]
    out = []
    for size in range(len(pool) + 1):
        for subset in combinations(range(len(pool)), size):
            rels = [pool[i] for i in subset]
            key = ";".join(format_monomial(r) for r in rels) or "(none)"
            out.append((key, MonomialOperadPresentation(free.alphabet, rels, name=key)))
    out.sort(key=lambda kp: kp[0])
    return out


def _sweep_row(item, horizon: int) -> dict:
    key, p = item
    report = mono.gap_dichotomy_check(p, horizon)
    arity_dims = mono.dim_by_arity(p, horizon + 1, engine="dp")
    est = ser.gk_estimate(arity_dims)
    return {
        "relations": key,
        "criterion_d": report.criterion_d,
        "growth_class": report.growth_class,
        "tail_exponent": est.slope,
    }


def cmd_sweep(args, out) -> int:
    if args.horizon > 40:
        raise UsageError("sweep horizon is capped at 40 weights")
    if args.horizon < 8:
        raise UsageError("sweep horizon must be at least 8")
    family = sweep_family(args.relation_weight)
    rows = _parallel_map(lambda item: _sweep_row(item, args.horizon), family)
    rows.sort(key=lambda r: r["relations"])
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["relations", "criterion_d", "growth_class", "tail_exponent"])
    gap_violations = []
    for row in rows:
        exponent = row["tail_exponent"]
        if 1.1 < exponent < 1.9:
            gap_violations.append(row["relations"])
        writer.writerow([
            row["relations"],
            row["criterion_d"] if row["criterion_d"] is not None else "none",
            row["growth_class"],
            f"{exponent:.6f}",
        ])
    if gap_violations:
        out.write(f"# dichotomy VIOLATED: tail exponent in (1.1, 1.9) for "
                  f"{len(gap_violations)} presentations\n")
    else:
        out.write(f"# dichotomy holds: no tail exponent in (1.1, 1.9) across "
                  f"{len(rows)} presentations\n")
    return 0


def cmd_preset_list(args, out) -> int:
    for name in sorted(CATALOG):
        preset = CATALOG[name]
        out.write(f"{preset.name}\t{preset.kind}\t{preset.description}\n")
    return 0


# ---------------------------------------------------------------------------
# parser and entry point
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="oplab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_emit(p, choices=("csv", "json", "gnuplot")):
        p.add_argument("--emit", choices=choices, default="csv")

    p = sub.add_parser("dims", help="normal-form counts by arity")
    p.add_argument("--presentation")
    p.add_argument("--preset")
    p.add_argument("--max-arity", type=int, required=True)
    p.add_argument("--engine", choices=mono.ENGINES, default="dp")
    p.add_argument("--weight-cap", type=int, default=None,
                   help="required when the alphabet has unary generators")
    p.add_argument("--order", choices=["deglex", "degrevlex"], default=None,
                   help="term order for normal-form streaming; counts are order-independent")
    p.add_argument("--rank", default=None, help="comma-separated generator rank")
    add_emit(p)
    p.set_defaults(fn=cmd_dims)

    def add_source(p):
        p.add_argument("--source", default=None,
                       help="preset, presentation/algebra file, or CSV (default stdin)")
        p.add_argument("--preset", default=None, help="alias for --source <preset>")
        p.add_argument("--engine", choices=mono.ENGINES, default="dp")

    p = sub.add_parser("series", help="coefficient series from a preset, file, or CSV")
    add_source(p)
    p.add_argument("--max", type=int, default=None)
    add_emit(p)
    p.set_defaults(fn=cmd_series)

    p = sub.add_parser("gk", help="growth-exponent estimate (floating, labelled)")
    add_source(p)
    p.add_argument("--N", type=int, default=None)
    add_emit(p, ("csv", "json"))
    p.set_defaults(fn=cmd_gk)

    p = sub.add_parser("fit", help="exact rational-function fit with holdout")
    add_source(p)
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--max-den", type=int, default=None)
    p.add_argument("--max-num", type=int, default=None)
    p.set_defaults(fn=cmd_fit)

    p = sub.add_parser("guess", help="polynomial-coefficient recurrence guess with holdout")
    add_source(p)
    p.add_argument("--max", type=int, default=None)
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--max-degree", type=int, required=True)
    p.set_defaults(fn=cmd_guess)

    p = sub.add_parser("gapcheck", help="linear-growth dichotomy check on weight counts")
    p.add_argument("--presentation")
    p.add_argument("--preset")
    p.add_argument("--max-weight", type=int, required=True)
    p.add_argument("--order", choices=["deglex", "degrevlex"], default=None)
    p.add_argument("--rank", default=None)
    add_emit(p, ("csv", "json"))
    p.set_defaults(fn=cmd_gapcheck)

    p = sub.add_parser("sweep", help="exhaustive single-binary-generator relation sweep")
    p.add_argument("--relation-weight", type=int, choices=(2, 3), default=3)
    p.add_argument("--horizon", type=int, default=40)
    p.set_defaults(fn=cmd_sweep)

    p = sub.add_parser("operadize", help="encode a monomial algebra as an operad presentation")
    p.add_argument("--algebra", required=True)
    p.add_argument("--emit", required=True, help="output presentation file ('-' for stdout)")
    p.set_defaults(fn=cmd_operadize)

    p = sub.add_parser("envelope", help="min or symmetric envelope dims of a preset")
    p.add_argument("--kind", choices=("min", "sym"), required=True)
    p.add_argument("--preset", required=True)
    p.add_argument("--max-index", type=int, required=True)
    add_emit(p)
    p.set_defaults(fn=cmd_envelope)

    p = sub.add_parser("preset-list", help="list presets")
    p.set_defaults(fn=cmd_preset_list)

    return parser


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.fn(args, out)
    except UsageError as exc:
        print(f"oplab: usage error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"oplab: computation error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
