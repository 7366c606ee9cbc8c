"""Command-line front end.

Every subcommand reads small JSON or inline descriptions, runs the exact
machinery, and prints a deterministic JSON payload (or ``--text`` for a
human-oriented rendering).  Exit codes: 0 success, 2 bad input, and 3 when
``--strict`` was asked for and some result could not be certified.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from fractions import Fraction
from pathlib import Path

from .foxcalc import RingElem, RingMatrix, jacobian
from .freegroup import Endomorphism
from .groupring import norm_interval, reidemeister_trace
from .growth import full_report, growth_estimate
from .mappingclass import (
    ClassSpec,
    assemble_dim,
    asymptotic_invariant,
    graph_manifold_test,
    periodic_zeta_for_class,
)
from .ratfunc import CANCEL_TOL, RationalFunction
from .reptheory import (
    Representation,
    abelian_quotient_rep,
    trivial_representation,
    twisted_lefschetz,
    twisted_zeta,
    validate_rep,
)
from .torus import fixed_point_count, lefschetz_number
from .zetafns import (
    is_hyperbolic,
    periodic_zeta,
    radius_estimate,
    symplectic_zeta_series,
    torus_symplectic_zeta,
    weil_zeta_torus,
)

MAX_ITERATES = 64
MAX_ORDER = 128
MAX_DEPTH = 16

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_UNCERTIFIED = 3


class CLIError(ValueError):
    """Bad input; reported on stderr and mapped to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep run() returning ints instead of exiting
        raise CLIError(message)


# -- input loading -------------------------------------------------------------

def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CLIError(f"no such file: {path}")
    except json.JSONDecodeError as e:
        raise CLIError(f"{path}: invalid JSON ({e})")


def _ring_matrix(rows) -> RingMatrix:
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise CLIError("extra matrices must be rectangular and nonempty")
    return RingMatrix(
        tuple(tuple(RingElem.parse(cell) for cell in row) for row in rows)
    )


def _load_endo(args) -> tuple[Endomorphism, tuple[RingMatrix, ...]]:
    if getattr(args, "map", None):
        data = _load_json(args.map)
        f = Endomorphism.from_json(data)
        extras = tuple(_ring_matrix(m) for m in data.get("extra_matrices", []))
        return f, extras
    if getattr(args, "images", None):
        parts = [p.strip() for p in re.split(r"[,;]", args.images) if p.strip()]
        return Endomorphism.from_images_text(parts), ()
    raise CLIError("provide --map FILE or --images 'a b, a'")


def _load_rep(args, f: Endomorphism) -> Representation:
    if getattr(args, "rep", None):
        rep = Representation.from_json(_load_json(args.rep))
    elif getattr(args, "modulus", None):
        rep = abelian_quotient_rep(f, args.modulus)
    else:
        return trivial_representation(f.rank)
    ok, residual = validate_rep(rep, f)
    if not ok:
        raise CLIError(
            f"representation does not intertwine the map (max residual {residual:.3g})"
        )
    return rep


def _parse_int_list(text: str, what: str) -> list[int]:
    try:
        return [int(p) for p in re.split(r"[,\s]+", text.strip()) if p]
    except ValueError:
        raise CLIError(f"{what}: expected comma-separated integers, got {text!r}")


def _parse_matrix_2x2(text: str):
    vals = _parse_int_list(text, "--matrix")
    if len(vals) != 4:
        raise CLIError("--matrix needs four integers a,b,c,d (row major)")
    return ((vals[0], vals[1]), (vals[2], vals[3]))


def _parse_dims_map(text: str) -> dict[int, int]:
    out = {}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        if ":" not in piece:
            raise CLIError(f"--dims entries look like 'd:value', got {piece!r}")
        d, v = piece.split(":", 1)
        out[int(d)] = int(v)
    if not out:
        raise CLIError("--dims is empty")
    return out


def _threads() -> int | None:
    raw = os.environ.get("FLOERGROWTH_THREADS", "").strip()
    if not raw:
        return None
    try:
        k = int(raw)
    except ValueError:
        raise CLIError(f"FLOERGROWTH_THREADS must be an integer, got {raw!r}")
    return k if k > 1 else None


# -- output rendering ----------------------------------------------------------

def _coeff_json(c):
    if isinstance(c, (int, Fraction)) and not isinstance(c, bool):
        return str(c)
    c = complex(c)
    return [c.real, c.imag]


def _rational_json(r: RationalFunction) -> dict:
    m = r.min_root_modulus()
    return {
        "numerator": [_coeff_json(c) for c in r.numerator],
        "denominator": [_coeff_json(c) for c in r.denominator],
        "exact": r.exact,
        "min_root_modulus": m if m != float("inf") else None,
        "cancelled_pairs": len(r.cancelled),
        "text": r.to_text(),
    }


def _emit(payload: dict, args) -> None:
    if getattr(args, "text", False):
        for line in _text_lines(payload):
            print(line)
    else:
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))


def _text_lines(payload, prefix=""):
    """Flat key: value rendering, stable order, lists inlined where short."""
    if isinstance(payload, dict):
        for key in sorted(payload):
            val = payload[key]
            if isinstance(val, dict):
                yield f"{prefix}{key}:"
                yield from _text_lines(val, prefix + "  ")
            elif isinstance(val, list) and val and isinstance(val[0], dict):
                for i, item in enumerate(val):
                    yield f"{prefix}{key}[{i}]:"
                    yield from _text_lines(item, prefix + "  ")
            else:
                yield f"{prefix}{key}: {val}"
    else:
        yield f"{prefix}{payload}"


# -- subcommand handlers -------------------------------------------------------

def _cmd_fox(args) -> tuple[dict, int]:
    f, extras = _load_endo(args)
    jac = jacobian(f)
    payload = {
        "rank": f.rank,
        "images": [w.to_text() for w in f.images],
        "jacobian": [[e.to_text() for e in row] for row in jac.entries],
        "abelianization": [list(row) for row in f.abelianize()],
        "extra_matrices": len(extras),
    }
    return payload, EXIT_OK


def _cmd_trace(args) -> tuple[dict, int]:
    f, extras = _load_endo(args)
    threads = _threads()
    rows = []
    all_certified = True
    for n in range(1, args.n + 1):
        h = reidemeister_trace(f, n, extras)
        row = {"n": n, "trace": h.body.to_text()}
        if not args.no_interval:
            iv = norm_interval(
                h, f, search_depth=args.depth, threads=threads
            )
            row.update(
                norm_lower=iv.lower,
                norm_upper=iv.upper,
                certification="certified-interval" if iv.certified else "uncertified-interval",
            )
            all_certified = all_certified and iv.certified
        rows.append(row)
    payload = {"rows": rows, "arithmetic": "exact"}
    code = EXIT_OK
    if args.strict and not args.no_interval and not all_certified:
        payload["strict_failure"] = "some interval is not certified"
        code = EXIT_UNCERTIFIED
    return payload, code


def _cmd_zeta_twisted(args) -> tuple[dict, int]:
    f, extras = _load_endo(args)
    rep = _load_rep(args, f)
    zeta = twisted_zeta(f, rep, extras)
    certification = "exact" if rep.is_exact() else f"float({CANCEL_TOL:g})"
    payload = {
        "zeta": _rational_json(zeta),
        "representation": {"dim": rep.dim, "kind": rep.kind},
        "certification": certification,
    }
    if args.order:
        series = zeta.series(args.order)
        payload["series"] = [_coeff_json(c) for c in series]
        payload["lefschetz_check"] = [
            _coeff_json(twisted_lefschetz(f, rep, n, extras))
            for n in range(1, min(args.order, 8) + 1)
        ]
    code = EXIT_OK
    if args.strict and not rep.is_exact():
        payload["strict_failure"] = "representation is numerical, zeta is not exact"
        code = EXIT_UNCERTIFIED
    return payload, code


def _cmd_bounds(args) -> tuple[dict, int]:
    f, extras = _load_endo(args)
    rep = _load_rep(args, f) if (args.rep or args.modulus) else None
    report = full_report(
        f,
        rep=rep,
        extra_matrices=extras,
        n_iterates=args.n,
        search_depth=args.depth,
    )
    payload = report.to_json()
    payload["certification"] = {
        "lower_bound": "exact" if (rep is None or rep.is_exact()) else f"float({CANCEL_TOL:g})",
        "upper_bound_norm": "exact",
        "upper_bound_spectral": "float(1e-10 cross-check)",
        "sequence_estimate": "certified-interval uppers",
    }
    return payload, EXIT_OK


def _cmd_growth(args) -> tuple[dict, int]:
    try:
        seq = [float(p) for p in re.split(r"[,\s]+", args.seq.strip()) if p]
    except ValueError:
        raise CLIError(f"--seq: expected numbers, got {args.seq!r}")
    est = growth_estimate(seq)
    payload = {
        "estimate": est.value,
        "window_start": est.window_start,
        "n_terms": est.n_terms,
    }
    return payload, EXIT_OK


def _cmd_periodic_zeta(args) -> tuple[dict, int]:
    if args.class_file:
        spec = ClassSpec.from_json(_load_json(args.class_file))
        rr = periodic_zeta_for_class(spec, args.period)
    elif args.dims:
        rr = periodic_zeta(args.period, _parse_dims_map(args.dims))
    else:
        raise CLIError("provide --dims 'd:value,...' or --class FILE")
    payload = rr.to_json()
    payload["text"] = rr.to_text()
    if args.order:
        payload["expansion"] = [str(c) for c in rr.expand(args.order).coeffs]
    payload["certification"] = "exact"
    return payload, EXIT_OK


def _cmd_torus(args) -> tuple[dict, int]:
    a = _parse_matrix_2x2(args.matrix)
    hyperbolic = is_hyperbolic(a)
    rows = []
    for n in range(1, args.n + 1):
        row = {"n": n, "L": lefschetz_number(a, n)}
        if hyperbolic:
            row["N"] = fixed_point_count(a, n)
        rows.append(row)
    payload = {
        "matrix": [list(r) for r in a],
        "hyperbolic": hyperbolic,
        "rows": rows,
        "weil_zeta": weil_zeta_torus(a).to_text(),
        "certification": "exact",
    }
    if hyperbolic:
        payload["symplectic_zeta"] = torus_symplectic_zeta(a).to_text()
    else:
        payload["note"] = "map is not hyperbolic; fixed-point counts omitted"
    return payload, EXIT_OK


def _cmd_assemble(args) -> tuple[dict, int]:
    spec = ClassSpec.from_json(_load_json(args.class_file))
    payload: dict = {"components": len(spec.components)}
    limit = spec.max_iterate()
    horizon = args.n if args.n else min(6, limit or 6)
    if limit is not None and horizon > limit:
        raise CLIError(f"class data stops at iterate {limit}; asked for {horizon}")
    payload["dims"] = [
        {"n": n, "dim": assemble_dim(spec, n)} for n in range(1, horizon + 1)
    ]
    if args.report:
        payload["report"] = asymptotic_invariant(spec, n_max=max(horizon, 3)).to_json()
    if args.graph_test:
        payload["graph_test"] = graph_manifold_test(spec).to_json()
    return payload, EXIT_OK


def _cmd_series(args) -> tuple[dict, int]:
    dims = _parse_int_list(args.dims, "--dims")
    order = args.order if args.order else len(dims)
    if order > len(dims):
        raise CLIError(f"--order {order} needs {order} dims, got {len(dims)}")
    series = symplectic_zeta_series(dims, order)
    payload = {
        "order": order,
        "coefficients": [str(c) for c in series.coeffs],
        "certification": "exact",
    }
    if len(dims) >= 3:
        payload["radius_estimate"] = radius_estimate(dims)
    return payload, EXIT_OK


_DISPATCH = {
    "fox": _cmd_fox,
    "trace": _cmd_trace,
    "zeta-twisted": _cmd_zeta_twisted,
    "bounds": _cmd_bounds,
    "growth": _cmd_growth,
    "periodic-zeta": _cmd_periodic_zeta,
    "torus": _cmd_torus,
    "assemble": _cmd_assemble,
    "series": _cmd_series,
}


# -- parser --------------------------------------------------------------------

def _add_map_options(p):
    p.add_argument(
        "--endo",
        "--map",
        dest="map",
        help="JSON file: {rank, images, extra_matrices?}",
    )
    p.add_argument("--images", help="inline images, e.g. 'a b, a'")


def _add_rep_options(p):
    p.add_argument("--rep", help="JSON file describing a representation")
    p.add_argument(
        "--modulus",
        type=int,
        help="use the translation action on the mod-m homology points",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="floergrowth", description=__doc__)
    parser.add_argument("--text", action="store_true", help="human-readable output")
    parser.add_argument(
        "--verbose", action="store_true", help="print timing to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fox", help="jacobian and abelianization of a map")
    _add_map_options(p)

    p = sub.add_parser("trace", help="iterate traces with certified norm intervals")
    _add_map_options(p)
    p.add_argument("--n", type=int, default=4, help="compute iterates 1..N")
    p.add_argument("--depth", type=int, default=8, help="conjugator search depth")
    p.add_argument("--no-interval", action="store_true", help="traces only")
    p.add_argument("--strict", action="store_true", help="exit 3 unless certified")

    p = sub.add_parser("zeta-twisted", help="twisted zeta of a map and representation")
    _add_map_options(p)
    _add_rep_options(p)
    p.add_argument("--order", type=int, default=0, help="also print the series")
    p.add_argument("--strict", action="store_true", help="exit 3 unless exact")

    p = sub.add_parser("bounds", help="growth bound sandwich for a map")
    _add_map_options(p)
    _add_rep_options(p)
    p.add_argument("--n", type=int, default=6, help="iterates for the sequence proxy")
    p.add_argument("--depth", type=int, default=8, help="conjugator search depth")

    p = sub.add_parser("growth", help="tail-window growth proxy of a sequence")
    p.add_argument("--seq", required=True, help="comma-separated values")

    p = sub.add_parser("periodic-zeta", help="radical closed form for periodic maps")
    p.add_argument("--period", type=int, required=True)
    p.add_argument("--dims", help="dimensions at divisor iterates, 'd:value,...'")
    p.add_argument("--class", dest="class_file", help="class description JSON")
    p.add_argument("--order", type=int, default=0, help="also print the expansion")

    p = sub.add_parser("torus", help="closed-form counts and zetas on the torus")
    p.add_argument("--matrix", required=True, help="a,b,c,d row major")
    p.add_argument("--n", type=int, default=6, help="iterates 1..N")

    p = sub.add_parser("assemble", help="iterate dimensions of a reducible class")
    p.add_argument("--spec", "--class", dest="class_file", required=True)
    p.add_argument(
        "--iterates",
        "--n",
        dest="n",
        type=int,
        default=0,
        help="iterates 1..N (default from data)",
    )
    p.add_argument("--report", action="store_true", help="include the growth report")
    p.add_argument("--graph-test", action="store_true", help="include the graph test")

    p = sub.add_parser("series", help="exact zeta series from an iterate-dim sequence")
    p.add_argument("--dims", required=True, help="comma-separated dimensions")
    p.add_argument("--order", type=int, default=0)

    return parser


def _validate_limits(args) -> None:
    n = getattr(args, "n", 0) or 0
    if n < 0 or n > MAX_ITERATES:
        raise CLIError(f"--n must be between 1 and {MAX_ITERATES}")
    order = getattr(args, "order", 0) or 0
    if order < 0 or order > MAX_ORDER:
        raise CLIError(f"--order must be between 0 and {MAX_ORDER}")
    depth = getattr(args, "depth", 0) or 0
    if depth < 0 or depth > MAX_DEPTH:
        raise CLIError(f"--depth must be between 0 and {MAX_DEPTH}")
    period = getattr(args, "period", None)
    if period is not None and not (1 <= period <= MAX_ORDER):
        raise CLIError(f"--period must be between 1 and {MAX_ORDER}")


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        _validate_limits(args)
        start = time.perf_counter()
        payload, code = _DISPATCH[args.command](args)
        if args.verbose:
            print(f"[{args.command}] {time.perf_counter() - start:.3f}s", file=sys.stderr)
    except CLIError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (ValueError, KeyError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    _emit(payload, args)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
