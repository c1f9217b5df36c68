"""Command-line front end.

Subcommands: ``verify`` (property suites), ``plane`` (3-plane invariants and
canonical reduction), ``sphere`` (slant analysis of sphere sections),
``orbit`` (torus-orbit geometry), ``scan`` (parameter-lattice scan) and
``table`` (structure-constant export).

Exit status: 0 on success, 1 on verification failure, 2 on usage or input
errors.  Identical invocations (flags and seed) produce byte-identical
output; file-writing report paths additionally render figures next to the
delimited output unless ``--no-figures`` is given.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

import numpy as np

from . import calibration as ca
from . import octonion as oc
from . import orbits as orb
from . import report
from . import spheres as sp
from . import verify as vf

__all__ = ["main"]


class UsageError(Exception):
    pass


_BASIS_TERM = re.compile(r"([+-]?)\s*(?:(\d+(?:\.\d+)?)\s*\*\s*)?e([1-7])$")


def parse_vector(text: str) -> np.ndarray:
    """Parse ``'0,0,1,0,1,1,0'`` or basis combinations like ``'e1'``, ``'0.5*e3-2*e7'``."""
    text = text.strip()
    if "," in text:
        parts = text.split(",")
        if len(parts) != 7:
            raise UsageError(f"expected 7 comma-separated components, got {len(parts)}: {text!r}")
        try:
            return np.array([float(p) for p in parts])
        except ValueError as exc:
            raise UsageError(f"cannot parse vector {text!r}: {exc}") from None
    out = np.zeros(7)
    pos = 0
    cleaned = text.replace(" ", "")
    if not cleaned:
        raise UsageError("empty vector")
    for term in re.finditer(r"[+-]?[^+-]+", cleaned):
        m = _BASIS_TERM.match(term.group(0))
        if not m:
            raise UsageError(
                f"cannot parse term {term.group(0)!r} in {text!r}; use e.g. 'e1', '-e4', '0.5*e3-2*e7'"
            )
        sign = -1.0 if m.group(1) == "-" else 1.0
        coeff = float(m.group(2)) if m.group(2) else 1.0
        out[int(m.group(3)) - 1] += sign * coeff
        pos += 1
    return out


def _emit(payload: bytes | str, out: str | None) -> None:
    data = payload.encode() if isinstance(payload, str) else payload
    if out is None or out == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_bytes(data)


def _flat_items(obj, prefix=""):
    if isinstance(obj, dict):
        for k in sorted(obj):
            yield from _flat_items(obj[k], f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            yield from _flat_items(v, f"{prefix}{i}.")
    else:
        yield prefix.rstrip("."), obj


def _format_report(data: dict, fmt: str) -> bytes:
    if fmt == "json":
        return report.json_bytes(data)
    flat = [(k, v if isinstance(v, str) else report.format_number(v))
            for k, v in _flat_items(report.sanitize(data))]
    if fmt == "csv":
        return report.csv_rows(("key", "value"), flat).encode()
    return report.text_table(flat).encode()


# ------------------------------------------------------------------- verify


def _cmd_verify(args) -> int:
    overrides = {}
    for spec in args.tolerance or []:
        if "=" not in spec:
            raise UsageError(f"--tolerance expects NAME=VALUE, got {spec!r}")
        name, _, value = spec.partition("=")
        try:
            overrides[name.strip()] = float(value)
        except ValueError:
            raise UsageError(f"bad tolerance value in {spec!r}") from None
    only = tuple(s.strip() for s in args.only.split(",")) if args.only else None
    try:
        result = vf.run_verify(seed=args.seed, only=only, tolerances=overrides)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        payload = report.json_bytes(result)
    elif args.format == "csv":
        rows = []
        for suite in result["suites"]:
            for check in suite["checks"]:
                rows.append(
                    (
                        suite["name"],
                        check["name"],
                        report.format_number(check["passed"]),
                        report.format_number(check["residual"]),
                        report.format_number(check["tolerance"]),
                        report.format_number(check["n"]),
                    )
                )
        payload = report.csv_rows(
            ("suite", "check", "passed", "residual", "tolerance", "n"), rows
        ).encode()
    else:
        lines = []
        for suite in result["suites"]:
            lines.append([suite["name"], "PASS" if suite["passed"] else "FAIL",
                          f"max_residual={suite['max_residual']:.3e}"])
            for check in suite["checks"]:
                status = "pass" if check["passed"] else "FAIL"
                lines.append([f"  {check['name']}", status,
                              f"residual={check['residual']:.3e} tol={check['tolerance']:.1e}"])
        lines.append(["all", "PASS" if result["all_passed"] else "FAIL", f"seed={result['seed']}"])
        payload = report.text_table(lines).encode()
    _emit(payload, args.out)
    return 0 if result["all_passed"] else 1


# -------------------------------------------------------------------- plane


def _cmd_plane(args) -> int:
    vs = [parse_vector(v) for v in args.vectors]
    try:
        plane = ca.plane_from_spanning(*vs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    phi = ca.phi_of_plane(plane)
    if phi >= 1.0 - 1e-8:
        kind = "associative"
    elif phi < 1e-8:
        kind = "totally_real"
    else:
        kind = "proper"
    reduction = ca.reduce_to_canonical(plane)
    data = {
        "frame": plane.frame,
        "phi": phi,
        "signed_phi": ca.signed_phi(plane),
        "associator": ca.associator_of_plane(plane),
        "associator_norm": float(np.linalg.norm(ca.associator_of_plane(plane))),
        "gram": ca.gram_frame(plane),
        "classification": kind,
        "canonical_reduction": reduction.to_json_dict(),
    }
    _emit(_format_report(data, args.format), args.out)
    return 0


# ------------------------------------------------------------------- sphere


def _cmd_sphere(args) -> int:
    vs = [parse_vector(v) for v in args.plane]
    try:
        plane = ca.plane_from_spanning(*vs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r = args.radius
    if not 0.0 < r <= 1.0:
        raise UsageError(f"radius must lie in (0, 1], got {r}")
    phi = ca.phi_of_plane(plane)
    if r == 1.0:
        if args.center is not None and np.linalg.norm(parse_vector(args.center)) > 1e-10:
            raise UsageError("a great sphere (radius 1) has center 0")
        rep = sp.analyze_great_sphere(plane, args.samples)
        data = {"kind": "great_sphere", "phi": phi, "report": rep.to_json_dict()}
        _emit(_format_report(data, args.format), args.out)
        return 0
    if args.center is None:
        if phi >= 1.0 - 1e-8:
            data = {
                "kind": "small_sphere_centers",
                "phi": phi,
                "note": "associative direction plane: every center orthogonal to the "
                        "plane with |center|^2 = 1 - r^2 yields a slant sphere",
                "angle_rad": float(np.arccos(r)),
            }
        else:
            plus, minus = sp.slant_center(plane, r)
            data = {
                "kind": "small_sphere_centers",
                "phi": phi,
                "admissible_centers": [plus, minus],
                "angle_rad": float(np.arccos(r * phi)),
            }
        _emit(_format_report(data, args.format), args.out)
        return 0
    center = parse_vector(args.center)
    try:
        section = sp.SphereSection(plane=plane, radius=r, center=center)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rep = sp.analyze_small_sphere(section, args.samples)
    data = {"kind": "small_sphere", "phi": phi, "radius": r, "center": center,
            "report": rep.to_json_dict()}
    _emit(_format_report(data, args.format), args.out)
    return 0


# -------------------------------------------------------------------- orbit


def _cmd_orbit(args) -> int:
    if (args.point is None) == (args.family is None):
        raise UsageError("provide either a point or --family ANGLE")
    if args.family is not None:
        point = orb.minimal_family_point(args.family)
    else:
        point = parse_vector(args.point)
        n = np.linalg.norm(point)
        if n < 1e-12:
            raise UsageError("orbit point must be nonzero")
        point = point / n
    alpha, beta, gamma, regular = orb.regularity(point)
    if not regular:
        raise UsageError(
            f"point is not regular: (alpha, beta, gamma) = ({alpha:.3e}, {beta:.3e}, {gamma:.3e})"
        )
    geo = orb.orbit_geometry(point)
    data = {
        "point": point,
        "regularity": {"alpha": alpha, "beta": beta, "gamma": gamma, "regular": regular},
        "geometry": geo.to_json_dict(),
    }
    if args.mesh:
        if args.out is None:
            raise UsageError("--mesh requires --out (mesh CSV is written next to the report)")
        n = args.mesh
        angles = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        rows = []
        mesh_pts = np.empty((n * n, 7))
        k = 0
        for t in angles:
            for s in angles:
                q = orb.orbit_action(t, s) @ point
                mesh_pts[k] = q
                rows.append((t, s, *q))
                k += 1
        base = Path(args.out)
        mesh_path = base.with_name(base.stem + "_mesh.csv")
        header = ("t", "s", "x1", "x2", "x3", "y0", "y1", "y2", "y3")
        _emit(report.csv_rows(header, rows), str(mesh_path))
        data["mesh_csv"] = mesh_path.name
        if not args.no_figures:
            from . import plotting

            fig_path = plotting.orbit_figure(point, mesh_pts, data["geometry"], base)
            data["figure"] = fig_path.name
    _emit(_format_report(data, args.format), args.out)
    return 0


# --------------------------------------------------------------------- scan


def _parse_range(spec: str, name: str) -> tuple[float, float]:
    lo, _, hi = spec.partition(":")
    try:
        lo_f, hi_f = float(lo), float(hi)
    except ValueError:
        raise UsageError(f"--{name}-range expects LO:HI, got {spec!r}") from None
    if hi_f <= lo_f:
        raise UsageError(f"--{name}-range needs LO < HI, got {spec!r}")
    return lo_f, hi_f


def _cmd_scan(args) -> int:
    if args.resolution:
        parts = args.resolution.split(",")
        if len(parts) == 1:
            resolution = (int(parts[0]),) * 4
        elif len(parts) == 4:
            resolution = tuple(int(p) for p in parts)
        else:
            raise UsageError("--resolution expects N or N1,N2,N3,N4")
    else:
        resolution = (32, 32, 32, 32)
    if any(r < 2 for r in resolution):
        raise UsageError("each scan axis needs at least 2 nodes")
    ranges = list(orb._DEFAULT_RANGES)
    for i, name in enumerate(("x1", "a", "b", "c")):
        spec = getattr(args, f"{name}_range")
        if spec:
            ranges[i] = _parse_range(spec, name)
    result = orb.slant_scan(resolution=resolution, ranges=tuple(ranges))
    header = ("x1", "a", "b", "c", "slant_cos", "slant_angle_rad", "mean_H_norm",
              "gauss_K", "regular")
    angles = np.arccos(np.clip(result.slant_cos, 0.0, 1.0))
    rows = zip(
        result.params[:, 0], result.params[:, 1], result.params[:, 2], result.params[:, 3],
        result.slant_cos, angles, result.mean_h_norm, result.gauss_k,
        result.regular.astype(int),
    )
    csv_payload = report.csv_rows(header, rows)
    summary = report.json_bytes(result.summary())
    if args.out is None:
        sys.stdout.write(csv_payload)
        sys.stderr.buffer.write(summary)
        return 0
    base = Path(args.out)
    _emit(csv_payload, args.out)
    _emit(summary, str(base.with_name(base.stem + "_summary.json")))
    if not args.no_figures:
        from . import plotting

        plotting.scan_figures(result, base)
    return 0


# -------------------------------------------------------------------- table


def _cmd_table(args) -> int:
    quads = oc.structure_constants()
    if args.format == "json":
        payload = report.json_bytes({"quadruples": quads})
    elif args.format == "csv":
        payload = report.csv_rows(("i", "j", "k", "sign"), quads).encode()
    else:
        names = [f"e{k}" for k in range(8)]
        rows = [[""] + names[1:]]
        for i in range(1, 8):
            row = [names[i]]
            for j in range(1, 8):
                k = int(np.argmax(np.abs(oc.STRUCTURE_TENSOR[i, j])))
                sign = "-" if oc.STRUCTURE_TENSOR[i, j, k] < 0 else ""
                row.append(f"{sign}{names[k]}")
            rows.append(row)
        payload = report.text_table(rows).encode()
    _emit(payload, args.out)
    return 0


# --------------------------------------------------------------------- main


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nksphere",
        description="Octonion algebra, calibration geometry and slant surfaces "
                    "on the nearly Kaehler six-sphere.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json", "csv", "text")):
        p.add_argument("--format", choices=fmt, default=fmt[0])
        p.add_argument("--out", default=None, help="output path (default: stdout)")

    p = sub.add_parser("verify", help="run the property-verification suites")
    common(p)
    p.add_argument("--seed", type=int, default=vf.DEFAULT_SEED)
    p.add_argument("--only", default=None, help="comma-separated suite names")
    p.add_argument("--tolerance", action="append", metavar="NAME=VAL",
                   help="override a named tolerance (repeatable)")

    p = sub.add_parser("plane", help="invariants and canonical reduction of a 3-plane")
    common(p)
    p.add_argument("vectors", nargs=3, metavar="V",
                   help="spanning vectors: 'e1', '0.5*e3-2*e7' or 7 comma-separated reals")

    p = sub.add_parser("sphere", help="slant analysis of a sphere section")
    common(p)
    p.add_argument("--plane", nargs=3, required=True, metavar="V")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--center", default=None, metavar="V")
    p.add_argument("--samples", type=int, default=64)

    p = sub.add_parser("orbit", help="torus-orbit geometry of a point")
    common(p)
    p.add_argument("point", nargs="?", default=None, metavar="V")
    p.add_argument("--family", type=float, default=None,
                   help="use the minimal-family point at this angle instead of V")
    p.add_argument("--mesh", type=int, default=None, help="emit an NxN orbit mesh CSV")
    p.add_argument("--no-figures", action="store_true")

    p = sub.add_parser("scan", help="parameter-lattice scan (CSV + summary JSON)")
    common(p, fmt=("csv",))
    p.add_argument("--resolution", default=None, help="N or N1,N2,N3,N4 (default 32)")
    for name in ("x1", "a", "b", "c"):
        p.add_argument(f"--{name}-range", default=None, metavar="LO:HI")
    p.add_argument("--no-figures", action="store_true")

    p = sub.add_parser("table", help="export the multiplication structure constants")
    common(p)
    return parser


_HANDLERS = {
    "verify": _cmd_verify,
    "plane": _cmd_plane,
    "sphere": _cmd_sphere,
    "orbit": _cmd_orbit,
    "scan": _cmd_scan,
    "table": _cmd_table,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
