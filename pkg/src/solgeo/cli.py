"""Command-line front end: mesh export, profile tables, verification runs,
and pointwise curvature queries.

Configuration can come from a JSON file (``--config``) and from flags;
flags win.  Exit codes: 0 success / all checks pass, 1 runtime failure or
failed checks, 2 usage error.  All outputs are deterministic and
byte-identical across reruns with the same configuration.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .biconservative_family import (EXPLICIT, IMPLICIT, ProfileSolution,
                                    build_profile, family_surface,
                                    profile_to_csv)
from .patch import SurfacePatch
from .sol_space import (FRAME, DegeneratePlaneError, Point, TangentVector,
                        curvature_tensor, frame_vector, sectional_curvature)
from .verification import SUITE_NAMES, reports_to_json, run_suite


class UsageError(ValueError):
    """Invalid configuration; reported with exit code 2."""


@dataclass
class RunConfig:
    """Merged configuration for one command invocation."""

    command: str
    kind: str = EXPLICIT
    variant: str = "x1"
    c: float = 1.0
    u_min: float = -3.0
    u_max: float = -0.01
    v_min: float = -1.0
    v_max: float = 1.0
    nu: int = 64
    nv: int = 16
    u0: Optional[float] = None
    theta_start: float = 2.2
    step: float = 1e-3
    suite: str = "all"
    seed: int = 0
    output: Optional[str] = None
    format: str = "obj"
    point: str = "0,0,0"
    plane: str = "E1,E3"
    as_json: bool = False

    def validate(self) -> None:
        if self.kind not in (EXPLICIT, IMPLICIT):
            raise UsageError(f"unknown family kind {self.kind!r}")
        if self.variant not in ("x1", "x2"):
            raise UsageError(f"unknown variant {self.variant!r}")
        if self.format not in ("obj", "ply"):
            raise UsageError(f"unknown mesh format {self.format!r}")
        if self.nu < 2 or self.nv < 2:
            raise UsageError("grid sizes must be at least 2")
        if not (self.u_min < self.u_max):
            raise UsageError("empty u range")
        if not (self.v_min < self.v_max):
            raise UsageError("empty v range")
        if self.step <= 0:
            raise UsageError("step must be positive")
        if self.kind == EXPLICIT and self.u_max >= 0:
            raise UsageError("explicit profiles live on u < 0")
        if self.kind == IMPLICIT:
            if self.u_min < 0:
                raise UsageError("implicit profiles start at u >= 0")
            if self.c <= 0:
                raise UsageError("the integration constant c must be "
                                 "positive")
        if self.suite not in SUITE_NAMES + ("all",):
            raise UsageError(f"unknown suite {self.suite!r}")


_CONFIG_FIELDS = {f.name for f in dataclasses.fields(RunConfig)} - {"command"}


def _merge_config(command: str, args: argparse.Namespace) -> RunConfig:
    values = {}
    config_path = getattr(args, "config", None)
    if config_path:
        with open(config_path, "r", encoding="utf-8") as handle:
            loaded = json.load(handle)
        if not isinstance(loaded, dict):
            raise UsageError("config file must hold a JSON object")
        unknown = set(loaded) - _CONFIG_FIELDS
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        values.update(loaded)
    for name in _CONFIG_FIELDS:
        flag_value = getattr(args, name, None)
        if flag_value is not None:
            values[name] = flag_value
    config = RunConfig(command=command, **values)
    config.validate()
    return config


# -- mesh output -----------------------------------------------------------


def _build_family_profile(config: RunConfig) -> ProfileSolution:
    grid = np.linspace(config.u_min, config.u_max, config.nu)
    if config.kind == EXPLICIT:
        return build_profile(EXPLICIT, u_grid=grid, u0=config.u0)
    return build_profile(IMPLICIT, c=config.c, u_grid=grid, u0=config.u0,
                         theta_start=config.theta_start, step=config.step)


def _mesh_lines_obj(patch: SurfacePatch, us: np.ndarray,
                    vs: np.ndarray) -> List[str]:
    lines = [f"# {patch.name}", f"# grid {len(us)} {len(vs)}"]
    for u in us:
        for v in vs:
            x, y, z = patch.position(float(u), float(v))
            lines.append(f"v {x:.12f} {y:.12f} {z:.12f}")
    nv = len(vs)

    def vertex(i: int, j: int) -> int:
        return i * nv + j + 1

    for i in range(len(us) - 1):
        for j in range(nv - 1):
            a, b = vertex(i, j), vertex(i + 1, j)
            c, d = vertex(i + 1, j + 1), vertex(i, j + 1)
            lines.append(f"f {a} {b} {c}")
            lines.append(f"f {a} {c} {d}")
    return lines


def _mesh_lines_ply(patch: SurfacePatch, us: np.ndarray,
                    vs: np.ndarray) -> List[str]:
    n_vertices = len(us) * len(vs)
    n_faces = 2 * (len(us) - 1) * (len(vs) - 1)
    lines = ["ply", "format ascii 1.0", f"comment {patch.name}",
             f"element vertex {n_vertices}",
             "property float x", "property float y", "property float z",
             f"element face {n_faces}",
             "property list uchar int vertex_indices", "end_header"]
    for u in us:
        for v in vs:
            x, y, z = patch.position(float(u), float(v))
            lines.append(f"{x:.12f} {y:.12f} {z:.12f}")
    nv = len(vs)

    def vertex(i: int, j: int) -> int:
        return i * nv + j

    for i in range(len(us) - 1):
        for j in range(nv - 1):
            a, b = vertex(i, j), vertex(i + 1, j)
            c, d = vertex(i + 1, j + 1), vertex(i, j + 1)
            lines.append(f"3 {a} {b} {c}")
            lines.append(f"3 {a} {c} {d}")
    return lines


def cmd_generate(config: RunConfig) -> int:
    profile = _build_family_profile(config)
    patch = family_surface(profile, config.variant,
                           v_range=(config.v_min, config.v_max))
    us = profile.u
    vs = np.linspace(config.v_min, config.v_max, config.nv)
    if config.format == "obj":
        lines = _mesh_lines_obj(patch, us, vs)
        default_name = f"family_{config.variant}.obj"
    else:
        lines = _mesh_lines_ply(patch, us, vs)
        default_name = f"family_{config.variant}.ply"
    path = config.output or default_name
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")
    n_vertices = len(us) * len(vs)
    n_faces = 2 * (len(us) - 1) * (len(vs) - 1)
    print(f"wrote {path}: {n_vertices} vertices, {n_faces} triangles")
    return 0


def cmd_profile(config: RunConfig) -> int:
    profile = _build_family_profile(config)
    csv_text = profile_to_csv(profile, config.output)
    if config.output:
        print(f"wrote {config.output}: {len(profile.u)} rows")
    else:
        sys.stdout.write(csv_text)
    return 0


def cmd_verify(config: RunConfig) -> int:
    reports = run_suite(config.suite, seed=config.seed)
    text = reports_to_json(reports)
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="\n") as out:
            out.write(text)
        for report in reports:
            if report.status == "skipped":
                print(f"{report.check_id}: skipped "
                      f"({report.context.get('reason', '')})")
            else:
                print(f"{report.check_id}: {report.status} "
                      f"(max_error={report.max_error:.3e}, "
                      f"tolerance={report.tolerance:.3e})")
    else:
        sys.stdout.write(text)
    n_fail = sum(1 for r in reports if r.status == "fail")
    n_pass = sum(1 for r in reports if r.status == "pass")
    n_skip = sum(1 for r in reports if r.status == "skipped")
    print(f"{n_pass} passed, {n_fail} failed, {n_skip} skipped",
          file=sys.stderr)
    return 1 if n_fail else 0


def _parse_point(text: str) -> Point:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"point needs three coordinates, got {text!r}")
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"bad point {text!r}: {exc}") from exc
    return Point(x, y, z)


def _parse_plane(text: str, base: Point) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"plane needs two spanning vectors, got {text!r}")

    def vector(token: str) -> TangentVector:
        token = token.strip()
        if token.upper() in ("E1", "E2", "E3"):
            return frame_vector(base, int(token[1]))
        comps = token.split(":")
        if len(comps) != 3:
            raise UsageError(f"bad plane vector {token!r}; use E1/E2/E3 or "
                             "a:b:c frame components")
        try:
            values = np.array([float(c) for c in comps])
        except ValueError as exc:
            raise UsageError(f"bad plane vector {token!r}: {exc}") from exc
        return TangentVector(base, values, FRAME)

    return vector(parts[0]), vector(parts[1])


def cmd_curvature(config: RunConfig) -> int:
    base = _parse_point(config.point)
    x, y = _parse_plane(config.plane, base)
    k = sectional_curvature(x, y)
    r_xyy = curvature_tensor(x, y, y).components
    payload = {
        "point": [float(value) for value in base.as_array()],
        "plane": config.plane,
        "sectional_curvature": float(k),
        "curvature_R_xy_y_frame": [float(c) for c in r_xyy],
    }
    if config.as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"point: ({base.x:g}, {base.y:g}, {base.z:g})")
        print(f"plane: {config.plane}")
        print(f"sectional curvature: {k:.12f}")
        print("R(X, Y)Y frame components: "
              + " ".join(f"{c:.12f}" for c in r_xyy))
    return 0


# -- argument parsing ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="solgeo",
        description="Geometry of the solvable model space: family meshes, "
                    "profile tables, verification suites, curvature "
                    "queries.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p):
        p.add_argument("--config", help="JSON file with RunConfig fields; "
                                        "flags override")

    gen = sub.add_parser("generate", help="export a family surface mesh")
    add_config(gen)
    gen.add_argument("--kind", choices=(EXPLICIT, IMPLICIT))
    gen.add_argument("--variant", choices=("x1", "x2"))
    gen.add_argument("--c", type=float, help="implicit integration constant")
    gen.add_argument("--u-min", dest="u_min", type=float)
    gen.add_argument("--u-max", dest="u_max", type=float)
    gen.add_argument("--v-min", dest="v_min", type=float)
    gen.add_argument("--v-max", dest="v_max", type=float)
    gen.add_argument("--nu", type=int, help="profile sample count")
    gen.add_argument("--nv", type=int, help="rulings sample count")
    gen.add_argument("--u0", type=float, help="quadrature anchor")
    gen.add_argument("--theta-start", dest="theta_start", type=float)
    gen.add_argument("--step", type=float, help="implicit integration step")
    gen.add_argument("--output", help="mesh path (default "
                                      "family_<variant>.<format>)")
    gen.add_argument("--format", choices=("obj", "ply"))

    prof = sub.add_parser("profile", help="tabulate a profile curve as CSV")
    add_config(prof)
    prof.add_argument("--kind", choices=(EXPLICIT, IMPLICIT))
    prof.add_argument("--c", type=float)
    prof.add_argument("--u-min", dest="u_min", type=float)
    prof.add_argument("--u-max", dest="u_max", type=float)
    prof.add_argument("--nu", type=int)
    prof.add_argument("--u0", type=float)
    prof.add_argument("--theta-start", dest="theta_start", type=float)
    prof.add_argument("--step", type=float)
    prof.add_argument("--output", help="CSV path (default: stdout)")

    ver = sub.add_parser("verify", help="run a verification suite")
    add_config(ver)
    ver.add_argument("--suite", choices=SUITE_NAMES + ("all",))
    ver.add_argument("--seed", type=int)
    ver.add_argument("--output", help="JSON report path (default: stdout)")

    cur = sub.add_parser("curvature", help="sectional curvature at a point")
    add_config(cur)
    cur.add_argument("--point", help="x,y,z coordinates")
    cur.add_argument("--plane", help="two of E1/E2/E3 or a:b:c frame "
                                     "triples, comma separated")
    cur.add_argument("--json", dest="as_json", action="store_true",
                     default=None)
    return parser


_DISPATCH = {
    "generate": cmd_generate,
    "profile": cmd_profile,
    "verify": cmd_verify,
    "curvature": cmd_curvature,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _merge_config(args.command, args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: cannot load config: {exc}", file=sys.stderr)
        return 2
    try:
        return _DISPATCH[config.command](config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DegeneratePlaneError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
