"""Command-line front end.

Every subcommand takes its settings from flags, optionally merged over a flat
``key = value`` config file (``--config``); flags win.  Reports are JSON
lines, one per instance, followed by a summary line; rationals are written as
``"p/q"`` strings.

Exit status: 0 if every verdict holds or is inapplicable, 2 if any fails,
1 on a usage or config error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import body as bd
from . import counting as ct
from .harness import checks, sweep
from .harness.construct import reverse_meyer_construct
from .harness.families import FAMILIES, FamilyInstance
from .harness.fuzz import FUZZ_RATIOS, fuzz_extremal, wills_probe
from .harness.report import CheckReport, to_jsonable
from .harness.scan import d4_basis, slicing_ratio_scan
from .lattice import Lattice, mahler_basis, successive_minima


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# --------------------------------------------------------------------------
# value parsers


def rational(s: str) -> Fraction:
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


def rational_vector(s: str) -> tuple:
    return tuple(rational(x) for x in s.split(",") if x.strip())


def int_vector(s: str) -> tuple:
    try:
        return tuple(int(x) for x in s.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer vector: {s!r}")


def int_range(s: str) -> list[int]:
    """``a..b`` (inclusive) or a comma list."""
    try:
        if ".." in s:
            a, b = s.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {s!r}")


def parse_body(s: str) -> bd.Body:
    """Body literal.

    ``V:x1,y1;x2,y2;...``  vertices;
    ``H:a11,a12|b1;a21,a22|b2;...``  rows of ``A x <= b``;
    ``ball:r2:n``  centred ball with squared radius ``r2`` in dimension ``n``.
    """
    kind, _, rest = s.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "v":
            return bd.VPolytope([rational_vector(p) for p in rest.split(";") if p.strip()])
        if kind == "h":
            A, b = [], []
            for row in rest.split(";"):
                if not row.strip():
                    continue
                lhs, rhs = row.split("|")
                A.append(rational_vector(lhs))
                b.append(rational(rhs))
            return bd.HPolytope(A, b)
        if kind == "ball":
            r2, n = rest.split(":")
            return bd.Ball(rational(r2), int(n))
    except (ValueError, argparse.ArgumentTypeError, bd.BodyError) as e:
        raise argparse.ArgumentTypeError(f"bad body literal {s!r}: {e}")
    raise argparse.ArgumentTypeError(f"body literal must start with V:, H: or ball: (got {s!r})")


def parse_lattice(s: str) -> Lattice:
    """``Z3``, ``D4`` or basis columns ``c11,c12;c21,c22``."""
    t = s.strip()
    if t.upper().startswith("Z") and t[1:].isdigit():
        return Lattice.standard(int(t[1:]))
    if t.upper() == "D4":
        return Lattice.from_columns(d4_basis())
    try:
        return Lattice.from_columns([rational_vector(c) for c in t.split(";") if c.strip()])
    except Exception as e:
        raise argparse.ArgumentTypeError(f"bad lattice {s!r}: {e}")


# --------------------------------------------------------------------------
# argument parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--family", choices=sorted(FAMILIES))
    p.add_argument("--body", help="body literal (V:..., H:..., ball:r2:n)")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--r", type=rational, help="dilation factor (ball radius for scan-slicing)")
    p.add_argument("--s", type=int, help="sample size of random families")
    p.add_argument("--R", type=int, help="coordinate bound of random families")
    p.add_argument("--index", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--normal-bound", type=int)
    p.add_argument("--dim-cap", type=int)
    p.add_argument("--out", help="output file (default stdout)")
    p.add_argument("--format", choices=["json", "csv"])
    p.add_argument("--jobs", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--save-config", help="write the effective settings as a config file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latslice", description="Exact lattice point counts and inequality checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", help="count lattice points of a body")
    _common(p)
    p.add_argument("--lattice", help="Z<n>, D4 or basis columns c11,c12;c21,c22")
    p.add_argument("--shift", type=rational_vector)
    p.add_argument("--points", action="store_true", help="include the point list")

    p = sub.add_parser("section", help="count a lattice hyperplane section")
    _common(p)
    p.add_argument("--normal", type=int_vector)
    p.add_argument("--level", type=int)
    p.add_argument("--all-levels", action="store_true")

    p = sub.add_parser("project", help="count a projection in the projected lattice")
    _common(p)
    p.add_argument("--normal", type=int_vector)

    p = sub.add_parser("minima", help="successive minima and a Mahler-type basis")
    _common(p)

    p = sub.add_parser("polar", help="vertices of the polar body")
    _common(p)

    for name in ("check", "sweep"):
        p = sub.add_parser(name, help=f"{name} an inequality")
        p.add_argument("check_id", choices=checks.CHECK_IDS)
        _common(p)
        p.add_argument("--t", type=rational_vector, help="translate")
        p.add_argument("--v", type=int_vector, help="projection direction")
        p.add_argument("--subspace-dim", type=int)
        p.add_argument("--r-list", type=int_range)
        for var in ("k", "h", "m", "n", "index"):
            p.add_argument(f"--{var}-range", type=int_range)

    p = sub.add_parser("fuzz", help="seeded search for extreme ratios")
    p.add_argument("check_id", choices=sorted(FUZZ_RATIOS) + ["wills"])
    _common(p)
    p.add_argument("--top", type=int)
    p.add_argument("--t", type=rational_vector)

    p = sub.add_parser("scan-slicing", help="exploratory ball slicing ratios in a lattice")
    _common(p)
    p.add_argument("--lattice", help="Z<n>, D4 or basis columns c11,c12;c21,c22")
    p.add_argument("--r-list", type=int_range)
    return parser


DEFAULTS = {
    "normal_bound": 3, "format": "json", "jobs": 1, "seed": None, "budget": 100,
}


def read_config(path: str) -> dict:
    out = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line {lineno}: expected key = value")
            key, value = (x.strip() for x in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def merge_config(ns: argparse.Namespace, parser: argparse.ArgumentParser) -> argparse.Namespace:
    """Fill unset flags from ``--config``, converting with the flag's own parser."""
    if not getattr(ns, "config", None):
        return ns
    cfg = read_config(ns.config)
    sub = parser._subparsers._group_actions[0].choices[ns.command]
    actions = {a.dest: a for a in sub._actions}
    for key, raw in cfg.items():
        if key in _NOT_SAVED or key not in actions:
            raise UsageError(f"config field {key!r} is not an option of {ns.command}")
        if getattr(ns, key) not in (None, False):
            continue
        act = actions[key]
        try:
            if isinstance(act, argparse._StoreTrueAction):
                value = raw.lower() in ("1", "true", "yes")
            else:
                value = act.type(raw) if act.type else raw
        except (argparse.ArgumentTypeError, ValueError) as e:
            raise UsageError(f"config field {key!r}: {e}")
        if act.choices is not None and value not in act.choices:
            raise UsageError(f"config field {key!r}: {value!r} is not one of {sorted(act.choices)}")
        setattr(ns, key, value)
    return ns


_NOT_SAVED = ("command", "check_id", "config", "save_config")


def _format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(str(x) for x in v)
    return str(v)


def format_config(ns: argparse.Namespace) -> str:
    """Set options of ``ns`` as ``key = value`` lines; :func:`merge_config` reads them back."""
    lines = []
    for key, value in vars(ns).items():
        if key in _NOT_SAVED or value is None or value is False:
            continue
        lines.append(f"{key} = {_format_value(value)}")
    return "\n".join(lines) + "\n"


def resolve_lattice(ns) -> Lattice:
    try:
        return parse_lattice(ns.lattice)
    except argparse.ArgumentTypeError as e:
        raise UsageError(f"field 'lattice': {e}")


def _opt(ns, name):
    v = getattr(ns, name, None)
    return DEFAULTS.get(name) if v is None else v


def family_params(ns) -> dict:
    return {k: getattr(ns, k, None) for k in ("n", "k", "h", "m", "s", "R", "index", "seed")
            if getattr(ns, k, None) is not None}


def resolve_body(ns) -> tuple[bd.Body, dict]:
    """The body named by ``--body`` or ``--family``, dilated by ``--r`` if given."""
    K, desc = _base_body(ns)
    if ns.r is not None:
        if ns.r <= 0:
            raise UsageError("field 'r' must be positive")
        K = bd.dilate(K, ns.r)
        desc = {**desc, "r": ns.r}
    return K, desc


def _base_body(ns) -> tuple[bd.Body, dict]:
    if ns.body is not None:
        try:
            K = parse_body(ns.body)
        except argparse.ArgumentTypeError as e:
            raise UsageError(f"field 'body': {e}")
        return K, checks.describe_body(K)
    if not ns.family:
        raise UsageError("one of --family or --body is required")
    spec = FAMILIES[ns.family]
    if spec.random and ns.seed is None:
        raise UsageError(f"field 'seed' is required for the random family {ns.family}")
    try:
        inst = FamilyInstance.make(ns.family, **family_params(ns))
    except ValueError as e:
        raise UsageError(str(e))
    return inst.build(), inst.describe()


def _emit(obj, ns, out) -> None:
    out.write(json.dumps(to_jsonable(obj), separators=(",", ":")) + "\n")


# --------------------------------------------------------------------------
# subcommands


def cmd_count(ns, out) -> int:
    K, desc = resolve_body(ns)
    if ns.lattice is not None:
        from .lattice import AffineLattice

        res = ct.count(K, AffineLattice(resolve_lattice(ns), ns.shift), keep_points=ns.points)
    else:
        res = ct.count(K, keep_points=ns.points)
    obj = {"command": "count", **desc, "count": res.count}
    if ns.points:
        obj["points"] = res.points
    _emit(obj, ns, out)
    return 0


def cmd_section(ns, out) -> int:
    K, desc = resolve_body(ns)
    if not ns.normal:
        raise UsageError("field 'normal' is required")
    if ns.all_levels:
        scan = ct.max_section_over_levels(K, ns.normal)
        _emit({"command": "section", **desc, "normal": scan.normal, "per_level": scan.per_level,
               "best_level": scan.best_level, "best_count": scan.best_count}, ns, out)
        return 0
    level = ns.level or 0
    res = ct.count_section(K, ns.normal, level)
    _emit({"command": "section", **desc, "normal": ns.normal, "level": level, "count": res.count}, ns, out)
    return 0


def cmd_project(ns, out) -> int:
    K, desc = resolve_body(ns)
    if not ns.normal:
        raise UsageError("field 'normal' is required")
    a = ct.count_projection(K, ns.normal).count
    b = ct.count_projected_points(K, ns.normal).count
    _emit({"command": "project", **desc, "normal": ns.normal, "projection_count": a, "projected_points": b}, ns, out)
    return 0


def cmd_minima(ns, out) -> int:
    K, desc = resolve_body(ns)
    prof = successive_minima(K)
    mb = mahler_basis(K)
    _emit({"command": "minima", **desc, "minima": prof.minima, "witnesses": prof.witnesses,
           "mahler_basis": mb.vectors, "gauge_values": mb.gauge_values}, ns, out)
    return 0


def cmd_polar(ns, out) -> int:
    K, desc = resolve_body(ns)
    P = bd.polar(K)
    _emit({"command": "polar", **desc, "vertices": list(P.vertices)}, ns, out)
    return 0


def _check_params(ns) -> dict:
    params = {}
    for key in ("k", "m", "t", "v", "subspace_dim", "r_list"):
        v = getattr(ns, key, None)
        if v is not None:
            params[key] = v
    params["normal_bound"] = _opt(ns, "normal_bound")
    return params


def _write_reports(reports, ns, out) -> int:
    if _opt(ns, "format") == "csv":
        summary = sweep.write_csv(reports, out)
    else:
        summary = sweep.write_jsonl(reports, out)
    return 2 if summary["fails"] or summary["failed_subchecks"] else 0


def cmd_check(ns, out) -> int:
    if ns.check_id == "simplex_counterexample" and ns.family is None and ns.body is None:
        ns.family = "T_k"
    K, desc = resolve_body(ns)
    params = _check_params(ns)
    if ns.check_id == "simplex_counterexample":
        params["k"] = ns.k or 10
    rep = checks.run_check(ns.check_id, K, params, {**desc, **{k: v for k, v in params.items() if k != "normal_bound"}})
    return _write_reports([rep], ns, out)


def cmd_sweep(ns, out) -> int:
    if not ns.family:
        raise UsageError("field 'family' is required for sweeps")
    spec = FAMILIES[ns.family]
    ranges = {}
    for var in ("k", "h", "m", "n", "index"):
        r = getattr(ns, f"{var}_range", None)
        if r is not None:
            ranges[var] = r
    fixed = {**family_params(ns), **_check_params(ns)}
    if spec.random:
        if ns.seed is None:
            raise UsageError(f"field 'seed' is required for the random family {ns.family}")
        ranges.setdefault("index", list(range(_opt(ns, "budget"))))
    for k in ranges:
        fixed.pop(k, None)
    fixed.pop("normal_bound", None)
    if ns.check_id == "slicing":
        fixed["normal_bound"] = _opt(ns, "normal_bound")
    tasks = sweep.expand_tasks(ns.check_id, ns.family, fixed, ranges)
    return _write_reports(sweep.run_tasks(tasks, _opt(ns, "jobs")), ns, out)


def cmd_fuzz(ns, out) -> int:
    seed = ns.seed if ns.seed is not None else 0
    if ns.check_id == "wills":
        reports = wills_probe(_opt(ns, "budget"), ns.s or 5, ns.R or 4, seed)
        return _write_reports(reports, ns, out)
    if ns.family not in (None, "random_sym"):
        raise UsageError(f"fuzz samples random_sym bodies; --family {ns.family} is not supported")
    board = fuzz_extremal(ns.check_id, ns.n or 3, ns.s or 4, ns.R or 3, seed, _opt(ns, "budget"),
                          ns.top or 10, ns.m or 2, ns.t)
    _emit(board.to_dict(), ns, out)
    return 0


def cmd_scan(ns, out) -> int:
    lat = resolve_lattice(ns) if ns.lattice else Lattice.standard(ns.n or 2)
    r_list = ns.r_list or ([ns.r] if ns.r is not None else [1, 2, 3, 4, 5])
    rep = slicing_ratio_scan(lat, r_list, ns.normal_bound or 2)
    return _write_reports([rep], ns, out)


COMMANDS = {
    "count": cmd_count, "section": cmd_section, "project": cmd_project, "minima": cmd_minima,
    "polar": cmd_polar, "check": cmd_check, "sweep": cmd_sweep, "fuzz": cmd_fuzz, "scan-slicing": cmd_scan,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        ns = merge_config(ns, parser)
        if ns.save_config:
            with open(ns.save_config, "w", encoding="utf-8") as f:
                f.write(format_config(ns))
        if ns.dim_cap is not None:
            bd.set_dim_cap(ns.dim_cap)
        if ns.out:
            with open(ns.out, "w", encoding="utf-8", newline="") as f:
                return COMMANDS[ns.command](ns, f)
        return COMMANDS[ns.command](ns, stdout)
    except UsageError as e:
        print(f"latslice: error: {e}", file=sys.stderr)
        return 1
    except (bd.BodyError, ValueError, KeyError) as e:
        print(f"latslice: error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
