"""Command line front end.

Subcommands: scatter, spectrum, project, waveop, evolve, hilbert, verify.
Every subcommand accepts ``--out DIR`` and writes delimited data (CSV),
a JSON report carrying the configuration echo, and a rendered figure.

Exit codes: 0 success, 1 usage error, 2 numerical-validation failure,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .evolution import decay_probe
from .freeops import SQRT2PI, AngleGrid, default_nodes_per_panel
from .jost import JostData, b_coefficients, jost_by_recursion, volterra_residual
from .lattice import LatticeSeq, Potential, Window, band_buffer, window_for
from .report import (ensure_dir, line_figure, matrix_figure, write_csv,
                     write_json, write_matrix_csv)
from .scattering import classify_edges, scattering_coefficients
from .spectral import projection_continuous_two_routes, plane_wave_table
from .spectrum import (dense_reference_spectrum, find_eigenvalues,
                       negative_count_bound_check, oscillation_count)
from .waveop import (discrete_hilbert, hilbert_apply, ls_residual,
                     lp_norm_probe, p_boundedness_criterion, pearson_probe,
                     wave_operator_matrix)

__all__ = ["main", "load_potential", "run_verify", "BUILTIN_POTENTIALS"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERIC = 2
EXIT_IO = 3


def _seeded_five_site(seed: int) -> Potential:
    rng = np.random.default_rng(seed)
    return Potential(-2, tuple(rng.uniform(-2.0, 2.0, 5)))


BUILTIN_POTENTIALS = {
    "free": Potential(0, ()),
    "delta": Potential(0, (1.0,)),
    "well": Potential(0, (-2.0,)),
    "barrier": Potential(0, (4.0,)),
    "random-a": _seeded_five_site(7),
    "random-b": _seeded_five_site(21),
}


class UsageError(Exception):
    pass


def load_potential(path: str) -> Potential:
    """Potential from a JSON document {"offset": int, "values": [...]}."""
    with open(path) as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: parse failure at line {exc.lineno} column {exc.colno}: {exc.msg}")
    if not isinstance(doc, dict) or "values" not in doc:
        raise UsageError(f"{path}: expected an object with 'offset' and 'values'")
    offset = doc.get("offset", 0)
    if not isinstance(offset, int):
        raise UsageError(f"{path}: field 'offset' must be an integer, got {offset!r}")
    values = []
    for i, v in enumerate(doc["values"]):
        if not isinstance(v, (int, float)) or isinstance(v, bool) or not np.isfinite(v):
            raise UsageError(f"{path}: field 'values'[{i}] is not a finite number: {v!r}")
        values.append(float(v))
    return Potential(offset, tuple(values))


def _resolve_potential(args) -> Potential:
    if getattr(args, "builtin", None):
        try:
            return BUILTIN_POTENTIALS[args.builtin]
        except KeyError:
            raise UsageError(f"unknown builtin '{args.builtin}'; choices: {', '.join(BUILTIN_POTENTIALS)}")
    if getattr(args, "potential", None):
        return load_potential(args.potential)
    return BUILTIN_POTENTIALS["free"]


def _config_echo(args, q: Potential) -> dict:
    echo = {
        "command": args.command,
        "potential": {"offset": q.offset, "values": list(q.values)},
    }
    for key in ("window", "nodes", "out", "builtin"):
        if hasattr(args, key):
            echo[key] = getattr(args, key)
    return echo


def _grid_for(args, window: Window) -> AngleGrid:
    nodes = args.nodes or default_nodes_per_panel(window.half_width)
    if args.command != "verify" and nodes < 64:
        raise UsageError(f"--nodes must be at least 64, got {nodes}")
    return AngleGrid.gauss_panels(nodes)


# -- subcommands -----------------------------------------------------------


def cmd_scatter(args) -> int:
    q = _resolve_potential(args)
    window = Window(args.window) if args.window else window_for(q)
    grid = _grid_for(args, window)
    sc = scattering_coefficients(q, grid, window)
    out = ensure_dir(args.out)
    rows = zip(grid.nodes, sc.T.real, sc.T.imag, sc.R_plus.real, sc.R_plus.imag,
               sc.R_minus.real, sc.R_minus.imag,
               np.abs(sc.T) ** 2 + np.abs(sc.R_plus) ** 2)
    write_csv(os.path.join(out, "scatter.csv"),
              ["theta", "re_T", "im_T", "re_R_plus", "im_R_plus",
               "re_R_minus", "im_R_minus", "unitarity"], rows)
    report = {"config": _config_echo(args, q), "edges": sc.edges.to_dict(),
              "unitarity_defect": sc.unitarity_defect(),
              "wronskian_constancy": sc.wronskian_constancy}
    write_json(os.path.join(out, "scatter.json"), report)
    line_figure(os.path.join(out, "scatter.png"), grid.nodes,
                {"|T|": np.abs(sc.T), "|R+|": np.abs(sc.R_plus), "|R-|": np.abs(sc.R_minus)},
                "theta", "modulus", "transmission and reflection")
    if sc.unitarity_defect() > args.tol:
        print(f"unitarity defect {sc.unitarity_defect():.3e} exceeds {args.tol}")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_spectrum(args) -> int:
    q = _resolve_potential(args)
    window = Window(args.window) if args.window else None
    pairs = find_eigenvalues(q, window)
    check = negative_count_bound_check(q)
    out = ensure_dir(args.out)
    write_csv(os.path.join(out, "eigenvalues.csv"),
              ["eigenvalue", "decay_rate", "residual"],
              [(p.eigenvalue, p.decay_rate, p.residual(q)) for p in pairs])
    lam_grid = np.linspace(-4.0 - q.l1, 0.0, 20)
    counts = [oscillation_count(q, lam) for lam in lam_grid]
    write_csv(os.path.join(out, "oscillation.csv"), ["lambda", "count"],
              zip(lam_grid, counts))
    report = {
        "config": _config_echo(args, q),
        "eigenvalues": [p.eigenvalue for p in pairs],
        "decay_rates": [p.decay_rate for p in pairs],
        "count_bounds": check.to_dict(),
    }
    write_json(os.path.join(out, "spectrum.json"), report)
    line_figure(os.path.join(out, "spectrum.png"), lam_grid,
                {"N(lambda)": counts}, "lambda", "eigenvalues below lambda")
    if not (check.total_ok and check.negative_ok and check.reflection_count_match):
        print("eigenvalue count bound violated")
        return EXIT_NUMERIC
    if any(p.residual(q) > args.tol for p in pairs):
        print("eigen-residual exceeds tolerance")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_project(args) -> int:
    q = _resolve_potential(args)
    window = Window(args.window) if args.window else Window(48)
    grid = _grid_for(args, window)
    pc_eig, pc_quad = projection_continuous_two_routes(q, window, grid)
    buf = band_buffer(q)
    idem = float(np.max(np.abs(pc_quad.entries @ pc_quad.entries - pc_quad.entries)))
    report = {
        "config": _config_echo(args, q),
        "route_difference_core": pc_eig.core_max_diff(pc_quad, buf),
        "idempotence_defect": idem,
    }
    out = ensure_dir(args.out)
    write_json(os.path.join(out, "project.json"), report)
    if args.dump:
        write_matrix_csv(os.path.join(out, "pc_quadrature.csv"), pc_quad.entries)
        write_matrix_csv(os.path.join(out, "pc_eigenroute.csv"), pc_eig.entries)
    matrix_figure(os.path.join(out, "project.png"), pc_quad.entries,
                  "|Pc| by quadrature")
    if report["route_difference_core"] > args.tol:
        print(f"projection route difference {report['route_difference_core']:.3e} exceeds {args.tol}")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_waveop(args) -> int:
    q = _resolve_potential(args)
    window = Window(args.window) if args.window else Window(48)
    grid = _grid_for(args, window)
    edges = classify_edges(q, window)
    report = {
        "config": _config_echo(args, q),
        "criterion": p_boundedness_criterion(edges),
        "T0": [edges.T0.real, edges.T0.imag],
        "Tpi": [edges.Tpi.real, edges.Tpi.imag],
    }
    out = ensure_dir(args.out)
    if args.probe_norms:
        sizes = [64, 128, 256, 512]
        norms = []
        for n in sizes:
            w = Window(n)
            g = AngleGrid.gauss_panels(default_nodes_per_panel(n))
            norms.append(lp_norm_probe(wave_operator_matrix(q, w, g), 1))
        report["l1_norms"] = dict(zip(map(str, sizes), norms))
        line_figure(os.path.join(out, "waveop_norms.png"), sizes,
                    {"l1 norm": norms}, "window half-width", "l1 operator norm")
    if args.pearson:
        t_list = [float(t) for t in args.pearson.split(",")]
        probe_win = Window(max(window.half_width, 256))
        u = LatticeSeq.delta(probe_win, 3)
        report["pearson_residuals"] = pearson_probe(q, u, t_list)
        line_figure(os.path.join(out, "waveop_pearson.png"), t_list,
                    {"residual": report["pearson_residuals"]}, "t", "l2 residual", logy=True)
    wop = wave_operator_matrix(q, window, grid)
    if args.dump:
        write_matrix_csv(os.path.join(out, "waveop.csv"), wop.entries)
    matrix_figure(os.path.join(out, "waveop.png"), wop.entries, "|W| entries")
    write_json(os.path.join(out, "waveop.json"), report)
    return EXIT_OK


def cmd_evolve(args) -> int:
    q = _resolve_potential(args)
    window = Window(args.window) if args.window else Window(128)
    if args.times:
        t_grid = [float(t) for t in args.times.split(",")]
    else:
        t_grid = np.geomspace(1.0, 100.0, 12)
    rep = decay_probe(q, t_grid, window)
    out = ensure_dir(args.out)
    write_csv(os.path.join(out, "evolve.csv"), ["t", "s", "c"], rep.to_rows())
    write_json(os.path.join(out, "evolve.json"), {
        "config": _config_echo(args, q),
        "constant": rep.constant,
        "non_decay_alarm": rep.non_decay_alarm,
    })
    line_figure(os.path.join(out, "evolve.png"), rep.t,
                {"s(t)": rep.s, "<t>^(1/3) s(t)": rep.c}, "t", "sup-entry decay", logy=True)
    if rep.non_decay_alarm:
        print("non-decay alarm: c(t) trends upward")
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_hilbert(args) -> int:
    window = Window(args.window) if args.window else Window(64)
    if getattr(args, "vector", None):
        p = load_potential(args.vector)
        v = LatticeSeq.from_func(window, lambda n: p.q(n))
    else:
        v = LatticeSeq.delta(window, 0)
    hv = discrete_hilbert(v)
    out = ensure_dir(args.out)
    write_csv(os.path.join(out, "hilbert.csv"),
              ["site", "re_v", "im_v", "re_hv", "im_hv"],
              zip(window.indices(), v.values.real, v.values.imag,
                  hv.values.real, hv.values.imag))
    grid = _grid_for(args, window)
    ns = window.indices()
    vhat = (np.exp(-1j * np.outer(grid.nodes, ns)) @ v.values) / SQRT2PI
    mult = np.sign(grid.nodes) * vhat
    by_symbol = (np.exp(1j * np.outer(ns, grid.nodes)) @ (grid.weights * mult)) / SQRT2PI
    defect = float(np.max(np.abs(by_symbol - hv.values)))
    write_json(os.path.join(out, "hilbert.json"), {
        "config": {"command": "hilbert", "window": window.half_width},
        "symbol_defect": defect,
        "l1_ratio": float(np.sum(np.abs(hv.values)) / max(np.sum(np.abs(v.values)), 1e-300)),
    })
    line_figure(os.path.join(out, "hilbert.png"), ns,
                {"|v|": np.abs(v.values), "|Hv|": np.abs(hv.values)},
                "site", "modulus")
    if defect > args.tol:
        print(f"symbol defect {defect:.3e} exceeds {args.tol}")
        return EXIT_NUMERIC
    return EXIT_OK


# -- verification suite ----------------------------------------------------


def _verify_window(q: Potential) -> Window:
    return Window(max(48, band_buffer(q)))


def _verify_checks(name: str, q: Potential, nodes: int):
    """Property checks for one potential; yields (check, value, tol)."""
    window = _verify_window(q)
    grid = AngleGrid.gauss_panels(nodes)
    buf = band_buffer(q)

    data_p = b_coefficients(q, +1, window)
    data_m = b_coefficients(q, -1, window)
    two_route = 0.0
    volterra = 0.0
    for th in np.linspace(0.3, np.pi - 0.3, 7):
        for sign, data in ((+1, data_p), (-1, data_m)):
            series = np.array([data.f(n, th) for n in window.indices()])
            recur = jost_by_recursion(q, th, window, sign)
            two_route = max(two_route, float(np.max(np.abs(series - recur))))
            f = LatticeSeq(window, recur)
            volterra = max(volterra, volterra_residual(q, th, f, sign))
    yield "two_route_jost", two_route, 1e-9
    yield "volterra_residual", volterra, 1e-10

    bound = 0.0
    for n in range(0, window.half_width):
        for nu in range(1, data_p.nu_max + 1):
            b = abs(data_p.b(n, nu))
            cap = data_p.decay_bound(nu, n)
            if b > cap + 1e-12:
                bound = max(bound, b - cap)
    yield "b_coefficient_bound", bound, 0.0

    sc = scattering_coefficients(q, grid, window)
    yield "unitarity", sc.unitarity_defect(), 1e-10
    yield "wronskian_constancy", sc.wronskian_constancy, 1e-10

    pc_eig, pc_quad = projection_continuous_two_routes(q, window, grid)
    yield "projection_routes", pc_eig.core_max_diff(pc_quad, buf), 1e-6
    idem = float(np.max(np.abs(pc_quad.entries @ pc_quad.entries - pc_quad.entries)))
    yield "projection_idempotence", idem, 1e-8

    table = plane_wave_table(q, grid, window)
    yield "lippmann_schwinger", ls_residual(q, table), 1e-8

    pairs = find_eigenvalues(q)
    residual = max((p.residual(q) for p in pairs), default=0.0)
    yield "eigen_residual", residual, 1e-9
    check = negative_count_bound_check(q)
    bounds_ok = check.total_ok and check.negative_ok and check.reflection_count_match
    yield "count_bounds", 0.0 if bounds_ok else 1.0, 0.0


def run_verify(args) -> int:
    out = ensure_dir(args.out)
    nodes = args.nodes or 0
    results = []
    failures = 0
    for name, q in BUILTIN_POTENTIALS.items():
        per_panel = nodes or default_nodes_per_panel(_verify_window(q).half_width)
        for check, value, tol in _verify_checks(name, q, per_panel):
            ok = value <= tol + 1e-300 if tol == 0.0 else value < tol
            results.append({"potential": name, "check": check,
                            "value": float(value), "tolerance": tol, "pass": bool(ok)})
            status = "pass" if ok else "FAIL"
            print(f"{status}  {name:10s} {check:24s} {value:.3e}  (tol {tol:g})")
            failures += 0 if ok else 1
    write_json(os.path.join(out, "verify.json"), {
        "config": {"command": "verify", "nodes": nodes or "default"},
        "checks": results,
        "failures": failures,
    })
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return EXIT_OK if failures == 0 else EXIT_NUMERIC


# -- argument parsing ------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattscat",
        description="Scattering and spectral toolkit for -Delta + q on the integer lattice.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, window_default=None):
        p.add_argument("--potential", help="path to a JSON potential file")
        p.add_argument("--builtin", help=f"builtin potential ({', '.join(BUILTIN_POTENTIALS)})")
        p.add_argument("--window", type=int, default=window_default,
                       help="window half-width N")
        p.add_argument("--nodes", type=int, default=None,
                       help="quadrature nodes per half-band panel")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--tol", type=float, default=1e-6,
                       help="validation tolerance for the exit status")

    common(sub.add_parser("scatter", help="transmission/reflection table and edge report"))
    common(sub.add_parser("spectrum", help="bound states, oscillation counts, count bounds"))
    p = sub.add_parser("project", help="continuous-spectrum projection, two routes")
    common(p)
    p.add_argument("--dump", action="store_true", help="write full matrices as CSV")
    p = sub.add_parser("waveop", help="wave operator, norms, boundedness criterion")
    common(p)
    p.add_argument("--probe-norms", action="store_true",
                   help="l1 norms of truncated W over N in {64,128,256,512}")
    p.add_argument("--pearson", help="comma-separated times for the wave-operator limit probe")
    p.add_argument("--dump", action="store_true", help="write W as CSV")
    p = sub.add_parser("evolve", help="dispersive-decay probe of e^{itH} Pc")
    common(p)
    p.add_argument("--times", help="comma-separated probe times (default geomspace 1..100)")
    p = sub.add_parser("hilbert", help="discrete Hilbert transform and symbol check")
    common(p)
    p.add_argument("--vector", help="JSON vector file (offset/values) to transform")
    common(sub.add_parser("verify", help="run the built-in property suite"))
    return parser


_DISPATCH = {
    "scatter": cmd_scatter,
    "spectrum": cmd_spectrum,
    "project": cmd_project,
    "waveop": cmd_waveop,
    "evolve": cmd_evolve,
    "hilbert": cmd_hilbert,
    "verify": run_verify,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return _DISPATCH[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, ArithmeticError) as exc:
        print(f"numerical validation failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
