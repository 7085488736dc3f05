"""Command-line surface: every computation as a deterministic result table.

Subcommands map one-to-one onto library operations; output is a table in
JSON or CSV with no timestamps, so identical invocations produce identical
bytes.  Exit codes: 0 success, 2 invalid input, 3 computational failure
(pole hit, divergence, non-convergence), 4 when `verify` finds any oracle
disagreement.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import click
import numpy as np
from scipy.integrate import quad as _scipy_quad

from . import __version__, oracles
from .errors import DeltaGreenError, IllegalSpecError, SpecValidationError
from .greenfn import ComplexEnergy, SpatialPoint, g0
from .pointgreen import DeltaCenter, bound_states, center, green, residue_wavefunction
from .renorm import (
    Cutoff,
    bare_1d,
    bare_from_renormalized,
    bubble_regularized,
    friedman_report,
    from_bound_state,
    renormalized_2d,
    renormalized_3d,
    renormalized_denominator,
    rg_shift,
    transmutation_energy,
)
from .rootfind import refine_root
from .scatter import (
    POLICIES,
    amplitude3d,
    cross_section_total,
    optical_theorem_residual,
    resolve_policy,
    transmission1d,
)

_G0_UNIT = {1: "L", 2: "1", 3: "1/L"}
DEFAULT_FLOW_CUTOFFS = "1e2,1e3,1e4,1e5,1e6"
DEFAULT_FRIEDMAN_CUTOFFS = "1e2,1e3,1e4,1e5"


class _VerifyFailed(Exception):
    """Internal signal: table already emitted, exit with code 4."""


@dataclass
class ResultTable:
    columns: list
    rows: list
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "metadata": self.metadata,
            "columns": [[name, unit] for name, unit in self.columns],
            "rows": [list(row) for row in self.rows],
        }
        return json.dumps(payload, sort_keys=True, allow_nan=False, separators=(",", ":")) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow([f"{name}[{unit}]" for name, unit in self.columns])
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()


def _cell(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _emit(table: ResultTable, fmt: str, path: str | None) -> None:
    text = table.to_json() if fmt == "json" else table.to_csv()
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    except OSError as exc:
        raise click.ClickException(f"cannot write {path}: {exc}") from exc


def _metadata(command: str, params: dict, policy: str | None = None) -> dict:
    return {
        "command": command,
        "params": params,
        "version": __version__,
        "branch_policy": resolve_policy(policy),
    }


def _output_options(fn):
    fn = click.option(
        "--format",
        "fmt",
        type=click.Choice(["json", "csv"]),
        default="json",
        show_default=True,
        help="Output format.",
    )(fn)
    fn = click.option(
        "--output",
        "output",
        type=click.Path(dir_okay=False, writable=True),
        default=None,
        help="Write the table to this file instead of standard output.",
    )(fn)
    return fn


def _parse_floats(text: str, flag: str) -> list[float]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(float(part))
        except ValueError:
            raise click.BadParameter(f"{flag}: {part!r} is not a number")
    if not out:
        raise click.BadParameter(f"{flag}: empty list")
    return out


def _parse_grid(text: str, flag: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise click.BadParameter(f"{flag}: expected start:stop:count")
    try:
        start, stop = float(parts[0]), float(parts[1])
        count = int(parts[2])
    except ValueError:
        raise click.BadParameter(f"{flag}: expected start:stop:count with numeric fields")
    if count < 2:
        raise click.BadParameter(f"{flag}: count must be at least 2")
    return [float(v) for v in np.linspace(start, stop, count)]


def _parse_point(dim: int, text: str, flag: str) -> SpatialPoint:
    coords = _parse_floats(text, flag)
    if len(coords) != dim:
        raise click.BadParameter(f"{flag}: expected {dim} coordinates, got {len(coords)}")
    return SpatialPoint(tuple(coords))


def _parse_center(dim: int, text: str) -> DeltaCenter:
    """Parse pos:lambda=... | pos:lambdaR=...,mu=... | pos:eb=...

    The position may itself be comma-separated for D >= 2, e.g.
    ``0.5,0:lambdaR=-12.57,mu=1``.
    """
    if ":" not in text:
        raise click.BadParameter(f"--center: missing ':' in {text!r}")
    pos_text, coupling_text = text.split(":", 1)
    position = _parse_point(dim, pos_text, "--center position")
    keys = {}
    for item in coupling_text.split(","):
        item = item.strip()
        if "=" not in item:
            raise click.BadParameter(f"--center: expected key=value, got {item!r}")
        key, value = item.split("=", 1)
        key = key.strip()
        if key in keys:
            raise click.BadParameter(f"--center: duplicate key {key!r}")
        try:
            keys[key] = float(value)
        except ValueError:
            raise click.BadParameter(f"--center: {value!r} is not a number")
    names = frozenset(keys)
    if names == {"lambda"}:
        spec = bare_1d(keys["lambda"])
    elif names == {"lambdaR", "mu"}:
        spec = renormalized_2d(keys["lambdaR"], keys["mu"])
    elif names == {"lambdaR"}:
        spec = renormalized_3d(keys["lambdaR"])
    elif names == {"eb"}:
        spec = from_bound_state(keys["eb"])
    else:
        raise click.BadParameter(
            "--center: coupling must be lambda=, lambdaR=[,mu=], or eb=; "
            f"got keys {sorted(names)}"
        )
    return center(position, spec)


def _one_of_k(ks: tuple[float, ...], grid: str | None, flag: str, grid_flag: str) -> list[float]:
    if ks and grid is not None:
        raise click.BadParameter(f"use either {flag} or {grid_flag}, not both")
    if grid is not None:
        return _parse_grid(grid, grid_flag)
    if not ks:
        raise click.BadParameter(f"{flag} or {grid_flag} is required")
    return [float(v) for v in ks]


@click.group(name="deltagreen")
@click.version_option(version=__version__, prog_name="deltagreen")
def cli():
    """Green's functions, bound states, and scattering for delta potentials.

    Units are hbar = 2m = 1 throughout: energies in 1/L^2, momenta in 1/L.
    """


@cli.command(name="g0")
@click.option("--dim", type=click.IntRange(1, 3), required=True, help="Spatial dimension.")
@click.option("--energy", type=float, required=True, help="Real energy (1/L^2).")
@click.option(
    "--retarded",
    is_flag=True,
    default=False,
    help="Evaluate on the E+i0 side of the cut (required for energy >= 0).",
)
@click.option("--r", "rs", type=float, multiple=True, help="Separation |x-y|; repeatable.")
@click.option("--r-grid", "r_grid", default=None, help="Separation grid start:stop:count.")
@_output_options
def cmd_g0(dim, energy, retarded, rs, r_grid, fmt, output):
    """Free-space Green's function G0(E; r) on a grid of separations."""
    radii = _one_of_k(rs, r_grid, "--r", "--r-grid")
    e = ComplexEnergy(complex(energy, 0.0), retarded=retarded)
    origin = SpatialPoint((0.0,) * dim)
    rows = []
    for r in radii:
        x = SpatialPoint((r,) + (0.0,) * (dim - 1))
        val = g0(dim, e, x, origin).value
        rows.append((float(r), float(val.real), float(val.imag)))
    unit = _G0_UNIT[dim]
    table = ResultTable(
        columns=[("r", "L"), ("re_g0", unit), ("im_g0", unit)],
        rows=rows,
        metadata=_metadata(
            "g0",
            {
                "dim": dim,
                "energy": energy,
                "retarded": retarded,
                "r": [float(v) for v in radii],
            },
        ),
    )
    _emit(table, fmt, output)


@cli.command(name="green")
@click.option("--dim", type=click.IntRange(1, 3), required=True, help="Spatial dimension.")
@click.option("--energy", type=float, required=True, help="Real energy (1/L^2).")
@click.option(
    "--retarded", is_flag=True, default=False, help="Evaluate on the E+i0 side of the cut."
)
@click.option(
    "--center",
    "center_texts",
    multiple=True,
    required=True,
    help="Delta center as pos:lambda=.. | pos:lambdaR=..[,mu=..] | pos:eb=..; repeatable.",
)
@click.option("--x", "x_texts", multiple=True, required=True, help="Evaluation point; repeatable.")
@click.option("--y", "y_text", required=True, help="Fixed second argument of G(E; x, y).")
@_output_options
def cmd_green(dim, energy, retarded, center_texts, x_texts, y_text, fmt, output):
    """Full interacting Green's function G(E; x, y) for a set of centers."""
    centers = [_parse_center(dim, t) for t in center_texts]
    y = _parse_point(dim, y_text, "--y")
    xs = [_parse_point(dim, t, "--x") for t in x_texts]
    e = ComplexEnergy(complex(energy, 0.0), retarded=retarded)
    rows = []
    for x in xs:
        val = green(dim, e, x, y, centers).value
        rows.append(tuple(float(c) for c in x.coords) + (float(val.real), float(val.imag)))
    unit = _G0_UNIT[dim]
    coord_cols = [(f"x{i + 1}", "L") for i in range(dim)]
    table = ResultTable(
        columns=coord_cols + [("re_g", unit), ("im_g", unit)],
        rows=rows,
        metadata=_metadata(
            "green",
            {
                "dim": dim,
                "energy": energy,
                "retarded": retarded,
                "center": list(center_texts),
                "x": list(x_texts),
                "y": y_text,
            },
        ),
    )
    _emit(table, fmt, output)


@cli.command(name="bound")
@click.option("--dim", type=click.IntRange(1, 3), required=True, help="Spatial dimension.")
@click.option(
    "--center",
    "center_texts",
    multiple=True,
    required=True,
    help="Delta center spec; repeatable.",
)
@click.option("--emin", type=float, default=None, help="Lower edge of the energy search window.")
@click.option("--emax", type=float, default=None, help="Upper edge (must stay below 0).")
@click.option("--tol", type=float, default=1e-12, show_default=True, help="Energy tolerance.")
@click.option(
    "--method",
    type=click.Choice(["auto", "scan"]),
    default="auto",
    show_default=True,
    help="auto uses closed forms for a single center; scan always roots det M.",
)
@click.option("--grid-points", type=int, default=400, show_default=True, help="Scan grid size.")
@_output_options
def cmd_bound(dim, center_texts, emin, emax, tol, method, grid_points, fmt, output):
    """Bound-state energies: real poles of the interacting Green's function."""
    centers = [_parse_center(dim, t) for t in center_texts]
    if (emin is None) != (emax is None):
        raise click.BadParameter("--emin and --emax must be given together")
    search = None if emin is None else (emin, emax)
    states = bound_states(
        dim, centers, search=search, tol=tol, method=method, grid_points=grid_points
    )
    rows = [
        (idx, float(st.energy), float(st.kappa)) for idx, st in enumerate(states)
    ]
    table = ResultTable(
        columns=[("index", "1"), ("energy", "1/L^2"), ("kappa", "1/L")],
        rows=rows,
        metadata=_metadata(
            "bound",
            {
                "dim": dim,
                "center": list(center_texts),
                "emin": emin,
                "emax": emax,
                "tol": tol,
                "method": method,
                "grid_points": grid_points,
            },
        ),
    )
    _emit(table, fmt, output)


@cli.command(name="scatter")
@click.option("--dim", type=click.IntRange(1, 3), required=True, help="1 or 3.")
@click.option("--eb", type=float, default=None, help="Bound-state energy fixing the 3D coupling.")
@click.option("--lambda-r", "lambda_r", type=float, default=None, help="3D renormalized coupling.")
@click.option("--lam", "lam", type=float, default=None, help="1D bare coupling strength.")
@click.option("--k", "ks", type=float, multiple=True, help="Momentum; repeatable.")
@click.option("--k-grid", "k_grid", default=None, help="Momentum grid start:stop:count.")
@click.option(
    "--policy",
    type=click.Choice(list(POLICIES)),
    default=None,
    help="Branch policy for the amplitude sign (default: env or unitary).",
)
@_output_options
def cmd_scatter(dim, eb, lambda_r, lam, ks, k_grid, policy, fmt, output):
    """Scattering observables: 3D amplitude/cross-section or 1D T and R."""
    momenta = _one_of_k(ks, k_grid, "--k", "--k-grid")
    params = {
        "dim": dim,
        "eb": eb,
        "lambda_r": lambda_r,
        "lam": lam,
        "k": [float(v) for v in momenta],
        "policy": policy,
    }
    if dim == 1:
        if lam is None or eb is not None or lambda_r is not None:
            raise click.BadParameter("dim 1 takes --lam only")
        rows = []
        for k in momenta:
            t, r = transmission1d(k, lam)
            rows.append((float(k), float(t), float(r)))
        table = ResultTable(
            columns=[("k", "1/L"), ("transmission", "1"), ("reflection", "1")],
            rows=rows,
            metadata=_metadata("scatter", params, policy),
        )
        _emit(table, fmt, output)
        return
    if dim == 2:
        raise IllegalSpecError(
            "scattering observables are implemented for dim 1 and 3 only", dim=dim
        )
    if (eb is None) == (lambda_r is None):
        raise click.BadParameter("dim 3 takes exactly one of --eb or --lambda-r")
    if eb is None:
        spec = renormalized_3d(lambda_r)
        e_b = spec.bound_state_energy(3)
        if e_b is None:
            raise IllegalSpecError(
                "nonpositive lambda_r carries no 3D bound state; give --eb instead",
                lambda_r=lambda_r,
            )
    else:
        e_b = eb
    rows = []
    for k in momenta:
        amp = amplitude3d(k, e_b, policy)
        sigma = cross_section_total(k, e_b)
        resid = optical_theorem_residual(k, e_b, policy)
        rows.append(
            (
                float(k),
                float(amp.f.real),
                float(amp.f.imag),
                float(abs(amp.f) ** 2),
                float(sigma),
                float(resid),
            )
        )
    table = ResultTable(
        columns=[
            ("k", "1/L"),
            ("re_f", "L"),
            ("im_f", "L"),
            ("abs_f_sq", "L^2"),
            ("sigma", "L^2"),
            ("optical_residual", "L"),
        ],
        rows=rows,
        metadata=_metadata("scatter", params, policy),
    )
    _emit(table, fmt, output)


@cli.command(name="rgflow")
@click.option("--dim", type=click.IntRange(2, 3), required=True, help="2 or 3.")
@click.option("--lambda-r", "lambda_r", type=float, default=None, help="Renormalized coupling.")
@click.option("--mu", type=float, default=None, help="Subtraction scale (2D only).")
@click.option("--eb", type=float, default=None, help="Bound-state energy (3D alternative).")
@click.option(
    "--cutoffs",
    default=DEFAULT_FLOW_CUTOFFS,
    show_default=True,
    help="Comma-separated cutoff ladder.",
)
@_output_options
def cmd_rgflow(dim, lambda_r, mu, eb, cutoffs, fmt, output):
    """Running of the bare coupling with the cutoff, at fixed physics.

    In 2D each row also re-expresses the coupling at a shifted subtraction
    scale and recomputes the bound state, demonstrating scheme invariance.
    """
    lam_caps = _parse_floats(cutoffs, "--cutoffs")
    params = {"dim": dim, "lambda_r": lambda_r, "mu": mu, "eb": eb, "cutoffs": cutoffs}
    rows = []
    if dim == 2:
        if lambda_r is None or mu is None or eb is not None:
            raise click.BadParameter("dim 2 takes --lambda-r and --mu")
        spec = renormalized_2d(lambda_r, mu)
        for i, cap in enumerate(lam_caps):
            bare = bare_from_renormalized(2, spec, Cutoff(cap))
            mu_prime = mu * 2.0**i
            lam_r_prime = rg_shift(lambda_r, mu, mu_prime)
            e_b = transmutation_energy(renormalized_2d(lam_r_prime, mu_prime))
            rows.append((float(cap), float(bare), float(mu_prime), float(lam_r_prime), float(e_b)))
        columns = [
            ("lambda_cap", "1/L"),
            ("bare_lambda", "1"),
            ("mu_prime", "1/L"),
            ("lambda_r_prime", "1"),
            ("eb", "1/L^2"),
        ]
    else:
        if (lambda_r is None) == (eb is None) or mu is not None:
            raise click.BadParameter("dim 3 takes exactly one of --lambda-r or --eb, no --mu")
        spec = renormalized_3d(lambda_r) if eb is None else from_bound_state(eb)
        e_b = spec.bound_state_energy(3)
        if e_b is None:
            raise IllegalSpecError(
                "rgflow table needs a bound state; nonpositive lambda_r has none",
                lambda_r=lambda_r,
            )
        for cap in lam_caps:
            bare = bare_from_renormalized(3, spec, Cutoff(cap))
            rows.append((float(cap), float(bare), float(bare * cap), float(e_b)))
        columns = [
            ("lambda_cap", "1/L"),
            ("bare_lambda", "L"),
            ("bare_times_cutoff", "1"),
            ("eb", "1/L^2"),
        ]
    table = ResultTable(columns=columns, rows=rows, metadata=_metadata("rgflow", params))
    _emit(table, fmt, output)


@cli.command(name="friedman")
@click.option("--k", "kk", type=float, required=True, help="Momentum scale sqrt(-E) (1/L).")
@click.option(
    "--cutoffs",
    default=DEFAULT_FRIEDMAN_CUTOFFS,
    show_default=True,
    help="Comma-separated ascending cutoff ladder.",
)
@_output_options
def cmd_friedman(kk, cutoffs, fmt, output):
    """4D bubble decomposition: the nonremovable log that forbids D >= 4."""
    lam_caps = _parse_floats(cutoffs, "--cutoffs")
    report = friedman_report(kk, lam_caps)
    rows = [
        (
            float(row.lambda_cap),
            float(row.total_bubble),
            float(row.quadratic_part),
            float(row.nonremovable_part),
        )
        for row in report
    ]
    table = ResultTable(
        columns=[
            ("lambda_cap", "1/L"),
            ("total_bubble", "1/L^2"),
            ("quadratic_part", "1/L^2"),
            ("nonremovable_part", "1/L^2"),
        ],
        rows=rows,
        metadata=_metadata("friedman", {"k": kk, "cutoffs": cutoffs}),
    )
    _emit(table, fmt, output)


@cli.command(name="trivial")
@click.option("--dim", type=click.IntRange(2, 3), required=True, help="2 or 3.")
@click.option("--lam", "lam", type=float, required=True, help="Fixed bare coupling, > 0.")
@click.option("--energy", type=float, required=True, help="Real probe energy, < 0.")
@click.option("--r", type=float, default=1.0, show_default=True, help="Probe separation.")
@click.option(
    "--cutoffs",
    default=DEFAULT_FLOW_CUTOFFS,
    show_default=True,
    help="Comma-separated cutoff ladder.",
)
@_output_options
def cmd_trivial(dim, lam, energy, r, cutoffs, fmt, output):
    """Fixed repulsive coupling: the interaction term dies with the cutoff.

    Each row evaluates the regularized denominator 1/lam + B(K, cutoff) and
    the resulting correction |G0(E; r, 0)|^2 / |denominator| to the free
    Green's function; the correction vanishing as the cutoff grows is the
    triviality statement.
    """
    if not (lam > 0.0):
        raise click.BadParameter("--lam must be positive; attraction needs renormalization")
    if not (energy < 0.0):
        raise click.BadParameter("--energy must be negative")
    lam_caps = _parse_floats(cutoffs, "--cutoffs")
    kk = math.sqrt(-energy)
    e = ComplexEnergy(complex(energy, 0.0))
    x = SpatialPoint((r,) + (0.0,) * (dim - 1))
    origin = SpatialPoint((0.0,) * dim)
    g0x = g0(dim, e, x, origin).value
    rows = []
    for cap in lam_caps:
        den = 1.0 / lam + bubble_regularized(dim, kk, Cutoff(cap))
        correction = abs(g0x) ** 2 / abs(den)
        rows.append((float(cap), float(den), float(correction)))
    den_unit = "1" if dim == 2 else "1/L"
    corr_unit = "1" if dim == 2 else "1/L"
    table = ResultTable(
        columns=[
            ("lambda_cap", "1/L"),
            ("denominator", den_unit),
            ("correction_abs", corr_unit),
        ],
        rows=rows,
        metadata=_metadata(
            "trivial",
            {"dim": dim, "lam": lam, "energy": energy, "r": r, "cutoffs": cutoffs},
        ),
    )
    _emit(table, fmt, output)


def _verify_checks(fast: bool):
    """Yield (name, error, tol) triples comparing closed forms to oracles."""
    checks = []

    radii = (1.0,) if fast else (0.5, 1.0, 2.0)
    e_probe = -1.0
    for dim in (1, 2, 3):
        origin = SpatialPoint((0.0,) * dim)
        for r in radii:
            x = SpatialPoint((r,) + (0.0,) * (dim - 1))
            closed = g0(dim, ComplexEnergy(e_probe), x, origin).value.real
            bruteforce = oracles.g0_by_quadrature(dim, e_probe, r)
            checks.append((f"g0_quadrature_d{dim}_r{r:g}", abs(closed - bruteforce), 1e-8))
    closed0 = g0(1, ComplexEnergy(e_probe), SpatialPoint((0.0,)), SpatialPoint((0.0,))).value.real
    checks.append(
        ("g0_quadrature_d1_r0", abs(closed0 - oracles.g0_by_quadrature(1, e_probe, 0.0)), 1e-8)
    )

    single = [center(0.0, bare_1d(-2.0))]
    errs = []
    for points in (1001, 2001, 4001):
        lat = oracles.Lattice1D(half_width=20.0, points=points)
        e_lat = oracles.lattice1d_spectrum(single, lat, 1)[0]
        errs.append(abs(e_lat - (-1.0)))
    checks.append(("lattice_bound_state_h0.01", errs[-1], 2e-2))
    order = math.log2(errs[-2] / errs[-1])
    checks.append(("lattice_convergence_order", max(0.0, 0.9 - order), 0.0))

    pair = [center(-1.0, bare_1d(-2.0)), center(1.0, bare_1d(-2.0))]
    det_states = bound_states(1, pair, method="scan")
    kappas = oracles.shooting1d(pair, (0.05, 3.0))
    shoot = sorted(-k * k for k in kappas)
    if len(shoot) != len(det_states):
        checks.append(("shooting_two_delta", float("inf"), 1e-6))
    else:
        worst = max(
            abs(st.energy - e_ref) for st, e_ref in zip(det_states, shoot)
        )
        checks.append(("shooting_two_delta", worst, 1e-6))

    base = renormalized_2d(-4.0 * math.pi, 1.0)
    e_ref = transmutation_energy(base)
    worst = 0.0
    for factor in np.geomspace(0.25, 16.0, 10):
        mu_prime = base.mu * float(factor)
        lam_prime = rg_shift(base.lambda_r, base.mu, mu_prime)
        e_shift = transmutation_energy(renormalized_2d(lam_prime, mu_prime))
        worst = max(worst, abs(e_shift - e_ref) / abs(e_ref))
    checks.append(("transmutation_mu_invariance", worst, 1e-12))

    kk = math.sqrt(math.e * abs(e_ref))
    target = -1.0 / (4.0 * math.pi)
    lam_caps = [1e2, 1e3, 1e4, 1e5, 1e6]
    den_errs = []
    for cap in lam_caps:
        bare = bare_from_renormalized(2, base, Cutoff(cap))
        den = 1.0 / bare + bubble_regularized(2, kk, Cutoff(cap))
        den_errs.append(abs(den - target))
    checks.append(("denominator_limit_2d", den_errs[-1], 1e-6))
    slope = -np.polyfit(np.log(lam_caps), np.log(den_errs), 1)[0]
    checks.append(("denominator_order_2d", max(0.0, abs(slope - 2.0) - 0.2), 0.0))

    spec3 = renormalized_3d(4.0 * math.pi)

    def det3(kap: float) -> float:
        return renormalized_denominator(3, -kap * kap, spec3).value.real

    kap_root = refine_root(det3, 0.25, 3.0, xtol=1e-14)
    checks.append(("root_finder_3d", abs(kap_root * kap_root - 1.0), 1e-12))

    worst = 0.0
    for k in (0.1, 0.5, 1.0, 2.0, 5.0):
        for e_b in (-0.25, -1.0, -4.0):
            worst = max(worst, abs(optical_theorem_residual(k, e_b, "unitary")))
    checks.append(("optical_theorem_unitary", worst, 1e-14))

    lat = oracles.Lattice1D(half_width=10.0, points=2001)
    t_lat, _ = oracles.lattice1d_transmission(-2.0, 1.0, lat)
    t_exact, _ = transmission1d(1.0, -2.0)
    checks.append(("transmission_lattice", abs(t_lat - t_exact), 1e-4))

    v0 = oracles.shrinking_well_depth(-1.0, 1e-3)
    checks.append(
        ("shrinking_well_depth", abs(v0 * 1e-6 - (math.pi / 2.0) ** 2), 5e-3)
    )

    state = bound_states(1, single)[0]
    x_pt, y_pt = 0.77, -0.33
    psi_xy = residue_wavefunction(state, x_pt) * residue_wavefunction(state, y_pt)
    deltas = (1e-3, 1e-4)
    probes = []
    for delta in deltas:
        e_near = state.energy * (1.0 + delta)
        g_val = green(
            1, ComplexEnergy(e_near), SpatialPoint((x_pt,)), SpatialPoint((y_pt,)), single
        ).value.real
        probes.append((e_near - state.energy) * g_val)
    extrap = probes[1] + (probes[1] - probes[0]) * deltas[1] / (deltas[0] - deltas[1])
    checks.append(("residue_factorization_1d", abs(extrap - psi_xy), 1e-6))

    norm, _ = _scipy_quad(
        lambda t: residue_wavefunction(state, t) ** 2, -60.0, 60.0, points=[0.0], limit=200
    )
    checks.append(("residue_normalization_1d", abs(norm - 1.0), 1e-6))

    return checks


@cli.command(name="verify")
@click.option(
    "--fast",
    is_flag=True,
    default=False,
    help="Trim the quadrature sweep to one radius per dimension.",
)
@_output_options
def cmd_verify(fast, fmt, output):
    """Run every oracle cross-check; exit 4 if any comparison fails."""
    checks = _verify_checks(fast)
    rows = []
    names = []
    any_failed = False
    for idx, (name, error, tol) in enumerate(checks, start=1):
        passed = int(error <= tol)
        any_failed = any_failed or not passed
        names.append(name)
        rows.append((idx, passed, float(error), float(tol)))
    metadata = _metadata("verify", {"fast": fast})
    metadata["check_names"] = names
    table = ResultTable(
        columns=[("check_id", "1"), ("passed", "1"), ("error", "1"), ("tol", "1")],
        rows=rows,
        metadata=metadata,
    )
    _emit(table, fmt, output)
    if any_failed:
        raise _VerifyFailed()


def _emit_error(payload: dict, code: int) -> int:
    sys.stderr.write(json.dumps(payload, sort_keys=True) + "\n")
    return code


def main(argv=None) -> int:
    try:
        cli.main(args=argv, prog_name="deltagreen", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return int(exc.exit_code)
    except click.ClickException as exc:
        return _emit_error(
            {"error": "InvalidInput", "message": exc.format_message(), "details": {}}, 2
        )
    except _VerifyFailed:
        return 4
    except SpecValidationError as exc:
        return _emit_error(exc.payload(), 2)
    except DeltaGreenError as exc:
        return _emit_error(exc.payload(), 3)
    return 0
