"""Command-line surface: spectra, wavefunctions, thermodynamic curves,
experimental bounds, and the verification-suite runner.

Output is deterministic: identical configurations produce byte-identical
files (fixed 17-significant-digit formatting, '#'-prefixed metadata with the
effective configuration echoed as JSON).  Exit codes: 0 success, 2 usage or
validation, 3 I/O failure, 4 numeric out-of-regime.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass, replace

import numpy as np

from . import __version__
from .errors import (
    OutOfRegimeError,
    ParameterDomainError,
    QuantumNumberError,
    UnitSystemError,
    UnsupportedRepresentationError,
)
from .model import (
    NATURAL,
    SI,
    OscillatorConfig,
    PUBLISHED_DELTA_P_BOUND,
    PUBLISHED_DELTA_X_BOUND,
    PUBLISHED_THETA_BOUND,
    deformation_bounds,
    derive_params,
)
from .polynomials import gauss_jacobi_rule
from .tables import SpectrumTable, format_number
from . import spectrum1d as s1
from . import spectrumnd as snd
from . import thermo as th

USAGE_ERROR = 2
IO_ERROR = 3
REGIME_ERROR = 4

FIGURE_THETAS = (0.0, 1e-6, 1e-5)
FIGURE_QUANTITY = {2: "F", 3: "U", 4: "C", 5: "S"}


@dataclass
class RunConfig:
    """Effective run configuration; JSON config files use these exact keys."""

    units: str = NATURAL
    alpha1: float = 0.005
    alpha2: float = 0.005
    m: float = 1.0
    omega: float = 1.0
    dim: int = 1
    l: int = 0
    n_min: int = 0
    n_max: int = 10
    t_min: float = 15.0
    t_max: float = 50.0
    t_count: int = 36
    t_scale: str = "linear"
    format: str = "csv"
    out: str | None = None
    method: str = "highT"

    def oscillator(self, dim: int | None = None) -> OscillatorConfig:
        d = self.dim if dim is None else dim
        if self.units == NATURAL:
            return OscillatorConfig.natural(dim=d)
        return OscillatorConfig.si(m=self.m, omega=self.omega, dim=d)

    def echo(self) -> dict:
        """Effective configuration; the destination path is not part of it,
        so identical computations emit identical bytes wherever they land."""
        fields = asdict(self)
        fields.pop("out")
        return fields


def load_config(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParameterDomainError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParameterDomainError(f"config file {path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParameterDomainError("config file must hold a JSON object")
    allowed = set(RunConfig.__dataclass_fields__)
    unknown = set(data) - allowed
    if unknown:
        raise ParameterDomainError(f"unknown config keys: {sorted(unknown)}")
    return data


def build_run_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    if getattr(args, "config", None):
        cfg = replace(cfg, **load_config(args.config))
    overrides = {}
    for key in RunConfig.__dataclass_fields__:
        flag = getattr(args, key, None)
        if flag is not None:
            overrides[key] = flag
    cfg = replace(cfg, **overrides)
    if cfg.units not in (NATURAL, SI):
        raise ParameterDomainError(f"units must be 'natural' or 'si', got {cfg.units!r}")
    if cfg.format not in ("csv", "json"):
        raise ParameterDomainError(f"format must be 'csv' or 'json', got {cfg.format!r}")
    return cfg


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _emit(table: SpectrumTable, run: RunConfig, out: str | None) -> None:
    table.meta.setdefault("version", f"sdsosc {__version__}")
    table.meta.setdefault("config", run.echo())
    _write(table.to_csv() if run.format == "csv" else table.to_json(), out)


def _levels(run: RunConfig):
    if run.n_max < run.n_min or run.n_max < 0:
        raise QuantumNumberError(f"empty quantum-number range [{run.n_min}, {run.n_max}]")
    ns = range(max(run.n_min, 0), run.n_max + 1)
    if run.dim == 1:
        return [(n, 0) for n in ns]
    return [(n, l) for n in ns for l in range(n % 2, n + 1, 2)]


def cmd_spectrum(args: argparse.Namespace) -> int:
    run = build_run_config(args)
    cfg = run.oscillator()
    params = derive_params(run.alpha1, run.alpha2, cfg)

    if args.figure1:
        pairs = [(0.0, 0.0), (run.alpha1, run.alpha2)]
        # the preset's point is the large-n saturation, so reach at least 1e4
        # unless the range was set explicitly
        n_max = run.n_max if args.n_max is not None else max(run.n_max, 10_000)
        grid = sorted({int(v) for v in np.geomspace(1, max(n_max, 2), 60)})
        columns = ["n"] + [f"dE[alpha1={a1:g},alpha2={a2:g}]" for a1, a2 in pairs]
        rows = []
        for n in grid:
            row = [n]
            for a1, a2 in pairs:
                p = derive_params(a1, a2, cfg)
                row.append(s1.energy_1d(n + 1, p, cfg) - s1.energy_1d(n, p, cfg))
            rows.append(tuple(row))
        meta = {"kind": "spectrum-spacing", "units": run.units,
                "asymptotes": {f"{a1:g},{a2:g}": s1.spacing_asymptote(derive_params(a1, a2, cfg), cfg) for a1, a2 in pairs}}
        _emit(SpectrumTable(columns=columns, rows=rows, meta=meta), run, run.out)
        return 0

    rows = []
    step = 1 if run.dim == 1 else 2
    for n, l in _levels(run):
        if run.dim == 1:
            energy = s1.energy_1d(n, params, cfg)
            nxt = s1.energy_1d(n + step, params, cfg)
            _, dev = s1.energy_deviation_first_order(n, params, cfg)
        else:
            energy = snd.energy_nd(n, l, run.dim, params, cfg)
            nxt = snd.energy_nd(n + step, l, run.dim, params, cfg)
            _, dev = snd.energy_deviation_first_order_nd(n, l, run.dim, params, cfg)
        rows.append((n, l, run.dim, energy, nxt - energy, dev))
    meta = {
        "kind": "spectrum",
        "units": run.units,
        "alpha1": run.alpha1,
        "alpha2": run.alpha2,
        "spacing_asymptote": s1.spacing_asymptote(params, cfg),
    }
    table = SpectrumTable(
        columns=("n", "l", "dim", "energy", "spacing", "deviation_first_order"),
        rows=rows,
        meta=meta,
    )
    _emit(table, run, run.out)
    return 0


def cmd_wavefunction(args: argparse.Namespace) -> int:
    run = build_run_config(args)
    cfg = run.oscillator()
    n = args.n
    count = args.p_count
    if count < 2:
        raise ParameterDomainError("p-count must be at least 2")

    if args.undeformed:
        sigma = cfg.m * cfg.omega * cfg.hbar
        span = 6.0 * math.sqrt(sigma * (n + 1.0))
        grid = np.linspace(-span, span, count)
        values = s1.wavefunction_1d_undeformed(n, cfg, grid)
        rule = gauss_jacobi_rule(160, 0.0, 0.0)
        sample = np.asarray(s1.wavefunction_1d_undeformed(n, cfg, span * rule.nodes))
        norm = span * float(np.dot(rule.weights, sample * sample))
        meta = {"kind": "wavefunction-undeformed", "n": n, "norm_check": norm, "units": run.units}
        table = SpectrumTable(columns=("p", "psi"), rows=list(zip(grid.tolist(), values.tolist())), meta=meta)
        _emit(table, run, run.out)
        return 0

    params = derive_params(run.alpha1, run.alpha2, cfg)
    if run.alpha2 <= 0.0:
        raise UnsupportedRepresentationError(
            "undeformed p-representation: use --undeformed to emit the Gaussian-Hermite profile"
        )
    pmax = s1.momentum_cutoff(params)
    clip = pmax * (1.0 - 1e-9)
    if run.dim == 1:
        grid = np.linspace(-clip, clip, count)
        values = s1.wavefunction_1d(n, params, cfg, grid)
        norm = s1.wavefunction_norm_1d(n, params, cfg)
        meta = {"kind": "wavefunction", "n": n, "norm_check": norm, "units": run.units,
                "alpha1": run.alpha1, "alpha2": run.alpha2, "momentum_cutoff": pmax}
    else:
        grid = np.linspace(0.0, clip, count)
        values = snd.radial_wavefunction(n, run.l, run.dim, params, cfg, grid)
        norm = snd.radial_norm(n, run.l, run.dim, params, cfg)
        meta = {"kind": "radial-wavefunction", "nr": n, "l": run.l, "dim": run.dim,
                "norm_check": norm, "units": run.units,
                "alpha1": run.alpha1, "alpha2": run.alpha2, "momentum_cutoff": pmax}
    table = SpectrumTable(columns=("p", "psi"), rows=list(zip(grid.tolist(), np.asarray(values).tolist())), meta=meta)
    _emit(table, run, run.out)
    return 0


def _theta_params(theta: float, cfg: OscillatorConfig):
    """Realize a target theta with a pure position-space deformation."""
    return derive_params(0.0, theta * cfg.c**2, cfg)


def cmd_thermo(args: argparse.Namespace) -> int:
    run = build_run_config(args)
    figure = next((k for k in FIGURE_QUANTITY if getattr(args, f"figure{k}")), None)
    cfg = run.oscillator(dim=3 if figure else None)
    if run.t_count < 2 or run.t_max <= run.t_min or run.t_min <= 0:
        raise ParameterDomainError("temperature grid needs t_min > 0, t_max > t_min, t_count >= 2")
    if run.t_scale == "log":
        grid = np.geomspace(run.t_min, run.t_max, run.t_count)
    elif run.t_scale == "linear":
        grid = np.linspace(run.t_min, run.t_max, run.t_count)
    else:
        raise ParameterDomainError(f"t_scale must be 'linear' or 'log', got {run.t_scale!r}")

    methods = ("direct", "highT", "em", "numeric-derivative") if run.method == "all" else (run.method,)
    if figure:
        thetas = list(FIGURE_THETAS)
        quantities = (FIGURE_QUANTITY[figure],)
    else:
        thetas = [derive_params(run.alpha1, run.alpha2, cfg).theta]
        quantities = th.QUANTITIES

    curves = []
    for theta in thetas:
        params = _theta_params(theta, cfg)
        tp = th.thermo_params(params, cfg, l=run.l)
        curves.append((theta, th.thermo_curve(grid, tp, cfg, methods=methods)))

    if run.out is None:
        raise ParameterDomainError("thermo writes one file per quantity; --out prefix is required")

    any_ok = False
    for q in quantities:
        columns = ["T"]
        series = []
        for theta, curve in curves:
            for m in methods:
                columns.append(f"{q}[theta={theta:g}][{m}]")
                series.append(curve.data[m][q])
                columns.append(f"in_regime[theta={theta:g}][{m}]")
                series.append(curve.flags[m].astype(int))
        rows = [tuple([grid[i]] + [col[i] for col in series]) for i in range(grid.size)]
        any_ok = any_ok or any(
            bool(curve.flags[m][i]) and not math.isnan(curve.data[m][q][i])
            for _, curve in curves for m in methods for i in range(grid.size)
        )
        meta = {"kind": f"thermo-{q}", "units": run.units, "l": run.l,
                "dim": cfg.dim, "thetas": [float(t) for t in thetas], "methods": list(methods)}
        table = SpectrumTable(columns=columns, rows=rows, meta=meta)
        _emit(table, run, f"{run.out}.{q}.{run.format}")
    if not any_ok:
        print("error: every grid point is out of the high-temperature regime", file=sys.stderr)
        return REGIME_ERROR
    return 0


def cmd_bounds(args: argparse.Namespace) -> int:
    run = build_run_config(args)
    cfg = run.oscillator()
    bounds = deformation_bounds(cfg, args.b_field, args.n_level)
    lines = [
        f"# version: sdsosc {__version__}",
        f"# config: {json.dumps(run.echo(), sort_keys=True)}",
        f"B_field_T: {format_number(bounds.b_field)}",
        f"n_level: {bounds.n_level}",
        f"theta_exact_c2units: {format_number(bounds.theta_exact)}",
        f"theta_bound_c2units: {format_number(bounds.theta_bound)}",
        f"theta_reference_c2units: {format_number(PUBLISHED_THETA_BOUND)}",
        f"delta_x_bound_m: {format_number(bounds.delta_x_bound)}",
        f"delta_x_reference_m: {format_number(PUBLISHED_DELTA_X_BOUND)}",
        f"delta_p_bound_kgms: {format_number(bounds.delta_p_bound)}",
        f"delta_p_reference_kgms: {format_number(PUBLISHED_DELTA_P_BOUND)}",
        f"theta_scaling_exponent_in_B: {format_number(bounds.scaling_exponent)}",
    ]
    _write("\n".join(lines) + "\n", run.out)
    return 0


def _suite_oracles() -> list[dict]:
    checks = []
    cfg1 = OscillatorConfig.natural(dim=1)
    worst = 0.0
    for a1, a2 in ((0.005, 0.005), (0.02, 0.0), (1e-6, 1e-4)):
        params = derive_params(a1, a2, cfg1)
        for n in (0, 1, 7, 100, 5000):
            e, o = s1.energy_1d(n, params, cfg1), s1.energy_1d_oracle(n, params, cfg1)
            worst = max(worst, abs(e - o) / e)
    checks.append({"name": "energy-two-path-1d", "passed": worst <= 1e-12, "detail": f"worst rel {worst:.3e}"})
    worst = 0.0
    for dim in (2, 3, 10):
        cfg = OscillatorConfig.natural(dim=dim)
        params = derive_params(0.005, 0.005, cfg)
        for nr in (0, 2, 11):
            for l in (0, 1, 5):
                e = snd.energy_nd(2 * nr + l, l, dim, params, cfg)
                o = snd.energy_nd_oracle(nr, l, dim, params, cfg)
                worst = max(worst, abs(e - o) / e)
    checks.append({"name": "energy-two-path-nd", "passed": worst <= 1e-12, "detail": f"worst rel {worst:.3e}"})
    worst = 0.0
    for nu in (0.75, 100.0, 1e6, 1e8):
        for n in (0, 3):
            worst = max(worst, abs(s1.normalization_identity_residual(n, nu)))
    for mu in (2.5, 1e4, 1e8):
        worst = max(worst, abs(snd.radial_normalization_identity_residual(1, 2, 3, mu)))
    checks.append({"name": "normalization-identity", "passed": worst <= 1e-12, "detail": f"worst |residual| {worst:.3e}"})
    return checks


def _suite_orthonormality() -> list[dict]:
    from .polynomials import gegenbauer

    checks = []
    cfg = OscillatorConfig.natural(dim=3)
    params = derive_params(0.005, 0.005, cfg)
    nu = s1.nu_exponent(params, cfg)
    rule = gauss_jacobi_rule(24, nu - 0.5, nu - 0.5)
    kmax = 8
    worst = 0.0
    polys = [np.asarray(gegenbauer(n, nu, rule.nodes)) for n in range(kmax + 1)]
    scale = math.exp(-0.5 * math.log(params.alpha2))
    for n in range(kmax + 1):
        ln_n = s1.log_norm_constant_1d(n, nu, params.alpha2)
        for m in range(n, kmax + 1):
            ln_m = s1.log_norm_constant_1d(m, nu, params.alpha2)
            g = math.exp(ln_n + ln_m) * scale * rule.integrate(polys[n] * polys[m])
            worst = max(worst, abs(g - (1.0 if n == m else 0.0)))
    checks.append({"name": "gram-1d", "passed": worst <= 1e-8, "detail": f"worst |G - I| {worst:.3e}"})
    worst = 0.0
    for nr in range(5):
        for ms in range(nr, 5):
            g = _nd_inner(nr, ms, 1, 3, params, cfg)
            worst = max(worst, abs(g - (1.0 if nr == ms else 0.0)))
    checks.append({"name": "gram-nd", "passed": worst <= 1e-8, "detail": f"worst |G - I| {worst:.3e}"})
    return checks


def _nd_inner(n1: int, n2: int, l: int, dim: int, params, cfg) -> float:
    return snd.radial_inner_product(n1, n2, l, dim, params, cfg)


def _suite_limits() -> list[dict]:
    checks = []
    cfg = OscillatorConfig.natural(dim=1)
    zero = derive_params(0.0, 0.0, cfg)
    worst = max(
        abs(s1.energy_1d(n, zero, cfg) - math.sqrt(1.0 + 2.0 * n)) for n in range(0, 200, 7)
    )
    checks.append({"name": "undeformed-spectrum", "passed": worst == 0.0, "detail": f"max |diff| {worst:.3e}"})
    cfg3 = OscillatorConfig.natural(dim=3)
    worst = 0.0
    for n in range(0, 12, 2):
        es = [snd.energy_nd(n, l, 3, zero, cfg3) for l in range(n % 2, n + 1, 2)]
        worst = max(worst, max(es) - min(es))
    checks.append({"name": "undeformed-degeneracy", "passed": worst <= 1e-14, "detail": f"max split {worst:.3e}"})
    sups = []
    for a2 in (1e-3, 1e-4, 1e-5):
        params = derive_params(0.0, a2, cfg)
        grid = np.linspace(-3.0, 3.0, 61)
        sup = 0.0
        for n in range(4):
            d = np.abs(np.asarray(s1.wavefunction_1d(n, params, cfg, grid)) -
                       np.asarray(s1.wavefunction_1d_undeformed(n, cfg, grid)))
            sup = max(sup, float(np.max(d)))
        sups.append(sup)
    ok = sups[0] > sups[1] > sups[2]
    checks.append({"name": "wavefunction-limit-sweep", "passed": ok, "detail": f"sups {['%.3e' % s for s in sups]}"})
    params = derive_params(0.005, 0.005, cfg)
    asym = s1.spacing_asymptote(params, cfg)
    gap4 = s1.energy_1d(10001, params, cfg) - s1.energy_1d(10000, params, cfg)
    checks.append({
        "name": "spacing-asymptote",
        "passed": abs(gap4 - asym) / asym <= 0.01,
        "detail": f"|dE - asym|/asym at n=1e4: {abs(gap4 - asym) / asym:.3e}",
    })
    return checks


def _suite_thermo() -> list[dict]:
    checks = []
    worst = 0.0
    residues = {}
    for x in (20.0, 40.0):
        for theta in (0.0, 1e-6, 1e-5):
            cfg = OscillatorConfig.natural(dim=3)
            tp = th.thermo_params(_theta_params(theta, cfg), cfg)
            zd = th.partition_direct(x, tp, cfg, 1e-10)
            zh = th.partition_highT(x, tp, cfg).value
            worst = max(worst, abs(zd - zh) / zd)
            u_c = th.mean_energy(x, tp, cfg)
            u_n, c_n, s_n = th._numeric_ucs("highT", x, tp, cfg)
            residues[f"U[x={x:g},theta={theta:g}]"] = abs(u_c - u_n) / abs(u_n)
    checks.append({"name": "partition-chain", "passed": worst <= 0.05, "detail": f"worst direct-vs-highT rel {worst:.3e}"})
    worst_res = max(residues.values())
    checks.append({
        "name": "derivative-residues",
        "passed": worst_res <= 1e-4,
        "detail": json.dumps({k: f"{v:.3e}" for k, v in sorted(residues.items())}),
    })
    cfg = OscillatorConfig.natural(dim=3)
    fs, us, cs, ss = [], [], [], []
    for theta in (0.0, 1e-6, 1e-5):
        tp = th.thermo_params(_theta_params(theta, cfg), cfg)
        fs.append(th.free_energy(20.0, tp, cfg))
        us.append(th.mean_energy(20.0, tp, cfg))
        cs.append(th.specific_heat(20.0, tp, cfg))
        ss.append(th.entropy(20.0, tp, cfg))
    ok = fs[0] < fs[1] < fs[2] and us[0] > us[1] > us[2] and cs[0] > cs[1] > cs[2] and ss[0] > ss[1] > ss[2]
    checks.append({"name": "sign-structure", "passed": ok, "detail": f"F {fs}, U {us}"})
    return checks


VERIFY_SUITES = {
    "oracles": _suite_oracles,
    "orthonormality": _suite_orthonormality,
    "limits": _suite_limits,
    "thermo": _suite_thermo,
}


def cmd_verify(args: argparse.Namespace) -> int:
    run = build_run_config(args)
    names = list(VERIFY_SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for name in names:
        for check in VERIFY_SUITES[name]():
            checks.append({"suite": name, **check})
    passed = all(c["passed"] for c in checks)
    report = {"suite": args.suite, "passed": passed, "version": f"sdsosc {__version__}", "checks": checks}
    _write(json.dumps(report, sort_keys=True, indent=2) + "\n", run.out)
    return 0 if passed else 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file; flags override its keys")
    parser.add_argument("--units", choices=(NATURAL, SI))
    parser.add_argument("--alpha1", type=float)
    parser.add_argument("--alpha2", type=float)
    parser.add_argument("--m", type=float)
    parser.add_argument("--omega", type=float)
    parser.add_argument("--dim", type=int)
    parser.add_argument("--l", type=int)
    parser.add_argument("--format", choices=("csv", "json"))
    parser.add_argument("--out")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sdsosc", description=__doc__)
    parser.add_argument("--version", action="version", version=f"sdsosc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="energy tables and spacing series")
    _add_common(p)
    p.add_argument("--n-min", dest="n_min", type=int)
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--figure1", action="store_true", help="emit (n, spacing) series with and without deformation")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("wavefunction", help="momentum-space wavefunction samples")
    _add_common(p)
    p.add_argument("--n", type=int, required=True, help="level (1D) or radial number (dim > 1)")
    p.add_argument("--p-count", dest="p_count", type=int, default=201)
    p.add_argument("--undeformed", action="store_true", help="emit the zero-deformation profile")
    p.set_defaults(func=cmd_wavefunction)

    p = sub.add_parser("thermo", help="thermodynamic curves per method and theta")
    _add_common(p)
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--t-count", dest="t_count", type=int)
    p.add_argument("--t-scale", dest="t_scale", choices=("linear", "log"))
    p.add_argument("--method", choices=("direct", "highT", "em", "numeric-derivative", "all"))
    for k, q in FIGURE_QUANTITY.items():
        p.add_argument(f"--figure{k}", action="store_true", help=f"preset: {q} curves at theta in {FIGURE_THETAS}, 3D")
    p.set_defaults(func=cmd_thermo)

    p = sub.add_parser("bounds", help="Penning-trap deformation bounds (SI)")
    _add_common(p)
    p.add_argument("--b-field", dest="b_field", type=float, default=6.0)
    p.add_argument("--n-level", dest="n_level", type=float, default=1e10)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run a verification suite, report JSON")
    _add_common(p)
    p.add_argument("--suite", choices=tuple(VERIFY_SUITES) + ("all",), default="all")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterDomainError, QuantumNumberError, UnsupportedRepresentationError,
            UnitSystemError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OutOfRegimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return REGIME_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return IO_ERROR


if __name__ == "__main__":
    sys.exit(main())
