"""Command-line scenario runner.

Subcommands:

    simulate <scenario> [...]   run one scenario, write the correlation series
    sweep <scenario> --param NAME --values a,b,c [...]
                                run the scenario once per parameter value
    tomography [...]            exercise the readout protocol on a grid
    extract --measure NAME FILE pull one column out of a results file

Output is CSV (default) or JSON, with every numeric field carrying 12
significant digits, so runs are reproducible byte for byte.
"""

import argparse
import concurrent.futures
import json
import os
import sys
from dataclasses import dataclass, field, fields, replace

import numpy as np

from .correlations import concurrence, quantum_discord
from .dynamics import TimeGrid, evolve_closed, evolve_lindblad
from .fock import basis_ket, partial_trace, pure_state_density
from .models import (
    FERMION_PAIR_REGISTER,
    QD_MF_REGISTER,
    SINGLE_FERMION_REGISTER,
    FermionModelParams,
    OpenSystemParams,
    QdMfParams,
    build_fermion_pair_hamiltonian,
    build_qd_mf_hamiltonian,
    build_single_fermion_hamiltonian,
    lindblad_jump_operators,
)
from .tomography import (
    ODD_PARITY_INDICES,
    closed_form_probabilities,
    phase_aligned_fidelity,
    polar_decompose,
    simulate_protocol,
)

__all__ = [
    "ScenarioConfig",
    "CorrelationSeries",
    "SCENARIO_DEFAULTS",
    "run_scenario",
    "run_tomography_check",
    "run_sweep",
    "render_series",
    "render_tomography",
    "load_config_file",
    "main",
]

# Per-scenario preset values.  The keys of each preset double as the set
# of model parameters the scenario accepts: passing any other model
# parameter to that scenario is an error.
SCENARIO_DEFAULTS = {
    "mf_coupled": {"epsilon_m": 0.5, "gamma": 0.0},
    "mf_uncoupled": {"epsilon_m": 0.0, "gamma": 0.0},
    "single_fermion": {"epsilon_c": 0.0, "gamma": 0.0},
    "fermion_pair": {"gamma": 0.0},
    "open_system": {"epsilon_m": 0.5, "gamma": 0.05},
    "tomography": {"epsilon_m": 0.5, "T": 1.0},
}

_MODEL_PARAMS = ("epsilon_m", "epsilon_c", "gamma", "T")

SERIES_FIELDS = (
    "t",
    "concurrence",
    "discord",
    "mutual_information",
    "classical_correlations",
    "pop_both",
    "pop_single",
    "pop_empty",
    "trace_error",
)

TOMOGRAPHY_FIELDS = (
    "t",
    "p11",
    "p10",
    "p01",
    "p00",
    "residual",
    "fidelity",
    "phase_recovered",
)

_CONFIG_FILE_KEYS = {
    "scenario": str,
    "epsilon_m": float,
    "epsilon_c": float,
    "gamma": float,
    "T": float,
    "t_max": float,
    "points": int,
    "dt_internal": float,
    "format": str,
    "output": str,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Fully resolved inputs of one scenario run."""

    scenario: str
    epsilon_m: float | None = None
    epsilon_c: float | None = None
    gamma: float | None = None
    T: float | None = None
    t_max: float = 20.0
    points: int = 2001
    dt_internal: float | None = None
    output_format: str = "csv"
    output_path: str | None = None

    def __post_init__(self):
        if self.scenario not in SCENARIO_DEFAULTS:
            known = ", ".join(sorted(SCENARIO_DEFAULTS))
            raise ValueError(
                f"unknown scenario {self.scenario!r} (choose from: {known})"
            )
        if self.output_format not in ("csv", "json"):
            raise ValueError(
                f"unknown output format {self.output_format!r} "
                "(choose from: csv, json)"
            )
        allowed = SCENARIO_DEFAULTS[self.scenario]
        for name in _MODEL_PARAMS:
            if getattr(self, name) is not None and name not in allowed:
                raise ValueError(
                    f"parameter {name!r} is not applicable to scenario "
                    f"{self.scenario!r}"
                )


@dataclass(frozen=True, eq=False)
class CorrelationSeries:
    """Correlation measures and dot populations on a time grid."""

    times: np.ndarray = field(repr=False)
    concurrence: np.ndarray = field(repr=False)
    discord: np.ndarray = field(repr=False)
    mutual_information: np.ndarray = field(repr=False)
    classical_correlations: np.ndarray = field(repr=False)
    pop_both: np.ndarray = field(repr=False)
    pop_single: np.ndarray = field(repr=False)
    pop_empty: np.ndarray = field(repr=False)
    trace_error: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = None
        for spec_field in fields(self):
            arr = np.asarray(getattr(self, spec_field.name), dtype=float)
            object.__setattr__(self, spec_field.name, arr)
            if arr.ndim != 1:
                raise ValueError(f"{spec_field.name} must be one-dimensional")
            if n is None:
                n = arr.shape[0]
            elif arr.shape[0] != n:
                raise ValueError("series columns have mismatched lengths")
        for name in ("concurrence", "discord"):
            arr = getattr(self, name)
            if arr.size and (arr.min() < -1e-10 or arr.max() > 1.0 + 1e-8):
                raise ValueError(
                    f"{name} values fall outside [0, 1]: "
                    f"min {arr.min():.3e}, max {arr.max():.3e}"
                )

    def __len__(self):
        return self.times.shape[0]

    def rows(self):
        """Yield one (t, ...) tuple per grid point, in SERIES_FIELDS order."""
        return zip(
            self.times,
            self.concurrence,
            self.discord,
            self.mutual_information,
            self.classical_correlations,
            self.pop_both,
            self.pop_single,
            self.pop_empty,
            self.trace_error,
        )


def _time_grid(config):
    if config.points < 2:
        raise ValueError(f"points must be >= 2, got {config.points}")
    spacing = config.t_max / (config.points - 1)
    dt = config.dt_internal
    if dt is None:
        dt = min(1e-3, spacing)
    return TimeGrid(0.0, config.t_max, config.points, dt_internal=dt)


def _resolved(config, name):
    value = getattr(config, name)
    if value is None:
        value = SCENARIO_DEFAULTS[config.scenario].get(name)
    if value is None:
        raise ValueError(
            f"parameter {name!r} is not applicable to scenario "
            f"{config.scenario!r}"
        )
    return value


def _series_from_reduced(times, reduced, trace_error):
    conc, disc, mutual, classical = [], [], [], []
    pop_both, pop_single, pop_empty = [], [], []
    for rho in reduced:
        conc.append(concurrence(rho))
        result = quantum_discord(rho)
        disc.append(result.discord)
        mutual.append(result.mutual_information)
        classical.append(result.classical_correlations)
        diag = rho.elements.diagonal().real
        pop_both.append(diag[3])
        pop_single.append(diag[1] + diag[2])
        pop_empty.append(diag[0])
    return CorrelationSeries(
        times=times,
        concurrence=conc,
        discord=disc,
        mutual_information=mutual,
        classical_correlations=classical,
        pop_both=pop_both,
        pop_single=pop_single,
        pop_empty=pop_empty,
        trace_error=trace_error,
    )


def _closed_trajectory(config):
    """Closed dot-MF evolution from |0, 0, 1> used by the tomography runs."""
    params = QdMfParams(epsilon_m=_resolved(config, "epsilon_m"))
    hamiltonian = build_qd_mf_hamiltonian(params)
    psi0 = basis_ket(QD_MF_REGISTER, (0, 0, 1))
    return evolve_closed(hamiltonian, psi0, _time_grid(config))


def run_scenario(config):
    """Run one scenario and return its CorrelationSeries."""
    scenario = config.scenario
    if scenario == "tomography":
        traj = _closed_trajectory(config)
        coupling = _resolved(config, "T")
        reduced, trace_error = [], []
        for psi in traj.states:
            record = simulate_protocol(psi, coupling)
            reduced.append(record.reconstructed)
            trace_error.append(
                abs(float(np.trace(record.reconstructed.elements).real) - 1.0)
            )
        return _series_from_reduced(traj.times, reduced, trace_error)

    if scenario in ("mf_coupled", "mf_uncoupled", "open_system"):
        params = QdMfParams(epsilon_m=_resolved(config, "epsilon_m"))
        hamiltonian = build_qd_mf_hamiltonian(params)
        register = QD_MF_REGISTER
        psi0 = basis_ket(register, (0, 0, 1))
    elif scenario == "single_fermion":
        params = FermionModelParams(
            variant="single_fermion", epsilon_c=_resolved(config, "epsilon_c")
        )
        hamiltonian = build_single_fermion_hamiltonian(params)
        register = SINGLE_FERMION_REGISTER
        psi0 = basis_ket(register, (0, 0, 1))
    elif scenario == "fermion_pair":
        params = FermionModelParams(variant="fermion_pair")
        hamiltonian = build_fermion_pair_hamiltonian(params)
        register = FERMION_PAIR_REGISTER
        psi0 = basis_ket(register, (0, 0, 1, 1))
    else:  # pragma: no cover - ScenarioConfig already validates
        raise ValueError(f"unknown scenario {scenario!r}")

    grid = _time_grid(config)
    gamma = _resolved(config, "gamma")
    if gamma > 0.0:
        jumps = lindblad_jump_operators(OpenSystemParams(gamma=gamma), register)
        traj = evolve_lindblad(hamiltonian, jumps, pure_state_density(psi0), grid)
        reduced = [partial_trace(rho, ["D1", "D2"]) for rho in traj.states]
        trace_error = [
            abs(float(np.trace(rho.elements).real) - 1.0) for rho in traj.states
        ]
    else:
        traj = evolve_closed(hamiltonian, psi0, grid)
        reduced = [
            partial_trace(pure_state_density(psi), ["D1", "D2"])
            for psi in traj.states
        ]
        trace_error = [
            abs(float(np.vdot(psi.amplitudes, psi.amplitudes).real) - 1.0)
            for psi in traj.states
        ]
    return _series_from_reduced(traj.times, reduced, trace_error)


def run_tomography_check(config):
    """Exercise the readout protocol at every grid time.

    Returns (records, rows): the TomographyRecord per time, and one
    (t, p11, p10, p01, p00, residual, fidelity, phase_recovered) tuple
    per time, where residual is the largest deviation of the simulated
    probabilities from their closed forms and fidelity compares the
    reconstruction against the direct reduced state after composing out
    the unobservable corner phase.
    """
    traj = _closed_trajectory(config)
    coupling = _resolved(config, "T")
    records, rows = [], []
    for t, psi in zip(traj.times, traj.states):
        record = simulate_protocol(psi, coupling)
        pd = polar_decompose(*(psi.amplitudes[i] for i in ODD_PARITY_INDICES))
        expected = closed_form_probabilities(pd)
        measured = (record.p11, record.p10, record.p01, record.p00)
        residual = max(abs(m - e) for m, e in zip(measured, expected))
        fidelity = phase_aligned_fidelity(record.reconstructed, record.reference)
        records.append(record)
        rows.append(
            (
                float(t),
                record.p11,
                record.p10,
                record.p01,
                record.p00,
                residual,
                fidelity,
                record.phase_recovered,
            )
        )
    return records, rows


def _format_value(value):
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    value = float(value)
    if value == 0.0:
        value = 0.0  # normalize -0.0
    return f"{value:.12g}"


def _format_json_value(value):
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    value = float(value)
    if value == 0.0:
        value = 0.0  # normalize -0.0
    return f"{value:.12g}"


def _render_rows(field_names, data_rows, output_format):
    if output_format == "csv":
        lines = [",".join(field_names)]
        for row in data_rows:
            lines.append(",".join(_format_value(v) for v in row))
        return "\n".join(lines) + "\n"
    if output_format == "json":
        entries = []
        for row in data_rows:
            pairs = ", ".join(
                f'"{name}": {_format_json_value(v)}'
                for name, v in zip(field_names, row)
            )
            entries.append("  {" + pairs + "}")
        return "[\n" + ",\n".join(entries) + "\n]\n"
    raise ValueError(f"unknown output format {output_format!r}")


def render_series(series, output_format):
    """Serialize a CorrelationSeries to CSV or JSON text."""
    return _render_rows(SERIES_FIELDS, series.rows(), output_format)


def render_tomography(rows, output_format):
    """Serialize tomography-check rows to CSV or JSON text."""
    return _render_rows(TOMOGRAPHY_FIELDS, rows, output_format)


def _write_output(text, output_path):
    if output_path is None:
        sys.stdout.write(text)
    else:
        with open(output_path, "w", newline="\n") as handle:
            handle.write(text)


def _stamped_path(config, parameter, value):
    base = config.output_path
    if base is None:
        base = f"{config.scenario}.{config.output_format}"
    stem, ext = os.path.splitext(base)
    if not ext:
        stem, ext = base, f".{config.output_format}"
    return f"{stem}_{parameter}_{value:.12g}{ext}"


def run_sweep(base_config, parameter, values):
    """Run a scenario once per parameter value, writing one file each.

    Returns the list of output paths in value order.  An empty value
    list is a no-op.
    """
    if parameter not in _MODEL_PARAMS:
        known = ", ".join(_MODEL_PARAMS)
        raise ValueError(
            f"unknown sweep parameter {parameter!r} (choose from: {known})"
        )
    if parameter not in SCENARIO_DEFAULTS[base_config.scenario]:
        raise ValueError(
            f"parameter {parameter!r} is not applicable to scenario "
            f"{base_config.scenario!r}"
        )
    if not values:
        return []
    jobs = []
    for value in values:
        path = _stamped_path(base_config, parameter, value)
        jobs.append(
            (replace(base_config, **{parameter: value}, output_path=path), path)
        )

    def _one(job):
        config, path = job
        series = run_scenario(config)
        _write_output(render_series(series, config.output_format), path)
        return path

    workers = min(4, len(jobs))
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_one, jobs))


def load_config_file(path):
    """Read a flat key = value config file; '#' starts a comment."""
    with open(path, "r") as handle:
        text = handle.read()
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(
                f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}"
            )
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _CONFIG_FILE_KEYS:
            known = ", ".join(sorted(_CONFIG_FILE_KEYS))
            raise ValueError(
                f"{path}:{lineno}: unknown config key {key!r} "
                f"(choose from: {known})"
            )
        converter = _CONFIG_FILE_KEYS[key]
        try:
            out[key] = converter(value)
        except ValueError:
            raise ValueError(
                f"{path}:{lineno}: cannot parse {value!r} as "
                f"{converter.__name__} for key {key!r}"
            ) from None
    return out


def _merge_config(args, scenario_required=True, fixed_scenario=None):
    """Resolve scenario defaults, config file, then CLI flags into a config."""
    file_values = {}
    if getattr(args, "config", None) is not None:
        file_values = load_config_file(args.config)

    scenario = fixed_scenario
    if scenario is None:
        scenario = getattr(args, "scenario", None)
    if scenario is None:
        scenario = file_values.get("scenario")
    if scenario is None:
        if scenario_required:
            raise ValueError(
                "no scenario given (pass one on the command line or set "
                "'scenario' in the config file)"
            )
        return None

    merged = {
        "scenario": scenario,
        "epsilon_m": None,
        "epsilon_c": None,
        "gamma": None,
        "T": None,
        "t_max": 20.0,
        "points": 2001,
        "dt_internal": None,
        "output_format": "csv",
        "output_path": None,
    }
    key_map = {
        "epsilon_m": "epsilon_m",
        "epsilon_c": "epsilon_c",
        "gamma": "gamma",
        "T": "T",
        "t_max": "t_max",
        "points": "points",
        "dt_internal": "dt_internal",
        "format": "output_format",
        "output": "output_path",
    }
    for key, target in key_map.items():
        if key in file_values:
            merged[target] = file_values[key]
    for attr, target in (
        ("epsilon_m", "epsilon_m"),
        ("epsilon_c", "epsilon_c"),
        ("gamma", "gamma"),
        ("T", "T"),
        ("t_max", "t_max"),
        ("points", "points"),
        ("dt_internal", "dt_internal"),
        ("format", "output_format"),
        ("output", "output_path"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            merged[target] = value
    return ScenarioConfig(**merged)


def _add_grid_flags(parser):
    parser.add_argument(
        "--t-max", type=float, default=None, help="end of the time grid"
    )
    parser.add_argument(
        "--points", type=int, default=None, help="number of grid points"
    )
    parser.add_argument(
        "--dt-internal",
        type=float,
        default=None,
        help="internal integrator step (open-system runs)",
    )
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default=None,
        help="output format (default csv)",
    )
    parser.add_argument(
        "--output", default=None, help="output file (default: stdout)"
    )
    parser.add_argument(
        "--config", default=None, help="flat key = value config file"
    )


def _add_model_flags(parser, names):
    flag_help = {
        "epsilon_m": "Majorana overlap splitting",
        "epsilon_c": "regular-fermion level",
        "gamma": "lead tunneling rate",
        "T": "readout mixing coupling",
    }
    for name in names:
        parser.add_argument(
            f"--{name.replace('_', '-')}",
            dest=name,
            type=float,
            default=None,
            help=flag_help[name],
        )


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="qdcorr",
        description=(
            "Quantum correlations of two dots coupled to a Majorana pair: "
            "scenario runner"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    scenarios = ", ".join(sorted(SCENARIO_DEFAULTS))

    p_sim = sub.add_parser("simulate", help="run one scenario")
    p_sim.add_argument(
        "scenario", nargs="?", default=None, help=f"one of: {scenarios}"
    )
    _add_model_flags(p_sim, _MODEL_PARAMS)
    _add_grid_flags(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_sweep = sub.add_parser(
        "sweep", help="run one scenario across several parameter values"
    )
    p_sweep.add_argument(
        "scenario", nargs="?", default=None, help=f"one of: {scenarios}"
    )
    p_sweep.add_argument(
        "--param",
        required=True,
        help="parameter to sweep (epsilon_m, epsilon_c, gamma, T)",
    )
    p_sweep.add_argument(
        "--values",
        required=True,
        help="comma-separated parameter values, e.g. 0,0.5,1",
    )
    _add_model_flags(p_sweep, _MODEL_PARAMS)
    _add_grid_flags(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_tomo = sub.add_parser(
        "tomography", help="exercise the occupation-readout protocol"
    )
    _add_model_flags(p_tomo, ("epsilon_m", "T"))
    _add_grid_flags(p_tomo)
    p_tomo.set_defaults(func=_cmd_tomography)

    p_ext = sub.add_parser(
        "extract", help="pull one measure out of a results file"
    )
    p_ext.add_argument("file", help="CSV or JSON results file")
    p_ext.add_argument(
        "--measure", required=True, help="column to extract (e.g. concurrence)"
    )
    p_ext.add_argument(
        "--output", default=None, help="output file (default: stdout)"
    )
    p_ext.set_defaults(func=_cmd_extract)

    return parser


def _cmd_simulate(args):
    config = _merge_config(args)
    series = run_scenario(config)
    _write_output(render_series(series, config.output_format), config.output_path)
    return 0


def _cmd_sweep(args):
    config = _merge_config(args)
    if getattr(args, config_param_name(args.param), None) is not None:
        raise ValueError(
            f"--{args.param.replace('_', '-')} cannot be fixed while "
            "sweeping it; drop the flag or sweep another parameter"
        )
    values = _parse_values(args.values)
    paths = run_sweep(config, args.param, values)
    for value, path in zip(values, paths):
        print(f"{args.param}={value:.12g} -> {path}")
    if not paths:
        print("no values given; nothing to do", file=sys.stderr)
    return 0


def config_param_name(parameter):
    """Map a sweep parameter name onto its ScenarioConfig attribute."""
    if parameter not in _MODEL_PARAMS:
        known = ", ".join(_MODEL_PARAMS)
        raise ValueError(
            f"unknown sweep parameter {parameter!r} (choose from: {known})"
        )
    return parameter


def _parse_values(text):
    text = text.strip()
    if not text:
        return []
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty value in --values list {text!r}")
        values.append(float(chunk))
    return values


def _cmd_tomography(args):
    config = _merge_config(args, fixed_scenario="tomography")
    records, rows = run_tomography_check(config)
    _write_output(
        render_tomography(rows, config.output_format), config.output_path
    )
    residual = max(row[5] for row in rows)
    recovered = [row[6] for row in rows if row[7]]
    unrecovered = sum(1 for row in rows if not row[7])
    print(f"max residual: {residual:.3e}", file=sys.stderr)
    if recovered:
        print(
            f"min recovered fidelity: {min(recovered):.12g}", file=sys.stderr
        )
    print(
        f"phase not recovered at {unrecovered}/{len(rows)} points",
        file=sys.stderr,
    )
    return 0


def _parse_results_text(text):
    stripped = text.lstrip()
    if stripped.startswith("["):
        entries = json.loads(text)
        if not entries:
            raise ValueError("results file holds no rows")
        names = list(entries[0].keys())
        rows = []
        for entry in entries:
            rows.append([entry.get(name) for name in names])
        return names, rows
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise ValueError("results file is empty")
    names = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return names, rows


def _cmd_extract(args):
    with open(args.file, "r") as handle:
        text = handle.read()
    names, rows = _parse_results_text(text)
    if "t" not in names:
        raise ValueError(f"{args.file}: no 't' column found")
    if args.measure not in names:
        known = ", ".join(n for n in names if n != "t")
        raise ValueError(
            f"unknown measure {args.measure!r} (file has: {known})"
        )
    t_index = names.index("t")
    m_index = names.index(args.measure)

    def _as_text(value):
        if isinstance(value, str):
            return value
        return _format_value(value)

    lines = [f"t,{args.measure}"]
    for row in rows:
        lines.append(f"{_as_text(row[t_index])},{_as_text(row[m_index])}")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
