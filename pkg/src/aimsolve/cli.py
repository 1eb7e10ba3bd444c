"""Command-line front end.

Commands
--------
spectrum      eigenstates of one potential by any method
table1        Hulthén s-state energies for the standard screening parameters
table2        H2 Morse vibrational levels n = 0, 5, 7 in eV
verify        cross-check closed form, AIM and the Numerov oracle
wavefunction  sample a normalised radial wavefunction to a two-column file

Exit codes: 0 ok, 1 verification failure, 2 input error, 3 AIM did not converge.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .aim import AimConfig, AimError, EigenstateRecord, find_eigenvalue
from .oracle import OracleError, solve_potential
from .potentials import (H2_MORSE, HulthenParams, MorseParams, energy_n, epsilon_n,
                         make_aim_problem, n_max_bound)
from .wavefunctions import format_wavefunction, make_wavefunction, normalize

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_AIM = 0, 1, 2, 3

METHODS = ("closed", "aim", "oracle")
METHOD_TAG = {"closed": "closed_form", "aim": "aim", "oracle": "oracle"}

TABLE1_DELTAS = (0.002, 0.01, 0.05, 0.2)
TABLE1_ROWS = 5
TABLE2_STATES = (0, 5, 7)

# verification tolerances
TOL_EPS = 1e-8
TOL_HULTHEN = 1e-6
TOL_MORSE_EV = 1e-3


class InputError(ValueError):
    """Bad command-line or configuration input (exit code 2)."""


@dataclass
class RunConfig:
    command: str
    potential: Optional[str] = None
    params: Dict[str, float] = field(default_factory=dict)
    method: str = "closed"
    output_format: str = "table"
    include_unphysical: bool = False
    output_path: Optional[str] = None
    kmax: int = 50
    series_order: int = 60
    x0: str = "0.5"
    oracle_points: Optional[int] = None
    n: Optional[int] = None
    n_count: Optional[int] = None
    points: int = 10001


# --------------------------------------------------------------------------
# parsing

HULTHEN_FLAGS = (("delta", float, None), ("q", float, 1.0), ("Z", float, 1.0),
                 ("mass", float, 1.0), ("hbar", float, 1.0), ("e-charge", float, 1.0))
MORSE_FLAGS = (("De", float, H2_MORSE.De), ("a", float, H2_MORSE.a),
               ("re", float, H2_MORSE.re), ("mu", float, H2_MORSE.mu),
               ("hbar-c", float, H2_MORSE.hbar_c), ("amu-to-ev", float, H2_MORSE.amu_to_ev))


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--config", help="key = value file supplying option defaults")
    g.add_argument("--format", dest="format", choices=("table", "csv", "json"))
    g.add_argument("--out", help="write output here instead of stdout")
    g.add_argument("--include-unphysical", action="store_true", default=None,
                   help="also list states with epsilon <= 0 (closed form only)")
    g.add_argument("--method", choices=METHODS + ("all",))
    g.add_argument("--kmax", type=int, help="maximum AIM iterations")
    g.add_argument("--series-order", type=int, help="Taylor order of the AIM series")
    g.add_argument("--x0", help="AIM expansion point, a number or 'heuristic'")
    g.add_argument("--oracle-points", type=int, help="fixed Numerov grid size")
    return p


def _add_params(p: argparse.ArgumentParser, which: str) -> None:
    flags = HULTHEN_FLAGS if which == "hulthen" else MORSE_FLAGS
    for name, typ, _ in flags:
        p.add_argument(f"--{name}", type=typ)
    if which == "hulthen":
        p.add_argument("--allow-negative-q", action="store_true", default=None)


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="aimsolve", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="eigenstates of one potential")
    pots = sp.add_subparsers(dest="potential", required=True)
    for name in ("hulthen", "morse"):
        pp = pots.add_parser(name, parents=[common])
        _add_params(pp, name)
        pp.add_argument("--n-count", type=int,
                        help="number of states from n = 0 (default: all bound states)")

    sub.add_parser("table1", parents=[common], help="Hulthén reference table")
    sub.add_parser("table2", parents=[common], help="H2 Morse reference table")

    vp = sub.add_parser("verify", parents=[common], help="method cross-check")
    vp.add_argument("--potential", choices=("hulthen", "morse", "all"))

    wp = sub.add_parser("wavefunction", help="export R_n(r)")
    wpots = wp.add_subparsers(dest="potential", required=True)
    for name in ("hulthen", "morse"):
        pp = wpots.add_parser(name, parents=[common])
        _add_params(pp, name)
        pp.add_argument("--n", type=int, required=False)
        pp.add_argument("--points", type=int, help="number of samples (default 10001)")
    return parser


def _leaf_parser(parser: argparse.ArgumentParser, ns) -> argparse.ArgumentParser:
    """The (sub)parser that owns the options for ``ns``."""
    leaf = parser
    for key in ("command", "potential"):
        value = getattr(ns, key, None)
        subs = [a for a in leaf._actions if isinstance(a, argparse._SubParsersAction)]
        if not subs or value is None or value not in subs[0].choices:
            break
        leaf = subs[0].choices[value]
    return leaf


def _read_config(path: str) -> List[Tuple[str, str]]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    items = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        items.append((key.replace("-", "_"), value))
    return items


def _config_argv(leaf: argparse.ArgumentParser, items, chosen: Optional[str]) -> List[str]:
    """Translate config entries into option tokens for ``leaf``.

    A ``potential`` key must agree with the potential named on the command
    line, unless the command takes it as an option.
    """
    options = {}
    for action in leaf._actions:
        if action.option_strings and action.dest not in ("help", "config"):
            options[action.dest] = action
    argv = []
    for key, value in items:
        action = options.get(key)
        if action is None and key == "potential" and chosen is not None:
            if value != chosen:
                raise InputError(f"config potential={value!r} conflicts with {chosen!r}")
            continue
        if action is None:
            raise InputError(f"unknown configuration key {key!r}")
        flag = action.option_strings[0]
        if isinstance(action, argparse._StoreTrueAction):
            if value.lower() in ("1", "true", "yes", "on"):
                argv.append(flag)
            elif value.lower() not in ("0", "false", "no", "off"):
                raise InputError(f"configuration key {key!r} expects true/false")
        else:
            argv += [flag, value]
    return argv


def parse_run_config(argv: Sequence[str]) -> RunConfig:
    """Parse the command line (plus an optional config file) into a RunConfig."""
    parser = build_parser()
    argv = _hoist_globals(list(argv))
    ns = parser.parse_args(argv)
    if ns.config:
        leaf = _leaf_parser(parser, ns)
        extra = _config_argv(leaf, _read_config(ns.config), getattr(ns, "potential", None))
        # config values come first so explicit flags win
        head = list(argv)
        split = _split_index(head, ns)
        ns = parser.parse_args(head[:split] + extra + head[split:])

    params = {}
    flags = HULTHEN_FLAGS if getattr(ns, "potential", None) == "hulthen" else MORSE_FLAGS
    if ns.command in ("spectrum", "wavefunction"):
        for name, _, default in flags:
            value = getattr(ns, name.replace("-", "_"), None)
            params[name.replace("-", "_")] = default if value is None else value
        if ns.potential == "hulthen":
            if params["delta"] is None:
                raise InputError("--delta is required for the Hulthén potential")
            params["allow_nonpositive_q"] = bool(getattr(ns, "allow_negative_q", False))

    defaults = RunConfig(ns.command)
    cfg = RunConfig(
        command=ns.command,
        potential=getattr(ns, "potential", None),
        params=params,
        method=ns.method or ("all" if ns.command == "verify" else defaults.method),
        output_format=ns.format or defaults.output_format,
        include_unphysical=bool(ns.include_unphysical),
        output_path=ns.out,
        kmax=ns.kmax if ns.kmax is not None else defaults.kmax,
        series_order=ns.series_order if ns.series_order is not None else defaults.series_order,
        x0=ns.x0 if ns.x0 is not None else defaults.x0,
        oracle_points=ns.oracle_points,
        n=getattr(ns, "n", None),
        n_count=getattr(ns, "n_count", None),
        points=getattr(ns, "points", None) or defaults.points,
    )
    if cfg.command == "wavefunction" and cfg.n is None:
        raise InputError("--n is required")
    return cfg


def _hoist_globals(argv: List[str]) -> List[str]:
    """Move common options given before the command to just after it."""
    commands = ("spectrum", "table1", "table2", "verify", "wavefunction")
    flags = {"--include-unphysical": False}
    flags.update({f: True for f in ("--config", "--format", "--out", "--method", "--kmax",
                                    "--series-order", "--x0", "--oracle-points")})
    i = 0
    while i < len(argv) and argv[i] not in commands:
        flag = argv[i].split("=", 1)[0]
        if flag not in flags:
            return argv
        i += 1 if "=" in argv[i] or not flags[flag] else 2
    if i == 0 or i >= len(argv):
        return argv
    head, rest = argv[:i], argv[i:]
    words = 1
    if rest[0] in ("spectrum", "wavefunction") and len(rest) > 1 and not rest[1].startswith("-"):
        words = 2
    return rest[:words] + head + rest[words:]


def _split_index(argv: List[str], ns) -> int:
    """Index just after the last positional command word."""
    words = [ns.command] + ([ns.potential] if getattr(ns, "potential", None) else [])
    if ns.command == "verify":
        words = [ns.command]
    idx = 0
    for w in words:
        idx = argv.index(w, idx) + 1
    return idx


# --------------------------------------------------------------------------
# computation

def make_params(cfg: RunConfig):
    if cfg.potential == "hulthen":
        return HulthenParams(**cfg.params)
    return MorseParams(**cfg.params)


def _x0(cfg: RunConfig):
    if cfg.x0 == "heuristic":
        return "heuristic"
    try:
        return float(cfg.x0)
    except ValueError:
        raise InputError(f"--x0 must be a number or 'heuristic', got {cfg.x0!r}") from None


def aim_bracket(params, n: int) -> Tuple[float, float]:
    """Bracket around ε_n reaching halfway to its neighbours."""
    e = epsilon_n(params, n)
    hi = e + 0.5 * (epsilon_n(params, n - 1) - e) if n > 0 else 1.25 * e + 1.0
    below = epsilon_n(params, n + 1)
    lo = e - 0.5 * (e - below) if below > 0 else 0.5 * e
    return lo, hi


def aim_records(params, ns: Sequence[int], cfg: RunConfig):
    """(records, failures) for the AIM eigenvalues of states ``ns``."""
    problem = make_aim_problem(params, _x0(cfg), cfg.series_order)
    config = AimConfig(k_max=cfg.kmax)
    out, failed = [], []
    for n in ns:
        try:
            out.append(find_eigenvalue(problem, aim_bracket(params, n), config, n))
        except AimError as exc:
            failed.append((n, str(exc)))
    return out, failed


def oracle_records(params, ns: Sequence[int], cfg: RunConfig) -> List[EigenstateRecord]:
    """Numerov energies for states ``ns`` (all bound, lowest first)."""
    if not ns:
        return []
    top = max(ns)
    e_top = energy_n(params, top).energy
    nxt = energy_n(params, top + 1)
    ceiling = 0.5 * (e_top + nxt.energy) if nxt.physical else 0.5 * e_top
    recs = solve_potential(params, top + 1, ceiling, n_points=cfg.oracle_points,
                           allow_coarse=cfg.oracle_points is not None)
    wanted = set(ns)
    return [r for r in recs if r.n in wanted]


def _methods(cfg: RunConfig) -> Tuple[str, ...]:
    return METHODS if cfg.method == "all" else (cfg.method,)


def spectrum_records(params, ns: Sequence[int], cfg: RunConfig):
    """Records per method for states ``ns``; unbound states get closed form only."""
    closed = [energy_n(params, n) for n in ns]
    bound = [r.n for r in closed if r.physical]
    by_method: Dict[str, List[EigenstateRecord]] = {}
    failed: List[Tuple[int, str]] = []
    for m in _methods(cfg):
        if m == "closed":
            by_method[m] = closed
        elif m == "aim":
            by_method[m], failed = aim_records(params, bound, cfg)
        else:
            by_method[m] = oracle_records(params, bound, cfg)
    return by_method, failed


# --------------------------------------------------------------------------
# rendering

def _g10(x: float) -> str:
    return f"{x:.10g}"


def records_csv(records: Sequence[EigenstateRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "epsilon", "energy", "method", "physical"])
    for r in records:
        w.writerow([r.n, _g10(r.epsilon), _g10(r.energy), r.method, str(r.physical).lower()])
    return buf.getvalue()


def read_records_csv(text: str) -> List[EigenstateRecord]:
    rows = csv.DictReader(io.StringIO(text))
    return [EigenstateRecord(int(r["n"]), float(r["epsilon"]), float(r["energy"]),
                             r["method"], r["physical"] == "true") for r in rows]


def records_json(records: Sequence[EigenstateRecord], meta: dict) -> str:
    flat = [{"n": r.n, "epsilon": float(_g10(r.epsilon)), "energy": float(_g10(r.energy)),
             "method": r.method, "physical": r.physical} for r in records]
    return json.dumps({"meta": meta, "records": flat}, indent=2, sort_keys=True) + "\n"


def _meta(cfg: RunConfig, **extra) -> dict:
    meta = {k: v for k, v in asdict(cfg).items() if k not in ("output_path",)}
    meta.update(extra)
    return meta


def _flat(by_method: Dict[str, List[EigenstateRecord]]) -> List[EigenstateRecord]:
    out = [r for recs in by_method.values() for r in recs]
    order = {METHOD_TAG[m]: i for i, m in enumerate(METHODS)}
    return sorted(out, key=lambda r: (r.n, order[r.method]))


def _fmt(x: Optional[float], spec: str) -> str:
    return "-" if x is None else format(x, spec)


def _pivot(by_method, ns) -> Dict[int, Dict[str, EigenstateRecord]]:
    grid = {n: {} for n in ns}
    for m, recs in by_method.items():
        for r in recs:
            grid.setdefault(r.n, {})[m] = r
    return grid


def render_spectrum(cfg: RunConfig, params, ns, by_method) -> str:
    if cfg.output_format == "csv":
        return records_csv(_flat(by_method))
    if cfg.output_format == "json":
        return records_json(_flat(by_method), _meta(cfg, units=_units(params)))
    methods = list(by_method)
    lines = [f"# {cfg.potential} {_param_text(params)}; energies in {_units(params)}"]
    head = f"{'n':>3}  {'epsilon':>16}" + "".join(f"  {'E(' + m + ')':>18}" for m in methods)
    lines.append(head + "  physical")
    grid = _pivot(by_method, ns)
    for n in ns:
        row = grid[n]
        eps = row.get("closed", next(iter(row.values()), None))
        line = f"{n:>3}  {_fmt(eps.epsilon if eps else None, '>16.10g')}"
        for m in methods:
            r = row.get(m)
            line += f"  {_fmt(r.energy if r else None, '>18.10g')}"
        phys = eps.physical if eps else True
        lines.append(line + f"  {'yes' if phys else 'no (unphysical)'}")
    return "\n".join(lines) + "\n"


def _units(params) -> str:
    return "atomic units (hartree)" if isinstance(params, HulthenParams) else "eV"


def _param_text(params) -> str:
    if isinstance(params, HulthenParams):
        return f"delta={params.delta:g} q={params.q:g} Z={params.Z:g}"
    return f"De={params.De:g} a={params.a:g} re={params.re:g} mu={params.mu:g}"


# --------------------------------------------------------------------------
# commands

def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        sys.stdout.write(text)


def _state_range(params, cfg: RunConfig) -> List[int]:
    n_phys = n_max_bound(params) + 1
    if cfg.n_count is not None:
        if cfg.n_count < 0:
            raise InputError("--n-count must be non-negative")
        count = cfg.n_count
    else:
        count = n_phys + (2 if cfg.include_unphysical else 0)
    ns = list(range(count))
    if not cfg.include_unphysical:
        ns = [n for n in ns if n < n_phys]
    return ns


def _report_failures(failed) -> int:
    for n, msg in failed:
        print(f"error: AIM did not converge for n={n}: {msg}", file=sys.stderr)
    return EXIT_AIM if failed else EXIT_OK


def cmd_spectrum(cfg: RunConfig) -> int:
    params = make_params(cfg)
    ns = _state_range(params, cfg)
    by_method, failed = spectrum_records(params, ns, cfg)
    _emit(cfg, render_spectrum(cfg, params, ns, by_method))
    return _report_failures(failed)


def cmd_table1(cfg: RunConfig) -> int:
    records: List[EigenstateRecord] = []
    blocks = []
    failed_all = []
    for delta in TABLE1_DELTAS:
        params = HulthenParams(delta=delta)
        ns = list(range(TABLE1_ROWS))
        if not cfg.include_unphysical:
            ns = [n for n in ns if epsilon_n(params, n) > 0]
        by_method, failed = spectrum_records(params, ns, cfg)
        failed_all += [(n, f"delta={delta}: {msg}") for n, msg in failed]
        blocks.append((delta, ns, by_method))
        records += _flat(by_method)
    if cfg.output_format == "csv":
        text = records_csv(records)
    elif cfg.output_format == "json":
        text = records_json(records, _meta(cfg, deltas=list(TABLE1_DELTAS), q=1.0, Z=1.0,
                                           units="atomic units (hartree)"))
    else:
        methods = list(blocks[0][2])
        lines = ["# s-state energies of the Hulthén potential, q=1, Z=1",
                 "# columns list -E_n in atomic units (positive numbers); nbar = n + 1",
                 f"{'delta':>6}  {'n':>2}  {'nbar':>4}"
                 + "".join(f"  {'-E(' + m + ')':>12}" for m in methods) + "  flag"]
        for delta, ns, by_method in blocks:
            grid = _pivot(by_method, ns)
            for n in ns:
                row = grid[n]
                line = f"{delta:>6g}  {n:>2}  {n + 1:>4}"
                for m in methods:
                    r = row.get(m)
                    line += f"  {_fmt(-r.energy if r else None, '>12.7f')}"
                phys = row["closed"].physical if "closed" in row else True
                lines.append(line + ("" if phys else "  unphysical"))
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return _report_failures(failed_all)


def cmd_table2(cfg: RunConfig) -> int:
    params = H2_MORSE
    by_method, failed = spectrum_records(params, list(TABLE2_STATES), cfg)
    if cfg.output_format == "csv":
        text = records_csv(_flat(by_method))
    elif cfg.output_format == "json":
        text = records_json(_flat(by_method), _meta(cfg, params=asdict(params), units="eV"))
    else:
        methods = list(by_method)
        lines = ["# H2 Morse vibrational levels, E_n in eV (negative numbers)",
                 f"# {_param_text(params)} hbar_c={params.hbar_c} eV*A amu={params.amu_to_ev:g} eV",
                 f"{'n':>2}" + "".join(f"  {'E(' + m + ')':>12}" for m in methods)]
        grid = _pivot(by_method, TABLE2_STATES)
        for n in TABLE2_STATES:
            line = f"{n:>2}"
            for m in methods:
                r = grid[n].get(m)
                line += f"  {_fmt(r.energy if r else None, '>12.5f')}"
            lines.append(line)
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    return _report_failures(failed)


@dataclass
class Check:
    label: str
    deviation: float
    tolerance: float
    where: str

    @property
    def ok(self) -> bool:
        return self.deviation <= self.tolerance

    @property
    def severity(self) -> float:
        return self.deviation / self.tolerance


def _compare(label, a, b, tol, key, what) -> Check:
    """Largest |a - b| over states present in ``a``; missing partners count as inf."""
    partner = {r.n: r for r in b}
    worst, where = 0.0, "-"
    for r in a:
        other = partner.get(r.n)
        d = math.inf if other is None else abs(key(r) - key(other))
        if d > worst:
            worst, where = d, f"n={r.n}"
    return Check(f"{label} {what}", worst, tol, where)


def _triangle(label, params, ns_aim, ns_oracle, cfg, tol_e) -> List[Check]:
    closed = [energy_n(params, n) for n in ns_oracle]
    closed_aim = [r for r in closed if r.n in set(ns_aim)]
    checks = []
    aim, failed = aim_records(params, ns_aim, cfg)
    checks.append(_compare(label, closed_aim, aim, TOL_EPS, lambda r: r.epsilon,
                           "closed-vs-aim |d epsilon|"))
    try:
        orc = oracle_records(params, ns_oracle, cfg)
    except (OracleError, ValueError) as exc:
        print(f"warning: {label} oracle failed: {exc}", file=sys.stderr)
        orc = []
    checks.append(_compare(label, closed, orc, tol_e, lambda r: r.energy,
                           "closed-vs-oracle |dE|"))
    checks.append(_compare(label, aim or closed_aim, orc, tol_e, lambda r: r.energy,
                           "aim-vs-oracle |dE|"))
    return checks


def verify_checks(cfg: RunConfig, potential: str) -> List[Check]:
    checks: List[Check] = []
    if potential in ("hulthen", "all"):
        for delta in TABLE1_DELTAS:
            params = HulthenParams(delta=delta)
            n_phys = n_max_bound(params) + 1
            ns_aim = list(range(min(TABLE1_ROWS, n_phys)))
            checks += _triangle(f"hulthen delta={delta:g}", params, ns_aim,
                                list(range(n_phys)), cfg, TOL_HULTHEN)
    if potential in ("morse", "all"):
        checks += _triangle("morse H2", H2_MORSE, list(TABLE2_STATES),
                            list(TABLE2_STATES), cfg, TOL_MORSE_EV)
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    potential = cfg.potential or "all"
    checks = verify_checks(cfg, potential)
    worst = max(checks, key=lambda c: c.severity)
    passed = all(c.ok for c in checks)
    if cfg.output_format == "json":
        text = json.dumps({"meta": _meta(cfg), "passed": passed,
                           "checks": [{**asdict(c), "ok": c.ok} for c in checks]},
                          indent=2, sort_keys=True) + "\n"
    elif cfg.output_format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "deviation", "tolerance", "worst_state", "ok"])
        for c in checks:
            w.writerow([c.label, f"{c.deviation:.3e}", f"{c.tolerance:.0e}", c.where,
                        str(c.ok).lower()])
        text = buf.getvalue()
    else:
        lines = [f"{c.label:<52} max {c.deviation:9.2e} (tol {c.tolerance:.0e}) "
                 f"at {c.where:<5} {'ok' if c.ok else 'FAIL'}" for c in checks]
        status = "PASS" if passed else f"FAIL, worst offender: {worst.label} at {worst.where}"
        lines.append(f"verify: {status}")
        text = "\n".join(lines) + "\n"
    _emit(cfg, text)
    if not passed:
        print(f"verify failed: {worst.label} at {worst.where} "
              f"deviation {worst.deviation:.3e} > {worst.tolerance:.0e}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def cmd_wavefunction(cfg: RunConfig) -> int:
    params = make_params(cfg)
    if cfg.n < 0 or cfg.n > n_max_bound(params):
        raise InputError(f"n={cfg.n} is not a bound state (largest bound n is "
                         f"{n_max_bound(params)})")
    if cfg.points < 2:
        raise InputError("--points must be at least 2")
    spec = normalize(make_wavefunction(params, cfg.n))
    _emit(cfg, format_wavefunction(spec, np.linspace(0.0, spec.r_max, cfg.points)))
    return EXIT_OK


COMMANDS = {"spectrum": cmd_spectrum, "table1": cmd_table1, "table2": cmd_table2,
            "verify": cmd_verify, "wavefunction": cmd_wavefunction}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_run_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return COMMANDS[cfg.command](cfg)
    except AimError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AIM
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
