#!/usr/bin/env python3
"""
socialpower
===========
Simula i analitza l'evolució del poder social en xarxes d'influència amb
individus tossuts.

Ús:
    python main.py validate <config.json>
    python main.py simulate <config.json> [--model issues|single|perceived] [--x0 SPEC]
    python main.py equilibrium <config.json> [--method auto|iterate|closed-form]
    python main.py check <config.json> --x-star FILE|auto
    python main.py montecarlo [--epsilon E --eta H | --pairs P --inits I] [--n N] [--seed S]
    python main.py history

Codis de sortida: 0 correcte, 1 violació del domini, 2 error d'ús o de lectura.
"""
import sys
import argparse
import json
import logging
from pathlib import Path
from datetime import datetime

import numpy as np

# Afegir directori arrel al path
sys.path.insert(0, str(Path(__file__).parent))

from config import (
    validate_config, OUTPUT_DIR, DB_PATH, DEFAULT_TOL, MAX_ISSUES, MATCH_TOLERANCE,
    DESK_PAIRS, DESK_INITS, THREADS, LOG_LEVEL,
)
from errors import ConfigError, SocialPowerError, InsufficientTail
from network import analyze_structure, check_assumption_a1, validate_profile, uniform_power, as_power_vector
from dynamics import iterate_issue_sequence, iterate_single_issue, iterate_perceived_sequence
from equilibrium import (
    solve_equilibrium, equilibrium_properties_check, block_equation_residual,
    convergence_rate_measurement, fixed_point_residual,
)
from montecarlo import ChernoffPlan, run_uniqueness_experiment, sample_simplex
from extractors import ScenarioConfig, load_network, parse_x0, read_trajectory_csv
from generators import write_trajectory_csv, write_summary_json, write_report_json, write_experiment_json
import database

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

BLOCK_RESIDUAL_TOL = 1e-9
FULL_SCALE_WARNING = 1000  # a partir d'aquí N x N cel·les triga hores

log = logging.getLogger("socialpower")


def _timestamp() -> str:
    return datetime.now().strftime("%Y%m%d_%H%M%S")


def _seed(args) -> int:
    """Llavor explícita o derivada d'entropia (i impresa per reproduir)."""
    if args.seed is not None:
        return args.seed
    seed = int(np.random.SeedSequence().entropy % (2 ** 63))
    print(f"   Llavor: {seed}")
    return seed


def _ledger(args, **fields) -> int | None:
    if args.no_ledger:
        return None
    return database.log_run(db_path=args.db, **fields)


def _run_model(model, net, prof, x0, tol, max_steps):
    if model == "single":
        return iterate_single_issue(net, prof, x0, max_steps=max_steps, tol=tol)
    if model == "perceived":
        return iterate_perceived_sequence(net, prof, x0, max_issues=max_steps, tol=tol)
    return iterate_issue_sequence(net, prof, x0, max_issues=max_steps, tol=tol)


def _observed_rate(traj):
    try:
        return convergence_rate_measurement(traj, traj.final).rho
    except InsufficientTail:
        return None


def cmd_validate(args) -> int:
    """Valida la configuració i mostra l'estructura del graf."""
    print("1. Llegint configuració...")
    net, prof = load_network(args.config)
    print(f"   ✓ Xarxa vàlida (n={net.n})")
    if net.renormalized_rows:
        print(f"   Files renormalitzades: {list(net.renormalized_rows)}")

    print("2. Estructura del graf...")
    structure = analyze_structure(net)
    if structure.is_star:
        centers = ", ".join(str(c + 1) for c in structure.star_centers)
        print(f"   Estrella: sí (centre {centers})")
    else:
        print("   Estrella: no")
    sinks = [sorted(i + 1 for i in s) for s in structure.sink_sccs]
    print(f"   SCC embornal: {sinks}")
    print(f"   Doblement estocàstica: {'sí' if structure.doubly_stochastic else 'no'}")

    print("3. Assumpcions...")
    status = EXIT_OK
    try:
        validate_profile(prof, net.n)
        print("   ✓ Assumpció 2")
    except SocialPowerError as e:
        print(f"   ✗ {e}")
        status = EXIT_DOMAIN
    a1 = check_assumption_a1(net, prof, uniform_power(net.n))
    print(f"   {'✓' if a1 else '✗'} Assumpció 1")
    if not a1:
        status = EXIT_DOMAIN

    _ledger(args, command="validate", n=net.n, output=args.config)
    return status


def cmd_simulate(args) -> int:
    """Simula una o diverses trajectòries i escriu CSV + resum JSON."""
    scenario = ScenarioConfig(
        network_path=Path(args.config), model=args.model, x0=args.x0,
        tol=args.tol, max_steps=args.max_steps, output=args.out,
    )
    net, prof = load_network(scenario.network_path)
    validate_profile(prof, net.n)

    if args.runs:
        seed = _seed(args)
        children = np.random.SeedSequence(seed).spawn(args.runs)
        starts = [sample_simplex(np.random.default_rng(c), net.n) for c in children]
        out_dir = Path(scenario.output or OUTPUT_DIR / f"runs_{_timestamp()}")
    else:
        x0, seed = parse_x0(scenario.x0, net.n)
        starts = [x0]
        out_dir = None

    print(f"1. Simulant {len(starts)} trajectòria(es) amb el model '{scenario.model}'...")
    all_converged = True
    finals = []
    for k, x0 in enumerate(starts):
        traj = _run_model(scenario.model, net, prof, x0, scenario.tol, scenario.max_steps)
        if out_dir is not None:
            csv_path = out_dir / f"run_{k + 1:03d}.csv"
        else:
            csv_path = Path(scenario.output or OUTPUT_DIR / f"trajectory_{_timestamp()}.csv")
        write_trajectory_csv(traj, csv_path)
        rate = _observed_rate(traj)
        write_summary_json(traj, csv_path.with_name(csv_path.stem + "_summary.json"), rate=rate, seed=seed)
        all_converged &= traj.converged
        finals.append(traj.final.x)
        mark = "✓" if traj.converged else "✗"
        print(f"   {mark} {csv_path.name}: {traj.steps} passos, residu {traj.final_residual:.3e}")
        _ledger(args, command="simulate", n=net.n, model=scenario.model, seed=seed,
                converged=traj.converged, steps=traj.steps, residual=traj.final_residual, output=csv_path)

    if len(finals) > 1:
        spread = max(float(np.abs(x - finals[0]).sum()) for x in finals)
        print(f"   Dispersió dels estats finals: {spread:.3e}")

    if not all_converged and args.strict:
        print("✗ Alguna trajectòria no ha convergit (--strict)")
        return EXIT_DOMAIN
    return EXIT_OK


def cmd_equilibrium(args) -> int:
    """Calcula l'equilibri, els certificats i les propietats."""
    net, prof = load_network(args.config)
    x0, _ = parse_x0(args.x0, net.n)
    seed = _seed(args) if args.multi_start else args.seed

    print(f"1. Calculant l'equilibri (mètode {args.method})...")
    report = solve_equilibrium(net, prof, method=args.method, x0=x0, tol=args.tol,
                               max_iter=args.max_steps, multi_start=args.multi_start, seed=seed)
    mark = "✓" if report.solved else "✗"
    print(f"   {mark} {report.method}: residu {report.residual:.3e}, {report.iterations} iteracions")
    print(f"   x* = {[round(float(v), 6) for v in report.x_star.x]}")
    print(f"   {report.uniqueness}")

    properties = None
    skipped = None
    if report.solved:
        print("2. Comprovant propietats...")
        properties = equilibrium_properties_check(net, prof, report.x_star)
        print(f"   {'✓' if properties.all_hold else '✗'} {len(properties.results)} afirmacions avaluades")
    else:
        skipped = f"equilibri no resolt (residu {report.residual:.3e})"
        print(f"   Propietats no avaluades: {skipped}")

    out = Path(args.out or OUTPUT_DIR / f"equilibrium_{_timestamp()}.json")
    write_report_json(report, out, properties, skipped)
    print(f"   Informe: {out}")
    _ledger(args, command="equilibrium", n=net.n, model=report.method, seed=seed,
            converged=report.solved, steps=report.iterations, residual=report.residual, output=out)

    if not report.solved and args.strict:
        return EXIT_DOMAIN
    return EXIT_OK


def _load_x_star(spec: str, net, prof, args):
    if spec == "auto":
        return solve_equilibrium(net, prof, tol=args.tol, max_iter=args.max_steps).x_star
    path = Path(spec)
    if not path.exists():
        raise ConfigError(f"No s'ha trobat el fitxer: {path}")
    if path.suffix == ".csv":
        return read_trajectory_csv(path).final
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise ConfigError(f"JSON invàlid a {path}: {e}")
    values = data.get("x_star") if isinstance(data, dict) else data
    if values is None:
        raise ConfigError(f"{path} no conté x_star")
    return as_power_vector(values, net.n)


def cmd_check(args) -> int:
    """Avalua cada afirmació sobre x* i les equacions per blocs."""
    net, prof = load_network(args.config)
    validate_profile(prof, net.n)
    x_star = _load_x_star(args.x_star, net, prof, args)

    print("1. Propietats de l'equilibri...")
    properties = equilibrium_properties_check(net, prof, x_star)
    for r in properties.results:
        print(f"   {'✓' if r.holds else '✗'} {r.name}")

    print("2. Equacions per blocs...")
    block = block_equation_residual(net, prof, x_star)
    block_ok = block < BLOCK_RESIDUAL_TOL
    print(f"   {'✓' if block_ok else '✗'} residu {block:.3e}")

    ok = properties.all_hold and block_ok
    _ledger(args, command="check", n=net.n, converged=ok,
            residual=fixed_point_residual(net, prof, x_star), output=args.x_star)
    return EXIT_OK if ok else EXIT_DOMAIN


def cmd_montecarlo(args, parser) -> int:
    """Experiment d'unicitat a escala d'escriptori o dimensionat per Chernoff."""
    sizing = args.epsilon is not None or args.eta is not None
    explicit = args.pairs is not None or args.inits is not None
    if sizing and explicit:
        parser.error("--epsilon/--eta i --pairs/--inits són incompatibles")
    if sizing and (args.epsilon is None or args.eta is None):
        parser.error("--epsilon i --eta s'han de donar junts")

    plan = None
    if sizing:
        plan = ChernoffPlan.from_bounds(args.epsilon, args.eta)
        pairs = inits = plan.N
        print(f"   N = {plan.N} (epsilon={args.epsilon}, eta={args.eta})")
        if plan.N >= FULL_SCALE_WARNING:
            print(f"   ⚠ {plan.N} x {plan.N} cel·les: temps d'execució d'hores o dies")
    else:
        pairs = args.pairs or DESK_PAIRS
        inits = args.inits or DESK_INITS

    seed = _seed(args)
    print(f"1. Executant {pairs} x {inits} (n={args.n}, model {args.model})...")
    experiment = run_uniqueness_experiment(
        pair_count=pairs, init_count=inits, n=args.n, seed=seed, model=args.model,
        tolerance=args.tolerance, theta_max_cap=args.theta_cap, plan=plan,
        n_jobs=args.threads, tol=args.tol, max_steps=args.max_steps,
    )
    mark = "✓" if experiment.mismatches == 0 else "✗"
    print(f"   {mark} Discrepàncies: {experiment.mismatches}; probabilitat empírica "
          f"{experiment.empirical_probability:.4f}")
    print(f"   Parells sense cap discrepància: {experiment.pair_fraction:.4f}")
    if experiment.non_convergent:
        print(f"   Cel·les sense convergir: {len(experiment.non_convergent)}")

    out = Path(args.out or OUTPUT_DIR / f"montecarlo_{_timestamp()}.json")
    write_experiment_json(experiment, out)
    print(f"   Informe: {out}")
    run_id = _ledger(args, command="montecarlo", n=args.n, model=args.model, seed=seed,
                     converged=not experiment.non_convergent, steps=pairs * inits,
                     residual=None, output=out)
    if run_id is not None:
        database.log_experiment(run_id, experiment, db_path=args.db)
    return EXIT_OK


def cmd_history(args) -> int:
    stats = database.get_run_stats(db_path=args.db)
    print(f"Execucions: {stats['total_runs']}  Experiments: {stats['total_experiments']}")
    for row in stats["by_command"]:
        print(f"  {row['command']:<12} {row['runs']:>5} execucions, {row['converged'] or 0} convergides")
    for run in stats["recent_runs"]:
        print(f"  #{run['id']} {run['created_at']} {run['command']} n={run['n']} {run['output']}")
    return EXIT_OK


def _check_ranges(args, parser):
    """Rangs dels flags numèrics; fora de rang és un error d'ús (sortida 2)."""
    def value(name):
        return getattr(args, name, None)

    if value("tol") is not None and not 0 < args.tol < 1:
        parser.error(f"--tol ha de ser a (0,1) (rebut {args.tol})")
    if value("max_steps") is not None and args.max_steps < 1:
        parser.error(f"--max-steps ha de ser >= 1 (rebut {args.max_steps})")
    if value("runs") is not None and args.runs < 0:
        parser.error(f"--runs ha de ser >= 0 (rebut {args.runs})")
    for name in ("epsilon", "eta"):
        if value(name) is not None and not 0 < value(name) < 1:
            parser.error(f"--{name} ha de ser a (0,1) (rebut {value(name)})")
    for name in ("pairs", "inits"):
        if value(name) is not None and value(name) < 1:
            parser.error(f"--{name} ha de ser >= 1 (rebut {value(name)})")
    if args.command == "montecarlo":
        if args.n < 2:
            parser.error(f"--n ha de ser >= 2 (rebut {args.n})")
        if args.tolerance < 0:
            parser.error(f"--tolerance ha de ser >= 0 (rebut {args.tolerance})")
        if not 0 < args.theta_cap <= 1:
            parser.error(f"--theta-cap ha de ser a (0,1] (rebut {args.theta_cap})")
        if args.threads == 0:
            parser.error("--threads no pot ser 0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="socialpower",
        description="Dinàmica del poder social amb individus tossuts",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exemples:
  python main.py validate configs/star.json
  python main.py simulate configs/star.json --runs 50 --seed 7
  python main.py equilibrium configs/star.json --method iterate
  python main.py montecarlo --pairs 200 --inits 200 --n 5 --seed 42
        """
    )
    parser.add_argument("--no-ledger", action="store_true", help="No registrar l'execució a SQLite")
    parser.add_argument("--db", type=Path, default=DB_PATH, help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, config=True):
        if config:
            p.add_argument("config", help="JSON amb C i theta")
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--max-steps", type=int, default=MAX_ISSUES)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("validate", help="Valida una configuració")
    p.add_argument("config")

    p = sub.add_parser("simulate", help="Simula trajectòries")
    common(p)
    p.add_argument("--model", choices=["issues", "single", "perceived"], default="issues")
    p.add_argument("--x0", default="uniform", help="uniform | vertex(i) | random(seed) | x1,...,xn")
    p.add_argument("--runs", type=int, default=0, help="K trajectòries des de x0 aleatoris")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("equilibrium", help="Calcula l'equilibri i els certificats")
    common(p)
    p.add_argument("--method", choices=["auto", "iterate", "closed-form"], default="auto")
    p.add_argument("--x0", default="uniform")
    p.add_argument("--multi-start", action="store_true", help="Sondeig multi-inici sense certificat")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("check", help="Comprova les propietats d'un x*")
    common(p)
    p.add_argument("--x-star", required=True, help="Fitxer (JSON o CSV) o 'auto'")

    p = sub.add_parser("montecarlo", help="Experiment aleatori d'unicitat")
    common(p, config=False)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--pairs", type=int)
    p.add_argument("--inits", type=int)
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--model", choices=["issues", "single"], default="issues")
    p.add_argument("--tolerance", type=float, default=MATCH_TOLERANCE)
    p.add_argument("--theta-cap", type=float, default=1.0)
    p.add_argument("--threads", type=int, default=THREADS)

    sub.add_parser("history", help="Estadístiques del registre d'execucions")
    return parser


def main(argv=None) -> int:
    """Punt d'entrada principal."""
    logging.basicConfig(level=LOG_LEVEL, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    _check_ranges(args, parser)

    try:
        validate_config()
    except ValueError as e:
        print(f"✗ Error de configuració:\n{e}")
        return EXIT_USAGE

    commands = {
        "validate": cmd_validate,
        "simulate": cmd_simulate,
        "equilibrium": cmd_equilibrium,
        "check": cmd_check,
        "history": cmd_history,
    }
    try:
        if args.command == "montecarlo":
            return cmd_montecarlo(args, parser)
        return commands[args.command](args)
    except ConfigError as e:
        print(f"✗ {e}")
        return EXIT_USAGE
    except SocialPowerError as e:
        print(f"✗ {e}")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
