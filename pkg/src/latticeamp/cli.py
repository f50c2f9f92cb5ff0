"""Command-line experiments.

    latticeamp amplitude SETUP.txt [--config ham.json] [--oracle]
    latticeamp born-convergence --config born.json [--out DIR]
    latticeamp unitarity --config unitarity.json [--out DIR] [--seed N]
    latticeamp entropy-min --config entropy.json [--out DIR] [--seed N]
    latticeamp algebra-check [--config laws.json] [--out DIR] [--seed N]

Exit codes: 0 success, 2 parse error, 3 validation error, 4 domain error,
5 invariant violation.  Without ``--out`` CSV goes to stdout.  Random
draws come from ``numpy.random.default_rng(seed)`` (PCG64); the seed is
taken from ``--seed``, then the config's ``"seed"`` key, then 0.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import json
import sys
from pathlib import Path

from . import born, checks, entropy
from .amplitudes import amplitude_brute_force, amplitude_of_setup, build_propagator
from .config import hamiltonian_from_dict, load_json, measure_from_dict
from .dsl import load_setup_file
from .errors import DomainError, SetupSemanticError, SetupSyntaxError
from .sampling import make_rng, random_density_operator, random_orthonormal_basis

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_DOMAIN, EXIT_INVARIANT = 0, 2, 3, 4, 5

DRIFT_UNITARY_MAX = 1e-9
DRIFT_DAMPED_MIN = 1e-3
ENTROPY_SLACK = 1e-9


class CommandFailed(Exception):
    def __init__(self, code, message):
        self.code = code
        super().__init__(message)


def _fmt(x):
    return repr(float(x))


def _fmt_complex(z):
    return f"{z.real:.17g}{z.imag:+.17g}i"


@contextlib.contextmanager
def _sink(out_dir, name):
    if out_dir is None:
        yield sys.stdout
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    with open(path / name, "w", newline="", encoding="utf-8") as fh:
        yield fh


def _write_csv(out_dir, name, header, rows):
    with _sink(out_dir, name) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(sorted(rows))


def _load_config(path):
    if path is None:
        return {}
    try:
        return load_json(path)
    except FileNotFoundError:
        raise CommandFailed(EXIT_VALIDATION, f"config file {path} does not exist") from None
    except json.JSONDecodeError as exc:
        raise CommandFailed(EXIT_PARSE, f"config file {path}: {exc}") from None


def _seed(args, cfg):
    if args.seed is not None:
        return args.seed
    return int(cfg.get("seed", 0))


def _hamiltonian(cfg, lattice=None):
    """Propagator from ``cfg["hamiltonian"]`` (or ``cfg`` itself)."""
    d = dict(cfg.get("hamiltonian", cfg))
    if lattice is not None:
        d.setdefault("M", lattice.M)
        d.setdefault("tau", lattice.tau)
        d.setdefault("boundary", lattice.boundary)
    try:
        lat, ham = hamiltonian_from_dict(d)
    except (KeyError, ValueError) as exc:
        raise CommandFailed(EXIT_VALIDATION, f"bad Hamiltonian config: {exc}") from None
    if lattice is not None and (lat.M, lat.tau, lat.boundary) != (lattice.M, lattice.tau, lattice.boundary):
        raise CommandFailed(EXIT_VALIDATION, "Hamiltonian config disagrees with the setup's lattice")
    return lat, build_propagator(ham, lat)


def cmd_amplitude(args):
    try:
        lattice, setup = load_setup_file(args.setup)
    except FileNotFoundError:
        raise CommandFailed(EXIT_VALIDATION, f"setup file {args.setup} does not exist") from None
    except SetupSyntaxError as exc:
        raise CommandFailed(EXIT_PARSE, str(exc)) from None
    except SetupSemanticError as exc:
        raise CommandFailed(EXIT_VALIDATION, str(exc)) from None
    cfg = _load_config(args.config)
    if not cfg:
        cfg = {"J": 1.0}
    _, U = _hamiltonian(cfg, lattice)
    amp = amplitude_of_setup(setup, U)
    print(f"amplitude {_fmt_complex(amp)}")
    if args.oracle:
        oracle = amplitude_brute_force(setup, U)
        print(f"oracle {_fmt_complex(oracle)}")
        print(f"abs_difference {abs(amp - oracle):.3e}")
    return EXIT_OK


def cmd_born_convergence(args):
    cfg = _load_config(args.config)
    try:
        rows = born.convergence_scan(
            float(cfg["p_k"]), float(cfg["f"]), float(cfg["epsilon"]), cfg["N_list"]
        )
    except KeyError as exc:
        raise CommandFailed(EXIT_VALIDATION, f"born config is missing {exc}") from None
    except DomainError as exc:
        raise CommandFailed(EXIT_DOMAIN, str(exc)) from None
    with _sink(args.out, "born_convergence.csv") as fh:
        born.write_convergence_csv(rows, fh)
    return EXIT_OK


def cmd_unitarity(args):
    cfg = _load_config(args.config)
    lattice, U = _hamiltonian(cfg)
    m = measure_from_dict(cfg.get("measure", {"measure": "uniform"}), lattice.M)
    rng = make_rng(_seed(args, cfg))
    B = random_orthonormal_basis(rng, lattice.M)
    L = entropy.great_circle_line_array(B[:, 0], B[:, 1], n=int(cfg.get("samples", 20)))
    log = entropy.distance_drift_log(L, U, int(cfg.get("steps", 100)), m)
    _write_csv(args.out, "drift.csv", ("step", "max_drift"),
               [(t, _fmt(d)) for t, d in enumerate(log)])
    drift = float(log.max())
    if U.hermitian_generator and not drift < DRIFT_UNITARY_MAX:
        raise CommandFailed(EXIT_INVARIANT, f"unitary propagator drifted by {drift:.3e}")
    if not U.hermitian_generator and not drift > DRIFT_DAMPED_MIN:
        raise CommandFailed(EXIT_INVARIANT, f"damped propagator drifted only {drift:.3e}")
    print(f"max_drift {drift:.3e}", file=sys.stderr)
    return EXIT_OK


def cmd_entropy_min(args):
    cfg = _load_config(args.config)
    M = int(cfg.get("M", 4))
    n_rho = int(cfg.get("n_rho", 5))
    n_samples = int(cfg.get("n_samples", 1000))
    extra = int(cfg.get("extra_members", 3))
    base = {"nats": None, "bits": 2}[cfg.get("units", "nats")]
    rng = make_rng(_seed(args, cfg))

    ensemble_rows, basis_rows = [], []
    for _ in range(n_rho):
        rho = entropy.DensityOperator(random_density_operator(rng, M))
        s_vn = entropy.von_neumann_entropy(rho, base)
        for seed in rng.integers(0, 2**63 - 1, size=n_samples):
            seed = int(seed)
            K = M + int(make_rng(seed).integers(0, extra + 1))
            s_a = entropy.array_entropy(entropy.sample_same_rho_ensemble(rho, K, seed), base)
            ensemble_rows.append((seed, _fmt(s_a), _fmt(s_vn), _fmt(s_a - s_vn)))
            Q = random_orthonormal_basis(make_rng(seed), M)
            s_m = entropy.measurement_entropy(rho, Q.T, base)
            basis_rows.append((seed, _fmt(s_m), _fmt(s_vn), _fmt(s_m - s_vn)))

    _write_csv(args.out, "ensemble_scan.csv", ("seed", "S_A", "S_vN", "gap"), ensemble_rows)
    _write_csv(args.out, "basis_scan.csv", ("seed", "S_meas", "S_vN", "gap"), basis_rows)
    worst = min(float(r[3]) for r in ensemble_rows + basis_rows)
    if worst < -ENTROPY_SLACK:
        raise CommandFailed(EXIT_INVARIANT, f"entropy fell below S_vN by {-worst:.3e}")
    return EXIT_OK


def cmd_algebra_check(args):
    cfg = _load_config(args.config)
    rng = make_rng(_seed(args, cfg))
    report = checks.run_algebra_laws(
        rng,
        cases=int(cfg.get("cases", 1000)),
        M_range=tuple(cfg.get("M_range", (2, 5))),
        T_max=int(cfg.get("T_max", 6)),
    )
    a, b = checks.and_noncommutativity_counterexample()
    lines = [report.summary(), f"and is not commutative: {a!r} then {b!r} composes, the reverse does not"]
    if not report.ok:
        lines.append("counterexamples:")
        lines += [str(f) for f in report.failures[:20]]
    text = "\n".join(lines) + "\n"
    with _sink(args.out, "algebra_report.txt") as fh:
        fh.write(text)
    if not report.ok:
        raise CommandFailed(EXIT_INVARIANT, f"{len(report.failures)} law violations")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="latticeamp", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", help="output directory (default: stdout)")
    common.add_argument("--seed", type=int, help="overrides the config seed")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("amplitude", parents=[common], help="amplitude of a setup file")
    p.add_argument("setup", help="setup description file")
    p.add_argument("--oracle", action="store_true", help="also evaluate by path enumeration")
    p.set_defaults(func=cmd_amplitude)

    for name, func, text in (
        ("born-convergence", cmd_born_convergence, "replica fraction-filter distances"),
        ("unitarity", cmd_unitarity, "distance drift of a line array"),
        ("entropy-min", cmd_entropy_min, "array and measurement entropy scans"),
        ("algebra-check", cmd_algebra_check, "randomized and/or law checks"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.set_defaults(func=func)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CommandFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
