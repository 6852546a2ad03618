"""Command-line workbench: build codes, verify claims, run noise sweeps.

Exit codes: 0 all checks pass, 1 claim mismatch, 2 infeasible request,
64 usage error. Data outputs (CSV/JSON) are byte-identical across reruns
with the same flags; each --out file gets an <out>.manifest.json sidecar.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import __version__, dephasing, engine, lattice

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INFEASIBLE = 2
EXIT_USAGE = 64

DEPHASE_MAX_QUBITS = 14


class _Parser(argparse.ArgumentParser):
    """argparse with the BSD sysexits usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with_usage(message))

    def exit_with_usage(self, message):
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return EXIT_USAGE


@dataclass
class RunManifest:
    """Reproducibility sidecar written next to every --out file."""

    command: str
    parameters: Dict[str, object]
    version: str
    inputs: List[str] = field(default_factory=list)
    outputs: List[str] = field(default_factory=list)
    duration_seconds: float = 0.0

    def write(self, out_path: str) -> None:
        with open(out_path + ".manifest.json", "w") as fh:
            json.dump(asdict(self), fh, indent=2)
            fh.write("\n")


def _emit(text: str, out: Optional[str], manifest: RunManifest) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)
    manifest.outputs.append(out)
    manifest.write(out)


def _parse_target(target: str) -> lattice.CodeSpec:
    if target in lattice.NAMED_CODES:
        return lattice.build_named(target)
    if target.startswith("grid:"):
        p = int(target[len("grid:"):])
        if p < 1:
            raise ValueError("grid size p must be >= 1")
        return lattice.stack_grid(p)
    if target.startswith("lshape:"):
        parts = target[len("lshape:"):].split(",")
        if len(parts) == 3 and parts[2] == "matrix":
            fill = True
        elif len(parts) == 2:
            fill = False
        else:
            raise ValueError(f"cannot parse lshape target {target!r}")
        return lattice.stack_l_shape(int(parts[0]), int(parts[1]), fill)
    raise ValueError(f"unknown build target {target!r}")


def _manifest(args: argparse.Namespace, skip=("func",)) -> RunManifest:
    params = {k: v for k, v in vars(args).items() if k not in skip}
    return RunManifest(
        command=args.command, parameters=params, version=__version__
    )


# --- subcommands --------------------------------------------------------------


def cmd_build(args: argparse.Namespace) -> int:
    manifest = _manifest(args)
    started = time.monotonic()
    try:
        code = _parse_target(args.target)
    except ValueError as exc:
        print(f"build: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = lattice.code_to_json(code)
    manifest.duration_seconds = time.monotonic() - started
    _emit(text, args.out, manifest)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    manifest = _manifest(args)
    started = time.monotonic()
    try:
        with open(args.code) as fh:
            code = lattice.code_from_json(fh.read())
    except (OSError, ValueError, KeyError) as exc:
        print(f"verify: cannot load code: {exc}", file=sys.stderr)
        return EXIT_USAGE
    manifest.inputs.append(args.code)
    if args.kl and code.n > 20:
        print(
            f"verify: codeword-matrix oracle infeasible for n = {code.n} > 20",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    if code.logical_pairs is None and code.n > 24:
        print(
            f"verify: no logical set given and synthesis infeasible for n = {code.n}",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    report = engine.verify_code(
        code, w_max=args.w_max, use_kl=args.kl, threads=args.threads
    )
    manifest.duration_seconds = time.monotonic() - started
    _emit(report.to_json(), args.out, manifest)

    status = EXIT_OK
    if not report.commuting or not report.logicals_ok:
        status = EXIT_MISMATCH
    if code.declared is not None:
        dn, dk, dd = code.declared
        if dn != code.n or dk != report.k:
            status = EXIT_MISMATCH
        if report.distance is None:
            if args.w_max >= dd:
                status = EXIT_MISMATCH  # true distance exceeds the claim
            elif status == EXIT_OK:
                print(
                    f"verify: w_max = {args.w_max} too small to confirm d = {dd}",
                    file=sys.stderr,
                )
                status = EXIT_INFEASIBLE
        elif report.distance != dd:
            status = EXIT_MISMATCH
    return status


def _parse_t_grid(text: str) -> List[float]:
    try:
        start_s, stop_s, steps_s = text.split(":")
        start, stop, steps = float(start_s), float(stop_s), int(steps_s)
    except ValueError:
        raise ValueError(f"cannot parse t grid {text!r}, expected start:stop:steps")
    if steps < 1 or stop < start:
        raise ValueError(f"invalid t grid {text!r}")
    if steps == 1:
        return [start]
    return [start + (stop - start) * i / (steps - 1) for i in range(steps)]


def cmd_dephase(args: argparse.Namespace) -> int:
    manifest = _manifest(args)
    started = time.monotonic()
    if args.mc_samples > 0 and args.seed is None:
        print("dephase: --seed is required when --mc-samples > 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        t_grid = _parse_t_grid(args.t_grid)
    except ValueError as exc:
        print(f"dephase: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.code is None:
        code = lattice.build_unit()
    else:
        try:
            with open(args.code) as fh:
                code = lattice.code_from_json(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            print(f"dephase: cannot load code: {exc}", file=sys.stderr)
            return EXIT_USAGE
        manifest.inputs.append(args.code)
    if code.n > DEPHASE_MAX_QUBITS:
        print(
            f"dephase: n = {code.n} exceeds the {DEPHASE_MAX_QUBITS}-qubit limit",
            file=sys.stderr,
        )
        return EXIT_INFEASIBLE
    if code.logical_pairs is not None:
        logicals = engine.LogicalSet(code.logical_pairs)
    else:
        logicals = engine.find_logical_set(code)
    model = dephasing.NoiseModel(args.kind, args.gamma)

    lines = [dephasing.SWEEP_COLUMNS]
    engine_records = dephasing.bloch_and_leakage(
        code, logicals, args.theta, args.phi, model, t_grid
    )
    for t, rec in zip(t_grid, engine_records):
        lines.append(
            dephasing.sweep_row(rec, args.gamma, args.theta, args.phi, args.kind, "engine")
        )
        closed = dephasing.closed_form(args.kind, args.theta, args.phi, args.gamma, t)
        lines.append(
            dephasing.sweep_row(
                closed, args.gamma, args.theta, args.phi, args.kind, "closed_form"
            )
        )
        if args.mc_samples > 0:
            mc = dephasing.monte_carlo_oracle(
                code,
                logicals,
                args.theta,
                args.phi,
                model,
                t,
                args.mc_samples,
                args.seed,
                threads=args.threads,
            )
            lines.append(
                dephasing.sweep_row(
                    mc, args.gamma, args.theta, args.phi, args.kind, "monte_carlo"
                )
            )
    manifest.duration_seconds = time.monotonic() - started
    _emit("\n".join(lines) + "\n", args.out, manifest)
    return EXIT_OK


def cmd_family(args: argparse.Namespace) -> int:
    if args.p_max < 1:
        print("family: --p-max must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    print("p,n,m,k,d,rate,distance_check")
    for p in range(1, args.p_max + 1):
        fam = lattice.family_parameters(p)
        rate = fam.k / fam.n
        if fam.n <= 24:
            code = lattice.stack_grid(p)
            found, _ = engine.distance_symplectic(code, w_max=fam.d)
            if found == fam.d:
                check = "verified"
            elif found is not None:
                check = f"refuted:min_weight={found}"
            else:
                check = f"refuted:d>{fam.d}"
        else:
            check = "unchecked"
        print(f"{p},{fam.n},{fam.m},{fam.k},{fam.d},{rate:.6f},{check}")
    return EXIT_OK


# --- entry point --------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="rhombuscode", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_build = sub.add_parser("build", help="emit a CodeSpec as JSON")
    p_build.add_argument(
        "target",
        help="unit | two_horizontal | two_vertical | grid_2x2 | "
        "grid:<p> | lshape:<v>,<h>[,matrix]",
    )
    p_build.add_argument("--out", default=None)
    p_build.set_defaults(func=cmd_build)

    p_verify = sub.add_parser("verify", help="verify a CodeSpec JSON file")
    p_verify.add_argument("code", help="path to CodeSpec JSON")
    p_verify.add_argument("--w-max", type=int, default=4)
    p_verify.add_argument("--kl", action="store_true",
                          help="cross-check with the codeword-matrix oracle")
    p_verify.add_argument("--threads", type=int, default=1)
    p_verify.add_argument("--out", default=None)
    p_verify.set_defaults(func=cmd_verify)

    p_deph = sub.add_parser("dephase", help="run a dephasing sweep to CSV")
    p_deph.add_argument("--code", default=None, help="CodeSpec JSON path (default: unit)")
    p_deph.add_argument("--kind", choices=dephasing.KINDS, required=True)
    p_deph.add_argument("--theta", type=float, required=True)
    p_deph.add_argument("--phi", type=float, required=True)
    p_deph.add_argument("--gamma", type=float, required=True)
    p_deph.add_argument("--t-grid", required=True, help="start:stop:steps")
    p_deph.add_argument("--mc-samples", type=int, default=0)
    p_deph.add_argument("--seed", type=int, default=None)
    p_deph.add_argument("--threads", type=int, default=1)
    p_deph.add_argument("--out", default=None)
    p_deph.set_defaults(func=cmd_dephase)

    p_family = sub.add_parser("family", help="tabulate grid-family parameters")
    p_family.add_argument("--p-max", type=int, required=True)
    p_family.set_defaults(func=cmd_family)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
