"""Command-line front end: analyze | sweep | verify | threshold.

Exit codes: 0 success, 1 I/O or parse failure, 2 validation or parameter
range failure, 3 verification failure, 4 no detection on [0, 1].
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import oracle, sphere
from .criteria import (
    Criterion,
    NoDetection,
    all_criteria,
    critical_noise,
    tensor_norm_sq,
)
from .families import ParameterOutOfRange, family_from_name, sweep, werner
from .states import (
    DensityMatrix4,
    NonRealComponent,
    StateValidationError,
    correlation_fn,
    pauli_expansion,
    random_density_matrix,
    random_unit_vector,
    validate_state,
)
from .svd3 import svd3

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2
EXIT_VERIFY_FAILED = 3
EXIT_NO_DETECTION = 4

_CRITERIA_ORDER = ("entanglement", "steering", "bell", "chsh")


class DocumentError(ValueError):
    """State document is structurally malformed."""


def state_to_document(state: DensityMatrix4, label: str | None = None) -> dict:
    """Serialize a state as nested [re, im] pairs, row-major."""
    matrix = [
        [[float(z.real), float(z.imag)] for z in row] for row in state.matrix
    ]
    doc: dict = {"matrix": matrix}
    if label is not None:
        doc["label"] = label
    return doc


def parse_state_document(data: dict) -> tuple[DensityMatrix4, str]:
    if not isinstance(data, dict) or "matrix" not in data:
        raise DocumentError("document must be an object with a 'matrix' field")
    raw = data["matrix"]
    try:
        entries = np.array(
            [[complex(cell[0], cell[1]) for cell in row] for row in raw]
        )
    except (TypeError, ValueError, IndexError) as exc:
        raise DocumentError(f"matrix must be 4x4 of [re, im] pairs: {exc}") from exc
    if entries.shape != (4, 4):
        raise DocumentError(f"matrix must be 4x4, got shape {entries.shape}")
    label = data.get("label", "state document")
    if not isinstance(label, str):
        raise DocumentError("label must be a string")
    return validate_state(entries), label


def _load_state(args) -> tuple[DensityMatrix4, str]:
    if args.state is not None:
        if args.family is not None:
            raise DocumentError("give either a document path or --family, not both")
        with open(args.state, "r", encoding="utf-8") as fp:
            return parse_state_document(json.load(fp))
    if args.family is None:
        raise DocumentError("give a document path or --family")
    if args.v is None:
        raise ParameterOutOfRange("--family needs --v")
    family = family_from_name(args.family, args.alpha)
    label = args.family + "(" + ", ".join(
        f"{k}={x:g}" for k, x in (*family.shape_parameters.items(), ("v", args.v))
    ) + ")"
    return family.state_at(args.v), label


def _verdict_status(verdict) -> str:
    if verdict.detected:
        return "detected"
    if verdict.boundary:
        return "boundary"
    return "inconclusive"


def analysis_report(state: DensityMatrix4, label: str) -> dict:
    tensor = pauli_expansion(state)
    schmidt = svd3(tensor.block)
    norm_sq = tensor_norm_sq(tensor)
    verdicts = all_criteria(schmidt, norm_sq)
    return {
        "label": label,
        "tensor": [[float(x) for x in row] for row in tensor.full],
        "schmidt": {
            "u": [[float(x) for x in row] for row in schmidt.u],
            "sigma": [float(x) for x in schmidt.sigma],
            "v": [[float(x) for x in row] for row in schmidt.v],
        },
        "norm_sq": norm_sq,
        "verdicts": [
            {
                "criterion": v.criterion.value,
                "lhs": v.lhs,
                "bound": v.bound,
                "margin": v.margin,
                "detected": v.detected,
                "boundary": v.boundary,
            }
            for v in verdicts
        ],
        "summary": "; ".join(
            f"{v.criterion.value} {_verdict_status(v)}" for v in verdicts
        ),
    }


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fp:
            fp.write(text)


def cmd_analyze(args) -> int:
    state, label = _load_state(args)
    report = analysis_report(state, label)
    _write(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


def _parse_grid(spec: str) -> np.ndarray:
    try:
        start, stop, count = spec.split(":")
        start, stop, count = float(start), float(stop), int(count)
    except ValueError as exc:
        raise DocumentError(f"--grid must be START:STOP:COUNT, got {spec!r}") from exc
    if count < 0 or not 0.0 <= start <= stop <= 1.0:
        raise ParameterOutOfRange(f"grid {spec!r} outside [0, 1] or negative count")
    return np.linspace(start, stop, count)


def cmd_sweep(args) -> int:
    family = family_from_name(args.family, args.alpha)
    records = sweep(family, _parse_grid(args.grid))
    fmt = lambda x: format(float(x), ".12g")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["family", "alpha", "v", "T1", "normSq", "ent", "steer", "bell", "chsh",
         "steer_margin"]
    )
    for rec in records:
        alpha = rec.parameters.get("alpha")
        flags = {v.criterion.value: v for v in rec.verdicts}
        writer.writerow(
            [
                rec.family,
                "" if alpha is None else fmt(alpha),
                fmt(rec.parameters["v"]),
                fmt(rec.t1),
                fmt(rec.norm_sq),
                int(flags["entanglement"].detected),
                int(flags["steering"].detected),
                int(flags["bell"].detected),
                int(flags["chsh"].detected),
                fmt(flags["steering"].margin),
            ]
        )
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_threshold(args) -> int:
    family = family_from_name(args.family, args.alpha)
    criterion = Criterion(args.criterion)
    try:
        v = critical_noise(family, criterion)
    except NoDetection:
        print("none")
        return EXIT_NO_DETECTION
    print(f"{v:.10f}")
    return EXIT_OK


# --- verification suite -----------------------------------------------------


class _Check:
    def __init__(self, name: str, target: str, value: float, defect: float,
                 tol: float):
        self.name = name
        self.target = target
        self.value = value
        self.defect = defect
        self.passed = defect <= tol
        self.tol = tol


def _perturbed(grid: sphere.SphereGrid) -> sphere.SphereGrid:
    # Test hook: move weight between two nodes, keeping the 4*pi sum.
    w = grid.weights.copy()
    delta = 1e-6 * w[0]
    w[0] += delta
    w[-1] -= delta
    return sphere.SphereGrid(grid.points, w, grid.n_theta, grid.n_phi,
                             grid.breakpoints)


def _verify_checks(level: str, seed: int, inject_fault: bool) -> list[_Check]:
    fast = level == "fast"
    rng = np.random.default_rng(seed)
    checks: list[_Check] = []

    g_low = sphere.sphere_grid(2, 4)
    if inject_fault:
        g_low = _perturbed(g_low)
    defect = sphere.verify_orthogonality(g_low)
    checks.append(
        _Check("orthogonality(N=2)", "(4pi/3) delta_kl", defect, defect, 1e-12)
    )
    defect = sphere.verify_orthogonality(sphere.sphere_grid(8))
    checks.append(
        _Check("orthogonality(N=8)", "(4pi/3) delta_kl", defect, defect, 1e-12)
    )

    g4 = sphere.sphere_grid(4)
    target = 16.0 * math.pi ** 2 / 3.0
    tensor1 = pauli_expansion(werner(1.0))
    eq1 = correlation_fn(tensor1)
    value = sphere.inner_product(eq1, eq1, g4)
    checks.append(
        _Check("(E_Q,E_Q) Werner(1) = 16pi^2/3", f"{target:.6f}", value,
               abs(value - target) / target, 1e-10)
    )

    n_states = 10 if fast else 100
    worst = 0.0
    for _ in range(n_states):
        tensor = pauli_expansion(random_density_matrix(rng))
        eq = correlation_fn(tensor)
        numeric = sphere.inner_product(eq, eq, g4)
        analytic = oracle.norm_eq_analytic(tensor)
        worst = max(worst, abs(numeric - analytic) / analytic)
    checks.append(
        _Check(f"norm identity ({n_states} random states)",
               "(16pi^2/9)||T||^2", worst, worst, 1e-10)
    )

    n_triples = 20 if fast else 200
    worst = 0.0
    for _ in range(n_triples):
        t = rng.uniform(-1.0, 1.0, size=(3, 3))
        m = random_unit_vector(rng)
        lam = random_unit_vector(rng)
        quad = sphere.integrate(g4, lambda pts: (pts @ (t.T @ m)) * (pts @ lam))
        exact = (4.0 * math.pi / 3.0) * float(m @ t @ lam)
        worst = max(worst, abs(quad - exact))
    checks.append(
        _Check(f"vector integral identity ({n_triples} draws)",
               "(4pi/3) m.T lambda", worst, worst, 1e-12)
    )

    n_states_ns = 5 if fast else 20
    models_per_state = 200 if fast else 500
    worst_rel = -math.inf
    for _ in range(n_states_ns):
        tensor = pauli_expansion(random_density_matrix(rng))
        schmidt = svd3(tensor.block)
        bound = oracle.ns_bound(schmidt)
        for _ in range(models_per_state):
            model = oracle.random_model(rng)
            lhs = oracle.model_state_overlap(tensor, model)
            worst_rel = max(worst_rel, (lhs - bound) / bound)
    checks.append(
        _Check(f"ns inequality ({n_states_ns * models_per_state} models)",
               "(E_Q,E_NS) <= (8pi^2/3) T1", worst_rel, max(0.0, worst_rel),
               1e-6)
    )

    n_sat = 5 if fast else 20
    worst = 0.0
    for _ in range(n_sat):
        tensor = pauli_expansion(random_density_matrix(rng))
        schmidt = svd3(tensor.block)
        model = oracle.saturating_model(schmidt)
        lhs = oracle.model_state_overlap(tensor, model)
        worst = max(worst, abs(lhs - oracle.ns_bound(schmidt)) /
                    oracle.ns_bound(schmidt))
    checks.append(
        _Check(f"ns bound saturation ({n_sat} states)", "(8pi^2/3) T1",
               worst, worst, 1e-6)
    )

    if not fast:
        tensor = pauli_expansion(random_density_matrix(rng))
        model = oracle.random_model(rng)
        exact = oracle.model_state_overlap(tensor, model)
        estimate, stderr = oracle.model_state_overlap_mc(
            tensor, model, 10 ** 6, rng
        )
        z = abs(estimate - exact) / stderr
        checks.append(
            _Check("ns overlap Monte Carlo (1e6 samples)", "z <= 3", z, z, 3.0)
        )

    value = oracle.chsh_ns_max(step_deg=30.0 if fast else 15.0)
    checks.append(_Check("chsh ns maximum", "2", value, abs(value - 2.0), 1e-6))

    g_split = sphere.sphere_grid(8, breakpoints=(0.0,))
    value = sphere.abs_cos_integral(g_split)
    checks.append(
        _Check("abs-cos integral (split grid)", "2pi", value,
               abs(value - 2.0 * math.pi), 1e-12)
    )
    value = sphere.projection_norm_constant(g_split)
    checks.append(
        _Check("projection constant", "sqrt(3pi)", value,
               abs(value - math.sqrt(3.0 * math.pi)), 1e-12)
    )

    worst = 0.0
    ratio = 2.0 / 3.0
    for _ in range(5):
        schmidt = svd3(pauli_expansion(random_density_matrix(rng)).block)
        ratio = oracle.ns_bound(schmidt) / oracle.lhv_bound(schmidt)
        worst = max(worst, abs(ratio - 2.0 / 3.0))
    checks.append(_Check("steering/LHV bound ratio", "2/3", ratio, worst, 5e-16))
    return checks


def cmd_verify(args) -> int:
    checks = _verify_checks(args.level, args.seed, args.inject_fault)
    print(f"verification level={args.level} seed={args.seed}")
    header = f"{'check':<42} {'target':<28} {'computed':>14} {'defect':>12} {'tol':>9} status"
    print(header)
    for c in checks:
        print(
            f"{c.name:<42} {c.target:<28} {c.value:>14.6e} {c.defect:>12.3e} "
            f"{c.tol:>9.0e} {'pass' if c.passed else 'FAIL'}"
        )
    failed = [c for c in checks if not c.passed]
    if failed:
        print(f"{len(failed)} of {len(checks)} checks FAILED")
        return EXIT_VERIFY_FAILED
    print(f"all {len(checks)} checks passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steerkit",
        description="Correlation-tensor criteria for two-qubit steering, "
                    "entanglement and Bell nonlocality.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full criterion report for one state")
    p.add_argument("state", nargs="?", default=None,
                   help="path to a JSON state document")
    p.add_argument("--family", choices=["werner", "noisy-schmidt"])
    p.add_argument("--v", type=float, help="noise parameter in [0, 1]")
    p.add_argument("--alpha", type=float, help="shape angle for noisy-schmidt")
    p.add_argument("--out", help="write the JSON report here instead of stdout")

    p = sub.add_parser("sweep", help="criteria table over a parameter grid")
    p.add_argument("--family", required=True, choices=["werner", "noisy-schmidt"])
    p.add_argument("--alpha", type=float)
    p.add_argument("--grid", default="0:1:101", help="v grid as START:STOP:COUNT")
    p.add_argument("--out", help="write the CSV table here instead of stdout")

    p = sub.add_parser("verify", help="run the integral-identity test bench")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)

    p = sub.add_parser("threshold", help="critical noise for one criterion")
    p.add_argument("--family", required=True, choices=["werner", "noisy-schmidt"])
    p.add_argument("--criterion", required=True, choices=list(_CRITERIA_ORDER))
    p.add_argument("--alpha", type=float)
    return parser


_COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "verify": cmd_verify,
    "threshold": cmd_threshold,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, json.JSONDecodeError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (StateValidationError, ParameterOutOfRange, NonRealComponent) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
