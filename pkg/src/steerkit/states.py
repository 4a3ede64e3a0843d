"""Two-qubit density matrices, Pauli expansion and projective measurements.

States live in the product basis |00>, |01>, |10>, |11> (first factor is
Alice's qubit). The Pauli expansion of a state is the real 4x4 coefficient
table T[mu, nu] = Tr[rho (sigma_mu x sigma_nu)] with sigma_0 the identity;
its 3x3 lower-right block is the correlation tensor that drives every
criterion in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
UNIT_NORM_TOL = 1e-12
BLOCH_NORM_TOL = 1e-12
ZERO_BRANCH_TOL = 1e-14

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)

# sigma_mu x sigma_nu for all 16 index pairs, indexed [mu, nu, row, col].
PAULI_PRODUCTS = np.array([[np.kron(a, b) for b in PAULI] for a in PAULI])
PAULI_PRODUCTS.setflags(write=False)


class Violation(NamedTuple):
    invariant: str
    magnitude: float


class StateValidationError(ValueError):
    """A 4x4 matrix failed one or more density-matrix invariants.

    ``violations`` lists every failed invariant with the magnitude of the
    defect, not just the one that selected the exception class.
    """

    def __init__(self, violations: tuple[Violation, ...]):
        self.violations = tuple(violations)
        detail = "; ".join(
            f"{v.invariant} (defect {v.magnitude:.3e})" for v in self.violations
        )
        super().__init__(f"not a valid two-qubit state: {detail}")


class NotHermitian(StateValidationError):
    pass


class TraceNotOne(StateValidationError):
    pass


class NotPositive(StateValidationError):
    pass


class NonRealComponent(ValueError):
    """A Pauli coefficient came out with a non-negligible imaginary part."""


_VIOLATION_CLASSES = {
    "NotHermitian": NotHermitian,
    "TraceNotOne": TraceNotOne,
    "NotPositive": NotPositive,
}


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix4:
    """Validated two-qubit density matrix.

    Construction checks hermiticity, unit trace and positive
    semidefiniteness (the smallest eigenvalue may dip to -1e-9 so that
    slightly rounded tomographic inputs are not rejected). The stored
    array is read-only.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        violations = []
        herm_defect = float(np.max(np.abs(m - m.conj().T)))
        if herm_defect > HERMITICITY_TOL:
            violations.append(Violation("NotHermitian", herm_defect))
        trace_defect = float(abs(np.trace(m) - 1.0))
        if trace_defect > TRACE_TOL:
            violations.append(Violation("TraceNotOne", trace_defect))
        min_eig = float(np.linalg.eigvalsh(0.5 * (m + m.conj().T))[0])
        if min_eig < -PSD_TOL:
            violations.append(Violation("NotPositive", min_eig))
        if violations:
            raise _VIOLATION_CLASSES[violations[0].invariant](tuple(violations))
        object.__setattr__(self, "matrix", _readonly(m))


def validate_state(entries) -> DensityMatrix4:
    """Validate a 4x4 complex array as a two-qubit density matrix.

    Raises NotHermitian, TraceNotOne or NotPositive; the exception lists
    every violated invariant and its magnitude.
    """
    return DensityMatrix4(np.asarray(entries, dtype=complex))


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    """Pauli expansion coefficients T[mu, nu] of a two-qubit state.

    ``full`` is the 4x4 table with full[0, 0] == 1; ``block`` is the 3x3
    correlation tensor T_ij, ``alice_marginal`` the column T_i0 and
    ``bob_marginal`` the row T_0j.
    """

    full: np.ndarray

    def __post_init__(self):
        f = np.array(self.full, dtype=float)
        if f.shape != (4, 4):
            raise ValueError(f"expected a 4x4 table, got shape {f.shape}")
        if f[0, 0] != 1.0:
            raise ValueError(f"T[0,0] must be exactly 1, got {f[0, 0]!r}")
        overshoot = float(np.max(np.abs(f)) - 1.0)
        if overshoot > 1e-10:
            raise ValueError(f"component magnitude exceeds 1 by {overshoot:.3e}")
        object.__setattr__(self, "full", _readonly(f))

    @property
    def block(self) -> np.ndarray:
        return self.full[1:, 1:]

    @property
    def alice_marginal(self) -> np.ndarray:
        return self.full[1:, 0]

    @property
    def bob_marginal(self) -> np.ndarray:
        return self.full[0, 1:]


def unit_vector(v) -> np.ndarray:
    """Check that v is a unit 3-vector (measurement setting or pure hidden
    state) and return it as a float array."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    defect = abs(float(np.linalg.norm(a)) - 1.0)
    if defect > UNIT_NORM_TOL:
        raise ValueError(f"not a unit vector, |norm - 1| = {defect:.3e}")
    return a


def bloch_vector(v) -> np.ndarray:
    """Check that v fits inside the Bloch ball (norm <= 1 within 1e-12)."""
    a = np.asarray(v, dtype=float)
    if a.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {a.shape}")
    overshoot = float(np.linalg.norm(a)) - 1.0
    if overshoot > BLOCH_NORM_TOL:
        raise ValueError(f"Bloch norm exceeds 1 by {overshoot:.3e}")
    return a


def pauli_expansion(state: DensityMatrix4) -> CorrelationTensor:
    """Expand a state over the 16 Pauli products.

    The traces of a valid state are real up to rounding; any imaginary
    part above 1e-8 signals a corrupted input and raises
    NonRealComponent.
    """
    traces = np.tensordot(PAULI_PRODUCTS, state.matrix, axes=([2, 3], [1, 0]))
    imag_max = float(np.max(np.abs(traces.imag)))
    if imag_max > 1e-8:
        raise NonRealComponent(
            f"Pauli coefficient has imaginary part {imag_max:.3e}"
        )
    full = traces.real.copy()
    # Unit trace pins T[0,0]; snap the rounded trace to its exact value.
    if abs(full[0, 0] - 1.0) > TRACE_TOL:
        raise NonRealComponent(
            f"T[0,0] = {full[0, 0]!r} drifted from 1; state bypassed validation"
        )
    full[0, 0] = 1.0
    return CorrelationTensor(full)


def state_from_tensor(tensor: CorrelationTensor) -> DensityMatrix4:
    """Rebuild the density matrix (1/4) sum T[mu,nu] sigma_mu x sigma_nu."""
    rho = np.tensordot(tensor.full, PAULI_PRODUCTS, axes=([0, 1], [0, 1])) / 4.0
    return validate_state(rho)


def correlation_function(tensor: CorrelationTensor, m, n) -> float:
    """Joint correlation E(m, n) = sum_ij T_ij m_i n_j for unit settings."""
    m = unit_vector(m)
    n = unit_vector(n)
    return float(m @ tensor.block @ n)


def correlation_fn(tensor: CorrelationTensor):
    """Vectorized E(m, n) over arrays of paired settings, for quadrature."""
    block = tensor.block

    def eq(m, n):
        return np.einsum("...i,ij,...j->...", m, block, n)

    return eq


def _projector(direction: np.ndarray, outcome: int) -> np.ndarray:
    s = direction[0] * SIGMA_X + direction[1] * SIGMA_Y + direction[2] * SIGMA_Z
    return 0.5 * (SIGMA_0 + outcome * s)


def _check_outcome(r: int) -> int:
    if r not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {r!r}")
    return r


def joint_probability(state: DensityMatrix4, a, b, r1: int, r2: int) -> float:
    """P(r1, r2 | a, b) for projective measurements along unit vectors a, b."""
    a = unit_vector(a)
    b = unit_vector(b)
    pa = _projector(a, _check_outcome(r1))
    pb = _projector(b, _check_outcome(r2))
    return float(np.trace(state.matrix @ np.kron(pa, pb)).real)


class ConditionalState(NamedTuple):
    """Bob's state after Alice measures and announces an outcome.

    ``bloch`` is None on a zero-probability branch (probability below
    1e-14), where the conditional state is undefined. ``weighted_bloch``
    is probability * bloch computed directly from the unnormalized
    conditional operator and is well defined even then.
    """

    probability: float
    bloch: np.ndarray | None
    weighted_bloch: np.ndarray

    @property
    def zero_probability_branch(self) -> bool:
        return self.bloch is None


def conditional_state(state: DensityMatrix4, x, a: int) -> ConditionalState:
    """Collapse Bob's qubit on Alice's outcome a along direction x.

    Returns the outcome probability and the Bloch vector of Bob's
    normalized conditional state. The weighted vectors of the two
    branches sum to Bob's unconditional marginal (non-signaling).
    """
    x = unit_vector(x)
    m = _projector(x, _check_outcome(a))
    product = state.matrix @ np.kron(m, SIGMA_0)
    reduced = np.einsum("ijil->jl", product.reshape(2, 2, 2, 2))
    prob = float(np.trace(reduced).real)
    weighted = np.array(
        [float(np.trace(reduced @ s).real) for s in (SIGMA_X, SIGMA_Y, SIGMA_Z)]
    )
    if prob < ZERO_BRANCH_TOL:
        return ConditionalState(prob, None, _readonly(weighted))
    return ConditionalState(prob, _readonly(weighted / prob), _readonly(weighted))


def random_density_matrix(rng: np.random.Generator) -> DensityMatrix4:
    """Full-rank random state rho = G G^dag / Tr, G complex Ginibre."""
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    h = g @ g.conj().T
    h = 0.5 * (h + h.conj().T)
    return validate_state(h / np.trace(h).real)


def random_unit_vector(rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=3)
    norm = np.linalg.norm(v)
    while norm < 1e-12:
        v = rng.normal(size=3)
        norm = np.linalg.norm(v)
    return v / norm
