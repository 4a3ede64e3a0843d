"""Built-in noise families and criterion sweeps over their parameter grid."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Mapping

import numpy as np

from .criteria import CriterionVerdict, all_criteria, tensor_norm_sq
from .states import DensityMatrix4, pauli_expansion, validate_state
from .svd3 import svd3


class ParameterOutOfRange(ValueError):
    pass


_SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / math.sqrt(2.0)
_IDENTITY4 = np.eye(4, dtype=complex)


def _noisy_pure(psi: np.ndarray, v: float) -> DensityMatrix4:
    rho = v * np.outer(psi, psi.conj()) + (1.0 - v) * _IDENTITY4 / 4.0
    return validate_state(rho)


def werner(v: float) -> DensityMatrix4:
    """Singlet mixed with white noise; correlation block diag(-v, -v, -v).

    The parameter is restricted to [0, 1] even though slightly negative
    values would still give valid states.
    """
    if not 0.0 <= v <= 1.0:
        raise ParameterOutOfRange(f"v = {v!r} outside [0, 1]")
    return _noisy_pure(_SINGLET, v)


def noisy_schmidt(alpha: float, v: float) -> DensityMatrix4:
    """White-noise admixture of sin(a/2)|01> - cos(a/2)|10>.

    This is the singlet-like transform of the Schmidt state
    cos(a/2)|00> + sin(a/2)|11>; its correlation block is
    diag(-v sin a, -v sin a, -v).
    """
    if not 0.0 <= alpha <= math.pi:
        raise ParameterOutOfRange(f"alpha = {alpha!r} outside [0, pi]")
    if not 0.0 <= v <= 1.0:
        raise ParameterOutOfRange(f"v = {v!r} outside [0, 1]")
    psi = np.zeros(4, dtype=complex)
    psi[1] = math.sin(alpha / 2.0)
    psi[2] = -math.cos(alpha / 2.0)
    return _noisy_pure(psi, v)


@dataclass(frozen=True)
class NoiseFamily:
    """One-parameter family v -> state, with any shape parameters fixed."""

    name: str
    description: str
    state_at: Callable[[float], DensityMatrix4]
    shape_parameters: Mapping[str, float] = field(default_factory=dict)


def werner_family() -> NoiseFamily:
    return NoiseFamily("werner", "singlet with white noise", werner)


def noisy_schmidt_family(alpha: float) -> NoiseFamily:
    return NoiseFamily(
        "noisy-schmidt",
        "partially entangled pure state with white noise",
        partial(noisy_schmidt, alpha),
        {"alpha": float(alpha)},
    )


def family_from_name(name: str, alpha: float | None = None) -> NoiseFamily:
    if name == "werner":
        return werner_family()
    if name == "noisy-schmidt":
        if alpha is None:
            raise ParameterOutOfRange("noisy-schmidt needs an alpha value")
        return noisy_schmidt_family(alpha)
    raise ParameterOutOfRange(f"unknown family {name!r}")


@dataclass(frozen=True)
class SweepRecord:
    """Derived data for one grid point; recomputable from the parameters."""

    family: str
    parameters: Mapping[str, float]
    t1: float
    norm_sq: float
    verdicts: tuple[CriterionVerdict, ...]


def sweep(family: NoiseFamily, v_grid) -> list[SweepRecord]:
    """Evaluate all criteria on each grid point, ordered by parameters."""
    records = []
    for v in sorted(float(v) for v in v_grid):
        tensor = pauli_expansion(family.state_at(v))
        schmidt = svd3(tensor.block)
        norm_sq = tensor_norm_sq(tensor)
        records.append(
            SweepRecord(
                family=family.name,
                parameters={**family.shape_parameters, "v": v},
                t1=schmidt.t1,
                norm_sq=norm_sq,
                verdicts=all_criteria(schmidt, norm_sq),
            )
        )
    return records
