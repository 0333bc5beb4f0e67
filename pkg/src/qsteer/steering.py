"""Correlation-matrix steering criteria for three-qubit states.

The steering test for a cut compares the trace norm of a covariance matrix,
built from complete sets of local orthogonal observables (LOOs), against a
purity bound. For a qubit the LOO set is {s_m / sqrt(2)}, for a qubit pair
{(s_j x s_k) / 2}; those normalizations put factors 1/(2*sqrt(2)) and 1/2 in
front of the raw Pauli covariances below. A positive H value certifies
steerability in the stated direction; S = max(H, 0) is the quantifier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .pauli import pauli_tensor, pauli_tensor_pair, purity_from_theta
from .states import DEFICIT_FLOOR as _DEFICIT_FLOOR
from .states import partial_trace, permute_qubits, purity_deficit, validate_state

__all__ = [
    "CorrelationMatrix",
    "SteeringReport",
    "classify_pairs",
    "correlation_one_to_two",
    "correlation_two_to_one",
    "correlation_pair",
    "trace_norm",
    "h_one_to_two",
    "h_two_to_one",
    "h_pair",
    "steering_value",
    "steering_report",
]

ONE_TWO_SCALE = 1.0 / (2.0 * np.sqrt(2.0))  # 1/sqrt(2) qubit LOOs times 1/2 pair LOOs
PAIR_SCALE = 0.5  # two 1/sqrt(2) qubit LOO factors

_PURE_DEFICIT_TOL = 1e-12


@dataclass
class CorrelationMatrix:
    """LOO covariance matrix with its cut and direction labels."""

    entries: np.ndarray
    cut: str
    direction: str

    def trace_norm(self) -> float:
        return trace_norm(self.entries)


def trace_norm(matrix) -> float:
    """Sum of singular values."""
    entries = matrix.entries if isinstance(matrix, CorrelationMatrix) else matrix
    return float(np.linalg.svd(np.asarray(entries, dtype=float), compute_uv=False).sum())


def correlation_one_to_two(theta: np.ndarray) -> CorrelationMatrix:
    """4x16 covariance matrix for steering the leading qubit into the pair.

    M[m, 4j+k] = (theta[m,j,k] - theta[m,0,0] * theta[0,j,k]) / (2*sqrt(2)).
    Row m=0 and column n=0 vanish identically.
    """
    theta = np.asarray(theta, dtype=float)
    cov = theta - np.einsum("m,jk->mjk", theta[:, 0, 0], theta[0])
    return CorrelationMatrix(ONE_TWO_SCALE * cov.reshape(4, 16), cut="A|BC", direction="A->BC")


def correlation_two_to_one(theta: np.ndarray) -> CorrelationMatrix:
    """16x4 covariance matrix for steering the pair into the leading qubit.

    Built from the coefficient tensor reordered to BCA slot order; equals the
    transpose of correlation_one_to_two on the same state.
    """
    theta_bca = np.transpose(np.asarray(theta, dtype=float), (1, 2, 0))
    cov = theta_bca - np.einsum("jk,m->jkm", theta_bca[:, :, 0], theta_bca[0, 0])
    return CorrelationMatrix(ONE_TWO_SCALE * cov.reshape(16, 4), cut="A|BC", direction="BC->A")


def correlation_pair(rho2: np.ndarray) -> CorrelationMatrix:
    """4x4 covariance matrix c_ij = (theta_ij - theta_i0 * theta_0j) / 2."""
    theta = pauli_tensor_pair(rho2)
    cov = theta - np.outer(theta[:, 0], theta[0])
    return CorrelationMatrix(PAIR_SCALE * cov, cut="pair", direction="0->1")


def _pair_marginals(rho2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    r = np.asarray(rho2, dtype=complex).reshape(2, 2, 2, 2)
    return np.einsum("abcb->ac", r), np.einsum("abac->bc", r)


def _qubit_deficit(rho1: np.ndarray) -> float:
    # 1 - tr(rho^2) = 2 det(rho) for a unit-trace qubit state; exact when an
    # amplitude sector is empty, unlike the cancellation-prone direct form.
    det = rho1[0, 0].real * rho1[1, 1].real - (rho1[0, 1].real**2 + rho1[0, 1].imag**2)
    deficit = 2.0 * det
    return 0.0 if deficit < _DEFICIT_FLOOR else deficit


def _steered_pair_deficit(rho: np.ndarray) -> float:
    # For a globally pure state the two cut marginals share a spectrum, so the
    # 4-dim deficit equals 2 det(rho_a); that route stays exact at points where
    # the cut factorizes.
    if purity_deficit(rho) <= _PURE_DEFICIT_TOL:
        return _qubit_deficit(partial_trace(rho, ("A",)))
    return purity_deficit(partial_trace(rho, ("B", "C")))


def h_one_to_two(rho: np.ndarray) -> float:
    """H for steering qubit A into the BC pair: ||M||_tr - sqrt((2 - tr rho_a^2)(1 - tr rho_bc^2))."""
    return _one_to_two_quantities(np.asarray(rho, dtype=complex)).h


def h_two_to_one(rho: np.ndarray) -> float:
    """H for steering the BC pair into qubit A: ||M'||_tr - sqrt((4 - tr rho_bc^2)(1 - tr rho_a^2))."""
    return _two_to_one_quantities(np.asarray(rho, dtype=complex)).h


def h_pair(rho2: np.ndarray, steering_side: int = 0) -> float:
    """H for one qubit of a pair steering the other.

    steering_side selects which marginal drives the bound: H equals
    ||c||_tr - sqrt((2 - tr rho_steer^2)(1 - tr rho_steered^2)).
    """
    if steering_side not in (0, 1):
        raise ValueError("steering_side must be 0 or 1")
    norm = trace_norm(correlation_pair(rho2))
    m0, m1 = _pair_marginals(rho2)
    steer, steered = (m0, m1) if steering_side == 0 else (m1, m0)
    p_steer = float(np.real(np.einsum("ij,ji->", steer, steer)))
    return norm - float(np.sqrt((2.0 - p_steer) * _qubit_deficit(steered)))


def steering_value(h: float) -> float:
    """Steering quantifier max(H, 0)."""
    return max(float(h), 0.0)


@dataclass
class CutQuantities:
    """Trace norm, purity bound, and H/S for one cut and direction."""

    norm: float
    bound: float

    @property
    def h(self) -> float:
        return self.norm - self.bound

    @property
    def s(self) -> float:
        return steering_value(self.h)


@dataclass
class SteeringReport:
    """All requested H and S values plus the monogamy verdict for one state."""

    cuts: dict[str, CutQuantities]
    pair_h: dict[str, float]
    classification: str
    extras: dict[str, float] = field(default_factory=dict)

    @property
    def h_a_bc(self) -> float:
        return self.cuts["A->BC"].h

    @property
    def s_a_bc(self) -> float:
        return self.cuts["A->BC"].s

    @property
    def h_tot(self) -> float:
        return (self.pair_h["AB"] + self.pair_h["AC"]) + self.pair_h["BC"]

    @property
    def s_tot(self) -> float:
        return (
            steering_value(self.pair_h["AB"])
            + steering_value(self.pair_h["AC"])
            + steering_value(self.pair_h["BC"])
        )

    @property
    def margin(self) -> float:
        return self.s_a_bc - self.h_tot

    def to_dict(self) -> dict:
        out = {
            "h_a_bc": self.h_a_bc,
            "s_a_bc": self.s_a_bc,
            "norm_a_bc": self.cuts["A->BC"].norm,
            "bound_a_bc": self.cuts["A->BC"].bound,
            "h_ab": self.pair_h["AB"],
            "h_ac": self.pair_h["AC"],
            "h_bc": self.pair_h["BC"],
            "s_ab": steering_value(self.pair_h["AB"]),
            "s_ac": steering_value(self.pair_h["AC"]),
            "s_bc": steering_value(self.pair_h["BC"]),
            "h_tot": self.h_tot,
            "s_tot": self.s_tot,
            "margin": self.margin,
            "classification": self.classification,
        }
        for name, cut in self.cuts.items():
            if name == "A->BC":
                continue
            key = name.replace("->", "_to_").lower()
            out[f"h_{key}"] = cut.h
            out[f"s_{key}"] = cut.s
            out[f"norm_{key}"] = cut.norm
            out[f"bound_{key}"] = cut.bound
        out.update(self.extras)
        return out


def _one_to_two_quantities(rho: np.ndarray) -> CutQuantities:
    theta = pauli_tensor(rho)
    norm = trace_norm(correlation_one_to_two(theta))
    bound = float(np.sqrt((2.0 - purity_from_theta(theta, "A")) * _steered_pair_deficit(rho)))
    return CutQuantities(norm=norm, bound=bound)


def _two_to_one_quantities(rho: np.ndarray) -> CutQuantities:
    theta = pauli_tensor(rho)
    norm = trace_norm(correlation_two_to_one(theta))
    deficit_a = _qubit_deficit(partial_trace(rho, ("A",)))
    bound = float(np.sqrt((4.0 - purity_from_theta(theta, "BC")) * deficit_a))
    return CutQuantities(norm=norm, bound=bound)


def classify_pairs(h_ab: float, h_ac: float, h_bc: float) -> str:
    """corollary1 when all pair H >= 0, corollary2 when all < 0, else mixed."""
    values = (h_ab, h_ac, h_bc)
    if all(v >= 0.0 for v in values):
        return "corollary1"
    if all(v < 0.0 for v in values):
        return "corollary2"
    return "mixed"


def steering_report(
    rho: np.ndarray,
    include_all_cuts: bool = False,
    include_two_to_one: bool = False,
    include_reverse_pairs: bool = False,
    validate: bool = True,
) -> SteeringReport:
    """Full steering analysis of a three-qubit state.

    Defaults compute the A->BC cut and the three pair directions A->B, A->C,
    B->C. The B|CA and C|AB cuts reuse the same machinery on the relabeled
    state (qubit permutation), and the two->one directions are available per
    cut on request.
    """
    rho = np.asarray(rho, dtype=complex)
    if validate:
        diag = validate_state(rho)
        if not diag.passed:
            raise ValueError(f"invalid density matrix: {diag.as_dict()}")

    cuts = {"A->BC": _one_to_two_quantities(rho)}
    if include_two_to_one:
        cuts["BC->A"] = _two_to_one_quantities(rho)
    if include_all_cuts:
        rho_bca = permute_qubits(rho, ("B", "C", "A"))
        rho_cab = permute_qubits(rho, ("C", "A", "B"))
        cuts["B->CA"] = _one_to_two_quantities(rho_bca)
        cuts["C->AB"] = _one_to_two_quantities(rho_cab)
        if include_two_to_one:
            cuts["CA->B"] = _two_to_one_quantities(rho_bca)
            cuts["AB->C"] = _two_to_one_quantities(rho_cab)

    rho_ab = partial_trace(rho, ("A", "B"))
    rho_ac = partial_trace(rho, ("A", "C"))
    rho_bc = partial_trace(rho, ("B", "C"))
    pair_h = {
        "AB": h_pair(rho_ab, steering_side=0),
        "AC": h_pair(rho_ac, steering_side=0),
        "BC": h_pair(rho_bc, steering_side=0),
    }
    extras = {}
    if include_reverse_pairs:
        extras["h_ba"] = h_pair(rho_ab, steering_side=1)
        extras["h_ca"] = h_pair(rho_ac, steering_side=1)
        extras["h_cb"] = h_pair(rho_bc, steering_side=1)

    return SteeringReport(
        cuts=cuts,
        pair_h=pair_h,
        classification=classify_pairs(pair_h["AB"], pair_h["AC"], pair_h["BC"]),
        extras=extras,
    )
