"""Brute-force matrix propagator over a truncated two-mode Fock space.

This module rebuilds the dynamics from the interaction Hamiltonian and the
piecewise transit schedule alone.  It shares no formulas with ``engine``
and serves as the independent verification path: the closed forms and this
propagator must agree to rounding error or one of them is wrong.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    FlavorMismatchError,
    ImpossiblePostselectionError,
    TruncationOverflowError,
)
from .states import (
    PRUNE_EPSILON,
    AtomFieldKet,
    AtomLevel,
    FieldsKet,
    FullKet,
    PureState,
    SystemParams,
)

_E = AtomLevel.EXCITED
_G = AtomLevel.GROUND


@dataclass(frozen=True)
class TruncationWindow:
    """Retained Fock levels 0..n_max for each cavity mode.

    A transit adds at most one photon per cavity, so a window with
    n_max >= max(initial n, initial m) + 2 keeps a guard row that must stay
    unpopulated; any leakage there indicates a bug, not a tight truncation.
    """

    n_max: int

    def __post_init__(self) -> None:
        if isinstance(self.n_max, bool) or not isinstance(self.n_max, int) or self.n_max < 1:
            raise ValueError(f"n_max must be a positive integer, got {self.n_max!r}")

    @classmethod
    def for_params(cls, p: SystemParams) -> "TruncationWindow":
        return cls(max(p.n, p.m) + 2)

    @property
    def levels(self) -> int:
        return self.n_max + 1

    @property
    def atom_field_dim(self) -> int:
        return 2 * self.levels * self.levels

    def index(self, atom: AtomLevel, n: int, m: int) -> int:
        return (int(atom) * self.levels + n) * self.levels + m

    def decode(self, i: int) -> tuple[AtomLevel, int, int]:
        m = i % self.levels
        i //= self.levels
        return AtomLevel(i // self.levels), i % self.levels, m


def _check_cavity(cavity: int) -> None:
    if cavity not in (0, 1):
        raise ValueError(f"cavity must be 0 or 1, got {cavity!r}")


def jc_generator(cavity: int, g: float, w: TruncationWindow) -> np.ndarray:
    """Interaction matrix g(a_j^dag sigma_- + sigma_+ a_j) on the ordered
    atom x mode0 x mode1 basis (hbar = 1)."""
    _check_cavity(cavity)
    h = np.zeros((w.atom_field_dim, w.atom_field_dim), dtype=complex)
    for k in range(w.n_max):
        coupling = g * math.sqrt(k + 1)
        for spectator in range(w.levels):
            if cavity == 0:
                row, col = w.index(_G, k + 1, spectator), w.index(_E, k, spectator)
            else:
                row, col = w.index(_G, spectator, k + 1), w.index(_E, spectator, k)
            h[row, col] = coupling
            h[col, row] = coupling
    return h


def jc_propagator(cavity: int, t: float, g: float, w: TruncationWindow) -> np.ndarray:
    """Unitary exp(-i t H_int) assembled from the resonant doublet rotations.

    Each pair {|e,k>, |g,k+1>} of the active mode rotates by the angle
    g*sqrt(k+1)*t; |g,0> and the truncated top excited row stay put.  Tests
    cross-check this construction against a dense matrix exponential of
    jc_generator, keeping the two derivations independent.
    """
    _check_cavity(cavity)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    u = np.eye(w.atom_field_dim, dtype=complex)
    for k in range(w.n_max):
        angle = g * math.sqrt(k + 1) * t
        diag = math.cos(angle)
        off = -1j * math.sin(angle)
        for spectator in range(w.levels):
            if cavity == 0:
                i_e, i_g = w.index(_E, k, spectator), w.index(_G, k + 1, spectator)
            else:
                i_e, i_g = w.index(_E, spectator, k), w.index(_G, spectator, k + 1)
            u[i_e, i_e] = diag
            u[i_e, i_g] = off
            u[i_g, i_e] = off
            u[i_g, i_g] = diag
    return u


def _branch_unitaries(p: SystemParams, t: float, w: TruncationWindow) -> tuple[np.ndarray, np.ndarray]:
    """Piecewise interaction-picture propagators for the two control branches:
    identity before entry, active rotation inside a cavity, frozen in between."""
    if t < p.T0:
        u = np.eye(w.atom_field_dim, dtype=complex)
        return u, u.copy()
    if t <= p.T0 + p.T:
        dt = t - p.T0
        return jc_propagator(0, dt, p.g, w), jc_propagator(1, dt, p.g, w)
    u0 = jc_propagator(0, p.T, p.g, w)
    u1 = jc_propagator(1, p.T, p.g, w)
    if t < p.T1:
        return u0, u1
    dt = min(t - p.T1, p.T)
    return jc_propagator(1, dt, p.g, w) @ u0, jc_propagator(0, dt, p.g, w) @ u1


def _guard_population(state: PureState, w: TruncationWindow) -> float:
    return math.fsum(
        amp.real * amp.real + amp.imag * amp.imag
        for ket, amp in state.items()
        if ket.n >= w.n_max or ket.m >= w.n_max
    )


def evolve(p: SystemParams, t: float, w: TruncationWindow) -> PureState:
    """Full interaction-picture state (control x atom x fields) at time t.

    The control-0 branch meets cavity 0 first, the control-1 branch cavity 1
    first.  Raises TruncationOverflowError if probability shows up in the
    guard Fock rows, which an adequate window makes impossible.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if w.n_max < max(p.n, p.m) + 2:
        raise ValueError(
            f"window too small: need n_max >= max(n, m) + 2 = {max(p.n, p.m) + 2}, "
            f"got {w.n_max}"
        )
    psi0 = np.zeros(w.atom_field_dim, dtype=complex)
    psi0[w.index(_E, p.n, p.m)] = math.cos(p.xi)
    psi0[w.index(_G, p.n, p.m)] = cmath.exp(1j * p.chi) * math.sin(p.xi)
    u_branch0, u_branch1 = _branch_unitaries(p, t, w)
    vec0 = math.cos(p.theta) * (u_branch0 @ psi0)
    vec1 = cmath.exp(1j * p.varphi) * math.sin(p.theta) * (u_branch1 @ psi0)
    amps: dict[FullKet, complex] = {}
    for control, vec in ((0, vec0), (1, vec1)):
        for i in np.flatnonzero(np.abs(vec) >= PRUNE_EPSILON):
            atom, n, m = w.decode(int(i))
            amps[FullKet(control, AtomFieldKet(atom, n, m))] = complex(vec[i])
    state = PureState(amps)
    leak = _guard_population(state, w)
    if leak >= 1e-12:
        raise TruncationOverflowError(f"guard-row population {leak:.3e}")
    return state


def hadamard_control(s: PureState) -> PureState:
    """Balanced recombination |j>_c -> (|0>_c + (-1)^j |1>_c)/sqrt(2); applying
    it twice restores the input."""
    if s.flavor is not FullKet and s.flavor is not None:
        raise FlavorMismatchError("hadamard_control requires a full-flavor state")
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    amps: dict[FullKet, complex] = {}
    for ket, amp in s.items():
        half = amp * inv_sqrt2
        k0, k1 = FullKet(0, ket.rest), FullKet(1, ket.rest)
        amps[k0] = amps.get(k0, 0j) + half
        amps[k1] = amps.get(k1, 0j) + (half if ket.control == 0 else -half)
    return PureState(amps)


def measure_control(s: PureState, j: int) -> tuple[PureState, float]:
    """Project the control onto |j> and renormalize.

    Returns the conditional atom-field state and the Born probability of the
    outcome, assuming the input is normalized.
    """
    if j not in (0, 1):
        raise ValueError(f"j must be 0 or 1, got {j!r}")
    if s.flavor is not FullKet and s.flavor is not None:
        raise FlavorMismatchError("measure_control requires a full-flavor state")
    picked = {ket.rest: amp for ket, amp in s.items() if ket.control == j}
    prob = math.fsum(a.real * a.real + a.imag * a.imag for a in picked.values())
    if prob < 1e-12:
        raise ImpossiblePostselectionError(
            f"control outcome {j} has probability {prob:.3e}"
        )
    scale = 1.0 / math.sqrt(prob)
    return PureState({k: a * scale for k, a in picked.items()}), prob


def schrodinger_phase(s: PureState, omega: float, t: float) -> PureState:
    """Reattach the free-evolution phase exp(-i*omega*t*(excitations - 1/2))
    ket by ket; norm-preserving, and trivial within one excitation sector."""
    if s.flavor is FieldsKet:
        raise FlavorMismatchError(
            "schrodinger_phase needs kets that carry the atom level"
        )
    return PureState(
        {
            ket: amp * cmath.exp(-1j * omega * t * (ket.excitations - 0.5))
            for ket, amp in s.items()
        }
    )
