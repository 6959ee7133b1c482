"""Closed-form evolution through both cavities and the order-superposition protocol.

Everything in this module is an explicit function of eight per-order
transition amplitudes; no matrices are built.  The independent matrix
propagator lives in ``oracle`` and shares none of these expressions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from enum import Enum

from .errors import DegenerateBranchError, ImpossiblePostselectionError
from .states import (
    AtomFieldKet,
    AtomLevel,
    FieldsKet,
    PureState,
    SystemParams,
    scale_and_add,
)

_E = AtomLevel.EXCITED
_G = AtomLevel.GROUND
_ANGLE_ATOL = 1e-12

#: Postselection is refused when the branch normalization falls below this;
#: conditional states are undefined at exact zeros and numerically unreliable
#: just above them.
MIN_BRANCH_NORM = 1e-10


class CavityOrder(Enum):
    """Which cavity the atom crosses first."""

    C0_THEN_C1 = "C0_then_C1"
    C1_THEN_C0 = "C1_then_C0"


# Control outcomes are plain validated int bits; a dedicated enum buys
# nothing for a two-valued measurement record.
def _check_outcome(j: int) -> None:
    if j not in (0, 1) or isinstance(j, bool):
        raise ValueError(f"control outcome must be 0 or 1, got {j!r}")


def _check_balanced_control(p: SystemParams, what: str) -> None:
    if abs(p.theta - math.pi / 4) > _ANGLE_ATOL or abs(p.varphi) > _ANGLE_ATOL:
        raise ValueError(
            f"{what} assumes the balanced control preparation "
            f"(theta = pi/4, varphi = 0); use general_postselect for "
            f"theta={p.theta}, varphi={p.varphi}"
        )


def gamma(k: int, g: float) -> float:
    """Doublet rotation rate g*sqrt(k+1); k = -1 gives exactly 0."""
    if k < -1:
        raise ValueError(f"gamma is defined for k >= -1, got {k}")
    return g * math.sqrt(k + 1)


@dataclass(frozen=True)
class CoeffSet:
    """Eight transition amplitudes for one traversal order.

    Slot ``cj`` multiplies the j-th basis ket of that order's expansion.
    For the swapped order the same slots hold the mirrored amplitudes, with
    the photon numbers n and m exchanging roles.
    """

    c1: complex
    c2: complex
    c3: complex
    c4: complex
    c5: complex
    c6: complex
    c7: complex
    c8: complex

    def as_tuple(self) -> tuple:
        return (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7, self.c8)

    def squared_sum(self) -> float:
        return math.fsum(
            complex(c).real ** 2 + complex(c).imag ** 2 for c in self.as_tuple()
        )


def _check_tau(p: SystemParams, tau: float) -> None:
    if not 0.0 <= tau <= p.T:
        raise ValueError(f"tau must lie in [0, T] = [0, {p.T}], got {tau}")


def coeffs_c(p: SystemParams, tau: float) -> CoeffSet:
    """Amplitudes after time T in the first cavity (n photons) followed by
    time tau in the second cavity (m photons).

    The sin(xi) slots vanish exactly for an atom prepared excited, and every
    slot attached to a negative-occupation ket carries a sin factor with a
    zero rate, so it vanishes as well.
    """
    _check_tau(p, tau)
    cos_n = math.cos(gamma(p.n, p.g) * p.T)
    sin_n = math.sin(gamma(p.n, p.g) * p.T)
    cos_n1 = math.cos(gamma(p.n - 1, p.g) * p.T)
    sin_n1 = math.sin(gamma(p.n - 1, p.g) * p.T)
    cos_m = math.cos(gamma(p.m, p.g) * tau)
    sin_m = math.sin(gamma(p.m, p.g) * tau)
    cos_m1 = math.cos(gamma(p.m - 1, p.g) * tau)
    sin_m1 = math.sin(gamma(p.m - 1, p.g) * tau)
    ce = math.cos(p.xi)
    se = cmath.exp(1j * p.chi) * math.sin(p.xi)
    return CoeffSet(
        c1=ce * cos_n * cos_m,
        c2=-1j * se * sin_n1 * cos_m,
        c3=-1j * ce * cos_n * sin_m,
        c4=-se * sin_n1 * sin_m,
        c5=-1j * se * cos_n1 * sin_m1,
        c6=-ce * sin_n * sin_m1,
        c7=se * cos_n1 * cos_m1,
        c8=-1j * ce * sin_n * cos_m1,
    )


def coeffs_s(p: SystemParams, tau: float) -> CoeffSet:
    """Mirror of coeffs_c for the opposite order: n and m exchange roles."""
    return coeffs_c(replace(p, n=p.m, m=p.n), tau)


# Basis layout per order: (slot index, atom level, photon shift in the first
# mode, photon shift in the second mode) relative to the initial (n, m).
_LAYOUT_FIRST_C0 = (
    (0, _E, 0, 0),
    (1, _E, -1, 0),
    (2, _G, 0, +1),
    (3, _G, -1, +1),
    (4, _E, 0, -1),
    (5, _E, +1, -1),
    (6, _G, 0, 0),
    (7, _G, +1, 0),
)
_LAYOUT_FIRST_C1 = (
    (0, _E, 0, 0),
    (1, _E, 0, -1),
    (2, _G, +1, 0),
    (3, _G, +1, -1),
    (4, _E, -1, 0),
    (5, _E, -1, +1),
    (6, _G, 0, 0),
    (7, _G, 0, +1),
)


def _place(amps: dict, amp: complex, atom: AtomLevel, n: int, m: int) -> None:
    """Store one term, dropping negative-occupation kets after checking that
    their amplitude vanishes (it always does: each carries a zero sin factor)."""
    if n < 0 or m < 0:
        if abs(amp) > 1e-30:
            raise AssertionError(
                f"negative-occupation ket ({atom.label},{n},{m}) with amplitude {amp}"
            )
        return
    amps[AtomFieldKet(atom, n, m)] = amp


def state_after_both(order: CavityOrder, p: SystemParams, tau: float) -> PureState:
    """Atom-field state once the atom has spent time T in its first cavity
    and time tau inside its second, for the given traversal order."""
    if order is CavityOrder.C0_THEN_C1:
        coeffs, layout = coeffs_c(p, tau), _LAYOUT_FIRST_C0
    elif order is CavityOrder.C1_THEN_C0:
        coeffs, layout = coeffs_s(p, tau), _LAYOUT_FIRST_C1
    else:
        raise TypeError(f"order must be a CavityOrder, got {order!r}")
    values = coeffs.as_tuple()
    amps: dict[AtomFieldKet, complex] = {}
    for slot, atom, dn, dm in layout:
        _place(amps, values[slot], atom, p.n + dn, p.m + dm)
    return PureState(amps)


def overlap_orders(p: SystemParams) -> complex:
    """Overlap between the two order branches at tau = T, from the closed
    forms: only six ket pairs are shared between the two expansions."""
    c1, c2, c3, _, c5, _, c7, c8 = coeffs_c(p, p.T).as_tuple()
    s1, s2, s3, _, s5, _, s7, s8 = coeffs_s(p, p.T).as_tuple()
    pairs = ((c1, s1), (c2, s5), (c3, s8), (c5, s2), (c7, s7), (c8, s3))
    return sum((complex(a).conjugate() * b for a, b in pairs), 0j)


def control_probability(j: int, p: SystemParams) -> float:
    """Probability of finding the control in |j> after the balanced
    recombination, for the maximally indefinite preparation.

    The two outcomes sum to exactly 1 by construction.  Arbitrary control
    angles are served by general_postselect.
    """
    _check_outcome(j)
    _check_balanced_control(p, "control_probability")
    p0 = 0.5 * (1.0 + overlap_orders(p).real)
    return p0 if j == 0 else 1.0 - p0


def ico_postselected_state(j: int, p: SystemParams, omega_t: float = 0.0) -> PureState:
    """Atom-field state conditioned on control outcome j (balanced preparation).

    Closed-form fast path.  The physically irrelevant global phase
    exp(-i*omega_t*(n+m+1/2)) is dropped; the relative phase exp(i*omega_t)
    between the two excitation sectors is kept, with omega_t equal to the
    mode frequency times the measurement time.  general_postselect returns
    the same state with the global phase still attached.
    """
    _check_outcome(j)
    _check_balanced_control(p, "ico_postselected_state")
    nj_sq = control_probability(j, p)
    if math.sqrt(max(nj_sq, 0.0)) <= MIN_BRANCH_NORM:
        raise ImpossiblePostselectionError(
            f"control outcome {j} has vanishing probability ({nj_sq:.3e})"
        )
    c1, c2, c3, c4, c5, c6, c7, c8 = coeffs_c(p, p.T).as_tuple()
    s1, s2, s3, s4, s5, s6, s7, s8 = coeffs_s(p, p.T).as_tuple()
    sign = 1.0 if j == 0 else -1.0
    eit = cmath.exp(1j * omega_t)
    scale = 1.0 / (2.0 * math.sqrt(nj_sq))
    # One excitation sector carries no interior phase, the other (reachable
    # only for an atom not prepared purely excited) the factor exp(i*omega_t).
    terms = (
        (c1 + sign * s1, _E, 0, 0),
        (c6, _E, +1, -1),
        (sign * s6, _E, -1, +1),
        (eit * (c2 + sign * s5), _E, -1, 0),
        (eit * (c5 + sign * s2), _E, 0, -1),
        (eit * (c7 + sign * s7), _G, 0, 0),
        (eit * c4, _G, -1, +1),
        (eit * sign * s4, _G, +1, -1),
        (c3 + sign * s8, _G, 0, +1),
        (c8 + sign * s3, _G, +1, 0),
    )
    amps: dict[AtomFieldKet, complex] = {}
    for amp, atom, dn, dm in terms:
        _place(amps, amp * scale, atom, p.n + dn, p.m + dm)
    return PureState(amps)


def general_postselect(
    j: int, p: SystemParams, omega_t: float = 0.0
) -> tuple[PureState, float]:
    """Condition on control outcome j for arbitrary preparation angles.

    Builds the two order branches weighted cos(theta) and e^{i varphi}
    sin(theta), recombines them on the control, projects onto |j>, and
    applies the full per-ket phase exp(-i*omega_t*(excitations - 1/2)).
    Returns the normalized conditional atom-field state and the outcome
    probability.  Unlike the fast path, no global phase is discarded.
    """
    _check_outcome(j)
    first = state_after_both(CavityOrder.C0_THEN_C1, p, p.T)
    second = state_after_both(CavityOrder.C1_THEN_C0, p, p.T)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    w0 = math.cos(p.theta) * inv_sqrt2
    w1 = (-1.0 if j else 1.0) * cmath.exp(1j * p.varphi) * math.sin(p.theta) * inv_sqrt2
    residual = scale_and_add(w0, first, w1, second)
    prob = residual.squared_norm()
    if prob < 1e-12:
        raise ImpossiblePostselectionError(
            f"control outcome {j} has probability {prob:.3e}"
        )
    scale = 1.0 / math.sqrt(prob)
    amps = {
        ket: amp * scale * cmath.exp(-1j * omega_t * (ket.excitations - 0.5))
        for ket, amp in residual.items()
    }
    return PureState(amps), prob


def bell_resonance_gT(n: int, resonance: int) -> float:
    """Interaction time, as g*T, at which the equal-fill case n = m collapses
    each atom-conditioned branch to a two-ket entangled field state."""
    return (2 * resonance - 1) * math.pi / (2.0 * math.sqrt(n + 1))


def bell_state(atom_branch: AtomLevel, n: int, resonance: int) -> PureState:
    """Two-mode entangled field state left behind when, on top of the
    control-0 outcome, the atom is measured in ``atom_branch``.

    Assumes equal initial fill (m = n) and g*T = bell_resonance_gT(n,
    resonance) with ``resonance`` a positive integer.  The ground branch
    pairs |n, n+1> with |n+1, n>; the excited branch pairs |n+1, n-1> with
    |n-1, n+1> and exists only for n >= 1.  Taking the integer index instead
    of g*T avoids float-equality checks on the resonance condition.
    """
    if not isinstance(atom_branch, AtomLevel):
        raise ValueError(f"atom_branch must be an AtomLevel, got {atom_branch!r}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if isinstance(resonance, bool) or not isinstance(resonance, int) or resonance < 1:
        raise ValueError(f"resonance must be a positive integer, got {resonance!r}")
    arg = 0.5 * math.pi * (2 * resonance - 1) * math.sqrt(n / (n + 1))
    parity = -1.0 if resonance % 2 else 1.0
    if atom_branch is _E:
        if n == 0:
            raise DegenerateBranchError(
                "the excited branch has zero amplitude for n = 0"
            )
        amp: complex = parity * math.sin(arg)
        kets = (FieldsKet(n + 1, n - 1), FieldsKet(n - 1, n + 1))
    else:
        amp = 1j * parity * math.cos(arg)
        kets = (FieldsKet(n, n + 1), FieldsKet(n + 1, n))
    return PureState({kets[0]: amp, kets[1]: amp}).normalized()
