"""Shared helpers for the test suite."""

import math

from ico_cqed import AtomLevel, PureState, SystemParams

E = AtomLevel.EXCITED
G = AtomLevel.GROUND


def params(gt, **overrides):
    """SystemParams with g = 1 so that T equals the dimensionless g*T."""
    return SystemParams(g=1.0, T=gt, **overrides)


def balanced(gt, **overrides):
    """Maximally indefinite control preparation."""
    return params(gt, theta=math.pi / 4, **overrides)


def max_amp_diff(a: PureState, b: PureState) -> float:
    kets = set(a.kets()) | set(b.kets())
    return max((abs(a.amplitude(k) - b.amplitude(k)) for k in kets), default=0.0)


def phase_aligned_diff(a: PureState, b: PureState) -> float:
    """max_amp_diff after rotating b by the global phase that matches its
    largest-amplitude ket to a."""
    anchor = max(b.kets(), key=lambda k: abs(b.amplitude(k)))
    ref = a.amplitude(anchor)
    if ref == 0:
        return max_amp_diff(a, b)
    factor = ref / b.amplitude(anchor)
    factor /= abs(factor)
    rotated = PureState({k: factor * amp for k, amp in b.items()})
    return max_amp_diff(a, rotated)


def excitation_distribution(state: PureState) -> dict:
    """Probability per excitation number, for conservation checks."""
    dist: dict = {}
    for ket, amp in state.items():
        w = amp.real * amp.real + amp.imag * amp.imag
        dist[ket.excitations] = dist.get(ket.excitations, 0.0) + w
    return dist
