"""Sparse state vectors and shared domain types for the two-cavity system.

Three ket flavors are used throughout the package: ``FullKet`` spans
control qubit times atom times the two Fock modes, ``AtomFieldKet`` drops
the control qubit, and ``FieldsKet`` keeps the two Fock modes alone.  A
``PureState`` is an immutable sparse map from kets of a single flavor to
complex amplitudes.  Amplitudes with magnitude below ``PRUNE_EPSILON`` are
dropped at construction, so terms that vanish identically (sin(0) factors
and the like) never clutter the support.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Mapping, Union

from .errors import FlavorMismatchError

#: Amplitudes below this magnitude are dropped from states.  The value sits
#: at machine-epsilon scale, far below every assertion tolerance used here.
PRUNE_EPSILON = 1e-15


class AtomLevel(IntEnum):
    """Internal level of the two-level atom; excited sorts before ground."""

    EXCITED = 0
    GROUND = 1

    @property
    def label(self) -> str:
        return "e" if self is AtomLevel.EXCITED else "g"

    @property
    def excitation(self) -> int:
        """1 for the excited level, 0 for the ground level."""
        return 1 if self is AtomLevel.EXCITED else 0

    @classmethod
    def from_label(cls, label: str) -> "AtomLevel":
        if label == "e":
            return cls.EXCITED
        if label == "g":
            return cls.GROUND
        raise ValueError(f"unknown atom level {label!r}, expected 'e' or 'g'")


def _check_occupation(value: int, name: str) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value}")


@dataclass(frozen=True, order=True)
class FieldsKet:
    """Fock occupation of the two cavity modes alone."""

    n: int
    m: int

    def __post_init__(self) -> None:
        _check_occupation(self.n, "n")
        _check_occupation(self.m, "m")

    @property
    def excitations(self) -> int:
        return self.n + self.m


@dataclass(frozen=True, order=True)
class AtomFieldKet:
    """Product basis ket: atom level and the photon numbers of both modes."""

    atom: AtomLevel
    n: int
    m: int

    def __post_init__(self) -> None:
        if not isinstance(self.atom, AtomLevel):
            raise ValueError(f"atom must be an AtomLevel, got {self.atom!r}")
        _check_occupation(self.n, "n")
        _check_occupation(self.m, "m")

    @classmethod
    def excited(cls, n: int, m: int) -> "AtomFieldKet":
        return cls(AtomLevel.EXCITED, n, m)

    @classmethod
    def ground(cls, n: int, m: int) -> "AtomFieldKet":
        return cls(AtomLevel.GROUND, n, m)

    @property
    def excitations(self) -> int:
        """Atom excitation plus total photon number; conserved by the dynamics."""
        return self.atom.excitation + self.n + self.m


@dataclass(frozen=True, order=True)
class FullKet:
    """Control-qubit bit together with the atom-field ket it rides on."""

    control: int
    rest: AtomFieldKet

    def __post_init__(self) -> None:
        if self.control not in (0, 1) or isinstance(self.control, bool):
            raise ValueError(f"control must be 0 or 1, got {self.control!r}")
        if not isinstance(self.rest, AtomFieldKet):
            raise ValueError("rest must be an AtomFieldKet")

    @property
    def atom(self) -> AtomLevel:
        return self.rest.atom

    @property
    def n(self) -> int:
        return self.rest.n

    @property
    def m(self) -> int:
        return self.rest.m

    @property
    def excitations(self) -> int:
        """The control qubit does not count towards the excitation number."""
        return self.rest.excitations


Ket = Union[FullKet, AtomFieldKet, FieldsKet]


class PureState:
    """Immutable sparse map from kets of one flavor to complex amplitudes."""

    __slots__ = ("_amps", "_flavor")

    def __init__(self, amplitudes: Mapping[Ket, complex] | None = None):
        amps: dict[Ket, complex] = {}
        flavor: type | None = None
        for ket, raw in (amplitudes or {}).items():
            if not isinstance(ket, (FullKet, AtomFieldKet, FieldsKet)):
                raise TypeError(f"not a ket: {ket!r}")
            if flavor is None:
                flavor = type(ket)
            elif type(ket) is not flavor:
                raise FlavorMismatchError(
                    f"mixed ket flavors {flavor.__name__} and {type(ket).__name__}"
                )
            amp = complex(raw)
            if not (math.isfinite(amp.real) and math.isfinite(amp.imag)):
                raise ValueError(f"non-finite amplitude {amp!r} on {ket!r}")
            if abs(amp) < PRUNE_EPSILON:
                continue
            amps[ket] = amp
        self._amps = amps
        self._flavor = flavor if amps else None

    @classmethod
    def from_ket(cls, ket: Ket, amplitude: complex = 1.0) -> "PureState":
        return cls({ket: amplitude})

    @property
    def flavor(self) -> type | None:
        """Ket class of this state, or None for the empty state."""
        return self._flavor

    def amplitude(self, ket: Ket) -> complex:
        return self._amps.get(ket, 0j)

    def kets(self) -> list:
        return sorted(self._amps)

    def items(self) -> list:
        """(ket, amplitude) pairs in the deterministic ket order."""
        return [(k, self._amps[k]) for k in sorted(self._amps)]

    def __len__(self) -> int:
        return len(self._amps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PureState):
            return NotImplemented
        return self._amps == other._amps

    def __repr__(self) -> str:
        name = self._flavor.__name__ if self._flavor else "empty"
        return f"PureState({len(self._amps)} kets, {name})"

    def squared_norm(self) -> float:
        return math.fsum(a.real * a.real + a.imag * a.imag for a in self._amps.values())

    def norm(self) -> float:
        return math.sqrt(self.squared_norm())

    def is_normalized(self, atol: float = 1e-12) -> bool:
        return abs(self.squared_norm() - 1.0) <= atol

    def normalized(self) -> "PureState":
        nrm = self.norm()
        if nrm == 0.0:
            raise ValueError("cannot normalize the zero state")
        return PureState({k: a / nrm for k, a in self._amps.items()})


def _check_same_flavor(a: PureState, b: PureState, what: str) -> None:
    if a.flavor is not None and b.flavor is not None and a.flavor is not b.flavor:
        raise FlavorMismatchError(
            f"{what} requires matching ket flavors, got "
            f"{a.flavor.__name__} and {b.flavor.__name__}"
        )


def inner_product(a: PureState, b: PureState) -> complex:
    """Hermitian inner product: sum over shared kets of conj(a_k) * b_k."""
    _check_same_flavor(a, b, "inner_product")
    common = a._amps.keys() & b._amps.keys()
    return sum((a._amps[k].conjugate() * b._amps[k] for k in common), 0j)


def norm(a: PureState) -> float:
    return a.norm()


def scale_and_add(alpha: complex, a: PureState, beta: complex, b: PureState) -> PureState:
    """Amplitude-wise alpha*a + beta*b; the result is pruned as usual."""
    _check_same_flavor(a, b, "scale_and_add")
    out: dict[Ket, complex] = {k: alpha * amp for k, amp in a._amps.items()}
    for k, amp in b._amps.items():
        out[k] = out.get(k, 0j) + beta * amp
    return PureState(out)


def state_to_json(state: PureState) -> str:
    """Serialize a state; floats carry 17 significant digits so that parsing
    recovers every amplitude bit for bit."""
    entries = []
    for ket, amp in state.items():
        if isinstance(ket, FullKet):
            control: str = str(ket.control)
            atom = f'"{ket.atom.label}"'
            n, m = ket.n, ket.m
        elif isinstance(ket, AtomFieldKet):
            control = "null"
            atom = f'"{ket.atom.label}"'
            n, m = ket.n, ket.m
        else:
            control = "null"
            atom = "null"
            n, m = ket.n, ket.m
        entries.append(
            '{"control":%s,"atom":%s,"n":%d,"m":%d,"re":%.17g,"im":%.17g}'
            % (control, atom, n, m, amp.real, amp.imag)
        )
    return '{"kets":[%s]}' % ",".join(entries)


def state_from_json(text: str) -> PureState:
    data = json.loads(text)
    amps: dict[Ket, complex] = {}
    for entry in data["kets"]:
        n, m = entry["n"], entry["m"]
        atom = entry.get("atom")
        control = entry.get("control")
        if atom is None:
            ket: Ket = FieldsKet(n, m)
        elif control is None:
            ket = AtomFieldKet(AtomLevel.from_label(atom), n, m)
        else:
            ket = FullKet(control, AtomFieldKet(AtomLevel.from_label(atom), n, m))
        amps[ket] = complex(entry["re"], entry["im"])
    return PureState(amps)


def _check_angle(value: float, name: str, upper: float, inclusive: bool) -> None:
    ok = 0.0 <= value <= upper if inclusive else 0.0 <= value < upper
    if not ok:
        bracket = "]" if inclusive else ")"
        raise ValueError(f"{name} must lie in [0, {upper:.6g}{bracket}, got {value}")


@dataclass(frozen=True)
class SystemParams:
    """All physical inputs for one run.

    g is the atom-field coupling (rad per unit time, positive), T the transit
    time per cavity, omega the common mode and atom frequency (it only enters
    through phases).  theta and varphi prepare the control qubit, xi and chi
    the atom; n and m are the initial photon numbers of the first and second
    cavity.  T0 is the entry time into the first cavity and T1 into the
    second; they default to back-to-back transits (T0 = 0, T1 = T0 + T).
    """

    g: float
    T: float
    omega: float = 1.0
    theta: float = 0.0
    varphi: float = 0.0
    xi: float = 0.0
    chi: float = 0.0
    n: int = 0
    m: int = 0
    T0: float = 0.0
    T1: float | None = None

    def __post_init__(self) -> None:
        if not self.g > 0:
            raise ValueError(f"g must be > 0, got {self.g}")
        if self.T < 0:
            raise ValueError(f"T must be >= 0, got {self.T}")
        if not self.omega > 0:
            raise ValueError(f"omega must be > 0, got {self.omega}")
        _check_angle(self.theta, "theta", math.pi / 2, inclusive=True)
        _check_angle(self.varphi, "varphi", 2 * math.pi, inclusive=False)
        _check_angle(self.xi, "xi", math.pi / 2, inclusive=True)
        _check_angle(self.chi, "chi", 2 * math.pi, inclusive=False)
        _check_occupation(self.n, "n")
        _check_occupation(self.m, "m")
        if self.T0 < 0:
            raise ValueError(f"T0 must be >= 0, got {self.T0}")
        if self.T1 is None:
            object.__setattr__(self, "T1", self.T0 + self.T)
        if self.T1 < self.T0 + self.T:
            raise ValueError(
                f"schedule must satisfy T0 + T <= T1, got T0={self.T0}, T={self.T}, T1={self.T1}"
            )

    @property
    def gT(self) -> float:
        return self.g * self.T


def initial_atom_field_state(p: SystemParams) -> PureState:
    """Atom-field part of the initial state: cos(xi)|e,n,m> + e^{i chi} sin(xi)|g,n,m>."""
    return PureState(
        {
            AtomFieldKet.excited(p.n, p.m): math.cos(p.xi),
            AtomFieldKet.ground(p.n, p.m): cmath.exp(1j * p.chi) * math.sin(p.xi),
        }
    )
