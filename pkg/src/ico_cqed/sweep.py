"""Parameter sweeps over the interaction time, packaged figure-style presets,
and deterministic CSV output.

A sweep fixes everything except g*T and walks a uniform grid.  Conditional
quantities at grid points where the conditioning outcome is impossible are
emitted as empty cells, never as zeros: the underlying expressions are 0/0
there.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Union

from ._version import __version__
from .engine import CavityOrder, general_postselect, state_after_both
from .errors import ConfigError, ImpossiblePostselectionError
from .observables import (
    condition_on_atom,
    ket_probability,
    linear_entropy,
    reduced_cavity0,
    sigma_z_expectation,
)
from .states import AtomFieldKet, AtomLevel, PureState, SystemParams

_E = AtomLevel.EXCITED
_G = AtomLevel.GROUND

SCENARIOS = ("series_C0C1", "series_C1C0", "ico_j0", "ico_j1")


@dataclass(frozen=True)
class KetProbability:
    """Column: probability of one atom-field basis ket."""

    atom: AtomLevel
    n: int
    m: int

    @property
    def column_id(self) -> str:
        return f"P({self.atom.label},{self.n},{self.m})"

    def to_dict(self) -> dict:
        return {"kind": "ket_prob", "atom": self.atom.label, "n": self.n, "m": self.m}


@dataclass(frozen=True)
class BranchEntropy:
    """Column: first-mode linear entropy after conditioning on the atom level."""

    atom_branch: AtomLevel

    @property
    def column_id(self) -> str:
        return f"S_L({self.atom_branch.label})"

    def to_dict(self) -> dict:
        return {"kind": "entropy", "atom_branch": self.atom_branch.label}


@dataclass(frozen=True)
class AtomicInversion:
    """Column: direct expectation of the atomic inversion."""

    @property
    def column_id(self) -> str:
        return "sigma_z"

    def to_dict(self) -> dict:
        return {"kind": "sigma_z"}


@dataclass(frozen=True)
class ControlProbabilityColumn:
    """Column: probability of the scenario's control outcome (ico only)."""

    @property
    def column_id(self) -> str:
        return "control_prob"

    def to_dict(self) -> dict:
        return {"kind": "control_prob"}


Quantity = Union[KetProbability, BranchEntropy, AtomicInversion, ControlProbabilityColumn]


def _quantity_from_dict(obj: object, index: int) -> Quantity:
    where = f"quantities[{index}]"
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object with a 'kind' field")
    kind = obj.get("kind")
    if kind == "ket_prob":
        try:
            atom = AtomLevel.from_label(obj["atom"])
            return KetProbability(atom, int(obj["n"]), int(obj["m"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{where}: ket_prob needs atom ('e'|'g'), n, m ({exc})")
    if kind == "entropy":
        try:
            return BranchEntropy(AtomLevel.from_label(obj["atom_branch"]))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"{where}: entropy needs atom_branch ('e'|'g') ({exc})")
    if kind == "sigma_z":
        return AtomicInversion()
    if kind == "control_prob":
        return ControlProbabilityColumn()
    raise ConfigError(f"{where}.kind: unknown quantity kind {kind!r}")


@dataclass(frozen=True)
class SweepConfig:
    """One sweep: a scenario, the columns to compute, and the g*T grid."""

    scenario: str
    quantities: tuple[Quantity, ...]
    n: int = 0
    m: int = 0
    xi: float = 0.0
    chi: float = 0.0
    theta: float = math.pi / 4
    varphi: float = 0.0
    gT_start: float = 0.0
    gT_stop: float = 10.0
    gT_step: float = 0.01
    omega_t: float = 0.0

    def __post_init__(self) -> None:
        if self.scenario not in SCENARIOS:
            raise ConfigError(
                f"scenario: must be one of {', '.join(SCENARIOS)}, got {self.scenario!r}"
            )
        if not self.quantities:
            raise ConfigError("quantities: must be non-empty")
        if self.scenario.startswith("series") and any(
            isinstance(q, ControlProbabilityColumn) for q in self.quantities
        ):
            raise ConfigError("quantities: control_prob is defined only for ico scenarios")
        for name, value in (("n", self.n), ("m", self.m)):
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise ConfigError(f"{name}: must be a non-negative integer, got {value!r}")
        for name, value, upper, inclusive in (
            ("xi", self.xi, math.pi / 2, True),
            ("theta", self.theta, math.pi / 2, True),
            ("chi", self.chi, 2 * math.pi, False),
            ("varphi", self.varphi, 2 * math.pi, False),
        ):
            ok = 0.0 <= value <= upper if inclusive else 0.0 <= value < upper
            if not ok:
                raise ConfigError(f"{name}: out of range, got {value}")
        if self.gT_step <= 0:
            raise ConfigError(f"gT_step: must be > 0, got {self.gT_step}")
        if self.gT_start < 0:
            raise ConfigError(f"gT_start: must be >= 0, got {self.gT_start}")
        if self.gT_start > self.gT_stop:
            raise ConfigError(
                f"gT_start: must be <= gT_stop, got {self.gT_start} > {self.gT_stop}"
            )

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "quantities": [q.to_dict() for q in self.quantities],
            "n": self.n,
            "m": self.m,
            "xi": self.xi,
            "chi": self.chi,
            "theta": self.theta,
            "varphi": self.varphi,
            "gT_start": self.gT_start,
            "gT_stop": self.gT_stop,
            "gT_step": self.gT_step,
            "omega_t": self.omega_t,
        }


_CONFIG_FIELDS = {
    "scenario",
    "quantities",
    "n",
    "m",
    "xi",
    "chi",
    "theta",
    "varphi",
    "gT_start",
    "gT_stop",
    "gT_step",
    "omega_t",
}
_FLOAT_FIELDS = ("xi", "chi", "theta", "varphi", "gT_start", "gT_stop", "gT_step", "omega_t")


def config_from_dict(data: object) -> SweepConfig:
    """Build a SweepConfig from parsed JSON, naming any offending field."""
    if not isinstance(data, dict):
        raise ConfigError("config: expected a JSON object")
    unknown = set(data) - _CONFIG_FIELDS
    if unknown:
        raise ConfigError(f"{sorted(unknown)[0]}: unknown config field")
    if "scenario" not in data:
        raise ConfigError("scenario: required field is missing")
    raw_quantities = data.get("quantities")
    if not isinstance(raw_quantities, list) or not raw_quantities:
        raise ConfigError("quantities: must be a non-empty list")
    quantities = tuple(_quantity_from_dict(q, i) for i, q in enumerate(raw_quantities))
    kwargs: dict = {}
    for name in ("n", "m"):
        if name in data:
            kwargs[name] = data[name]
    for name in _FLOAT_FIELDS:
        if name in data:
            value = data[name]
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"{name}: must be a number, got {value!r}")
            kwargs[name] = float(value)
    return SweepConfig(scenario=data["scenario"], quantities=quantities, **kwargs)


def grid_points(cfg: SweepConfig) -> list[float]:
    """Uniform grid start, start+step, ...; the stop point is included when it
    lands on the grid to within a relative slack."""
    count = int(math.floor((cfg.gT_stop - cfg.gT_start) / cfg.gT_step + 1e-9)) + 1
    return [cfg.gT_start + i * cfg.gT_step for i in range(count)]


@dataclass(frozen=True)
class Table:
    """Column names plus rows of floats; None marks an empty CSV cell."""

    columns: tuple[str, ...]
    rows: tuple[tuple, ...]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        for row in self.rows:
            lines.append(",".join("" if v is None else repr(v) for v in row))
        return "\n".join(lines) + "\n"


def _scenario_state(cfg: SweepConfig, p: SystemParams) -> tuple[PureState | None, float | None]:
    """Evaluate the scenario at one grid point.

    Returns (state, control outcome probability).  The state is None when the
    scenario's outcome cannot be postselected; the probability is still exact
    (it is one minus the complementary outcome's probability).
    """
    if cfg.scenario == "series_C0C1":
        return state_after_both(CavityOrder.C0_THEN_C1, p, p.T), None
    if cfg.scenario == "series_C1C0":
        return state_after_both(CavityOrder.C1_THEN_C0, p, p.T), None
    j = 0 if cfg.scenario == "ico_j0" else 1
    try:
        state, prob = general_postselect(j, p, cfg.omega_t)
        return state, prob
    except ImpossiblePostselectionError:
        _, other = general_postselect(1 - j, p, cfg.omega_t)
        return None, 1.0 - other


def _evaluate_quantity(q: Quantity, state: PureState | None, control_prob: float | None):
    if isinstance(q, ControlProbabilityColumn):
        return control_prob
    if state is None:
        return None
    if isinstance(q, KetProbability):
        return ket_probability(state, AtomFieldKet(q.atom, q.n, q.m))
    if isinstance(q, AtomicInversion):
        return sigma_z_expectation(state)
    try:
        fields, _ = condition_on_atom(state, q.atom_branch)
    except ImpossiblePostselectionError:
        return None
    return linear_entropy(reduced_cavity0(fields))


def run_sweep(cfg: SweepConfig) -> Table:
    """One row per grid point, one column per configured quantity; the output
    is deterministic for a fixed config."""
    columns = ("gT",) + tuple(q.column_id for q in cfg.quantities)
    rows = []
    for gt in grid_points(cfg):
        p = SystemParams(
            g=1.0,
            T=gt,
            theta=cfg.theta,
            varphi=cfg.varphi,
            xi=cfg.xi,
            chi=cfg.chi,
            n=cfg.n,
            m=cfg.m,
        )
        state, control_prob = _scenario_state(cfg, p)
        rows.append((gt,) + tuple(_evaluate_quantity(q, state, control_prob) for q in cfg.quantities))
    return Table(columns, tuple(rows))


@dataclass(frozen=True)
class FigurePreset:
    """A named bundle of sweeps on a common grid.

    Presets comparing the definite-order and superposed-order scenarios hold
    two sweeps; their tables merge into one CSV with scenario-prefixed columns.
    """

    id: str
    sweeps: tuple[SweepConfig, ...]


def _series(n: int, m: int, *quantities: Quantity) -> SweepConfig:
    return SweepConfig("series_C0C1", tuple(quantities), n=n, m=m)


def _ico(n: int, m: int, *quantities: Quantity) -> SweepConfig:
    return SweepConfig("ico_j0", tuple(quantities), n=n, m=m)


def _pk(label: str, n: int, m: int) -> KetProbability:
    return KetProbability(AtomLevel.from_label(label), n, m)


# Default grid: g*T in [0, 10] at step 0.01, which oversamples the fastest
# oscillation present in any preset by more than fifty points per period.
# The photon-interchange column is omitted from the vacuum presets because
# its target ket does not exist at m = 0 (the probability is identically 0).
FIGURE_PRESETS: dict[str, FigurePreset] = {
    preset.id: preset
    for preset in (
        FigurePreset("fig2a", (_series(0, 0, _pk("e", 0, 0), _pk("g", 0, 1)),)),
        FigurePreset("fig2b", (_series(0, 0, _pk("g", 1, 0)),)),
        FigurePreset("fig2c", (_series(5, 5, _pk("e", 5, 5), _pk("g", 5, 6)),)),
        FigurePreset("fig2d", (_series(5, 5, _pk("g", 6, 5), _pk("e", 6, 4)),)),
        FigurePreset("fig2e", (_series(4, 5, _pk("e", 4, 5), _pk("g", 4, 6)),)),
        FigurePreset("fig2f", (_series(4, 5, _pk("g", 5, 5), _pk("e", 5, 4)),)),
        FigurePreset("fig3a", (_ico(0, 0, _pk("e", 0, 0)),)),
        FigurePreset("fig3b", (_ico(0, 0, _pk("g", 0, 1), _pk("g", 1, 0)),)),
        FigurePreset("fig4a", (_series(1, 1, BranchEntropy(_E)), _ico(1, 1, BranchEntropy(_E)))),
        FigurePreset("fig4b", (_series(0, 0, BranchEntropy(_G)), _ico(0, 0, BranchEntropy(_G)))),
        FigurePreset("fig5a", (_series(0, 0, AtomicInversion()), _ico(0, 0, AtomicInversion()))),
        FigurePreset("fig5b", (_series(1, 1, AtomicInversion()), _ico(1, 1, AtomicInversion()))),
        FigurePreset("fig5c", (_series(0, 1, AtomicInversion()), _ico(0, 1, AtomicInversion()))),
    )
}


def figure_table(figure_id: str) -> Table:
    """Run the sweeps behind one preset and merge them on the shared grid."""
    preset = FIGURE_PRESETS.get(figure_id)
    if preset is None:
        raise ConfigError(
            f"figure: unknown id {figure_id!r}; available: "
            f"{', '.join(sorted(FIGURE_PRESETS))}"
        )
    tables = [run_sweep(cfg) for cfg in preset.sweeps]
    if len(tables) == 1:
        return tables[0]
    columns = ["gT"]
    for cfg, table in zip(preset.sweeps, tables):
        columns.extend(f"{cfg.scenario}:{cid}" for cid in table.columns[1:])
    rows = []
    for i in range(len(tables[0].rows)):
        row = [tables[0].rows[i][0]]
        for table in tables:
            row.extend(table.rows[i][1:])
        rows.append(tuple(row))
    return Table(tuple(columns), tuple(rows))


def sweep_meta(cfg: SweepConfig) -> dict:
    """Sidecar metadata for one sweep: the fully resolved config and the
    library version.  Kept out of the CSV so the data file stays byte-stable."""
    return {"config": cfg.to_dict(), "library_version": __version__}


def figure_meta(figure_id: str) -> dict:
    preset = FIGURE_PRESETS.get(figure_id)
    if preset is None:
        raise ConfigError(f"figure: unknown id {figure_id!r}")
    return {
        "figure": figure_id,
        "sweeps": [cfg.to_dict() for cfg in preset.sweeps],
        "library_version": __version__,
    }


def meta_json(meta: dict) -> str:
    return json.dumps(meta, indent=2, sort_keys=True) + "\n"
