import json
import math

import pytest

from ico_cqed import (
    AtomFieldKet,
    AtomLevel,
    CavityOrder,
    FieldsKet,
    FlavorMismatchError,
    FullKet,
    PureState,
    SystemParams,
    inner_product,
    norm,
    scale_and_add,
    state_after_both,
    state_from_json,
    state_to_json,
)
from helpers import E, G, max_amp_diff, params


def test_atom_level_ordering_and_labels():
    assert AtomLevel.EXCITED < AtomLevel.GROUND
    assert AtomLevel.EXCITED.label == "e"
    assert AtomLevel.GROUND.label == "g"
    assert AtomLevel.from_label("e") is AtomLevel.EXCITED
    assert AtomLevel.EXCITED.excitation == 1
    assert AtomLevel.GROUND.excitation == 0
    with pytest.raises(ValueError):
        AtomLevel.from_label("x")


def test_negative_occupation_kets_rejected():
    with pytest.raises(ValueError):
        AtomFieldKet(E, -1, 0)
    with pytest.raises(ValueError):
        FieldsKet(0, -2)
    with pytest.raises(ValueError):
        FullKet(2, AtomFieldKet(E, 0, 0))


def test_ket_ordering_is_control_atom_n_m():
    kets = [
        FullKet(1, AtomFieldKet(E, 0, 0)),
        FullKet(0, AtomFieldKet(G, 0, 0)),
        FullKet(0, AtomFieldKet(E, 1, 0)),
        FullKet(0, AtomFieldKet(E, 0, 2)),
        FullKet(0, AtomFieldKet(E, 0, 1)),
    ]
    ordered = sorted(kets)
    assert ordered == [
        FullKet(0, AtomFieldKet(E, 0, 1)),
        FullKet(0, AtomFieldKet(E, 0, 2)),
        FullKet(0, AtomFieldKet(E, 1, 0)),
        FullKet(0, AtomFieldKet(G, 0, 0)),
        FullKet(1, AtomFieldKet(E, 0, 0)),
    ]


def test_prune_and_finiteness():
    st = PureState({AtomFieldKet(E, 0, 0): 1.0, AtomFieldKet(G, 0, 0): 1e-16})
    assert st.kets() == [AtomFieldKet(E, 0, 0)]
    with pytest.raises(ValueError):
        PureState({AtomFieldKet(E, 0, 0): complex("nan")})
    with pytest.raises(ValueError):
        PureState({AtomFieldKet(E, 0, 0): complex("inf")})


def test_mixed_flavors_rejected():
    with pytest.raises(FlavorMismatchError):
        PureState({AtomFieldKet(E, 0, 0): 1.0, FieldsKet(0, 0): 1.0})


def test_inner_product_normalization_and_orthogonality():
    psi = PureState({AtomFieldKet(E, 0, 0): 0.6, AtomFieldKet(G, 1, 0): 0.8j})
    assert abs(inner_product(psi, psi) - 1.0) < 1e-15
    a = PureState.from_ket(AtomFieldKet(E, 0, 0))
    b = PureState.from_ket(AtomFieldKet(G, 1, 0))
    assert inner_product(a, b) == 0


def test_inner_product_order_branches_orthogonal_at_quarter_period():
    p = params(math.pi / 2)
    first = state_after_both(CavityOrder.C0_THEN_C1, p, p.T)
    second = state_after_both(CavityOrder.C1_THEN_C0, p, p.T)
    assert abs(inner_product(first, second)) < 1e-12


def test_inner_product_conjugate_symmetric(rng):
    for _ in range(20):
        kets = [AtomFieldKet(E, int(n), int(m)) for n, m in rng.integers(0, 3, (4, 2))]
        a = PureState({k: complex(*rng.normal(size=2)) for k in kets})
        b = PureState({k: complex(*rng.normal(size=2)) for k in kets[1:]})
        lhs = inner_product(a, b)
        rhs = inner_product(b, a).conjugate()
        assert abs(lhs - rhs) < 1e-12


def test_inner_product_flavor_mismatch():
    a = PureState.from_ket(AtomFieldKet(E, 0, 0))
    b = PureState.from_ket(FieldsKet(0, 0))
    with pytest.raises(FlavorMismatchError):
        inner_product(a, b)


def test_norm_basics():
    assert norm(PureState()) == 0.0
    assert norm(PureState.from_ket(FieldsKet(0, 0))) == 1.0
    bell = PureState({FieldsKet(0, 1): 1 / math.sqrt(2), FieldsKet(1, 0): 1 / math.sqrt(2)})
    assert abs(norm(bell) - 1.0) < 1e-15


def test_scale_and_add_identity_and_cancellation():
    psi = PureState({AtomFieldKet(E, 0, 0): 0.6, AtomFieldKet(G, 1, 0): 0.8})
    phi = PureState.from_ket(AtomFieldKet(G, 0, 1))
    assert scale_and_add(1.0, psi, 0.0, phi) == psi
    assert len(scale_and_add(1.0, psi, -1.0, psi)) == 0
    with pytest.raises(FlavorMismatchError):
        scale_and_add(1.0, psi, 1.0, PureState.from_ket(FieldsKet(0, 0)))


def test_scale_and_add_combines_order_branches():
    # At g*T = pi/2 each order branch is a lone one-photon emission ket, so
    # their half-sum renormalizes to -i/sqrt(2) on both kets.
    p = params(math.pi / 2)
    first = state_after_both(CavityOrder.C0_THEN_C1, p, p.T)
    second = state_after_both(CavityOrder.C1_THEN_C0, p, p.T)
    combo = scale_and_add(0.5, first, 0.5, second).normalized()
    target = -1j / math.sqrt(2)
    assert abs(combo.amplitude(AtomFieldKet(G, 1, 0)) - target) < 1e-12
    assert abs(combo.amplitude(AtomFieldKet(G, 0, 1)) - target) < 1e-12


def test_linearity_distributes_over_inner_product(rng):
    kets = [AtomFieldKet(E, int(n), int(m)) for n, m in rng.integers(0, 3, (5, 2))]
    for _ in range(20):
        a = PureState({k: complex(*rng.normal(size=2)) for k in kets[:3]})
        b = PureState({k: complex(*rng.normal(size=2)) for k in kets[2:]})
        c = PureState({k: complex(*rng.normal(size=2)) for k in kets})
        alpha = complex(*rng.normal(size=2))
        beta = complex(*rng.normal(size=2))
        lhs = inner_product(c, scale_and_add(alpha, a, beta, b))
        rhs = alpha * inner_product(c, a) + beta * inner_product(c, b)
        assert abs(lhs - rhs) < 1e-12


def test_serialization_round_trip_bit_for_bit(rng):
    for flavor in ("full", "atom_field", "fields"):
        amps = {}
        for n, m in rng.integers(0, 4, (6, 2)):
            amp = complex(*rng.normal(size=2))
            if flavor == "full":
                amps[FullKet(int(rng.integers(0, 2)), AtomFieldKet(E, int(n), int(m)))] = amp
            elif flavor == "atom_field":
                amps[AtomFieldKet(G, int(n), int(m))] = amp
            else:
                amps[FieldsKet(int(n), int(m))] = amp
        state = PureState(amps)
        again = state_from_json(state_to_json(state))
        assert again == state  # exact amplitude equality


def test_serialization_schema():
    state = PureState({FullKet(1, AtomFieldKet(G, 2, 3)): 0.5 - 0.25j})
    data = json.loads(state_to_json(state))
    assert data == {
        "kets": [{"control": 1, "atom": "g", "n": 2, "m": 3, "re": 0.5, "im": -0.25}]
    }
    fields = PureState({FieldsKet(1, 0): 1.0})
    entry = json.loads(state_to_json(fields))["kets"][0]
    assert entry["control"] is None and entry["atom"] is None


def test_system_params_validation():
    with pytest.raises(ValueError):
        SystemParams(g=0.0, T=1.0)
    with pytest.raises(ValueError):
        SystemParams(g=1.0, T=-0.5)
    with pytest.raises(ValueError):
        SystemParams(g=1.0, T=1.0, theta=2.0)
    with pytest.raises(ValueError):
        SystemParams(g=1.0, T=1.0, varphi=7.0)
    with pytest.raises(ValueError):
        SystemParams(g=1.0, T=1.0, n=-1)
    with pytest.raises(ValueError):
        SystemParams(g=1.0, T=1.0, T0=1.0, T1=1.5)  # T0 + T > T1
    p = SystemParams(g=2.0, T=3.0, T0=1.0)
    assert p.T1 == 4.0  # defaults to back-to-back transits
    assert p.gT == 6.0


def test_states_are_value_objects():
    psi = PureState({AtomFieldKet(E, 0, 0): 1.0})
    same = PureState({AtomFieldKet(E, 0, 0): 1.0})
    assert psi == same
    assert max_amp_diff(psi, same) == 0.0
