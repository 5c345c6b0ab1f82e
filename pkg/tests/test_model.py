import json

import pytest

from dronedock.model import (
    DiodeSpec,
    FrustumSpec,
    ModuleSpec,
    ReceiverNetwork,
    TopologyKind,
    default_module_spec,
    default_network,
    dumps,
    frustum_from_dict,
    frustum_to_dict,
    frustum_violations,
    module_from_dict,
    module_to_dict,
    network_from_dict,
    network_to_dict,
    validate,
)


def test_default_module_matches_datasheet():
    spec = default_module_spec()
    assert spec.u_in_nominal == 24.0
    assert spec.u_out_nominal == 12.0
    assert spec.i_out_max == 3.0
    assert spec.gap_max == 10.0
    assert (spec.coil_inner_d, spec.coil_outer_d, spec.coil_h) == (30.0, 82.0, 2.0)
    assert spec.eta_link == 0.95
    assert (spec.r_droop, spec.p_idle) == (0.5, 2.0)


def test_default_module_satisfies_invariants():
    for t in TopologyKind:
        assert validate(default_network(t)) == []


def test_gap_length_mismatch():
    m = default_module_spec()
    net = ReceiverNetwork(TopologyKind.SERIES, (m, m, m), (0.0, 0.0))
    assert validate(net) == ["gaps/modules length mismatch"]


def test_eta_link_out_of_range():
    bad = ModuleSpec(eta_link=1.2)
    report = validate(default_network("SC", bad, n_modules=1))
    assert len(report) == 1
    assert report[0].endswith("eta_link out of (0,1]")


@pytest.mark.parametrize(
    "module, fragment",
    [
        (ModuleSpec(u_out_nominal=0.0), "u_out_nominal must be > 0"),
        (ModuleSpec(r_droop=-1.0), "r_droop must be >= 0"),
        (ModuleSpec(p_idle=-0.1), "p_idle must be >= 0"),
        (ModuleSpec(coil_inner_d=90.0), "coil_inner_d must be < coil_outer_d"),
        (ModuleSpec(gap_max=0.0), "gap_max must be > 0"),
    ],
)
def test_module_violations_name_field(module, fragment):
    report = validate(default_network("PC", module, n_modules=1))
    assert any(fragment in v for v in report)


def test_negative_gap_and_diode():
    net = default_network("PCD", gaps=(0.0, -1.0, 0.0), diode=DiodeSpec(v_forward=-0.1))
    report = validate(net)
    assert "gaps[1] must be >= 0" in report
    assert "diode.v_forward must be >= 0" in report


def test_validate_is_pure():
    net = ReceiverNetwork("PC", (ModuleSpec(eta_link=2.0),) * 2, (0.0,))
    first = validate(net)
    assert dumps(first) == dumps(validate(net))


def test_module_json_round_trip():
    spec = ModuleSpec(r_droop=0.2226616980945, eta_link=0.6199963915614)
    assert module_from_dict(json.loads(json.dumps(module_to_dict(spec)))) == spec


def test_network_and_frustum_round_trip():
    net = default_network("PCD", gaps=(1.0, 12.5, 3.0), r_wiring=0.61)
    assert network_from_dict(json.loads(dumps(network_to_dict(net)))) == net
    fr = FrustumSpec(mu=0.31)
    assert frustum_from_dict(json.loads(dumps(frustum_to_dict(fr)))) == fr


def test_unknown_key_rejected():
    with pytest.raises(ValueError, match="unknown key"):
        module_from_dict({"u_out_nomnal": 12})


def test_frustum_invariants():
    assert frustum_violations(FrustumSpec()) == []
    report = frustum_violations(FrustumSpec(slope_angle_deg=90, mu=-1, face_count=2))
    assert len(report) == 3


def test_alive_follows_gap_limit():
    net = default_network("SC", gaps=(10.0, 10.01, 0.0))
    assert net.alive() == (True, False, True)
