import pytest

from dronedock.battery import BatterySpec, estimate_charge_time
from dronedock.errors import DegenerateInput


@pytest.mark.parametrize(
    "battery, power, hours",
    [
        (BatterySpec(96.5), 96.5, 1.0),
        (BatterySpec(50.0, initial_soc=0.5), 50.0, 0.5),
        (BatterySpec(100.0, charge_efficiency=0.9), 96.5, 100.0 / (96.5 * 0.9)),
    ],
)
def test_constant_power(battery, power, hours):
    assert estimate_charge_time(battery, power) == pytest.approx(hours, rel=1e-12)


def test_derived_value():
    assert estimate_charge_time(BatterySpec(100.0, charge_efficiency=0.9), 96.5) == pytest.approx(1.151, abs=1e-3)


@pytest.mark.parametrize("power", [0.0, -5.0])
def test_nonpositive_power(power):
    with pytest.raises(DegenerateInput):
        estimate_charge_time(BatterySpec(10.0), power)


def test_soc_order():
    with pytest.raises(ValueError):
        BatterySpec(10.0, initial_soc=0.8, target_soc=0.5)
