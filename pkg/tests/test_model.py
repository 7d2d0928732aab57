"""Domain-type and pure-helper tests."""

import pytest
from hypothesis import given, strategies as st

from carelift.errors import ValidationError
from carelift.model import (
    Arc,
    Scenario,
    effective_capacity,
    estimate_demand,
    scenario_from_dict,
    scenario_to_dict,
)


class TestEstimateDemand:
    @pytest.mark.parametrize(
        "population,rate,expected",
        [
            (0, 10.0, 0),
            (73000, 10.0, 2),  # 73000/365 = 200 eligible per day, 1% need
            (36500, 5.0, 1),  # 100 * 0.005 = 0.5 rounds half-up to 1
            (365000, 10.0, 10),
            (364, 10.0, 0),  # just below the half-person threshold
        ],
    )
    def test_known_values(self, population, rate, expected):
        assert estimate_demand(population, rate) == expected

    def test_negative_inputs_rejected(self):
        with pytest.raises(ValueError):
            estimate_demand(-1, 10.0)
        with pytest.raises(ValueError):
            estimate_demand(100, -0.1)

    @given(
        pop=st.integers(min_value=0, max_value=10**7),
        bump=st.integers(min_value=0, max_value=10**5),
        rate=st.floats(min_value=0, max_value=50, allow_nan=False),
    )
    def test_monotone_in_population(self, pop, bump, rate):
        assert estimate_demand(pop + bump, rate) >= estimate_demand(pop, rate)

    @given(
        pop=st.integers(min_value=0, max_value=10**7),
        rate=st.floats(min_value=0, max_value=40, allow_nan=False),
        extra=st.floats(min_value=0, max_value=10, allow_nan=False),
    )
    def test_monotone_in_rate(self, pop, rate, extra):
        assert estimate_demand(pop, rate + extra) >= estimate_demand(pop, rate)


class TestEffectiveCapacity:
    def test_identity_without_companions(self):
        assert effective_capacity(10, False) == 10

    def test_exact_halving(self):
        assert effective_capacity(10, True) == 5

    def test_odd_values_floor(self):
        assert effective_capacity(7, True) == 3

    @given(raw=st.integers(min_value=0, max_value=10**6))
    def test_halving_bounds(self, raw):
        halved = effective_capacity(raw, True)
        assert halved <= raw / 2
        assert raw / 2 - halved < 1
        assert effective_capacity(raw, False) == raw


class TestScenario:
    def base(self, **overrides):
        payload = {
            "origin_state": "MO",
            "destination_state": "IL",
            "open_clinic_ids": ["c1"],
            "pilots_standby": 1,
            "budget": 100.0,
            "max_access_egress_min": 120,
            "max_flight_min": 180,
            "max_direct_min": 300,
        }
        payload.update(overrides)
        return payload

    def test_defaults_filled(self):
        sc = scenario_from_dict(self.base())
        assert sc.aircraft_capacity == 4
        assert sc.vehicle_capacity == 2
        assert sc.ride_hail_rate == 0.40
        assert sc.companions is False

    def test_same_state_rejected(self):
        with pytest.raises(ValidationError) as err:
            scenario_from_dict(self.base(destination_state="MO"))
        assert any(d["field"] == "destination_state" for d in err.value.details)

    def test_negative_budget_rejected(self):
        with pytest.raises(ValidationError):
            scenario_from_dict(self.base(budget=-5))

    def test_zero_time_limit_rejected(self):
        with pytest.raises(ValidationError):
            scenario_from_dict(self.base(max_flight_min=0))

    def test_unknown_field_rejected(self):
        with pytest.raises(ValidationError) as err:
            scenario_from_dict(self.base(zeppelins=2))
        assert any(d["field"] == "zeppelins" for d in err.value.details)

    def test_missing_field_collected(self):
        body = self.base()
        del body["budget"]
        with pytest.raises(ValidationError) as err:
            scenario_from_dict(body)
        assert any(d["field"] == "budget" for d in err.value.details)

    def test_bad_driver_counts_rejected(self):
        with pytest.raises(ValidationError):
            scenario_from_dict(self.base(origin_drivers={"q": -1}))

    def test_roundtrip(self):
        sc = scenario_from_dict(self.base(origin_drivers={"b": 1, "a": 2}))
        again = scenario_from_dict(scenario_to_dict(sc))
        assert again == sc

    def test_effective_budget(self):
        assert scenario_from_dict(self.base()).effective_budget == 100.0
        assert scenario_from_dict(self.base(companions=True)).effective_budget == 50.0


class TestArc:
    def test_commercial_flight_needs_fare_and_seats(self):
        with pytest.raises(ValueError):
            Arc(kind="commercial_flight", tail="m", head="r", travel_time_min=60)

    def test_ground_arc_needs_mode(self):
        with pytest.raises(ValueError):
            Arc(kind="direct", tail="q", head="c", travel_time_min=60)

    def test_flight_cannot_carry_ground_mode(self):
        with pytest.raises(ValueError):
            Arc(
                kind="ga_flight",
                tail="g",
                head="p",
                travel_time_min=60,
                mode="ride_hail",
            )
