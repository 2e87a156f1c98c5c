"""Per-PKT emission factors: grid mixes, vehicle inventories, scenario variants."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mobishift import (
    DomainError,
    EmissionFactor,
    EnergyProfile,
    LifeCycleStage,
    MissingGridError,
    TechEmissionFactors,
    TransportMode,
    VehicleLci,
    carpool_factor,
    constant_factor,
    cs_factor,
    grid_electricity_factor,
    load_dataset,
    other_mode_factor,
    per_pkt_factor,
)
from mobishift.errors import ConfigurationError
from mobishift.factors import NL_HALVED_MEAN, PLAIN_MEAN


@pytest.fixture(scope="module")
def data():
    return load_dataset()


def grid_value(ds, label):
    return grid_electricity_factor(ds.grids.profiles[label], ds.grids.tech)


class TestGridElectricityFactor:
    def test_alberta_mix(self, data):
        assert grid_value(data, "AB") == pytest.approx(590, abs=1)

    def test_netherlands_mix(self, data):
        assert grid_value(data, "NL") == pytest.approx(410, abs=1)

    def test_pure_hydro_equals_tech_factor(self, data):
        profile = EnergyProfile("test", shares={"hydro": 1.0})
        assert grid_electricity_factor(profile, data.grids.tech) == 24.0

    def test_missing_tech_factor_names_the_source(self, data):
        profile = EnergyProfile("test", shares={"geothermal": 1.0})
        with pytest.raises(ConfigurationError, match="geothermal"):
            grid_electricity_factor(profile, data.grids.tech)

    def test_zero_share_does_not_need_a_factor(self, data):
        profile = EnergyProfile("test", shares={"hydro": 1.0, "geothermal": 0.0})
        assert grid_electricity_factor(profile, data.grids.tech) == 24.0

    def test_shares_must_sum_to_one(self):
        with pytest.raises(ConfigurationError):
            EnergyProfile("test", shares={"hydro": 0.5, "coal": 0.3})

    @given(
        shares=st.lists(st.floats(0.01, 1.0), min_size=2, max_size=6),
        scale=st.floats(0.1, 10.0),
    )
    @settings(max_examples=50, deadline=None)
    def test_convex_combination_and_scaling(self, shares, scale):
        total = sum(shares)
        names = [f"t{i}" for i in range(len(shares))]
        profile = EnergyProfile("test", shares={n: s / total for n, s in zip(names, shares)})
        values = {n: 10.0 + 7.0 * i for i, n in enumerate(names)}
        tech = TechEmissionFactors(g_per_kwh=values)
        result = grid_electricity_factor(profile, tech)
        assert min(values.values()) <= result <= max(values.values())
        scaled = TechEmissionFactors(
            g_per_kwh={n: v * scale for n, v in values.items()}
        )
        assert grid_electricity_factor(profile, scaled) == pytest.approx(
            result * scale, rel=1e-12
        )


class TestPerPktFactor:
    def test_private_car(self, data):
        factor = per_pkt_factor(
            data.lci[TransportMode.CAR], data.private_car_ltm_km, 1.58
        )
        assert factor.g_per_pkt == pytest.approx(229, abs=2)

    def test_bus_at_mean_occupancy(self, data):
        factor = per_pkt_factor(
            data.lci[TransportMode.BUS], data.private_car_ltm_km, 10.5
        )
        assert factor.g_per_pkt == pytest.approx(187, abs=1)

    def test_rail_on_coal_heavy_grid(self, data):
        factor = per_pkt_factor(
            data.lci[TransportMode.RAIL], data.private_car_ltm_km, 55.0, 590.0
        )
        assert factor.g_per_pkt == pytest.approx(137, abs=1)

    def test_rail_grid_endpoints(self, data):
        rail = data.lci[TransportMode.RAIL]
        low = per_pkt_factor(rail, data.private_car_ltm_km, 55.0, 410.0)
        mid = per_pkt_factor(rail, data.private_car_ltm_km, 55.0, 327.0)
        assert low.g_per_pkt == pytest.approx(101, abs=1)
        assert mid.g_per_pkt == pytest.approx(84, abs=1)

    def test_empty_inventory_is_zero(self):
        lci = VehicleLci(mode=TransportMode.CAR)
        assert per_pkt_factor(lci, 100000, 1.0).g_per_pkt == 0.0

    def test_electricity_demand_requires_a_grid(self, data):
        with pytest.raises(MissingGridError):
            per_pkt_factor(data.lci[TransportMode.RAIL], 240000, 55.0)

    def test_bus_occupancy_endpoints(self, data):
        bus = data.lci[TransportMode.BUS]
        low = per_pkt_factor(bus, data.private_car_ltm_km, 5.0)
        high = per_pkt_factor(bus, data.private_car_ltm_km, 40.0)
        assert low.g_per_pkt == pytest.approx(394, abs=1)
        assert high.g_per_pkt == pytest.approx(49, abs=1)

    @given(
        occ_a=st.floats(1.0, 60.0),
        occ_b=st.floats(1.0, 60.0),
        ltm_a=st.floats(50000, 500000),
        ltm_b=st.floats(50000, 500000),
    )
    @settings(max_examples=60, deadline=None)
    def test_monotone_in_occupancy_and_lifetime(self, data, occ_a, occ_b, ltm_a, ltm_b):
        car = data.lci[TransportMode.CAR]
        if occ_a != occ_b:
            lo, hi = sorted((occ_a, occ_b))
            assert (
                per_pkt_factor(car, 240000, hi).g_per_pkt
                < per_pkt_factor(car, 240000, lo).g_per_pkt
            )
        if ltm_a != ltm_b:
            lo, hi = sorted((ltm_a, ltm_b))
            # fixed_lifetime_kg is nonzero for the car, so more lifetime km
            # always dilutes the fixed share
            assert (
                per_pkt_factor(car, hi, 1.58).g_per_pkt
                < per_pkt_factor(car, lo, 1.58).g_per_pkt
            )

    def test_additive_in_stages(self, data):
        car = data.lci[TransportMode.CAR]
        fixed_only = VehicleLci(
            mode=TransportMode.CAR, fixed_lifetime_kg=car.fixed_lifetime_kg
        )
        per_km_only = VehicleLci(mode=TransportMode.CAR, per_vkt_kg=car.per_vkt_kg)
        whole = per_pkt_factor(car, 240000, 1.58).g_per_pkt
        parts = (
            per_pkt_factor(fixed_only, 240000, 1.58).g_per_pkt
            + per_pkt_factor(per_km_only, 240000, 1.58).g_per_pkt
        )
        assert whole == pytest.approx(parts, rel=1e-12)

    def test_stage_may_appear_in_only_one_map(self):
        with pytest.raises(ConfigurationError):
            VehicleLci(
                mode=TransportMode.CAR,
                fixed_lifetime_kg={LifeCycleStage.MANUFACTURING: 1.0},
                per_vkt_kg={LifeCycleStage.MANUFACTURING: 1.0},
            )


class TestScenarioFactors:
    def test_shared_car_across_lifetimes(self, data):
        car = data.lci[TransportMode.CAR]
        values = {
            sid: cs_factor(car, data.scenario(sid), 1.58).g_per_pkt
            for sid in (1, 2, 3)
        }
        assert values[1] == pytest.approx(229, abs=2)
        assert values[2] == pytest.approx(210, abs=2)
        assert values[3] == pytest.approx(247, abs=2)

    def test_scenario_at_private_lifetime_equals_private_car(self, data):
        car = data.lci[TransportMode.CAR]
        scenario = data.scenario(1)
        assert scenario.ltm_km == data.private_car_ltm_km
        shared = cs_factor(car, scenario, 1.58)
        private = per_pkt_factor(car, data.private_car_ltm_km, 1.58)
        assert shared.g_per_pkt == private.g_per_pkt

    def test_carpool(self, data):
        factor = carpool_factor(data.lci[TransportMode.CAR], data.private_car_ltm_km)
        assert factor.g_per_pkt == pytest.approx(144, abs=2)

    def test_carpool_is_car_rescaled_by_occupancy(self, data):
        car = per_pkt_factor(data.lci[TransportMode.CAR], 240000, 1.58)
        pool = carpool_factor(data.lci[TransportMode.CAR], 240000, 2.5)
        assert pool.g_per_pkt == pytest.approx(car.g_per_pkt * 1.58 / 2.5, rel=1e-12)

    def test_carpool_with_empty_inventory_is_zero(self):
        lci = VehicleLci(mode=TransportMode.CAR)
        assert carpool_factor(lci, 240000).g_per_pkt == 0.0


class TestOtherModeFactor:
    def test_halved_mean_matches_dutch_table(self):
        factors = [
            constant_factor(TransportMode.CAR, 229.0),
            constant_factor(TransportMode.CS, 229.0),
            constant_factor(TransportMode.RAIL, 101.0),
            constant_factor(TransportMode.BUS, 187.0),
            constant_factor(TransportMode.BICYCLE, 20.0),
            constant_factor(TransportMode.CARPOOL, 144.0),
        ]
        other = other_mode_factor(factors, rule=NL_HALVED_MEAN)
        assert other.g_per_pkt == pytest.approx(75, abs=2)

    def test_plain_mean_matches_bay_area_table(self):
        factors = [
            constant_factor(TransportMode.CAR, 229.0),
            constant_factor(TransportMode.CS, 229.0),
            constant_factor(TransportMode.RAIL, 84.0),
            constant_factor(TransportMode.BUS, 187.0),
            constant_factor(TransportMode.BICYCLE, 20.0),
            constant_factor(TransportMode.WALKING, 0.0),
        ]
        other = other_mode_factor(factors, rule=PLAIN_MEAN)
        assert other.g_per_pkt == pytest.approx(125, abs=2)

    def test_plain_mean_of_one_is_itself(self):
        single = constant_factor(TransportMode.BUS, 187.0)
        assert other_mode_factor([single]).g_per_pkt == 187.0

    def test_empty_list_rejected(self):
        with pytest.raises(DomainError):
            other_mode_factor([])

    def test_unknown_rule_rejected(self):
        with pytest.raises(DomainError):
            other_mode_factor([constant_factor(TransportMode.CAR, 1.0)], rule="median")


class TestValidation:
    def test_negative_factor_rejected(self):
        with pytest.raises(DomainError):
            EmissionFactor(mode=TransportMode.CAR, g_per_pkt=-1.0)

    def test_negative_inventory_rejected(self):
        with pytest.raises(ConfigurationError):
            VehicleLci(
                mode=TransportMode.CAR,
                per_vkt_kg={LifeCycleStage.OPERATION: -0.1},
            )

    def test_occupancy_below_one_rejected(self, data):
        with pytest.raises(DomainError):
            per_pkt_factor(data.lci[TransportMode.CAR], 240000, 0.5)

    def test_nonpositive_lifetime_rejected(self, data):
        with pytest.raises(DomainError):
            per_pkt_factor(data.lci[TransportMode.CAR], 0.0, 1.58)


def test_exact_energy_conversion(data):
    # 1 MJ/vkt at occupancy 1 on a 3600 g/kWh grid is exactly 1000 g/PKT
    lci = VehicleLci(
        mode=TransportMode.RAIL, per_vkt_mj={LifeCycleStage.OPERATION: 1.0}
    )
    factor = per_pkt_factor(lci, 240000, 1.0, 3600.0)
    assert factor.g_per_pkt == pytest.approx(1000.0, rel=1e-12)
    assert math.isclose(3.6 * 1000 / 3600, 1.0)
