"""Loader validation, derived flight times, and round-trip fidelity."""

import math

import pytest
from hypothesis import given, strategies as st

from carelift.dataio import (
    EARTH_RADIUS_MILES,
    ga_flight_time,
    haversine_miles,
    load_datasets,
    save_datasets,
)
from carelift.errors import DataFormatError
from carelift.fixtures import demo_bundle, FixtureShape, generate_fixture
from carelift.model import Airport


def airport(aid, lat, lon):
    return Airport(aid, "general", "XX", "c", lat, lon)


class TestGaFlightTime:
    def test_same_point_is_zero(self):
        a = airport("A", 39.0, -90.0)
        assert ga_flight_time(a, a) == 0

    def test_meridian_130_miles_is_one_hour(self):
        # Place two airports exactly 130 statute miles apart along a meridian.
        dlat = math.degrees(130.0 / EARTH_RADIUS_MILES)
        a, b = airport("A", 30.0, -90.0), airport("B", 30.0 + dlat, -90.0)
        assert haversine_miles(30.0, -90.0, 30.0 + dlat, -90.0) == pytest.approx(130.0)
        assert ga_flight_time(a, b) == 60

    def test_half_distance_scales_linearly(self):
        dlat = math.degrees(65.0 / EARTH_RADIUS_MILES)
        a, b = airport("A", 30.0, -90.0), airport("B", 30.0 + dlat, -90.0)
        assert ga_flight_time(a, b) == 30

    @given(
        lat1=st.floats(25, 48),
        lon1=st.floats(-120, -70),
        lat2=st.floats(25, 48),
        lon2=st.floats(-120, -70),
    )
    def test_symmetry(self, lat1, lon1, lat2, lon2):
        a, b = airport("A", lat1, lon1), airport("B", lat2, lon2)
        assert ga_flight_time(a, b) == ga_flight_time(b, a)

    def test_coincident_distinct_airports_warn(self, caplog):
        a, b = airport("A", 39.0, -90.0), airport("B", 39.0, -90.0)
        with caplog.at_level("WARNING", logger="carelift.dataio"):
            assert ga_flight_time(a, b) == 0
        assert any("share coordinates" in r.message for r in caplog.records)


class TestLoadDatasets:
    def test_demo_fixture_loads_clean(self, demo_dir):
        data = load_datasets(demo_dir)
        assert data.warnings == ()
        assert set(data.states()) == {"MO", "IL"}
        assert len(data.clinics) == 4

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataFormatError, match="missing file"):
            load_datasets(tmp_path)

    def corrupt(self, demo_dir, tmp_path, filename, transform):
        import shutil

        root = tmp_path / "broken"
        shutil.copytree(demo_dir, root)
        path = root / filename
        path.write_text(transform(path.read_text()))
        return root

    def test_negative_seats_names_file_and_line(self, demo_dir, tmp_path):
        root = self.corrupt(
            demo_dir, tmp_path, "flights.csv", lambda t: t.replace(",4,", ",-1,")
        )
        with pytest.raises(DataFormatError, match=r"flights\.csv:2: seats"):
            load_datasets(root)

    def test_dangling_county_key(self, demo_dir, tmp_path):
        root = self.corrupt(
            demo_dir, tmp_path, "clinics.csv", lambda t: t.replace("IL-COOK", "IL-GONE")
        )
        with pytest.raises(DataFormatError, match="unknown county"):
            load_datasets(root)

    def test_unknown_column(self, demo_dir, tmp_path):
        root = self.corrupt(
            demo_dir, tmp_path, "state_rates.csv", lambda t: t.replace("state,", "sate,")
        )
        with pytest.raises(DataFormatError, match="column"):
            load_datasets(root)

    def test_duplicate_id(self, demo_dir, tmp_path):
        def dup(text):
            lines = text.strip().splitlines()
            return "\n".join(lines + [lines[1]]) + "\n"

        root = self.corrupt(demo_dir, tmp_path, "airports.csv", dup)
        with pytest.raises(DataFormatError, match="duplicate airport"):
            load_datasets(root)

    def test_unknown_ground_mode(self, demo_dir, tmp_path):
        root = self.corrupt(
            demo_dir,
            tmp_path,
            "surface_times.csv",
            lambda t: t.replace("ride_hail", "rickshaw", 1),
        )
        with pytest.raises(DataFormatError, match="mode"):
            load_datasets(root)

    def test_coordinate_clash_is_a_warning(self, demo_dir, tmp_path):
        root = self.corrupt(
            demo_dir,
            tmp_path,
            "airports.csv",
            lambda t: t.replace("38.95,-92.25", "37.245,-93.388"),
        )
        data = load_datasets(root)
        assert len(data.warnings) == 1
        assert "identical coordinates" in data.warnings[0]


class TestRoundTrip:
    def test_save_load_is_lossless(self, tmp_path):
        data, _ = demo_bundle()
        save_datasets(data, tmp_path / "out")
        again = load_datasets(tmp_path / "out")
        assert again.counties == data.counties
        assert again.airports == data.airports
        assert again.clinics == data.clinics
        assert again.flights == data.flights
        assert again.surface_times == data.surface_times
        assert again.state_rates == data.state_rates

    def test_generated_fixtures_load_clean(self, tmp_path):
        for seed in (3, 17, 92):
            root = generate_fixture(seed, FixtureShape(), tmp_path / f"f{seed}")
            data = load_datasets(root)
            assert data.warnings == ()
