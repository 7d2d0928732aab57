"""Shared fixtures and the randomized tiny-instance generator."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass

import pytest

from carelift.dataio import ReferenceData
from carelift.fixtures import FixtureShape, demo_bundle, synthesize
from carelift.formulation import VariableCatalog, build_max_flow, build_min_cost
from carelift.ilp import IntegerProgram
from carelift.model import Network, Scenario
from carelift.network import build_network

# Random fixtures legitimately omit surface records; keep the suite quiet.
logging.getLogger("carelift.network").setLevel(logging.ERROR)

ORACLE_BOX_LIMIT = 10_000_000


@dataclass(frozen=True)
class Instance:
    """One randomized scenario with both programs prebuilt."""

    seed: int
    data: ReferenceData
    scenario: Scenario
    network: Network
    ip_max: IntegerProgram
    cat_max: VariableCatalog
    ip_min: IntegerProgram
    cat_min: VariableCatalog


def random_shape(seed: int) -> FixtureShape:
    rng = random.Random(seed * 31 + 7)
    return FixtureShape(
        counties=rng.choices([1, 2, 3], weights=[5, 4, 1])[0],
        origin_commercial=rng.choices([0, 1, 2], weights=[2, 6, 2])[0],
        origin_general=rng.choices([0, 1, 2], weights=[2, 6, 2])[0],
        dest_commercial=rng.choices([0, 1, 2], weights=[2, 6, 2])[0],
        dest_general=rng.choices([0, 1, 2], weights=[2, 6, 2])[0],
        dest_counties=rng.choice([1, 2]),
        clinics=rng.choice([1, 2]),
        max_demand=rng.choices([1, 2, 3, 4], weights=[5, 3, 1, 1])[0],
        arc_density=rng.uniform(0.3, 0.9),
    )


def make_instance(seed: int) -> Instance:
    data, scenario = synthesize(seed, random_shape(seed))
    network = build_network(scenario, data)
    ip_max, cat_max = build_max_flow(network, scenario)
    ip_min, cat_min = build_min_cost(network, scenario)
    return Instance(seed, data, scenario, network, ip_max, cat_max, ip_min, cat_min)


def tiny_instances(
    count: int, seed0: int = 1000, oracle_tractable: bool = True
) -> list[Instance]:
    """Deterministic stream of randomized instances, filtered (when asked)
    to ones the enumeration oracle accepts for both models."""
    out: list[Instance] = []
    seed = seed0
    while len(out) < count:
        seed += 1
        inst = make_instance(seed)
        if oracle_tractable and (
            inst.ip_max.search_box_size() > ORACLE_BOX_LIMIT
            or inst.ip_min.search_box_size() > ORACLE_BOX_LIMIT
        ):
            continue
        out.append(inst)
    return out


@pytest.fixture(scope="session")
def demo():
    data, scenario = demo_bundle()
    return data, scenario


@pytest.fixture(scope="session")
def demo_dir(tmp_path_factory):
    from carelift.fixtures import write_demo_fixture

    root = tmp_path_factory.mktemp("demo") / "missouri-illinois-demo"
    write_demo_fixture(root)
    return root
