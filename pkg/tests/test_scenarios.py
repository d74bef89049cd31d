import pytest

from minkprod import InvalidInput
from minkprod.scenarios import ALIASES, SCENARIOS, run_scenario


def test_registered_ids():
    assert list(SCENARIOS) == [
        "segment-quad",
        "segment-overlap-centers",
        "segment-nested-center",
        "square-region",
        "triangle-not-star",
        "quad-not-star",
        "symmetric-triangle",
        "segment-disk",
        "disk-subset",
        "ring-hole",
        "numrange-disk",
    ]


@pytest.mark.parametrize("name", ["segment-quad", "segment-overlap-centers", "segment-nested-center", "segment-disk"])
def test_fast_scenarios_pass(name):
    result = run_scenario(name)
    assert result.passed, [c for c in result.checks if not c.ok]


def test_unknown_scenario():
    with pytest.raises(InvalidInput):
        run_scenario("ex9.9")


def test_short_names_point_at_registered_scenarios():
    assert set(ALIASES.values()) <= set(SCENARIOS)
    result = run_scenario("thm2.4b-centers", tol=2e-7)
    assert result.name == "segment-overlap-centers"
    assert result.tol == 2e-7
    assert result.passed
