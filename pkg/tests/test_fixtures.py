import pytest

from streetmorph.fixtures import CASE_NAMES, all_cases, gated_names, generate


def test_registry_has_nineteen_cases():
    assert len(CASE_NAMES) == 19
    assert len(set(CASE_NAMES)) == 19


def test_unknown_name_is_an_error():
    with pytest.raises(ValueError, match="unknown fixture case"):
        generate("Roundabouts ") # trailing space


def test_generation_is_deterministic():
    for name in CASE_NAMES:
        a, b = generate(name), generate(name)
        assert len(a.network.edges) == len(b.network.edges)
        assert a.network.total_length == b.network.total_length


@pytest.mark.parametrize("name", CASE_NAMES)
def test_every_case_is_complete(name):
    case = generate(name)
    assert case.name == name
    assert case.network.edges
    assert case.goal.edges
    assert case.predicates
    assert case.description


@pytest.mark.parametrize("name", CASE_NAMES)
def test_goal_network_satisfies_its_own_predicates(name):
    # the predicates decide whether a simplification is acceptable; the
    # hand-drawn target has to clear its own bar
    case = generate(name)
    failed = [label for label, check in case.predicates if not check(case.goal)]
    assert failed == []


def test_exactly_three_cases_are_ungated():
    ungated = [c.name for c in all_cases() if not c.gated]
    assert ungated == [
        "Multi-level carriageway",
        "Roundabout with edges on different levels",
        "Complicated freeway intersection",
    ]
    assert len(gated_names()) == 16


def test_masked_case_carries_a_mask():
    case = generate("Special case roundabouts")
    assert case.mask
    unmasked = generate("Roundabouts")
    assert unmasked.mask is None
