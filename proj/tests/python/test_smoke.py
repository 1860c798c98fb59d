"""Smoke tests for the python bindings."""

import normknot


def test_degree6_failure_case():
    report = normknot.analyze("beta:p=2,l=3", 2)
    assert report["valid"] is True
    assert report["total"] == [2]
    assert report["case"] == "beta"
    assert report["routes"]["L1"] == [2]
    assert report["routes"]["L2"] == [2]


def test_scenario_covering_the_sylow_subgroup():
    built = normknot.build("beta:p=2,l=3")
    assert built["degree"] == 6
    assert built["G"]["order"] == 12
    # the full Sylow-2 subgroup as an explicit decomposition group
    scenario = {
        "subgroups": [
            [[1, 5, 6, 4, 2, 3], [4, 2, 6, 1, 5, 3]],
        ]
    }
    report = normknot.analyze("beta:p=2,l=3", 2, scenario)
    assert report["total"] == []


def test_degree_4p():
    report = normknot.analyze("c4:p=5", 5)
    assert report["total"] == [5]
    assert report["case"] == "c4"


def test_composite_exponent():
    report = normknot.analyze("times_cyclic:base=(beta:p=2,l=3),d=3", 2)
    assert report["total"] == [6]


def test_group_dict_input():
    group = {"degree": 3, "generators": [[2, 3, 1]]}
    report = normknot.analyze(group, 3)
    assert report["valid"] is True
    assert report["total"] == []


def test_group_info():
    info = normknot.group_info("gamma:p=5,l=3")
    assert info["order"] == 150
    assert info["transitive"] is True
    assert info["stabilizer_order"] == 10


def test_small_sweeps_are_clean():
    assert normknot.verify_extremal(2, 5)["ok"] is True
    assert normknot.verify_pairs(2, 3)["ok"] is True
    assert normknot.verify_isomorphisms(200)["ok"] is True
