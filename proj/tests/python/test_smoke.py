"""Smoke tests for the Python bindings."""

import math
import os
import pathlib

import pytest

import etfsim

SCENARIOS = pathlib.Path(os.environ.get("ETFSIM_SCENARIO_DIR", "scenarios"))


def test_geometry_primitives():
    assert etfsim.distance(etfsim.Point3(0, 0, 0), etfsim.Point3(3, 4, 0)) == pytest.approx(5.0)
    hits = etfsim.segment_sphere_intersections(
        etfsim.Segment(etfsim.Point3(-20, 0, 0), etfsim.Point3(20, 0, 0)),
        etfsim.Sphere(etfsim.Point3(0, 0, 0), 10.0),
    )
    assert [h.t for h in hits] == pytest.approx([0.25, 0.75])
    center = etfsim.lens_center(
        etfsim.Sphere(etfsim.Point3(0, 0, 0), 10.0), etfsim.Sphere(etfsim.Point3(12, 0, 0), 10.0)
    )
    assert center.x == pytest.approx(6.0)


def test_planning_walkthrough():
    scenario = etfsim.load_scenario(str(SCENARIOS / "long_slt_walkthrough.json"))
    tree = etfsim.build_lcrt_tree(scenario.fleet)
    assert sorted(tree.forwarders) == [0, 1, 2, 3, 5, 8]

    requests = etfsim.derive_requests(scenario, tree)
    assert len(requests) == 1
    assert (requests[0].fa, requests[0].fb) == (3, 5)

    plan = etfsim.plan_transition(requests[0], tree, scenario.fleet, scenario.planner)
    assert plan.kind == etfsim.PlanKind.SltLong
    assert plan.seamless
    assert [cp.owner for cp in plan.trace.checking_points] == [3, 1]

    spheres = etfsim.forwarder_spheres(tree, scenario.fleet)
    assert etfsim.oracle_is_seamless(plan.waypoints, spheres, 0.01)


def test_chain_plan():
    scenario = etfsim.load_scenario(str(SCENARIOS / "chain_formation.json"))
    tree = etfsim.build_lcrt_tree(scenario.fleet)
    requests = etfsim.derive_requests(scenario, tree)
    plan = etfsim.plan_transition(requests[0], tree, scenario.fleet, scenario.planner)
    assert plan.kind == etfsim.PlanKind.ChainLong
    assert list(plan.trace.chain) == [3, 1, 5]
    assert len(plan.waypoints) == 4


def test_simulation_metrics():
    scenario = etfsim.load_scenario(str(SCENARIOS / "coverage_gap_short.json"))
    report = etfsim.run(scenario)
    assert report.amt_bps <= scenario.traffic_rate
    assert report.aco_bits == pytest.approx(8.0 * 18.0 * 3.0)
    mobile = next(r for r in report.receivers if r.mobile)
    assert mobile.delivered_packets == 6000  # seamless turning plan drops nothing

    scenario.policy = etfsim.Policy.Lcrt
    lcrt = etfsim.run(scenario)
    assert lcrt.aco_bits == 0.0
    assert lcrt.amot_bps < report.amot_bps


def test_errors_surface_as_exceptions():
    with pytest.raises(RuntimeError):
        etfsim.lens_center(
            etfsim.Sphere(etfsim.Point3(0, 0, 0), 1.0), etfsim.Sphere(etfsim.Point3(9, 0, 0), 1.0)
        )


def test_roundtrip():
    scenario = etfsim.load_scenario(str(SCENARIOS / "minimal_static.json"))
    again = etfsim.parse_scenario(etfsim.scenario_to_json(scenario))
    assert etfsim.scenario_to_json(again) == etfsim.scenario_to_json(scenario)
    assert math.isclose(again.channel_rate, 54e6)
