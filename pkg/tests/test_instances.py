import pytest

from dircover import (DemandPoint, Facility, Instance, InstanceParseError,
                      Point2, gen_synthetic, load_instance, save_instance,
                      six_facility_example)
from dircover.instances import load_facilities


def test_roundtrip_demand_and_sites(tmp_path):
    inst = gen_synthetic(n=7, m=4, seed=11)
    demand_path = tmp_path / "demand.csv"
    sites_path = tmp_path / "sites.csv"
    save_instance(inst, demand_path, sites_path)
    loaded = load_instance(demand_path, sites_path, inst.default_cover_radius)
    assert loaded.n == inst.n and loaded.m == inst.m
    for a, b in zip(loaded.demand_points, inst.demand_points):
        assert a == b
    for a, b in zip(loaded.candidate_sites, inst.candidate_sites):
        assert a.center == b.center and a.cover_radius == b.cover_radius


def test_load_rejects_bad_rows(tmp_path):
    bad_radius = tmp_path / "r.csv"
    bad_radius.write_text("id,x,y,weight,radius\na,0,0,1,1\nb,1,1,1,0\n")
    with pytest.raises(InstanceParseError, match="row 3.*radius"):
        load_instance(bad_radius)

    bad_number = tmp_path / "n.csv"
    bad_number.write_text("id,x,y,weight,radius\na,0,zero,1,1\n")
    with pytest.raises(InstanceParseError, match="row 2.*'x'|row 2.*'y'"):
        load_instance(bad_number)

    dup = tmp_path / "d.csv"
    dup.write_text("id,x,y,weight,radius\na,0,0,1,1\na,1,1,1,1\n")
    with pytest.raises(InstanceParseError, match="row 3.*duplicate"):
        load_instance(dup)

    missing = tmp_path / "m.csv"
    missing.write_text("id,x,y,weight\na,0,0,1\n")
    with pytest.raises(InstanceParseError, match="missing columns"):
        load_instance(missing)

    empty = tmp_path / "e.csv"
    empty.write_text("id,x,y,weight,radius\n")
    with pytest.raises(InstanceParseError, match="no demand rows"):
        load_instance(empty)


def test_load_facilities_empty_ok(tmp_path):
    path = tmp_path / "f.csv"
    path.write_text("id,x,y\n")
    assert load_facilities(path) == []
    path.write_text("id,x,y,cover_radius\n1,2.5,0,1.5\n2,0,1,\n")
    facs = load_facilities(path, default_cover_radius=3.0)
    assert facs[0] == Facility(Point2(2.5, 0.0), 1.5)
    assert facs[1].cover_radius == 3.0


def test_instance_invariants():
    with pytest.raises(ValueError):
        Instance([])
    dp = DemandPoint("a", Point2(0, 0), 1.0, 1.0)
    with pytest.raises(ValueError):
        Instance([dp, dp])
    with pytest.raises(ValueError):
        Instance([dp], [])


def test_gen_synthetic_deterministic_and_ranged():
    a = gen_synthetic(n=25, m=6, region=(0, 0, 5, 8), weight_range=(2, 3), seed=9)
    b = gen_synthetic(n=25, m=6, region=(0, 0, 5, 8), weight_range=(2, 3), seed=9)
    assert a.demand_points == b.demand_points
    assert a.candidate_sites == b.candidate_sites
    for dp in a.demand_points:
        assert 0 <= dp.center.x <= 5 and 0 <= dp.center.y <= 8
        assert 2 <= dp.weight <= 3
    with pytest.raises(ValueError):
        gen_synthetic(n=0, m=1)
    with pytest.raises(ValueError):
        gen_synthetic(n=1, m=1, weight_range=(5, 2))


def test_six_facility_example_values():
    demand, facilities = six_facility_example()
    assert demand.center == Point2(0.0, 0.0)
    assert demand.radius == 1.0
    assert len(facilities) == 6
    assert facilities[2].center == Point2(-3.0, 0.0)
    assert facilities[2].cover_radius == 2.7
    assert facilities[5].center == Point2(0.0, -1.5)
    assert facilities[5].cover_radius == 1.2
