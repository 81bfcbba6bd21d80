from fractions import Fraction

import entropylab as el


def full_shift():
    return el.Subshift(2, [])


def golden_mean():
    return el.Subshift(2, ["11"])


def test_word_counts():
    assert full_shift().word_count(10) == 1024
    assert golden_mean().word_count(10) == 144  # Fibonacci
    assert golden_mean().words(3) == ["000", "001", "010", "100", "101"]


def test_points_and_metric():
    fs = full_shift()
    x = el.Point(fs, "", "0")
    y = el.Point(fs, "00", "10")
    assert el.metric(x, x) == 0
    assert el.metric(x, y) == Fraction(1, 4)
    assert x.shifted() == x


def test_clopen_algebra():
    gm = golden_mean()
    z = el.ClopenSet.cylinder(gm, "0")
    o = el.ClopenSet.cylinder(gm, "1")
    assert z.unite(o).is_full()
    assert z.disjoint_with(o)
    assert el.is_standard_cover(z, o)
    assert o.preimage(1).words == {"01"}  # "11" is forbidden


def test_measures_and_distances():
    fs = full_shift()
    x = el.Point(fs, "", "0")
    y = el.Point(fs, "", "1")
    dx = el.DiscreteMeasure.dirac(x)
    dy = el.DiscreteMeasure.dirac(y)
    assert el.prohorov_subset(dx, dy) == 1
    assert el.prohorov_flow(dx, dy) == 1
    mix = el.DiscreteMeasure([(x, "1/2"), (y, "1/2")])
    assert el.measure_of(mix, el.ClopenSet.cylinder(fs, "0")) == Fraction(1, 2)
    assert el.pushforward(mix) == mix
    assert el.in_m_n(mix, 2)
    assert el.r_m([x, y]) == mix


def test_hausdorff():
    fs = full_shift()
    a = el.FiniteClosedSet([el.Point(fs, "", "0")])
    b = el.FiniteClosedSet([el.Point(fs, "", "0"), el.Point(fs, "", "1")])
    assert el.hausdorff_distance(a, b) == 1
    assert el.induce_hyper(b) == b


def test_entropy_profile():
    fs = full_shift()
    rows, fekete, last = el.cover_entropy_profile(
        el.ClopenSet.cylinder(fs, "0"), el.ClopenSet.cylinder(fs, "1"), 6
    )
    assert [r[1] for r in rows] == [2, 4, 8, 16, 32, 64]
    assert fekete == 1.0 and last == 1.0


def test_independence():
    gm = golden_mean()
    pair = [el.ClopenSet.cylinder(gm, "0"), el.ClopenSet.cylinder(gm, "1")]
    ok, _ = el.verify_independence(pair, [0, 2, 4])
    assert ok
    ok, counter = el.verify_independence(pair, [0, 1])
    assert not ok and counter == [1, 1]
    indices, density = el.max_independence_density(pair, 12)
    assert indices == [0, 2, 4, 6, 8, 10]
    assert density == Fraction(1, 2)


def test_pipeline():
    fs = full_shift()
    z = el.ClopenSet.cylinder(fs, "0")
    o = el.ClopenSet.cylinder(fs, "1")
    rep = el.entropy_witness_pipeline(z, o, z, o, list(range(5)), 5)
    assert rep["k_m"] == 32
    assert rep["separated_count"] == 32
    assert rep["all_images_separated"]
