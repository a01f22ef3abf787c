import pytest

import ramseyforge as rf


def load(data, name):
    return rf.Structure.from_rsf((data / "cli" / name).read_text())


def test_rsf_round_trip(data):
    k3 = load(data, "k3.rsf")
    assert len(k3) == 3
    assert rf.Structure.from_rsf(k3.to_rsf()) == k3
    assert len(k3.tuples("E")) == 6


def test_malformed_rsf_raises_format_error(data):
    with pytest.raises(rf.FormatError):
        rf.Structure.from_rsf((data / "cli" / "malformed.rsf").read_text())


def test_morphisms(data):
    k2, k3, p3 = (load(data, n) for n in ("k2.rsf", "k3.rsf", "p3.rsf"))
    assert rf.find_morphism(k2, k3, "emb") is not None
    assert rf.find_morphism(k3, p3, "hom") is None
    assert rf.count_copies(k2, k3) == 3


def test_distance_sets():
    holds, witness = rf.four_values(["1", "2", "3", "5"])
    assert not holds and witness == ["1", "1", "3", "5", "2"]
    for s in (["1", "2", "3", "4"], ["1", "3"], ["1", "2", "5"]):
        assert rf.four_values(s)[0] == rf.is_associative(s)


def test_metric_completion_takes_shortest_lengths():
    d = rf.complete_metric(3, [(0, 1, "1"), (1, 2, "1")], ["1", "2", "3"])
    assert d[0][2] == "2"
    assert rf.complete_metric(3, [(0, 1, "1"), (1, 2, "1"), (0, 2, "3")], ["1", "3"]) is None


def test_obstacles_of_small_metric_class():
    assert len(rf.obstacles("metric:1,2,3,4", 4)) == 4


def test_hales_jewett_and_ramsey():
    assert rf.hales_jewett(2, 2)["n"] == 2
    r = rf.hales_jewett(3, 2)
    assert r["inconclusive"] and r["lower_bound"] == 3
    assert rf.ramsey_number(2, 3) == 6


def test_arrow(data):
    k1, k2, k3, p3 = (load(data, n) for n in ("k1.rsf", "k2.rsf", "k3.rsf", "p3.rsf"))
    assert rf.verify_arrow(k3, k1, k2)["verdict"] == "proved"
    report = rf.verify_arrow(p3, k1, k2)
    assert report["verdict"] == "refuted"
    assert report["certificate"]["colouring"] == [0, 1, 0]


def test_construction_cap_is_reported():
    order = '{"language":[{"name":"<=","arity":2},{"name":"E","arity":2}],"order_symbol":"<=","vertices":[%s],"relations":{"<=":[%s],"E":[%s]}}'

    def ordered_complete(n):
        vs = [str(i) for i in range(n)]
        le = ",".join('["%s","%s"]' % (vs[i], vs[j]) for i in range(n) for j in range(i, n))
        e = ",".join('["%s","%s"]' % (vs[i], vs[j]) for i in range(n) for j in range(n) if i != j)
        return rf.Structure.from_rsf(order % (",".join('"%s"' % v for v in vs), le, e))

    with pytest.raises(rf.CapExceeded, match="step 2"):
        rf.partite_construction(ordered_complete(1), ordered_complete(2), ordered_complete(3))
