import pytest

from phipractical.census import (
    CountTable,
    FamilySpec,
    RangeBoundExceeded,
    UnknownClass,
    construct_family,
    count_classes,
    default_checkpoints,
    diff_count,
    find_q0,
    growth_ratio,
    membership,
)
from phipractical.classify import (
    is_2_dense,
    is_lambda_practical,
    is_p_practical,
    is_phi_practical,
    is_practical,
    is_strictly_2_dense,
    is_weakly_phi_practical,
)

POINT = {
    "phi": is_phi_practical,
    "lambda": is_lambda_practical,
    "practical": is_practical,
    "weak": is_weakly_phi_practical,
    "2dense": is_2_dense,
    "strict2dense": is_strictly_2_dense,
    "p:3": lambda n: is_p_practical(n, 3),
}


def test_membership_matches_point_predicates():
    mem = membership(3000, list(POINT), chunk_size=701)
    for name, pred in POINT.items():
        assert [bool(v) for v in mem[name]] == [pred(n) for n in range(1, 3001)], name


def test_count_examples():
    t = count_classes(12, ["phi"], [12])
    assert t.at("phi", 12) == 7
    assert count_classes(10, ["2dense"]).at("2dense", 10) == 3


def test_diff_examples():
    r = diff_count(50, "lambda", "phi", with_members=True)
    assert (r.count, r.members) == (1, [45])
    assert diff_count(2000, "phi", "lambda").count == 0
    r = diff_count(25, "p:2", "lambda", with_members=True)
    assert 21 in r.members
    assert diff_count(500, "lambda", "phi", with_members=True, member_cap=2).members == [45, 135]


def test_default_checkpoints():
    assert default_checkpoints(10**6) == [10, 100, 1000, 10**4, 10**5, 10**6]
    assert default_checkpoints(250) == [10, 100, 250]
    assert default_checkpoints(7) == [7]


def test_csv_roundtrip_and_format():
    t = count_classes(1000, ["phi", "lambda", "p:2"])
    text = t.to_csv()
    assert text.splitlines()[0] == "X,phi,lambda,p:2"
    assert text.splitlines()[1] == "10,6,6,6"
    back = CountTable.from_csv(text)
    assert back == t and back.to_csv() == text


def test_chunking_does_not_change_counts():
    base = count_classes(5000, ["phi", "weak", "p:5"]).to_csv()
    for chunk in (1, 97, 1000, 5000, 10**5):
        assert count_classes(5000, ["phi", "weak", "p:5"], chunk_size=chunk).to_csv() == base


def test_parallel_matches_serial():
    serial = count_classes(4000, ["lambda", "2dense"], chunk_size=500).to_csv()
    assert count_classes(4000, ["lambda", "2dense"], chunk_size=500, workers=3).to_csv() == serial


def test_errors():
    with pytest.raises(RangeBoundExceeded):
        membership(101, ["phi"], range_bound=100)
    with pytest.raises(UnknownClass):
        membership(10, ["phy"])
    with pytest.raises(UnknownClass):
        membership(10, ["p:4"])
    with pytest.raises(ValueError):
        count_classes(10, ["phi"], [11])


@pytest.mark.parametrize("p, q0", [(3, 13), (5, 31), (7, 19), (11, 7), (13, 61)])
def test_find_q0(p, q0):
    assert find_q0(p) == q0


def test_find_q0_rejects():
    with pytest.raises(ValueError):
        find_q0(2)
    with pytest.raises(ValueError):
        find_q0(9)


def test_family_examples():
    prop46 = construct_family(FamilySpec("prop46", 30))
    assert [m.n.value for m in prop46] == [45, 1305]
    assert all(m.agrees for m in prop46)
    [m] = construct_family(FamilySpec("prop62_podd", p=3))
    assert m.n.value == 26 and m.verified == {"p:3": True, "lambda": False, "q0_not_3": True, "order_le_3": True}
    lem = construct_family(FamilySpec("lemma63", 6, p=5))
    assert [m.n.value for m in lem] == [5**k for k in range(7)] and all(m.agrees for m in lem)


@pytest.mark.parametrize("kind, p", [("prop62_p2", None), ("prop62_p3", None), ("lemma63", 2), ("lemma63", 3), ("lemma63", 7)])
def test_families_agree(kind, p):
    members = construct_family(FamilySpec(kind, 60 if kind.startswith("prop") else 10, p))
    assert members and all(m.agrees for m in members)


def test_family_spec_validation():
    with pytest.raises(ValueError):
        FamilySpec("nope")
    with pytest.raises(ValueError):
        FamilySpec("lemma63")
    with pytest.raises(ValueError):
        FamilySpec("prop62_podd", p=2)


def test_growth_ratio():
    assert growth_ratio(0, 100) == 0
    assert growth_ratio(100, 1000) == pytest.approx(100 * 6.907755 / 1000, rel=1e-6)
