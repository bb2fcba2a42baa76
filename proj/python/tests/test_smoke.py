import pytest

import kirch


def test_pair_descriptor():
    d = kirch.descriptor([5, 10])
    assert d["A"] == [2, 5]
    assert d["Pi"] == [5]
    assert d["alpha"] == {2: 1, 5: 0}
    assert kirch.a_of([7]) == "all"


def test_pair_formula_matches_direct():
    for x, y in [(1, 15), (-4, 4), (6, 35), (-21, 10)]:
        assert kirch.a_of([x, y]) == kirch.a_of_pair_formula(x, y)


def test_order_and_oracle():
    assert kirch.filter_leq([1, 15], [1, 5, 10])
    assert not kirch.filter_leq([5, 10], [7, 14])
    assert kirch.filter_leq_oracle([1, 15], [1, 5, 10])
    assert not kirch.filter_leq_oracle([5, 10], [7, 14])


def test_classify():
    assert kirch.classify([1, 2]) == "Top"
    assert kirch.classify([1, 5, 10]) == "FPrime"
    assert kirch.classify([5, 10]) == "FDoublePrime"
    assert len(kirch.upset_in_fprime([7, 14])) == 6
    assert len(kirch.upset_in_fprime([1, 15, 30])) == 2


def test_realize_roundtrip():
    e = kirch.realize([2, 5], {2: 1, 5: 2})
    assert e == [5, 7, 10]
    d = kirch.descriptor(e)
    assert d["A"] == [2, 5] and d["alpha"] == {2: 1, 5: 2}


def test_numtheory():
    assert kirch.prime_divisors(-60) == [2, 3, 5]
    assert kirch.crt_solve([(2, 3), (3, 5)]) == 8
    assert kirch.consecutive_power_pairs(10**6) == [(8, 9)]
    assert kirch.zsigmondy_is_exception(2, 6)
    assert not kirch.zsigmondy_is_exception(2, 4)
    assert kirch.classify_prime(3) == "fermat,mersenne"


def test_closure():
    assert kirch.closure_sample(1, 3, 6) == [-6, -5, -3, -2, 1, 3, 4, 6]
    for z in range(-40, 41):
        if z:
            assert kirch.closure_member(z, 2, 15) == kirch.closure_oracle_member(z, 2, 15, 15)


def test_gamma():
    g = kirch.gamma(5, 7, 5)
    assert sorted(v for e in g["edges"] for v in e if 5 in e and v != 5) == [-20, -5, 10, 25]
    g2 = kirch.gamma(2, 2)
    assert len(g2["edges"]) == 7
    assert kirch.gamma_dot(2, 2).startswith("graph gamma_2 {")


def test_errors():
    with pytest.raises(ValueError):
        kirch.divides_via_filters(1, 3)
    with pytest.raises(ValueError):
        kirch.realize([2, 5], {2: 1, 5: 7})


def test_suite_report():
    r = kirch.run_suite("pair_formula")
    assert r["suite"] == "pair_formula"
    assert r["cases"] == 4950 and r["failures"] == []
