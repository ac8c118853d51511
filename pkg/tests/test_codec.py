import random
from fractions import Fraction as F

import pytest

from cmc import (
    BudgetExceeded,
    Convex,
    Dirac,
    FiniteSupport,
    NOT_YET_STABLE,
    NotInCodingDomain,
    ProductCode,
    TableCode,
    Uniform,
    ZeroMass,
    decode,
    density,
    density_limit,
    encode,
    in_coding_domain,
    offspine_decomposition,
    spine,
    splitting_node,
    validate_additivity,
)
from cmc.codec import Stabilized
from cmc.bits import all_strings_of_length
from cmc.schedules import ConstantSchedule


def _mixed_base():
    # positive mass everywhere, but far from uniform
    return Convex(
        [(F(1, 2), Uniform()), (F(1, 2), ProductCode(ConstantSchedule(F(1, 5))))]
    )


def _random_table(rng, depth=6):
    entries = {}
    frontier = {"": F(1)}
    for _ in range(depth):
        nxt = {}
        for s, m in frontier.items():
            num = rng.randrange(1, 8)
            entries[s + "0"] = m * F(num, 8)
            entries[s + "1"] = m * F(8 - num, 8)
            nxt[s + "0"] = entries[s + "0"]
            nxt[s + "1"] = entries[s + "1"]
        frontier = nxt
    return TableCode(depth, entries)


def test_splitting_node_basics():
    u = Uniform()
    assert splitting_node(u, "", 4) == ""
    assert splitting_node(u, "01", 4) == "01"
    with pytest.raises(ZeroMass):
        splitting_node(Dirac("0"), "1", 4)
    with pytest.raises(BudgetExceeded):
        splitting_node(Dirac("0"), "", 8)


def test_splitting_node_skips_non_splitting_levels():
    # all mass below '0' rides one branch until depth 2, then splits
    f = FiniteSupport([("000", F(1, 2)), ("001", F(1, 4)), ("1", F(1, 4))])
    assert splitting_node(f, "0", 8) == "00"


def test_spine_of_uniform():
    assert spine(Uniform(), 3).nodes == ("", "0", "00", "000")


def test_spine_follows_zero_child():
    f = FiniteSupport([("000", F(1, 2)), ("001", F(1, 4)), ("1", F(1, 4))])
    assert spine(f, 1, budget=16).nodes == ("", "00")
    with pytest.raises(BudgetExceeded):
        spine(f, 2, budget=16)  # below '000' the support is a single branch


def test_encode_requires_normalized_base():
    with pytest.raises(ZeroMass):
        encode(TableCode(0, {"": F(1, 2)}), "1")


def test_encode_stamps_exact_ratios():
    g = encode(Uniform(), "10")
    # spine node '' stamped with bit 1: child 0 gets 2/3
    assert g.mass("0") == F(2, 3)
    assert g.mass("1") == F(1, 3)
    # spine node '0' stamped with bit 0: child 1 gets 2/3
    assert g.mass("00") == F(2, 9)
    assert g.mass("01") == F(4, 9)
    # beyond the payload the base conditionals return
    assert g.mass("000") == F(1, 9)
    assert validate_additivity(g, 6) == "ok"


def test_decode_round_trip_small():
    base = _mixed_base()
    payload = "1011001"
    assert decode(encode(base, payload), len(payload)) == payload


def test_decode_round_trip_table():
    rng = random.Random(7)
    base = _random_table(rng)
    payload = "".join(rng.choice("01") for _ in range(32))
    g = encode(base, payload)
    assert decode(g, 32) == payload
    assert in_coding_domain(g, 32) is True


def test_not_in_coding_domain():
    result = in_coding_domain(Uniform(), 1)
    assert result == (False, 0, "")
    with pytest.raises(NotInCodingDomain) as exc:
        decode(Uniform(), 1)
    assert exc.value.index == 0 and exc.value.node == ""


def test_decode_budget_exhaustion():
    with pytest.raises(BudgetExceeded):
        decode(Dirac("0"), 1, budget=16)


def test_density_scaling_off_spine():
    g = encode(Uniform(), "1")
    # theta is constant below the off-spine root '1'
    theta = density(g, "1")
    assert theta == F(2, 3)
    for u in ["10", "11", "101", "1101"]:
        assert g.mass(u) == theta * Uniform().mass(u)
    assert density(g, "0") == F(4, 3)


def test_density_rejects_plain_codes():
    with pytest.raises(TypeError):
        density(Uniform(), "0")


def test_density_limit():
    g = encode(Uniform(), "11")
    assert density_limit(g, "0") is NOT_YET_STABLE
    assert density_limit(g, "00") is NOT_YET_STABLE
    out = density_limit(g, "1")
    assert isinstance(out, Stabilized) and out.theta == F(2, 3)
    assert density_limit(g, "01") == Stabilized(F(4, 3) * F(2, 3) / F(1, 2) * F(1, 4) / F(1, 2))


def test_offspine_decomposition_uniform():
    assert offspine_decomposition(Uniform(), 3) == ["1", "01", "001"]
    assert offspine_decomposition(Uniform(), 0) == []


def test_offspine_covers_level():
    parts = offspine_decomposition(Uniform(), 4)
    from cmc import measure_of_family

    g = encode(Uniform(), "1010")
    total = sum(g.mass(s) for s in parts) + g.mass("0000")
    assert total == 1
    assert measure_of_family(g, parts + ["0000"]) == 1


def test_zero_sets_preserved():
    base = FiniteSupport([("00", F(1, 2)), ("01", F(1, 4)), ("1", F(1, 4))])
    g = encode(base, "101")
    for s in all_strings_of_length(4):
        assert (g.mass(s) == 0) == (base.mass(s) == 0)


def test_spine_preserved_by_encoding():
    base = _mixed_base()
    g = encode(base, "110010")
    assert spine(g, 6).nodes == spine(base, 6).nodes


def test_finite_payload_then_base():
    g = encode(Uniform(), "1")
    # only the root is stamped; '0' keeps uniform conditionals
    assert g.mass("00") == g.mass("01") == F(1, 3)
