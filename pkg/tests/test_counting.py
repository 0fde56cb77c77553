import random

import pytest

from estermann.counting import CountBreakdown, brute_force_count, fast_count
from estermann.errors import MemoryBudgetExceeded, OracleLimitExceeded
from estermann.instance import build_instance
from estermann.verify import random_instances

# First-oracle-run value for N=1e4, c=3/2, mu=(1/3,1/3,1/3), H=500.
GOLDEN_N4_H500 = 564


def test_hand_example_n12():
    inst = build_instance(12, "3/2", ("1/4", "1/4", "1/2"), 3)
    b = brute_force_count(inst)
    # windows [0,6]: primes {2,3,5}; v in [3,9]: floor(3^1.5)=5, floor(4^1.5)=8
    assert b.total == 3
    assert b.n_range == (3, 4)
    assert b.per_n == ((3, 5, 2), (4, 8, 1))  # (2,5),(5,2) then (2,2)


def test_mu_swap_symmetry_small():
    inst = build_instance(12, "3/2", ("1/6", "1/3", "1/2"), 2)
    swapped = build_instance(12, "3/2", ("1/3", "1/6", "1/2"), 2)
    assert brute_force_count(inst).total == brute_force_count(swapped).total


def test_h_zero_total_zero():
    inst = build_instance(10 ** 4, "3/2", ("1/3", "1/3", "1/3"), 0)
    assert brute_force_count(inst).total == 0
    assert fast_count(inst).total == 0


def test_oracle_limit():
    inst = build_instance(10 ** 6, "3/2", ("1/3", "1/3", "1/3"), 100)
    with pytest.raises(OracleLimitExceeded):
        brute_force_count(inst)


def test_memory_budget():
    inst = build_instance(10 ** 4, "3/2", ("1/3", "1/3", "1/3"), 2000)
    with pytest.raises(MemoryBudgetExceeded):
        fast_count(inst, mem_entries=100)


def test_golden_fast_equals_brute():
    inst = build_instance(10 ** 4, "3/2", ("1/3", "1/3", "1/3"), 500)
    b = brute_force_count(inst)
    f = fast_count(inst)
    assert b == f
    assert f.total == GOLDEN_N4_H500


def test_random_oracle_agreement():
    rng = random.Random(101)
    for inst in random_instances(30, rng):
        b = brute_force_count(inst)
        f = fast_count(inst)
        assert b.total == f.total
        assert b.per_n == f.per_n
        assert b.n_range == f.n_range


def test_total_monotone_in_H():
    rng = random.Random(55)
    for _ in range(10):
        N = rng.randint(200, 1500)
        H = rng.randint(2, N // 5)
        base = build_instance(N, "5/3", ("1/3", "1/3", "1/3"), H)
        wider = build_instance(N, "5/3", ("1/3", "1/3", "1/3"), H + rng.randint(1, 20))
        assert fast_count(wider).total >= fast_count(base).total


def test_mu_swap_symmetry_random():
    rng = random.Random(77)
    for inst in random_instances(10, rng, n_max=1200):
        swapped = build_instance(inst.N, inst.c, (inst.mu[1], inst.mu[0], inst.mu[2]), inst.H)
        assert fast_count(inst).total == fast_count(swapped).total


def test_per_n_membership_exact():
    inst = build_instance(2000, "7/4", ("1/4", "1/4", "1/2"), 300)
    f = fast_count(inst)
    mu3 = inst.mu[2]
    for _n, v, _r in f.per_n:
        assert abs(mu3.denominator * v - mu3.numerator * inst.N) <= mu3.denominator * inst.H
    assert f.total == sum(r for _, _, r in f.per_n)


def test_json_csv_serialization():
    inst = build_instance(12, "3/2", ("1/4", "1/4", "1/2"), 3)
    b = brute_force_count(inst)
    assert CountBreakdown.from_json(b.to_json()) == b
    csv = b.to_csv()
    assert csv.splitlines()[0] == "n,v,r"
    assert csv.splitlines()[1] == "3,5,2"
    empty = build_instance(10 ** 4, "3/2", ("1/3", "1/3", "1/3"), 0)
    eb = fast_count(empty)
    assert CountBreakdown.from_json(eb.to_json()) == eb
