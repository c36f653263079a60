import math
import random

import gmpy2
import pytest
from hypothesis import given, settings, strategies as st

from ordlist.errors import DegenerateElement, MessageTooLarge
from ordlist.intcom import (
    IntCommitment,
    Opening,
    combine_openings,
    commit_with,
    divide_openings,
    ic_combine,
    ic_commit,
    ic_divide,
    ic_equivocate,
    ic_setup,
    ic_verify_open,
    powmod,
    random_safe_prime,
)

ints = st.integers(min_value=-(2**64), max_value=2**64)


def test_setup_structure(ic):
    params, trap = ic
    n = params.modulus
    assert n.bit_length() == 512
    assert params.randomness_bound == 1 << (512 + 128)
    assert pow(params.h, trap.group_order, n) == 1
    assert pow(params.g, trap.group_order, n) == 1
    assert pow(params.h, trap.dlog, n) == params.g
    assert trap.group_order < 2**params.order_bits


def test_safe_primes():
    p, q = random_safe_prime(64, random.Random(1))
    assert p == 2 * q + 1 and p.bit_length() == 64
    assert gmpy2.is_prime(p) and gmpy2.is_prime(q)


def test_small_modulus_needs_insecure_flag():
    with pytest.raises(ValueError):
        ic_setup(512, random.Random(0))


@settings(max_examples=30, deadline=None)
@given(ints, ints)
def test_homomorphism(ic, x, y):
    params, _ = ic
    rng = random.Random(x ^ y)
    cx, ox = ic_commit(params, x, rng)
    cy, oy = ic_commit(params, y, rng)
    assert ic_verify_open(params, ic_combine(params, cx, cy), combine_openings(ox, oy))
    assert ic_verify_open(params, ic_divide(params, cx, cy), divide_openings(ox, oy))
    assert not ic_verify_open(params, cx, Opening(x + 1, ox.randomness))


@settings(max_examples=20, deadline=None)
@given(ints, ints)
def test_equivocation(ic, x, target):
    params, trap = ic
    c, o = ic_commit(params, x, random.Random(x))
    fake = ic_equivocate(params, trap, c, o, target)
    assert fake.integer == target and ic_verify_open(params, c, fake)


def test_message_bound(ic):
    params, _ = ic
    ic_commit(params, params.message_bound)
    ic_commit(params, -params.message_bound)
    with pytest.raises(MessageTooLarge):
        ic_commit(params, params.message_bound + 1)


def test_square_root_of_one_units(ic):
    params, _ = ic
    n = params.modulus
    c, o = ic_commit(params, 5, random.Random(2))
    flipped = IntCommitment(n - c.value)
    assert ic_verify_open(params, flipped, Opening(5, o.randomness, n - 1))
    assert not ic_verify_open(params, c, Opening(5, o.randomness, 2))


def test_out_of_range_commitment_rejected(ic):
    params, _ = ic
    assert not ic_verify_open(params, IntCommitment(0), Opening(0, 0))
    assert not ic_verify_open(params, IntCommitment(params.modulus + 1), Opening(0, 0))


def test_negative_exponent_and_degenerate_base(ic):
    params, _ = ic
    n = params.modulus
    assert powmod(params.h, -3, n) * powmod(params.h, 3, n) % n == 1
    c = commit_with(params, -7, -9)
    assert c.value == pow(params.g, -7, n) * pow(params.h, -9, n) % n
    with pytest.raises(DegenerateElement):
        powmod(0, -1, n)
    assert math.gcd(c.value, n) == 1
