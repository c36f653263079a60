import dataclasses
import random

import pytest
from hypothesis import given, settings, strategies as st

from ordlist.curve import CURVE_ORDER
from ordlist.errors import CannotOpenSoft, KeyLengthError
from ordlist.zks import (
    OpenProof,
    TeaseProof,
    ZksCommitment,
    ZksSimulator,
    hard_commit,
    leaf_message,
    merc_open,
    merc_setup,
    merc_tease,
    soft_commit,
    ver_open,
    ver_tease,
    zks_commit,
    zks_prove,
    zks_verify,
)

PARAMS = merc_setup()


# --- mercurial commitments ---------------------------------------------------


@pytest.mark.parametrize("m1,m2", [(0, 1), (5, CURVE_ORDER - 1), (2**200, 3)])
def test_merc_contract_table(m1, m2):
    rng = random.Random(m1)
    hard, rh = hard_commit(PARAMS, m1, rng)
    soft, rs = soft_commit(PARAMS, rng)

    # hard: opens and teases to m1 only
    assert ver_open(PARAMS, hard, m1, merc_open(PARAMS, m1, rh))
    assert ver_tease(PARAMS, hard, m1, merc_tease(PARAMS, m1, rh))
    with pytest.raises(ValueError):
        merc_open(PARAMS, m2, rh)
    with pytest.raises(ValueError):
        merc_tease(PARAMS, m2, rh)
    assert not ver_open(PARAMS, hard, m2, merc_open(PARAMS, m1, rh))
    assert not ver_tease(PARAMS, hard, m2, merc_tease(PARAMS, m1, rh))

    # soft: never opens, teases to anything
    with pytest.raises(CannotOpenSoft):
        merc_open(PARAMS, m1, rs)
    for m in (m1, m2):
        assert ver_tease(PARAMS, soft, m, merc_tease(PARAMS, m, rs))
    assert not ver_tease(PARAMS, soft, m2, merc_tease(PARAMS, m1, rs))

    # proof kinds are not interchangeable
    assert not ver_open(PARAMS, hard, m1, merc_tease(PARAMS, m1, rh))
    assert not ver_tease(PARAMS, hard, m1, merc_open(PARAMS, m1, rh))


def test_degenerate_open_rejected():
    hard, rh = hard_commit(PARAMS, 1, random.Random(1))
    assert not ver_open(PARAMS, hard, 1, OpenProof(rh.r0, 0))


def test_trapdoor_opens_soft_commitments():
    params, t = merc_setup(random.Random(3), with_trapdoor=True)
    assert params.h == params.g_pow(t)
    c, r = soft_commit(params, random.Random(4))
    for m in (7, 8):
        assert ver_open(params, c, m, merc_open(params, m, r, trapdoor=t))


# --- zero-knowledge sets -----------------------------------------------------


def _random_map(rng, size, height):
    keys = rng.sample(range(1 << height), size)
    return {k: rng.randbytes(rng.randrange(1, 12)) for k in keys}


@pytest.mark.parametrize("height", [8, 16, 32])
def test_round_trip(height):
    rng = random.Random(height)
    data = _random_map(rng, 12, height)
    com, state = zks_commit(PARAMS, data, height, rng)
    for key, value in data.items():
        answer, proof = zks_prove(PARAMS, state, key)
        assert answer == value
        assert len(proof.path) == height and len(proof.steps) == height + 1
        assert all(isinstance(s, OpenProof) for s in proof.steps)
        assert zks_verify(PARAMS, com, key, value, proof, height)
    absent = [k for k in (rng.randrange(1 << height) for _ in range(40)) if k not in data]
    for key in absent:
        answer, proof = zks_prove(PARAMS, state, key)
        assert answer is None
        assert all(isinstance(s, TeaseProof) for s in proof.steps)
        assert zks_verify(PARAMS, com, key, None, proof, height)


def test_empty_set_has_soft_root():
    com, state = zks_commit(PARAMS, {}, 8, random.Random(1))
    assert state.nodes[(0, 0)].rand.kind == "soft"
    answer, proof = zks_prove(PARAMS, state, 77)
    assert answer is None and zks_verify(PARAMS, com, 77, None, proof, 8)


def test_singleton_and_randomized_commitments():
    data = {0b10110011: b"v"}
    com1, state = zks_commit(PARAMS, data, 8, random.Random(1))
    com2, _ = zks_commit(PARAMS, data, 8, random.Random(2))
    assert com1 != com2
    answer, proof = zks_prove(PARAMS, state, 0b10110011)
    assert zks_verify(PARAMS, com1, 0b10110011, answer, proof, 8)
    # the sibling of the member leaf is a soft frontier node
    answer, proof = zks_prove(PARAMS, state, 0b10110010)
    assert answer is None and zks_verify(PARAMS, com1, 0b10110010, None, proof, 8)


def test_commitment_size_independent_of_set_size():
    rng = random.Random(5)
    small, _ = zks_commit(PARAMS, _random_map(rng, 1, 16), 16, rng)
    large, _ = zks_commit(PARAMS, _random_map(rng, 100, 16), 16, rng)
    assert len(small.to_bytes()) == len(large.to_bytes()) == 96


def test_non_member_proofs_are_cached():
    rng = random.Random(6)
    com, state = zks_commit(PARAMS, _random_map(rng, 5, 16), 16, rng)
    key = next(k for k in range(1 << 16) if k not in state.values)
    first = zks_prove(PARAMS, state, key, rng)
    nodes = len(state.nodes)
    assert zks_prove(PARAMS, state, key, rng) == first
    state.cache.clear()
    assert zks_prove(PARAMS, state, key, rng) == first
    assert len(state.nodes) == nodes


@pytest.fixture(scope="module")
def committed():
    rng = random.Random(7)
    data = _random_map(rng, 10, 16)
    com, state = zks_commit(PARAMS, data, 16, rng)
    return data, com, state


def test_member_cannot_be_presented_as_absent(committed):
    data, com, state = committed
    key, value = next(iter(data.items()))
    _, proof = zks_prove(PARAMS, state, key)
    assert not zks_verify(PARAMS, com, key, None, proof, 16)
    assert not zks_verify(PARAMS, com, key, value + b"x", proof, 16)
    assert not zks_verify(PARAMS, com, key ^ 1, value, proof, 16)


def test_path_substitution_sweep(committed):
    data, com, state = committed
    key, value = next(iter(data.items()))
    _, proof = zks_prove(PARAMS, state, key)
    decoy = hard_commit(PARAMS, 1, random.Random(1))[0]
    for level in range(16):
        for side in (0, 1):
            pair = list(proof.path[level])
            pair[side] = decoy
            path = proof.path[:level] + (tuple(pair),) + proof.path[level + 1:]
            forged = dataclasses.replace(proof, path=path)
            assert not zks_verify(PARAMS, com, key, value, forged, 16)
    other = ZksCommitment(decoy)
    assert not zks_verify(PARAMS, other, key, value, proof, 16)


def test_truncated_proof_rejected(committed):
    data, com, state = committed
    key, value = next(iter(data.items()))
    _, proof = zks_prove(PARAMS, state, key)
    short = dataclasses.replace(proof, steps=proof.steps[:-1])
    assert not zks_verify(PARAMS, com, key, value, short, 16)
    assert not zks_verify(PARAMS, com, key, value, proof, 15)


def test_key_length_errors(committed):
    _, com, state = committed
    with pytest.raises(KeyLengthError):
        zks_prove(PARAMS, state, 1 << 16)
    with pytest.raises(KeyLengthError):
        zks_prove(PARAMS, state, -1)
    with pytest.raises(KeyLengthError):
        zks_commit(PARAMS, {256: b"x"}, 8)
    _, proof = zks_prove(PARAMS, state, 3)
    assert not zks_verify(PARAMS, com, 1 << 16, None, proof, 16)


def _shared_tree():
    rng = random.Random(8)
    data = _random_map(rng, 30, 16)
    return (data, *zks_commit(PARAMS, data, 16, rng))


_SHARED = _shared_tree()


@settings(max_examples=20, deadline=None)
@given(st.one_of(st.sampled_from(sorted(_SHARED[0])), st.integers(0, 2**16 - 1)))
def test_no_key_has_both_answers(key):
    data, com, state = _SHARED
    answer, proof = zks_prove(PARAMS, state, key)
    flipped = None if answer is not None else b"anything"
    assert zks_verify(PARAMS, com, key, answer, proof, 16)
    assert not zks_verify(PARAMS, com, key, flipped, proof, 16)


def test_leaf_messages_distinguish_absent_from_empty():
    assert leaf_message(None) != leaf_message(b"")


def test_simulator_answers_consistently():
    rng = random.Random(9)
    params, t = merc_setup(rng, with_trapdoor=True)
    sim = ZksSimulator(params, t, 16, rng)
    for key in rng.sample(range(1 << 16), 20):
        value = rng.choice([None, b"v"])
        proof = sim.prove(key, value)
        assert zks_verify(params, sim.com, key, value, proof, 16)
    again = sim.prove(key, value)
    assert again.path == proof.path
