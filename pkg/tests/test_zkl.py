import dataclasses
import random
import time

import pytest

from ordlist import codec
from ordlist.errors import HashCollision, InvalidFlag, InvalidList, InvalidQuery
from ordlist.intcom import Opening, ic_commit
from ordlist.rangeproof import prove_with_squares
from ordlist.zkl import (
    MEMBERSHIP,
    ORDER,
    ZklCommitment,
    ZklPublicKey,
    ZklQuery,
    ZklState,
    element_key,
    encode_commitment,
    list_oracle,
    prove_gaps,
    test_profile_setup,
    zkl_commit,
    zkl_query,
    zkl_simulate,
    zkl_verify,
)
from ordlist.zks import zks_commit

ABC = [b"A", b"B", b"C"]


@pytest.fixture(scope="module")
def abc(zkl_pk):
    com, state = zkl_commit(zkl_pk, ABC, random.Random(1))
    return com, state


def test_setup_is_fast_and_independent():
    start = time.perf_counter()
    pk1 = test_profile_setup(random.Random(1))
    assert time.perf_counter() - start < 10
    pk2 = test_profile_setup(random.Random(2))
    assert pk1.pk_c.modulus != pk2.pk_c.modulus
    assert pk1.height == 16


def test_worked_example(zkl_pk, abc):
    com, state = abc
    query = ZklQuery((b"B", b"D", b"A"), ORDER)
    resp = zkl_query(zkl_pk, state, query, random.Random(2))
    assert resp.member == (True, False, True)
    assert resp.order == (b"A", b"B")
    assert zkl_verify(zkl_pk, com, query, resp)


def test_membership_only_has_no_order_section(zkl_pk, abc):
    com, state = abc
    query = ZklQuery((b"B", b"D"), MEMBERSHIP)
    resp = zkl_query(zkl_pk, state, query)
    assert resp.order is None and resp.order_proofs is None and resp.c_one is None
    assert zkl_verify(zkl_pk, com, query, resp)
    padded = dataclasses.replace(resp, order=(b"B",))
    assert not zkl_verify(zkl_pk, com, query, padded)


def test_singleton_value_is_rank_commitment(zkl_pk):
    com, state = zkl_commit(zkl_pk, [b"solo"], random.Random(3))
    resp = zkl_query(zkl_pk, state, ZklQuery((b"solo",), MEMBERSHIP))
    assert resp.proof_m[0][0] == encode_commitment(zkl_pk, state.commitments[b"solo"])
    assert state.openings[b"solo"].integer == 1


def test_full_order_of_three(zkl_pk, abc):
    com, state = abc
    query = ZklQuery((b"C", b"A", b"B"), ORDER)
    resp = zkl_query(zkl_pk, state, query)
    assert resp.order == tuple(ABC) and len(resp.order_proofs) == 2
    assert zkl_verify(zkl_pk, com, query, resp)


@pytest.fixture(scope="module")
def honest(zkl_pk, abc):
    com, state = abc
    query = ZklQuery((b"C", b"A", b"B"), ORDER)
    return com, query, zkl_query(zkl_pk, state, query, random.Random(4))


def test_swapped_order_rejected(zkl_pk, honest):
    com, query, resp = honest
    assert not zkl_verify(zkl_pk, com, query, dataclasses.replace(resp, order=(b"B", b"A", b"C")))
    assert not zkl_verify(zkl_pk, com, query, dataclasses.replace(resp, order=(b"A", b"B")))
    assert not zkl_verify(zkl_pk, com, query, dataclasses.replace(resp, order_proofs=resp.order_proofs[:1]))


def test_opening_of_one_must_be_one(zkl_pk, honest):
    com, query, resp = honest
    o = resp.c_one_opening
    n = zkl_pk.pk_c.modulus
    zero = dataclasses.replace(resp, c_one_opening=Opening(0, o.randomness))
    assert not zkl_verify(zkl_pk, com, query, zero)
    # a commitment to 0 with its honest opening is refused too
    c0, o0 = ic_commit(zkl_pk.pk_c, 0, random.Random(5))
    assert not zkl_verify(zkl_pk, com, query, dataclasses.replace(resp, c_one=c0, c_one_opening=o0))
    flipped = dataclasses.replace(resp, c_one=type(resp.c_one)(n - resp.c_one.value))
    assert not zkl_verify(zkl_pk, com, query, flipped)


def test_membership_answers_cannot_flip(zkl_pk, abc):
    com, state = abc
    query = ZklQuery((b"A", b"D"), MEMBERSHIP)
    resp = zkl_query(zkl_pk, state, query)
    assert not zkl_verify(zkl_pk, com, query, dataclasses.replace(resp, member=(True, True)))
    swapped = dataclasses.replace(resp, proof_m=resp.proof_m[::-1], member=resp.member[::-1])
    assert not zkl_verify(zkl_pk, com, query, swapped)


def test_other_commitment_rejected(zkl_pk, honest):
    _, query, resp = honest
    other, _ = zkl_commit(zkl_pk, ABC, random.Random(6))
    assert not zkl_verify(zkl_pk, other, query, resp)


def test_input_errors(zkl_pk, abc):
    _, state = abc
    with pytest.raises(InvalidFlag):
        zkl_query(zkl_pk, state, ZklQuery((b"A",), 2))
    with pytest.raises(InvalidQuery):
        zkl_query(zkl_pk, state, ZklQuery((b"A", b"A"), ORDER))
    with pytest.raises(InvalidList):
        zkl_commit(zkl_pk, [b"x", b"x"])
    tiny = ZklPublicKey(zkl_pk.pk_c, zkl_pk.pk_d, height=3)
    with pytest.raises(HashCollision):
        zkl_commit(tiny, [bytes([i]) for i in range(9)])


def cheating_state(pk, elements, constant, rng):
    """Prover state in which every element's rank commitment holds ``constant``."""
    commitments, openings, data = {}, {}, {}
    for y in elements:
        c, o = ic_commit(pk.pk_c, constant, rng)
        commitments[y], openings[y] = c, o
        data[element_key(y, pk.height)] = encode_commitment(pk, c)
    zcom, zstate = zks_commit(pk.pk_d, data, pk.height, rng)
    com = ZklCommitment(zcom)
    ranks = {y: i for i, y in enumerate(elements)}
    return com, ZklState(com, zstate, ranks, commitments, openings)


def forging_prover(params, c, opening, rng, context):
    squares = [rng.randrange(0, 2**16) for _ in range(4)]
    return prove_with_squares(params, c, opening, squares, rng, context)


def test_constant_ranks_cannot_prove_order(zkl_pk):
    rng = random.Random(7)
    lst = [b"p", b"q", b"r"]
    com, state = cheating_state(zkl_pk, lst, 5, rng)
    query = ZklQuery(tuple(lst), ORDER)
    honest = zkl_query(zkl_pk, state, ZklQuery(tuple(lst), MEMBERSHIP))
    for _ in range(5):
        one, one_open = ic_commit(zkl_pk.pk_c, 1, rng)
        proofs = prove_gaps(zkl_pk, com, tuple(lst), state.commitments, state.openings,
                            one, one_open, rng, prover=forging_prover)
        resp = dataclasses.replace(honest, order=tuple(lst), order_proofs=proofs,
                                   c_one=one, c_one_opening=one_open)
        assert not zkl_verify(zkl_pk, com, query, resp)


def test_commitment_hides_size(zkl_pk):
    small, _ = zkl_commit(zkl_pk, [b"a"])
    large, _ = zkl_commit(zkl_pk, [b"%d" % i for i in range(100)])
    assert len(codec.encode_zkl_commitment(small)) == len(codec.encode_zkl_commitment(large))


def test_order_proof_mentions_only_the_pair(zkl_pk, abc):
    com, state = abc
    query = ZklQuery((b"A", b"B"), ORDER)
    blob = codec.encode_zkl_response(zkl_query(zkl_pk, state, query))
    third = state.commitments[b"C"].value.to_bytes(zkl_pk.value_bytes, "big")
    assert third not in blob
    assert b"\x00\x00\x00\x01C" not in blob


def test_response_shape_independent_of_list_size(zkl_pk):
    shapes = set()
    for n in (4, 40):
        lst = [b"item%03d" % i for i in range(n)]
        com, state = zkl_commit(zkl_pk, lst, random.Random(n))
        query = ZklQuery((lst[3], lst[0], lst[2], b"absent"), ORDER)
        resp = zkl_query(zkl_pk, state, query)
        assert zkl_verify(zkl_pk, com, query, resp)
        shapes.add((len(resp.proof_m), len(resp.order_proofs),
                    tuple(len(p.path) for _, p in resp.proof_m)))
    assert len(shapes) == 1


def test_repeat_queries_reuse_extensions(zkl_pk, abc):
    _, state = abc
    query = ZklQuery((b"Z", b"A"), MEMBERSHIP)
    assert zkl_query(zkl_pk, state, query).proof_m == zkl_query(zkl_pk, state, query).proof_m


def test_simulator(zkl_pk):
    lst = [b"s%02d" % i for i in range(10)]
    sim = zkl_simulate(list_oracle(lst), 512, 16, random.Random(8), insecure=True)
    q1 = ZklQuery((lst[4], b"nope", lst[1], lst[7]), ORDER)
    r1 = sim.query(q1)
    assert r1.order == (lst[1], lst[4], lst[7])
    assert zkl_verify(sim.pk, sim.com, q1, r1)
    q2 = ZklQuery((lst[7], lst[4]), MEMBERSHIP)
    r2 = sim.query(q2)
    assert zkl_verify(sim.pk, sim.com, q2, r2)
    assert r2.proof_m[0][0] == r1.proof_m[3][0]
