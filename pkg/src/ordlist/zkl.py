"""Zero-knowledge lists: membership and order queries on a committed list.

The prover commits to a zero-knowledge set mapping ``H(y)`` (a hash of each
element truncated to the tree height) to an integer commitment of the
element's rank.  Membership is answered by the set; order between two present
elements is proven by showing that the rank gap minus one is non-negative,
using the homomorphism of the rank commitments and a fresh commitment to 1.
"""

from __future__ import annotations

import hashlib
import secrets
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import HashCollision, InvalidFlag, InvalidList, InvalidQuery
from .intcom import (
    IntCommitment,
    IntCommitParams,
    Opening,
    TEST_MODULUS_BITS,
    ic_commit,
    ic_divide,
    ic_equivocate,
    ic_setup,
    ic_verify_open,
)
from .rangeproof import NNProof, nn_prove, nn_verify
from .zks import (
    MercParams,
    ZksCommitment,
    ZksProof,
    ZksSimulator,
    ZksState,
    merc_setup,
    zks_commit,
    zks_prove,
    zks_verify,
)

KEY_TAG = b"ZKL-KEY"
DEFAULT_HEIGHT = 256
TEST_HEIGHT = 16
MEMBERSHIP, ORDER = 0, 1


@dataclass(frozen=True)
class ZklPublicKey:
    pk_c: IntCommitParams
    pk_d: MercParams
    height: int = DEFAULT_HEIGHT

    @property
    def value_bytes(self) -> int:
        return (self.pk_c.modulus.bit_length() + 7) // 8


@dataclass(frozen=True)
class ZklCommitment:
    com: ZksCommitment

    def to_bytes(self) -> bytes:
        return self.com.to_bytes()


@dataclass
class ZklState:
    com: ZklCommitment
    zks: ZksState
    ranks: dict
    commitments: dict
    openings: dict


@dataclass(frozen=True)
class ZklQuery:
    delta: tuple[bytes, ...]
    flag: int = MEMBERSHIP


@dataclass(frozen=True)
class ZklResponse:
    member: tuple[bool, ...]
    proof_m: tuple[tuple[Optional[bytes], ZksProof], ...]
    order: Optional[tuple[bytes, ...]] = None
    order_proofs: Optional[tuple[NNProof, ...]] = None
    c_one: Optional[IntCommitment] = None
    c_one_opening: Optional[Opening] = None


def element_key(element: bytes, height: int) -> int:
    digest = int.from_bytes(hashlib.sha256(KEY_TAG + element).digest(), "big")
    return digest >> (256 - height)


def encode_commitment(pk: ZklPublicKey, c: IntCommitment) -> bytes:
    return c.value.to_bytes(pk.value_bytes, "big")


def decode_commitment(pk: ZklPublicKey, raw: bytes) -> Optional[IntCommitment]:
    if len(raw) != pk.value_bytes:
        return None
    v = int.from_bytes(raw, "big")
    return IntCommitment(v) if 0 < v < pk.pk_c.modulus else None


def pair_context(com: ZklCommitment, lo: bytes, hi: bytes) -> bytes:
    """Fiat-Shamir context binding a gap proof to the commitment and the pair."""
    return b"".join(
        [com.to_bytes(), len(lo).to_bytes(4, "big"), lo, len(hi).to_bytes(4, "big"), hi]
    )


def gap_commitment(pk: ZklPublicKey, lo: IntCommitment, hi: IntCommitment, one: IntCommitment):
    """Commitment to ``rank(hi) - rank(lo) - 1``."""
    params = pk.pk_c
    return ic_divide(params, ic_divide(params, hi, lo), one)


def zkl_setup(modulus_bits: int = 2048, height: int = DEFAULT_HEIGHT, rng=None, *,
              insecure: bool = False) -> ZklPublicKey:
    if not 1 <= height <= 256:
        raise ValueError("tree height must be in [1, 256]")
    pk_c, _ = ic_setup(modulus_bits, rng, insecure=insecure)
    return ZklPublicKey(pk_c, merc_setup(), height)


def test_profile_setup(rng=None) -> ZklPublicKey:
    """Small, insecure parameters for tests and demos."""
    return zkl_setup(TEST_MODULUS_BITS, TEST_HEIGHT, rng, insecure=True)


test_profile_setup.__test__ = False


def zkl_commit(pk: ZklPublicKey, elements: Sequence[bytes], rng=None):
    """Commit to ``elements`` (list order is rank order)."""
    rng = rng if rng is not None else secrets.SystemRandom()
    elements = [bytes(e) for e in elements]
    if len(set(elements)) != len(elements):
        raise InvalidList("list elements must be distinct")
    data = {}
    ranks, commitments, openings = {}, {}, {}
    for rank, y in enumerate(elements, start=1):
        key = element_key(y, pk.height)
        if key in data:
            raise HashCollision(f"two elements share the key {key:#x}")
        c, opening = ic_commit(pk.pk_c, rank, rng)
        data[key] = encode_commitment(pk, c)
        ranks[y], commitments[y], openings[y] = rank, c, opening
    zcom, zstate = zks_commit(pk.pk_d, data, pk.height, rng)
    com = ZklCommitment(zcom)
    return com, ZklState(com, zstate, ranks, commitments, openings)


def _check_query(query: ZklQuery) -> None:
    if query.flag not in (MEMBERSHIP, ORDER):
        raise InvalidFlag(f"flag must be 0 or 1, got {query.flag!r}")
    if len(set(query.delta)) != len(query.delta):
        raise InvalidQuery("query elements must be distinct")


def prove_gaps(pk, com, order, commitments, openings, one, one_opening, rng, prover=nn_prove):
    """Non-negativity proofs for every adjacent pair of ``order``."""
    proofs = []
    for lo, hi in zip(order, order[1:]):
        c = gap_commitment(pk, commitments[lo], commitments[hi], one)
        o_lo, o_hi = openings[lo], openings[hi]
        opening = Opening(
            o_hi.integer - o_lo.integer - one_opening.integer,
            o_hi.randomness - o_lo.randomness - one_opening.randomness,
        )
        proofs.append(prover(pk.pk_c, c, opening, rng, pair_context(com, lo, hi)))
    return tuple(proofs)


def zkl_query(pk: ZklPublicKey, state: ZklState, query: ZklQuery, rng=None) -> ZklResponse:
    rng = rng if rng is not None else secrets.SystemRandom()
    _check_query(query)
    proof_m = tuple(zks_prove(pk.pk_d, state.zks, element_key(z, pk.height), rng)
                    for z in query.delta)
    member = tuple(v is not None for v, _ in proof_m)
    if query.flag == MEMBERSHIP:
        return ZklResponse(member, proof_m)
    present = [z for z, m in zip(query.delta, member) if m]
    order = tuple(sorted(present, key=state.ranks.__getitem__))
    one, one_opening = ic_commit(pk.pk_c, 1, rng)
    proofs = prove_gaps(pk, state.com, order, state.commitments, state.openings,
                        one, one_opening, rng)
    return ZklResponse(member, proof_m, order, proofs, one, one_opening)


def zkl_verify(pk: ZklPublicKey, com: ZklCommitment, query: ZklQuery, response: ZklResponse) -> bool:
    try:
        _check_query(query)
    except (InvalidFlag, InvalidQuery):
        return False
    m = len(query.delta)
    if len(response.member) != m or len(response.proof_m) != m:
        return False
    values = {}
    for z, is_member, (value, proof) in zip(query.delta, response.member, response.proof_m):
        if not isinstance(is_member, bool) or is_member != (value is not None):
            return False
        if not zks_verify(pk.pk_d, com.com, element_key(z, pk.height), value, proof, pk.height):
            return False
        if is_member:
            values[z] = value

    if query.flag == MEMBERSHIP:
        return (response.order is None and response.order_proofs is None
                and response.c_one is None and response.c_one_opening is None)

    order, proofs = response.order, response.order_proofs
    if order is None or proofs is None or response.c_one is None or response.c_one_opening is None:
        return False
    if len(order) != len(values) or set(order) != set(values) or len(proofs) != max(len(order) - 1, 0):
        return False
    opening = response.c_one_opening
    if opening.integer != 1 or not ic_verify_open(pk.pk_c, response.c_one, opening):
        return False
    if not 0 < response.c_one.value < pk.pk_c.modulus:
        return False
    decoded = {z: decode_commitment(pk, v) for z, v in values.items()}
    if any(c is None for c in decoded.values()):
        return False
    for (lo, hi), proof in zip(zip(order, order[1:]), proofs):
        c = gap_commitment(pk, decoded[lo], decoded[hi], response.c_one)
        if not nn_verify(pk.pk_c, c, proof, pair_context(com, lo, hi)):
            return False
    return True


# --- simulator ---------------------------------------------------------------

Oracle = Callable[[Sequence[bytes]], tuple[Sequence[bool], Sequence[bytes]]]


def list_oracle(elements: Sequence[bytes]) -> Oracle:
    """Oracle answering membership flags and the order of present elements."""
    ranks = {bytes(y): i for i, y in enumerate(elements)}

    def oracle(delta):
        flags = [z in ranks for z in delta]
        return flags, sorted((z for z in delta if z in ranks), key=ranks.__getitem__)

    return oracle


class ZklSimulator:
    """Produces accepting responses with oracle access to the list only.

    Setup keeps both trapdoors.  Each present element gets a fresh commitment
    to 0 (tabled by element); order gaps then commit to -1 and are equivocated
    to 0 before running the honest non-negativity prover.
    """

    def __init__(self, oracle: Oracle, modulus_bits: int = 2048, height: int = DEFAULT_HEIGHT,
                 rng=None, *, insecure: bool = False):
        self._rng = rng if rng is not None else secrets.SystemRandom()
        self.oracle = oracle
        pk_c, self.ic_trapdoor = ic_setup(modulus_bits, self._rng, insecure=insecure)
        pk_d, self.merc_trapdoor = merc_setup(self._rng, with_trapdoor=True)
        self.pk = ZklPublicKey(pk_c, pk_d, height)
        self._zks = ZksSimulator(pk_d, self.merc_trapdoor, height, self._rng)
        self.com = ZklCommitment(self._zks.com)
        self.table: dict[bytes, tuple[IntCommitment, Opening]] = {}

    def _value(self, z: bytes):
        if z not in self.table:
            self.table[z] = ic_commit(self.pk.pk_c, 0, self._rng)
        return self.table[z]

    def query(self, query: ZklQuery) -> ZklResponse:
        _check_query(query)
        pk = self.pk
        flags, order = self.oracle(query.delta)
        proof_m = []
        for z, present in zip(query.delta, flags):
            value = encode_commitment(pk, self._value(z)[0]) if present else None
            proof_m.append((value, self._zks.prove(element_key(z, pk.height), value)))
        member = tuple(bool(f) for f in flags)
        if query.flag == MEMBERSHIP:
            return ZklResponse(member, tuple(proof_m))
        order = tuple(order)
        one, one_opening = ic_commit(pk.pk_c, 1, self._rng)
        proofs = []
        for lo, hi in zip(order, order[1:]):
            (c_lo, o_lo), (c_hi, o_hi) = self._value(lo), self._value(hi)
            c = gap_commitment(pk, c_lo, c_hi, one)
            honest = Opening(-1, o_hi.randomness - o_lo.randomness - one_opening.randomness)
            fake = ic_equivocate(pk.pk_c, self.ic_trapdoor, c, honest, 0)
            proofs.append(nn_prove(pk.pk_c, c, fake, self._rng, pair_context(self.com, lo, hi)))
        return ZklResponse(member, tuple(proof_m), order, tuple(proofs), one, one_opening)


def zkl_simulate(oracle: Oracle, modulus_bits: int = 2048, height: int = DEFAULT_HEIGHT,
                 rng=None, *, insecure: bool = False) -> ZklSimulator:
    return ZklSimulator(oracle, modulus_bits, height, rng, insecure=insecure)
