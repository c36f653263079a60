"""Binary containers for digests, proofs and ZKL messages.

Layout::

    magic (4) | version (1) | tag (1) | payload length (4) | payload | sha256 (32)

The trailing SHA-256 covers everything before it.  It only catches transport
corruption; security rests on the verifiers, which also run on payloads with
a valid checksum.  All integers inside payloads are length-prefixed and
big-endian, sequences carry a 4-byte count, group elements are compressed.
"""

from __future__ import annotations

import hashlib
import struct
from typing import Callable

from .curve import G1_BYTES, G2_BYTES, g1_from_bytes, g1_to_bytes, g2_from_bytes, g2_to_bytes
from .errors import MalformedContainer, MalformedElement
from .intcom import IntCommitment, IntCommitParams, Opening
from .ppal import ClientDigest, QueryProof, ServerDigest
from .rangeproof import NNProof
from .zkl import ZklCommitment, ZklPublicKey, ZklResponse, ZklState
from .zks import (
    MercCommitment,
    MercParams,
    MercRandomness,
    OpenProof,
    TeaseProof,
    ZksCommitment,
    ZksProof,
    ZksState,
    _Node,
)

PPAL_MAGIC = b"PPAL"
ZKL_MAGIC = b"ZKL1"
VERSION = 1
CHECKSUM_BYTES = 32
#: refuse absurd counts before allocating
MAX_COUNT = 1 << 24

TAG_CLIENT, TAG_SERVER, TAG_PROOF = 1, 2, 3
TAG_ZKL_PK, TAG_ZKL_COM, TAG_ZKL_RESPONSE, TAG_ZKL_STATE = 1, 2, 3, 4


class Writer:
    def __init__(self):
        self._parts: list[bytes] = []

    def raw(self, data: bytes) -> "Writer":
        self._parts.append(data)
        return self

    def u8(self, v: int) -> "Writer":
        return self.raw(struct.pack(">B", v))

    def u32(self, v: int) -> "Writer":
        return self.raw(struct.pack(">I", v))

    def blob(self, data: bytes) -> "Writer":
        return self.u32(len(data)).raw(data)

    def uint(self, v: int) -> "Writer":
        if v < 0:
            raise ValueError("negative value for an unsigned field")
        return self.blob(v.to_bytes((v.bit_length() + 7) // 8, "big"))

    def sint(self, v: int) -> "Writer":
        return self.u8(1 if v < 0 else 0).uint(abs(v))

    def g1(self, p) -> "Writer":
        return self.raw(g1_to_bytes(p))

    def g2(self, p) -> "Writer":
        return self.raw(g2_to_bytes(p))

    def seq(self, items, put: Callable) -> "Writer":
        items = list(items)
        self.u32(len(items))
        for item in items:
            put(item)
        return self

    def getvalue(self) -> bytes:
        return b"".join(self._parts)


class Reader:
    def __init__(self, data: bytes):
        self._data = memoryview(data)
        self._pos = 0

    def raw(self, n: int) -> bytes:
        if n < 0 or self._pos + n > len(self._data):
            raise MalformedContainer("truncated payload")
        out = bytes(self._data[self._pos:self._pos + n])
        self._pos += n
        return out

    def u8(self) -> int:
        return self.raw(1)[0]

    def u32(self) -> int:
        return struct.unpack(">I", self.raw(4))[0]

    def blob(self) -> bytes:
        return self.raw(self.u32())

    def uint(self) -> int:
        data = self.blob()
        if data[:1] == b"\x00":
            raise MalformedContainer("non-canonical integer")
        return int.from_bytes(data, "big")

    def sint(self) -> int:
        sign = self.u8()
        if sign not in (0, 1):
            raise MalformedContainer("bad sign byte")
        v = self.uint()
        if sign and v == 0:
            raise MalformedContainer("negative zero")
        return -v if sign else v

    def g1(self):
        return g1_from_bytes(self.raw(G1_BYTES))

    def g2(self):
        return g2_from_bytes(self.raw(G2_BYTES))

    def count(self) -> int:
        n = self.u32()
        if n > MAX_COUNT or n > len(self._data) - self._pos:
            raise MalformedContainer("sequence count out of range")
        return n

    def seq(self, get: Callable) -> list:
        return [get() for _ in range(self.count())]

    def flag(self) -> bool:
        b = self.u8()
        if b not in (0, 1):
            raise MalformedContainer("bad boolean byte")
        return bool(b)

    def done(self) -> None:
        if self._pos != len(self._data):
            raise MalformedContainer("trailing bytes in payload")


# --- container ---------------------------------------------------------------


def pack(magic: bytes, tag: int, payload: bytes) -> bytes:
    head = magic + bytes([VERSION, tag]) + struct.pack(">I", len(payload))
    body = head + payload
    return body + hashlib.sha256(body).digest()


def unpack(data: bytes, magic: bytes, tag: int) -> bytes:
    """Check framing and checksum; return the payload."""
    if len(data) < 10 + CHECKSUM_BYTES:
        raise MalformedContainer("container too short")
    body, checksum = data[:-CHECKSUM_BYTES], data[-CHECKSUM_BYTES:]
    if hashlib.sha256(body).digest() != checksum:
        raise MalformedContainer("checksum mismatch")
    if body[:4] != magic:
        raise MalformedContainer(f"bad magic {body[:4]!r}")
    if body[4] != VERSION:
        raise MalformedContainer(f"unsupported version {body[4]}")
    if body[5] != tag:
        raise MalformedContainer(f"unexpected scheme tag {body[5]}")
    (length,) = struct.unpack(">I", body[6:10])
    if length != len(body) - 10:
        raise MalformedContainer("payload length mismatch")
    return body[10:]


def _decode(data: bytes, magic: bytes, tag: int, read: Callable[[Reader], object]):
    r = Reader(unpack(data, magic, tag))
    try:
        obj = read(r)
    except MalformedElement as exc:
        raise MalformedContainer(str(exc)) from None
    r.done()
    return obj


# --- PPAL --------------------------------------------------------------------


def encode_client_digest(d: ClientDigest) -> bytes:
    w = Writer().g1(d.public_key_g1).g2(d.public_key_g2).g1(d.list_signature)
    return pack(PPAL_MAGIC, TAG_CLIENT, w.getvalue())


def decode_client_digest(data: bytes) -> ClientDigest:
    return _decode(data, PPAL_MAGIC, TAG_CLIENT, lambda r: ClientDigest(r.g1(), r.g2(), r.g1()))


def encode_server_digest(d: ServerDigest) -> bytes:
    w = Writer().g1(d.public_key_g1).g2(d.public_key_g2).g1(d.list_signature)
    w.seq(d.powers, w.g2).seq(d.member_witnesses, w.g1).seq(d.signatures, w.g1)
    w.g1(d.nonce_hash).seq(d.order_auth, w.uint)
    return pack(PPAL_MAGIC, TAG_SERVER, w.getvalue())


def decode_server_digest(data: bytes) -> ServerDigest:
    def read(r: Reader) -> ServerDigest:
        pk1, pk2, sig = r.g1(), r.g2(), r.g1()
        return ServerDigest(
            public_key_g1=pk1,
            public_key_g2=pk2,
            list_signature=sig,
            powers=tuple(r.seq(r.g2)),
            member_witnesses=tuple(r.seq(r.g1)),
            signatures=tuple(r.seq(r.g1)),
            nonce_hash=r.g1(),
            order_auth=tuple(r.seq(r.uint)),
        )

    return _decode(data, PPAL_MAGIC, TAG_SERVER, read)


def encode_query_proof(p: QueryProof) -> bytes:
    w = Writer()
    w.seq(p.order, w.blob).g1(p.sigma_order).seq(p.member_witnesses, w.g1)
    w.g1(p.lam).seq(p.order_witnesses, w.g2)
    return pack(PPAL_MAGIC, TAG_PROOF, w.getvalue())


def decode_query_proof(data: bytes) -> QueryProof:
    def read(r: Reader) -> QueryProof:
        order = tuple(r.seq(r.blob))
        sigma = r.g1()
        witnesses = tuple(r.seq(r.g1))
        lam = r.g1()
        return QueryProof(order, sigma, witnesses, lam, tuple(r.seq(r.g2)))

    return _decode(data, PPAL_MAGIC, TAG_PROOF, read)


# --- ZKL ---------------------------------------------------------------------


def _put_ic_params(w: Writer, p: IntCommitParams) -> None:
    for v in (p.modulus, p.g, p.h, p.challenge_bound, p.order_bits, p.security_bits, p.message_bound):
        w.uint(v)


def _get_ic_params(r: Reader) -> IntCommitParams:
    n, g, h, f, b, k, m = (r.uint() for _ in range(7))
    if n < 3 or not (0 < g < n and 0 < h < n) or f < 2 or m < 1 or b < 1 or k < 1:
        raise MalformedContainer("invalid commitment parameters")
    return IntCommitParams(n, g, h, f, b, k, m)


def _put_merc(w: Writer, c: MercCommitment) -> None:
    w.g1(c.c0).g1(c.c1)


def _get_merc(r: Reader) -> MercCommitment:
    return MercCommitment(r.g1(), r.g1())


def encode_zkl_public_key(pk: ZklPublicKey) -> bytes:
    w = Writer()
    _put_ic_params(w, pk.pk_c)
    w.g1(pk.pk_d.g).g1(pk.pk_d.h).u32(pk.height)
    return pack(ZKL_MAGIC, TAG_ZKL_PK, w.getvalue())


def decode_zkl_public_key(data: bytes) -> ZklPublicKey:
    def read(r: Reader) -> ZklPublicKey:
        pk_c = _get_ic_params(r)
        g, h = r.g1(), r.g1()
        height = r.u32()
        if not 1 <= height <= 256:
            raise MalformedContainer("tree height out of range")
        return ZklPublicKey(pk_c, MercParams(g, h), height)

    return _decode(data, ZKL_MAGIC, TAG_ZKL_PK, read)


def encode_zkl_commitment(c: ZklCommitment) -> bytes:
    w = Writer()
    _put_merc(w, c.com.root)
    return pack(ZKL_MAGIC, TAG_ZKL_COM, w.getvalue())


def decode_zkl_commitment(data: bytes) -> ZklCommitment:
    return _decode(data, ZKL_MAGIC, TAG_ZKL_COM, lambda r: ZklCommitment(ZksCommitment(_get_merc(r))))


def _put_zks_proof(w: Writer, proof: ZksProof) -> None:
    w.u32(len(proof.path))
    for on_path, sibling in proof.path:
        _put_merc(w, on_path)
        _put_merc(w, sibling)
    w.u32(len(proof.steps))
    for step in proof.steps:
        if isinstance(step, OpenProof):
            w.u8(0).uint(step.r0).uint(step.r1)
        else:
            w.u8(1).uint(step.tau)


def _get_zks_proof(r: Reader) -> ZksProof:
    path = tuple((_get_merc(r), _get_merc(r)) for _ in range(r.count()))
    steps = []
    for _ in range(r.count()):
        kind = r.u8()
        if kind == 0:
            steps.append(OpenProof(r.uint(), r.uint()))
        elif kind == 1:
            steps.append(TeaseProof(r.uint()))
        else:
            raise MalformedContainer("unknown step tag")
    return ZksProof(path, tuple(steps))


def _put_nn(w: Writer, p: NNProof) -> None:
    for v in (*p.c1, *p.c2, p.c3, p.challenge):
        w.uint(v)
    for v in (*p.m2, *p.r4, p.r5):
        w.sint(v)


def _get_nn(r: Reader) -> NNProof:
    u = [r.uint() for _ in range(10)]
    s = [r.sint() for _ in range(9)]
    return NNProof(tuple(u[0:4]), tuple(u[4:8]), u[8], u[9], tuple(s[0:4]), tuple(s[4:8]), s[8])


def _put_opening(w: Writer, o: Opening) -> None:
    w.sint(o.integer).sint(o.randomness).uint(o.unit)


def _get_opening(r: Reader) -> Opening:
    return Opening(r.sint(), r.sint(), r.uint())


def encode_zkl_response(resp: ZklResponse) -> bytes:
    w = Writer()
    bitmap = bytearray((len(resp.member) + 7) // 8)
    for i, bit in enumerate(resp.member):
        if bit:
            bitmap[i // 8] |= 0x80 >> i % 8
    w.u32(len(resp.member)).raw(bytes(bitmap))
    w.u32(len(resp.proof_m))
    for value, proof in resp.proof_m:
        if value is None:
            w.u8(0)
        else:
            w.u8(1).blob(value)
        _put_zks_proof(w, proof)
    if resp.order is None:
        w.u8(0)
    else:
        w.u8(1).seq(resp.order, w.blob)
        w.u32(len(resp.order_proofs))
        for p in resp.order_proofs:
            _put_nn(w, p)
        w.uint(resp.c_one.value)
        _put_opening(w, resp.c_one_opening)
    return pack(ZKL_MAGIC, TAG_ZKL_RESPONSE, w.getvalue())


def decode_zkl_response(data: bytes) -> ZklResponse:
    def read(r: Reader) -> ZklResponse:
        m = r.u32()
        if m > MAX_COUNT:
            raise MalformedContainer("too many elements")
        bitmap = r.raw((m + 7) // 8)
        member = tuple(bool(bitmap[i // 8] & (0x80 >> i % 8)) for i in range(m))
        if m % 8 and bitmap[-1] & (0xFF >> m % 8):
            raise MalformedContainer("padding bits set in member bitmap")
        proof_m = []
        for _ in range(r.count()):
            value = r.blob() if r.flag() else None
            proof_m.append((value, _get_zks_proof(r)))
        if not r.flag():
            return ZklResponse(member, tuple(proof_m))
        order = tuple(r.seq(r.blob))
        proofs = tuple(_get_nn(r) for _ in range(r.count()))
        c_one = IntCommitment(r.uint())
        return ZklResponse(member, tuple(proof_m), order, proofs, c_one, _get_opening(r))

    return _decode(data, ZKL_MAGIC, TAG_ZKL_RESPONSE, read)


def encode_zkl_state(state: ZklState) -> bytes:
    """Serialize the prover state.  It holds secrets: keep it private."""
    w = Writer()
    _put_merc(w, state.com.com.root)
    zs = state.zks
    w.u32(zs.height).u32(len(zs.nodes))
    for (depth, v), node in sorted(zs.nodes.items()):
        w.u32(depth).uint(v)
        _put_merc(w, node.com)
        rand = node.rand
        w.u8(0 if rand.kind == "hard" else 1).uint(rand.r0).uint(rand.r1)
        if rand.kind == "hard":
            w.uint(rand.message)
    w.u32(len(zs.values))
    for key, value in sorted(zs.values.items()):
        w.uint(key).blob(value)
    elements = sorted(state.ranks, key=state.ranks.__getitem__)
    w.u32(len(elements))
    for y in elements:
        w.blob(y).uint(state.ranks[y]).uint(state.commitments[y].value)
        _put_opening(w, state.openings[y])
    return pack(ZKL_MAGIC, TAG_ZKL_STATE, w.getvalue())


def decode_zkl_state(data: bytes) -> ZklState:
    def read(r: Reader) -> ZklState:
        com = ZklCommitment(ZksCommitment(_get_merc(r)))
        height = r.u32()
        nodes = {}
        for _ in range(r.count()):
            pos = (r.u32(), r.uint())
            c = _get_merc(r)
            tag = r.u8()
            if tag not in (0, 1):
                raise MalformedContainer("unknown node kind")
            kind = "hard" if tag == 0 else "soft"
            r0, r1 = r.uint(), r.uint()
            msg = r.uint() if kind == "hard" else None
            nodes[pos] = _Node(c, MercRandomness(kind, r0, r1, msg))
        values = {}
        for _ in range(r.count()):
            key = r.uint()
            values[key] = r.blob()
        ranks, commitments, openings = {}, {}, {}
        for _ in range(r.count()):
            y = r.blob()
            ranks[y] = r.uint()
            commitments[y] = IntCommitment(r.uint())
            openings[y] = _get_opening(r)
        return ZklState(com, ZksState(height, nodes, values), ranks, commitments, openings)

    return _decode(data, ZKL_MAGIC, TAG_ZKL_STATE, read)

