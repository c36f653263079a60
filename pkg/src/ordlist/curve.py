"""BLS12-381 plumbing on top of ``py_arkworks_bls12381``.

Group elements are the library's ``G1Point`` / ``G2Point`` / ``GT`` objects.
This module adds what the library lacks: hashing to G1 (RFC 9380 suite
``BLS12381G1_XMD:SHA-256_SSWU_RO_``), fixed-base window tables, canonical
(de)serialization with error mapping, and a counted pairing-product check.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import gmpy2
from py_arkworks_bls12381 import GT, G1Point, G2Point, Scalar

from . import _h2c_constants as K
from .errors import MalformedElement

#: prime order of G1, G2 and GT
CURVE_ORDER = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001
G1_BYTES = 48
G2_BYTES = 96
SCALAR_BYTES = 32

_P = gmpy2.mpz(K.P)
_SQRT_EXP = (_P + 1) // 4
_HALF_P = (_P - 1) // 2
_H_EFF = Scalar(K.H_EFF)


def to_scalar(x: int) -> Scalar:
    return Scalar(x % CURVE_ORDER)


def scalar_to_int(s: Scalar) -> int:
    return int.from_bytes(bytes(s.to_le_bytes()), "little")


# --- hashing to G1 -----------------------------------------------------------


def expand_message_xmd(msg: bytes, dst: bytes, len_in_bytes: int) -> bytes:
    if len(dst) > 255:
        raise ValueError("DST longer than 255 bytes")
    ell = -(-len_in_bytes // 32)
    if ell > 255:
        raise ValueError("requested output too long")
    dst_prime = dst + bytes([len(dst)])
    b0 = hashlib.sha256(
        bytes(64) + msg + len_in_bytes.to_bytes(2, "big") + b"\x00" + dst_prime
    ).digest()
    out = [hashlib.sha256(b0 + b"\x01" + dst_prime).digest()]
    for i in range(2, ell + 1):
        prev = bytes(a ^ b for a, b in zip(b0, out[-1]))
        out.append(hashlib.sha256(prev + bytes([i]) + dst_prime).digest())
    return b"".join(out)[:len_in_bytes]


def hash_to_field(msg: bytes, dst: bytes, count: int = 2) -> list[gmpy2.mpz]:
    data = expand_message_xmd(msg, dst, 64 * count)
    return [gmpy2.mpz(int.from_bytes(data[64 * i : 64 * (i + 1)], "big")) % _P for i in range(count)]


def _sgn0(x) -> int:
    return int(x & 1)


def _map_to_isogenous(u):
    """Simplified SWU onto the 11-isogenous curve, affine output."""
    A, B, Z = K.ISO_A, K.ISO_B, K.Z
    zu2 = Z * u * u % _P
    tv1 = (zu2 * zu2 + zu2) % _P
    if tv1 == 0:
        x1 = B * gmpy2.invert(Z * A, _P) % _P
    else:
        x1 = (-B) * gmpy2.invert(A, _P) * (1 + gmpy2.invert(tv1, _P)) % _P
    gx1 = (x1 * x1 * x1 + A * x1 + B) % _P
    y1 = gmpy2.powmod(gx1, _SQRT_EXP, _P)
    if y1 * y1 % _P == gx1:
        x, y = x1, y1
    else:
        x = zu2 * x1 % _P
        gx2 = (x * x * x + A * x + B) % _P
        y = gmpy2.powmod(gx2, _SQRT_EXP, _P)
    if _sgn0(u) != _sgn0(y):
        y = -y % _P
    return x, y


def _horner(coeffs, x):
    acc = gmpy2.mpz(0)
    for c in reversed(coeffs):
        acc = (acc * x + c) % _P
    return acc


def _iso_map(x, y):
    x_num = _horner(K.ISO_X_NUMERATOR, x)
    x_den = _horner(K.ISO_X_DENOMINATOR, x)
    y_num = _horner(K.ISO_Y_NUMERATOR, x)
    y_den = _horner(K.ISO_Y_DENOMINATOR, x)
    inv = gmpy2.invert(x_den * y_den % _P, _P)
    return x_num * y_den * inv % _P, y * y_num * x_den * inv % _P


def _affine_add(p, q):
    # None is the point at infinity; curve is y^2 = x^3 + 4
    if p is None:
        return q
    if q is None:
        return p
    (x1, y1), (x2, y2) = p, q
    if x1 == x2:
        if (y1 + y2) % _P == 0:
            return None
        lam = 3 * x1 * x1 * gmpy2.invert(2 * y1, _P) % _P
    else:
        lam = (y2 - y1) * gmpy2.invert(x2 - x1, _P) % _P
    x3 = (lam * lam - x1 - x2) % _P
    return x3, (lam * (x1 - x3) - y1) % _P


def _compress_affine(pt) -> bytes:
    if pt is None:
        return bytes([0xC0]) + bytes(G1_BYTES - 1)
    x, y = pt
    raw = bytearray(int(x).to_bytes(G1_BYTES, "big"))
    raw[0] |= 0x80
    if y > _HALF_P:
        raw[0] |= 0x20
    return bytes(raw)


def hash_to_g1(msg: bytes, dst: bytes) -> G1Point:
    """Random-oracle hash of ``msg`` into G1 under domain-separation tag ``dst``."""
    u0, u1 = hash_to_field(msg, dst)
    q = _affine_add(_iso_map(*_map_to_isogenous(u0)), _iso_map(*_map_to_isogenous(u1)))
    # point is on the curve but not yet in the prime-order subgroup
    return G1Point.from_compressed_bytes_unchecked(_compress_affine(q)) * _H_EFF


def hash_to_scalar(*parts: bytes, dst: bytes) -> int:
    """Hash length-framed byte strings to an integer mod the group order."""
    h = hashlib.sha512(len(dst).to_bytes(1, "big") + dst)
    for p in parts:
        h.update(len(p).to_bytes(4, "big"))
        h.update(p)
    return int.from_bytes(h.digest(), "big") % CURVE_ORDER


# --- fixed-base exponentiation -----------------------------------------------


class FixedBase:
    """Byte-window table for repeated multiplication of one base point.

    ``mul`` costs 32 group additions instead of a full double-and-add.
    """

    def __init__(self, base):
        self.base = base
        identity = type(base).identity()
        self._table = []
        step = base
        for _ in range(SCALAR_BYTES):
            row = [identity, step]
            for _ in range(254):
                row.append(row[-1] + step)
            self._table.append(row)
            step = row[-1] + step
        self._identity = identity

    def mul(self, k: int):
        k %= CURVE_ORDER
        acc = self._identity
        for row, byte in zip(self._table, k.to_bytes(SCALAR_BYTES, "little")):
            if byte:
                acc = acc + row[byte]
        return acc


# --- serialization -----------------------------------------------------------


def g1_to_bytes(p: G1Point) -> bytes:
    return bytes(p.to_compressed_bytes())


def g2_to_bytes(p: G2Point) -> bytes:
    return bytes(p.to_compressed_bytes())


def g1_from_bytes(data: bytes) -> G1Point:
    if len(data) != G1_BYTES:
        raise MalformedElement(f"G1 element must be {G1_BYTES} bytes, got {len(data)}")
    try:
        point = G1Point.from_compressed_bytes(list(data))
    except (ValueError, OverflowError) as exc:
        raise MalformedElement(f"invalid G1 encoding: {exc}") from None
    # the backend tolerates junk bits in the infinity encoding
    if g1_to_bytes(point) != bytes(data):
        raise MalformedElement("non-canonical G1 encoding")
    return point


def g2_from_bytes(data: bytes) -> G2Point:
    if len(data) != G2_BYTES:
        raise MalformedElement(f"G2 element must be {G2_BYTES} bytes, got {len(data)}")
    try:
        point = G2Point.from_compressed_bytes(list(data))
    except (ValueError, OverflowError) as exc:
        raise MalformedElement(f"invalid G2 encoding: {exc}") from None
    # the backend tolerates junk bits in the infinity encoding
    if g2_to_bytes(point) != bytes(data):
        raise MalformedElement("non-canonical G2 encoding")
    return point


def g1_sum(points: Iterable[G1Point]) -> G1Point:
    acc = G1Point.identity()
    for p in points:
        acc = acc + p
    return acc


# --- pairings ----------------------------------------------------------------


@dataclass
class OpStats:
    """Counters filled in by instrumented operations (pairings, tree reads)."""

    pairings: int = 0
    node_reads: int = 0


@dataclass
class BilinearContext:
    """Asymmetric pairing setting e: G1 x G2 -> GT with fixed-base tables."""

    g1: G1Point = field(default_factory=G1Point)
    g2: G2Point = field(default_factory=G2Point)
    order: int = CURVE_ORDER

    def __post_init__(self):
        self._g1_table = FixedBase(self.g1)
        self._g2_table = None

    def g1_pow(self, k: int) -> G1Point:
        return self._g1_table.mul(k)

    def g2_pow(self, k: int) -> G2Point:
        if self._g2_table is None:
            self._g2_table = FixedBase(self.g2)
        return self._g2_table.mul(k)

    def hash(self, msg: bytes, dst: bytes) -> G1Point:
        return hash_to_g1(msg, dst)

    def pairing(self, a: G1Point, b: G2Point, stats: OpStats | None = None) -> GT:
        if stats is not None:
            stats.pairings += 1
        return GT.pairing(a, b)

    def pairing_product_is_one(
        self, pairs: Sequence[tuple[G1Point, G2Point]], stats: OpStats | None = None
    ) -> bool:
        """True iff prod e(a_i, b_i) is the identity of GT (one shared final exponentiation)."""
        if stats is not None:
            stats.pairings += len(pairs)
        return GT.multi_pairing([a for a, _ in pairs], [b for _, b in pairs]) == GT.one()


_DEFAULT: BilinearContext | None = None


def default_context() -> BilinearContext:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = BilinearContext()
    return _DEFAULT
