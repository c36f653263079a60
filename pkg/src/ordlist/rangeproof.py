"""Non-interactive proof that a committed integer is non-negative.

A Sigma protocol over :mod:`ordlist.intcom` commitments built on Lagrange's
four-square theorem (negative numbers are not sums of squares), made
non-interactive with a Fiat-Shamir hash.  Strict positivity is proven by
shifting the commitment down by one.
"""

from __future__ import annotations

import hashlib
import secrets
from dataclasses import dataclass
from math import isqrt

import gmpy2

from .errors import InvalidOpening, NegativeInput, NegativeWitness, NonPositiveWitness
from .intcom import (
    IntCommitment,
    IntCommitParams,
    Opening,
    ic_divide,
    ic_verify_open,
    powmod,
)

FS_TAG = b"LIPMAA-NN-FS"
_BRUTE_FORCE_LIMIT = 1 << 10


@dataclass(frozen=True)
class FourSquares:
    w1: int
    w2: int
    w3: int
    w4: int

    def __iter__(self):
        return iter((self.w1, self.w2, self.w3, self.w4))

    @property
    def value(self) -> int:
        return sum(w * w for w in self)


@dataclass(frozen=True)
class NNProof:
    c1: tuple[int, int, int, int]
    c2: tuple[int, int, int, int]
    c3: int
    challenge: int
    m2: tuple[int, int, int, int]
    r4: tuple[int, int, int, int]
    r5: int


# --- four squares ------------------------------------------------------------


def _brute_force(x: int) -> tuple[int, int, int, int]:
    for a in range(isqrt(x), -1, -1):
        ra = x - a * a
        for b in range(min(a, isqrt(ra)), -1, -1):
            rb = ra - b * b
            for c in range(min(b, isqrt(rb)), -1, -1):
                d2 = rb - c * c
                d = isqrt(d2)
                if d * d == d2:
                    return a, b, c, d
    raise AssertionError(f"no decomposition for {x}")


def two_squares_of_prime(p: int, rng) -> tuple[int, int]:
    """Write a prime ``p = 1 (mod 4)`` as a^2 + b^2 (Hermite-Serret descent)."""
    while True:
        c = rng.randrange(2, p - 1)
        if gmpy2.powmod(c, (p - 1) // 2, p) == p - 1:
            break
    t = int(gmpy2.powmod(c, (p - 1) // 4, p))
    a, b = p, t
    while b * b > p:
        a, b = b, a % b
    rest = p - b * b
    d = isqrt(rest)
    assert d * d == rest
    return b, d


def four_square_decompose(x: int, rng=None) -> FourSquares:
    """Randomized (Rabin-Shallit style) Lagrange decomposition of ``x >= 0``."""
    if x < 0:
        raise NegativeInput(f"{x} is not a sum of four squares")
    rng = rng if rng is not None else secrets.SystemRandom()
    scale = 1
    while x and x % 4 == 0:
        x //= 4
        scale *= 2
    if x < _BRUTE_FORCE_LIMIT:
        return FourSquares(*(scale * w for w in _brute_force(x)))
    while True:
        a = rng.randrange(isqrt(x) + 1)
        rest = x - a * a
        b = rng.randrange(isqrt(rest) + 1)
        p = rest - b * b
        if p in (0, 1, 2):
            c, d = {0: (0, 0), 1: (1, 0), 2: (1, 1)}[p]
        elif p % 4 == 1 and gmpy2.is_prime(p, 30):
            c, d = two_squares_of_prime(p, rng)
        else:
            continue
        return FourSquares(scale * a, scale * b, scale * c, scale * d)


# --- proof -------------------------------------------------------------------


def _int_bytes(v: int) -> bytes:
    raw = v.to_bytes((v.bit_length() + 8) // 8 or 1, "big", signed=True)
    return len(raw).to_bytes(4, "big") + raw


def fs_challenge(
    params: IntCommitParams,
    c: IntCommitment,
    c1,
    c2,
    c3: int,
    context: bytes = b"",
) -> int:
    h = hashlib.sha256(FS_TAG)
    for v in (params.modulus, params.g, params.h, c.value, *c1, *c2, c3):
        h.update(_int_bytes(v))
    h.update(len(context).to_bytes(4, "big") + context)
    return int.from_bytes(h.digest(), "big") % params.challenge_bound


def _sqrt_bound(params: IntCommitParams) -> int:
    r = isqrt(params.message_bound)
    return r if r * r == params.message_bound else r + 1


def response_bound(params: IntCommitParams) -> int:
    """Exclusive bound on |m_2i| for honest proofs."""
    f = params.challenge_bound
    return ((1 << params.security_bits) + 1) * f * _sqrt_bound(params)


def prove_with_squares(
    params: IntCommitParams,
    c: IntCommitment,
    opening: Opening,
    squares,
    rng=None,
    context: bytes = b"",
) -> NNProof:
    """Prover core; takes the claimed decomposition without checking it."""
    rng = rng if rng is not None else secrets.SystemRandom()
    n, g, h = params.modulus, params.g, params.h
    k = params.security_bits
    f = params.challenge_bound
    root_m = _sqrt_bound(params)
    base = 1 << (params.order_bits + 2 * k)
    w = tuple(squares)
    rho = opening.randomness

    r1 = [rng.randrange(base) for _ in range(3)]
    r1.append(rho - sum(r1))
    r2 = [rng.randrange(base * f) for _ in range(4)]
    r3 = rng.randrange(base * f * root_m)
    m1 = [rng.randrange((1 << k) * f * root_m) for _ in range(4)]

    c1 = tuple(powmod(g, wi, n) * powmod(h, ri, n) % n for wi, ri in zip(w, r1))
    c2 = tuple(powmod(g, mi, n) * powmod(h, ri, n) % n for mi, ri in zip(m1, r2))
    c3 = powmod(h, r3, n)
    for ci, mi in zip(c1, m1):
        c3 = c3 * powmod(ci, mi, n) % n

    e = fs_challenge(params, c, c1, c2, c3, context)
    m2 = tuple(mi + e * wi for mi, wi in zip(m1, w))
    r4 = tuple(r2i + e * r1i for r2i, r1i in zip(r2, r1))
    r5 = r3 + e * sum((1 - wi) * r1i for wi, r1i in zip(w, r1))
    return NNProof(c1=c1, c2=c2, c3=c3, challenge=e, m2=m2, r4=r4, r5=r5)


def nn_prove(
    params: IntCommitParams,
    c: IntCommitment,
    opening: Opening,
    rng=None,
    context: bytes = b"",
) -> NNProof:
    """Prove that ``c`` commits to a non-negative integer; ``context`` is bound into the hash."""
    if opening.integer < 0:
        raise NegativeWitness("cannot prove a negative integer non-negative")
    if opening.integer > params.message_bound:
        raise InvalidOpening("integer exceeds the message bound")
    if opening.unit != 1 or not ic_verify_open(params, c, opening):
        raise InvalidOpening("opening does not match the commitment")
    squares = four_square_decompose(opening.integer, rng)
    return prove_with_squares(params, c, opening, squares, rng, context)


def nn_verify(
    params: IntCommitParams, c: IntCommitment, proof: NNProof, context: bytes = b""
) -> bool:
    n, g, h = params.modulus, params.g, params.h
    try:
        if len(proof.c1) != 4 or len(proof.c2) != 4 or len(proof.m2) != 4 or len(proof.r4) != 4:
            return False
        elems = (c.value, *proof.c1, *proof.c2, proof.c3)
        if any(not 0 < v < n or gmpy2.gcd(v, n) != 1 for v in elems):
            return False
        bound = response_bound(params)
        if any(abs(m) >= bound for m in proof.m2):
            return False
        r_cap = 1 << (params.order_bits + 3 * params.security_bits + 2 * bound.bit_length())
        if any(abs(r) >= r_cap for r in (*proof.r4, proof.r5)):
            return False
        e = fs_challenge(params, c, proof.c1, proof.c2, proof.c3, context)
        if e != proof.challenge:
            return False
        for c1i, c2i, m2i, r4i in zip(proof.c1, proof.c2, proof.m2, proof.r4):
            lhs = powmod(g, m2i, n) * powmod(h, r4i, n) * powmod(c1i, -e, n) % n
            if lhs != c2i:
                return False
        lhs = powmod(h, proof.r5, n) * powmod(c.value, -e, n) % n
        for c1i, m2i in zip(proof.c1, proof.m2):
            lhs = lhs * powmod(c1i, m2i, n) % n
        return lhs == proof.c3
    except (TypeError, ValueError, ArithmeticError):
        return False


def shift_down(params: IntCommitParams, c: IntCommitment) -> IntCommitment:
    """Commitment to x - 1 under the same randomness."""
    return ic_divide(params, c, IntCommitment(params.g))


def positive_prove(
    params: IntCommitParams,
    c: IntCommitment,
    opening: Opening,
    rng=None,
    context: bytes = b"",
) -> NNProof:
    if opening.integer <= 0:
        raise NonPositiveWitness("integer must be at least 1")
    shifted = Opening(opening.integer - 1, opening.randomness, opening.unit)
    return nn_prove(params, shift_down(params, c), shifted, rng, context)


def positive_verify(
    params: IntCommitParams, c: IntCommitment, proof: NNProof, context: bytes = b""
) -> bool:
    return nn_verify(params, shift_down(params, c), proof, context)


