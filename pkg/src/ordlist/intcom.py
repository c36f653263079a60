"""Damgard-Fujisaki integer commitments in the quadratic residues of an RSA group.

Commitments are ``c = g^x h^r mod N`` for arbitrary signed integers ``x``;
they are statistically hiding, computationally binding and additively
homomorphic.  Parameters are produced by a trusted setup which also returns
the trapdoor ``(ord(QR_N), s)`` with ``g = h^s``; holding the trapdoor allows
equivocation, which is what the zero-knowledge simulators use.
"""

from __future__ import annotations

import math
import secrets
from dataclasses import dataclass

import gmpy2

from .errors import DegenerateElement, MessageTooLarge

#: statistical security parameter for blinding ranges
SECURITY_BITS = 128
#: challenge space bound used by the non-negativity proof
CHALLENGE_BOUND = 1 << 128
#: default bound on committed integers
MESSAGE_BOUND = 1 << 64
MIN_MODULUS_BITS = 1024
TEST_MODULUS_BITS = 512

_SMALL_PRIMES = [p for p in range(3, 2000) if all(p % q for q in range(2, int(p**0.5) + 1))]


@dataclass(frozen=True)
class IntCommitParams:
    modulus: int
    g: int
    h: int
    challenge_bound: int = CHALLENGE_BOUND
    order_bits: int = 0  # B with 2^B > ord(group)
    security_bits: int = SECURITY_BITS
    message_bound: int = MESSAGE_BOUND

    @property
    def randomness_bound(self) -> int:
        return 1 << (self.order_bits + self.security_bits)


@dataclass(frozen=True)
class IntCommitTrapdoor:
    group_order: int
    dlog: int  # s with g = h^s


@dataclass(frozen=True)
class IntCommitment:
    value: int


@dataclass(frozen=True)
class Opening:
    integer: int
    randomness: int
    unit: int = 1


def _rng(rng):
    return rng if rng is not None else secrets.SystemRandom()


def random_safe_prime(bits: int, rng) -> tuple[int, int]:
    """Return ``(p, q)`` with ``p = 2q + 1`` both prime and ``p`` exactly ``bits`` long."""
    while True:
        q = rng.getrandbits(bits - 1) | (1 << (bits - 2)) | 1
        # reject q or 2q+1 divisible by a small prime
        if any(q % sp == 0 or (2 * q + 1) % sp == 0 for sp in _SMALL_PRIMES if sp < q):
            continue
        if gmpy2.is_prime(q, 2) and gmpy2.is_prime(2 * q + 1, 25) and gmpy2.is_prime(q, 25):
            return 2 * q + 1, q


def ic_setup(modulus_bits: int = 2048, rng=None, *, insecure: bool = False,
             message_bound: int = MESSAGE_BOUND):
    """Trusted generation of ``(params, trapdoor)``.

    Moduli shorter than 1024 bits are refused unless ``insecure`` is set
    (the test profile uses 512).
    """
    if modulus_bits < MIN_MODULUS_BITS and not insecure:
        raise ValueError(f"modulus must be at least {MIN_MODULUS_BITS} bits")
    if modulus_bits < 64:
        raise ValueError("modulus too small")
    rng = _rng(rng)
    while True:
        p, p1 = random_safe_prime(modulus_bits // 2, rng)
        q, q1 = random_safe_prime(modulus_bits - modulus_bits // 2, rng)
        n = p * q
        if p != q and n.bit_length() == modulus_bits:
            break
    order = p1 * q1
    order_bits = n.bit_length()
    while True:
        u = rng.randrange(2, n - 1)
        h = u * u % n
        if math.gcd(u, n) == 1 and h != 1:
            break
    s = rng.randrange(0, 1 << (order_bits + SECURITY_BITS))
    g = int(gmpy2.powmod(h, s, n))
    params = IntCommitParams(
        modulus=n, g=g, h=h, order_bits=order_bits, message_bound=message_bound
    )
    return params, IntCommitTrapdoor(group_order=order, dlog=s)


def powmod(base: int, exp: int, n: int) -> int:
    """``base^exp mod n`` for signed ``exp``; negative powers go through the inverse."""
    try:
        return int(gmpy2.powmod(base, exp, n))
    except (ZeroDivisionError, ValueError):
        # gmpy2 reports a non-invertible base as ValueError
        raise DegenerateElement(f"gcd(element, N) = {math.gcd(base, n)}") from None


def commit_with(params: IntCommitParams, x: int, r: int) -> IntCommitment:
    n = params.modulus
    return IntCommitment(powmod(params.g, x, n) * powmod(params.h, r, n) % n)


def ic_commit(params: IntCommitParams, x: int, rng=None) -> tuple[IntCommitment, Opening]:
    if abs(x) > params.message_bound:
        raise MessageTooLarge(f"|x| exceeds the message bound 2^{params.message_bound.bit_length() - 1}")
    r = _rng(rng).randrange(0, params.randomness_bound)
    return commit_with(params, x, r), Opening(x, r, 1)


def ic_verify_open(params: IntCommitParams, c: IntCommitment, opening: Opening) -> bool:
    n = params.modulus
    b = opening.unit % n
    if b * b % n != 1:
        return False
    if not 0 < c.value < n:
        return False
    try:
        expected = commit_with(params, opening.integer, opening.randomness).value * b % n
    except DegenerateElement:
        return False
    return expected == c.value


def ic_combine(params: IntCommitParams, c1: IntCommitment, c2: IntCommitment) -> IntCommitment:
    return IntCommitment(c1.value * c2.value % params.modulus)


def ic_divide(params: IntCommitParams, c1: IntCommitment, c2: IntCommitment) -> IntCommitment:
    n = params.modulus
    return IntCommitment(c1.value * powmod(c2.value, -1, n) % n)


def combine_openings(a: Opening, b: Opening) -> Opening:
    return Opening(a.integer + b.integer, a.randomness + b.randomness, a.unit * b.unit)


def divide_openings(a: Opening, b: Opening) -> Opening:
    # units are self-inverse
    return Opening(a.integer - b.integer, a.randomness - b.randomness, a.unit * b.unit)


def ic_equivocate(
    params: IntCommitParams,
    trapdoor: IntCommitTrapdoor,
    c: IntCommitment,
    opening: Opening,
    target: int,
) -> Opening:
    """Open ``c`` (honestly opened by ``opening``) to the integer ``target``."""
    s = trapdoor.dlog
    r = (opening.randomness + s * opening.integer - s * target) % trapdoor.group_order
    return Opening(target, r, opening.unit)
