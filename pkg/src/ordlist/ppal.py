"""Privacy-preserving authenticated lists over a bilinear pairing.

Three parties: the owner runs :func:`ppal_setup` and hands a constant-size
:class:`ClientDigest` to clients and a :class:`ServerDigest` (plus the list)
to an untrusted server.  The server answers order queries with
:func:`ppal_query`; clients check answers with :func:`ppal_verify`.  Nothing
beyond the order of the queried elements leaks: member witnesses are
randomized accumulator values and order witnesses only encode the blinded
rank gap.

Placement of the symmetric-pairing construction on BLS12-381:

* member witnesses, signatures, hashes and the nonce salt live in G1;
* the power vector ``g2^(s^i)`` and the order witnesses live in G2;
* the signing public key is published in both groups.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field
from typing import Callable, Sequence

from py_arkworks_bls12381 import G1Point, G2Point

from .curve import BilinearContext, OpStats, g1_sum, g1_to_bytes, to_scalar
from .errors import EmptyAggregate, InconsistentDigest, InvalidList, InvalidQuery, NotMember

SIG_DST = b"PPAL-SIG"
SALT_DST = b"PPAL-SALT"
NONCE_BYTES = 32
#: default cap on |delta| accepted by the verifier
MAX_QUERY_ELEMENTS = 1 << 20


@dataclass(frozen=True)
class OwnerSecret:
    s: int  # accumulator trapdoor
    v: int  # signing key


@dataclass(frozen=True)
class ListNonce:
    omega: bytes
    salt: G1Point  # H(omega)^v


@dataclass(frozen=True)
class ClientDigest:
    public_key_g1: G1Point
    public_key_g2: G2Point
    list_signature: G1Point


@dataclass(frozen=True)
class ServerDigest:
    public_key_g1: G1Point
    public_key_g2: G2Point
    list_signature: G1Point
    powers: tuple[G2Point, ...]  # g2^(s^i), i = 0..n
    member_witnesses: tuple[G1Point, ...]  # t_i = g1^(s^i r_i)
    signatures: tuple[G1Point, ...]  # sigma_i = H(t_i || x_i)^v
    nonce_hash: G1Point  # H(omega)
    order_auth: tuple[int, ...]  # r_i, pairwise distinct

    @property
    def size(self) -> int:
        return len(self.member_witnesses)

    def client_digest(self) -> ClientDigest:
        return ClientDigest(self.public_key_g1, self.public_key_g2, self.list_signature)


@dataclass(frozen=True)
class QueryProof:
    order: tuple[bytes, ...]
    sigma_order: G1Point
    member_witnesses: tuple[G1Point, ...]
    lam: G1Point  # H(omega) * prod of psi over the complement
    order_witnesses: tuple[G2Point, ...]


@dataclass(frozen=True)
class ProductTree:
    """Segment tree of G1 products over psi_i = H(t_i || x_i).

    ``nodes`` is heap-indexed (root at 1, leaves at ``width + i``); unused
    leaves hold the identity.  ``index`` maps elements to 1-based ranks.
    """

    n: int
    width: int
    nodes: tuple[G1Point, ...]
    index: dict = field(repr=False)

    @property
    def root(self) -> G1Point:
        return self.nodes[1]


def _rng(rng):
    return rng if rng is not None else secrets.SystemRandom()


def validate_list(elements: Sequence[bytes]) -> None:
    if len(elements) == 0:
        raise InvalidList("list must contain at least one element")
    if len(set(elements)) != len(elements):
        raise InvalidList("list elements must be pairwise distinct")


def witness_message(t: G1Point, x: bytes) -> bytes:
    """Encoding of t || x: compressed t, 4-byte big-endian len(x), then x."""
    return g1_to_bytes(t) + len(x).to_bytes(4, "big") + x


def element_hash(ctx: BilinearContext, t: G1Point, x: bytes) -> G1Point:
    return ctx.hash(witness_message(t, x), SIG_DST)


# --- aggregate signatures (single signer) ------------------------------------


def sign_element(ctx: BilinearContext, v: int, message: bytes) -> G1Point:
    if not message:
        raise ValueError("message must be nonempty")
    return ctx.hash(message, SIG_DST) * to_scalar(v)


def aggregate(signatures: Sequence[G1Point]) -> G1Point:
    if len(signatures) == 0:
        raise EmptyAggregate("nothing to aggregate")
    return g1_sum(signatures)


def aggregate_verify(
    ctx: BilinearContext,
    public_key: G2Point,
    messages: Sequence[bytes],
    sigma: G1Point,
    stats: OpStats | None = None,
) -> bool:
    if len(set(messages)) != len(messages):
        return False
    h = g1_sum(ctx.hash(m, SIG_DST) for m in messages)
    return ctx.pairing_product_is_one([(sigma, ctx.g2), (-h, public_key)], stats)


# --- owner -------------------------------------------------------------------


def ppal_setup(ctx: BilinearContext, elements: Sequence[bytes], rng=None):
    """Authenticate ``elements`` (list order = index order).

    Returns ``(client_digest, server_digest, owner_secret, nonce)``.
    """
    validate_list(elements)
    rng = _rng(rng)
    p = ctx.order
    n = len(elements)
    s = rng.randrange(1, p)
    v = rng.randrange(1, p)
    v_scalar = to_scalar(v)

    rs: list[int] = []
    seen: set[int] = set()
    while len(rs) < n:
        r = rng.randrange(1, p)
        if r not in seen:
            seen.add(r)
            rs.append(r)

    powers = []
    witnesses = []
    signatures = []
    s_i = 1
    powers.append(ctx.g2)
    for x, r in zip(elements, rs):
        s_i = s_i * s % p
        powers.append(ctx.g2_pow(s_i))
        t = ctx.g1_pow(s_i * r)
        witnesses.append(t)
        signatures.append(element_hash(ctx, t, x) * v_scalar)

    omega = rng.randbytes(NONCE_BYTES)
    nonce_hash = ctx.hash(omega, SALT_DST)
    salt = nonce_hash * v_scalar
    sigma_list = salt + g1_sum(signatures)

    pk1 = ctx.g1_pow(v)
    pk2 = ctx.g2_pow(v)
    server = ServerDigest(
        public_key_g1=pk1,
        public_key_g2=pk2,
        list_signature=sigma_list,
        powers=tuple(powers),
        member_witnesses=tuple(witnesses),
        signatures=tuple(signatures),
        nonce_hash=nonce_hash,
        order_auth=tuple(rs),
    )
    return server.client_digest(), server, OwnerSecret(s, v), ListNonce(omega, salt)


# --- server ------------------------------------------------------------------


def _check_consistent(digest: ServerDigest, elements: Sequence[bytes]) -> None:
    n = len(elements)
    if not (
        digest.size == n
        and len(digest.signatures) == n
        and len(digest.order_auth) == n
        and len(digest.powers) == n + 1
    ):
        raise InconsistentDigest(f"digest sized for {digest.size} elements, list has {n}")


def build_product_tree(
    ctx: BilinearContext, digest: ServerDigest, elements: Sequence[bytes]
) -> ProductTree:
    _check_consistent(digest, elements)
    n = len(elements)
    width = 1
    while width < n:
        width *= 2
    identity = G1Point.identity()
    nodes = [identity] * (2 * width)
    for i, (t, x) in enumerate(zip(digest.member_witnesses, elements)):
        nodes[width + i] = element_hash(ctx, t, x)
    for k in range(width - 1, 0, -1):
        nodes[k] = nodes[2 * k] + nodes[2 * k + 1]
    index = {x: i + 1 for i, x in enumerate(elements)}
    return ProductTree(n=n, width=width, nodes=tuple(nodes), index=index)


def range_product(tree: ProductTree, i: int, j: int, stats: OpStats | None = None) -> G1Point:
    """Product of psi_i..psi_j (1-based, inclusive) from O(log n) stored nodes."""
    if not 1 <= i <= j <= tree.n:
        raise IndexError(f"interval [{i}, {j}] outside [1, {tree.n}]")
    nodes = tree.nodes
    acc = G1Point.identity()
    lo = i - 1 + tree.width
    hi = j + tree.width
    reads = 0
    while lo < hi:
        if lo & 1:
            acc = acc + nodes[lo]
            lo += 1
            reads += 1
        if hi & 1:
            hi -= 1
            acc = acc + nodes[hi]
            reads += 1
        lo >>= 1
        hi >>= 1
    if stats is not None:
        stats.node_reads += reads
    return acc


def _complement_gaps(ranks: Sequence[int], n: int):
    prev = 0
    for r in list(ranks) + [n + 1]:
        if r - prev > 1:
            yield prev + 1, r - 1
        prev = r


def ppal_query(
    ctx: BilinearContext,
    digest: ServerDigest,
    elements: Sequence[bytes],
    delta: Sequence[bytes],
    tree: ProductTree | None = None,
    stats: OpStats | None = None,
) -> QueryProof:
    """Answer an order query on ``delta``; uses ``tree`` for the complement product if given."""
    if len(delta) == 0:
        raise InvalidQuery("empty query")
    if len(set(delta)) != len(delta):
        raise InvalidQuery("query elements must be distinct")
    _check_consistent(digest, elements)
    if tree is not None:
        if tree.n != len(elements):
            raise InconsistentDigest("product tree built for a different list")
        index = tree.index
    else:
        index = {x: i + 1 for i, x in enumerate(elements)}
    missing = [z for z in delta if z not in index]
    if missing:
        raise NotMember(missing)

    ranks = sorted(index[z] for z in delta)
    order = tuple(elements[r - 1] for r in ranks)
    witnesses = tuple(digest.member_witnesses[r - 1] for r in ranks)
    sigma_order = g1_sum(digest.signatures[r - 1] for r in ranks)

    lam = digest.nonce_hash
    if tree is not None:
        for lo, hi in _complement_gaps(ranks, tree.n):
            lam = lam + range_product(tree, lo, hi, stats)
    else:
        queried = set(ranks)
        for i, x in enumerate(elements, start=1):
            if i not in queried:
                lam = lam + element_hash(ctx, digest.member_witnesses[i - 1], x)

    p = ctx.order
    rs = digest.order_auth
    order_witnesses = []
    for lo, hi in zip(ranks, ranks[1:]):
        exponent = pow(rs[lo - 1], -1, p) * rs[hi - 1] % p
        order_witnesses.append(digest.powers[hi - lo] * to_scalar(exponent))

    return QueryProof(
        order=order,
        sigma_order=sigma_order,
        member_witnesses=witnesses,
        lam=lam,
        order_witnesses=tuple(order_witnesses),
    )


# --- client ------------------------------------------------------------------


def ppal_verify(
    ctx: BilinearContext,
    digest: ClientDigest,
    delta: Sequence[bytes],
    proof: QueryProof,
    stats: OpStats | None = None,
    max_elements: int = MAX_QUERY_ELEMENTS,
) -> bool:
    """Check that ``proof.order`` is ``delta`` sorted by list order, using 2m+2 pairings."""
    m = len(delta)
    if m == 0 or m > max_elements:
        return False
    if len(set(delta)) != m or len(proof.order) != m or set(proof.order) != set(delta):
        return False
    if len(proof.member_witnesses) != m or len(proof.order_witnesses) != m - 1:
        return False

    pk = digest.public_key_g2
    g2 = ctx.g2
    xi = g1_sum(element_hash(ctx, t, y) for t, y in zip(proof.member_witnesses, proof.order))
    # e(sigma_order, g) = e(xi, g^v)
    if not ctx.pairing_product_is_one([(proof.sigma_order, g2), (-xi, pk)], stats):
        return False
    # e(sigma_L, g) = e(sigma_order, g) e(lambda, g^v)
    if not ctx.pairing_product_is_one(
        [(digest.list_signature - proof.sigma_order, g2), (-proof.lam, pk)], stats
    ):
        return False
    # e(t_j, t_{j<j+1}) = e(t_{j+1}, g) along the chain
    t = proof.member_witnesses
    for j, w in enumerate(proof.order_witnesses):
        if not ctx.pairing_product_is_one([(t[j], w), (-t[j + 1], g2)], stats):
            return False
    return True


# --- zero-knowledge simulator ------------------------------------------------


class PPALSimulator:
    """Produces digests and proofs from an order oracle alone, without the list.

    ``order_oracle(delta)`` must return delta permuted into list order.
    Per-element exponents are tabled so repeated elements reuse witnesses.
    """

    def __init__(self, ctx: BilinearContext, order_oracle: Callable, rng=None):
        self.ctx = ctx
        self.oracle = order_oracle
        self._rng = _rng(rng)
        p = ctx.order
        self._v = self._rng.randrange(1, p)
        self._g1_base = ctx.g1_pow(self._rng.randrange(1, p))
        self.table: dict[bytes, int] = {}
        self.digest = ClientDigest(
            ctx.g1_pow(self._v), ctx.g2_pow(self._v), self._g1_base * to_scalar(self._v)
        )

    def _exponent(self, y: bytes) -> int:
        if y not in self.table:
            self.table[y] = self._rng.randrange(1, self.ctx.order)
        return self.table[y]

    def query(self, delta: Sequence[bytes]) -> QueryProof:
        ctx = self.ctx
        p = ctx.order
        order = tuple(self.oracle(list(delta)))
        rs = [self._exponent(y) for y in order]
        witnesses = tuple(ctx.g1_pow(r) for r in rs)
        xi = g1_sum(element_hash(ctx, t, y) for t, y in zip(witnesses, order))
        order_witnesses = tuple(
            ctx.g2_pow(pow(a, -1, p) * b % p) for a, b in zip(rs, rs[1:])
        )
        return QueryProof(
            order=order,
            sigma_order=xi * to_scalar(self._v),
            member_witnesses=witnesses,
            lam=self._g1_base - xi,
            order_witnesses=order_witnesses,
        )


def ppal_simulate(ctx: BilinearContext, order_oracle: Callable, rng=None) -> PPALSimulator:
    return PPALSimulator(ctx, order_oracle, rng)
