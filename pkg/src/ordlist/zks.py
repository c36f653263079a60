"""Zero-knowledge sets from discrete-log mercurial commitments.

Mercurial commitments live in BLS12-381 G1 with public generators ``g`` and
``h``.  A commitment is a pair ``(C0, C1)``:

* hard commitment to ``m``: ``C1 = h^r1``, ``C0 = g^m h^(r1 r0)``; opens with
  ``(r0, r1)`` and teases (to ``m`` only) with ``r0``;
* soft commitment: ``C0 = g^r0``, ``C1 = g^r1``; never opens, teases to any
  ``m`` with ``(r0 - m) / r1``.

A zero-knowledge set commits to a finite map from ``height``-bit keys to byte
values by building an incomplete binary tree of such commitments; internal
nodes commit to the hash of their two children.  Membership proofs open the
path from the root to the leaf, non-membership proofs tease it.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from py_arkworks_bls12381 import G1Point

from .curve import CURVE_ORDER, FixedBase, g1_to_bytes, hash_to_g1, hash_to_scalar, to_scalar
from .errors import CannotOpenSoft, KeyLengthError

MSG_DST = b"ZKS-MERC-MSG"
GEN_DST = b"ZKS-MERC-GEN"
HARD, SOFT = "hard", "soft"


class MercParams:
    """Public key of the mercurial commitment scheme (two G1 generators)."""

    def __init__(self, g: G1Point, h: G1Point):
        self.g = g
        self.h = h
        self._g = FixedBase(g)
        self._h = FixedBase(h)

    def g_pow(self, k: int) -> G1Point:
        return self._g.mul(k)

    def h_pow(self, k: int) -> G1Point:
        return self._h.mul(k)

    def __eq__(self, other):
        return isinstance(other, MercParams) and self.g == other.g and self.h == other.h

    __hash__ = None


def merc_setup(rng=None, *, with_trapdoor: bool = False):
    """Return public parameters; with ``with_trapdoor`` also return ``log_g h``.

    Without a trapdoor, ``h`` is a fixed hash-to-curve point whose discrete
    logarithm nobody knows.
    """
    g = G1Point()
    if with_trapdoor:
        rng = rng if rng is not None else secrets.SystemRandom()
        t = rng.randrange(1, CURVE_ORDER)
        return MercParams(g, g * to_scalar(t)), t
    return MercParams(g, hash_to_g1(b"ordlist mercurial h", GEN_DST))


@dataclass(frozen=True)
class MercCommitment:
    c0: G1Point
    c1: G1Point

    def to_bytes(self) -> bytes:
        return g1_to_bytes(self.c0) + g1_to_bytes(self.c1)


@dataclass(frozen=True)
class MercRandomness:
    kind: str
    r0: int
    r1: int
    message: Optional[int] = None  # hard commitments only


@dataclass(frozen=True)
class OpenProof:
    r0: int
    r1: int


@dataclass(frozen=True)
class TeaseProof:
    tau: int


def _rand(rng) -> int:
    return rng.randrange(1, CURVE_ORDER)


def hard_commit(params: MercParams, msg: int, rng=None):
    rng = rng if rng is not None else secrets.SystemRandom()
    r0, r1 = _rand(rng), _rand(rng)
    com = MercCommitment(params.g_pow(msg) + params.h_pow(r1 * r0), params.h_pow(r1))
    return com, MercRandomness(HARD, r0, r1, msg % CURVE_ORDER)


def soft_commit(params: MercParams, rng=None):
    rng = rng if rng is not None else secrets.SystemRandom()
    r0, r1 = _rand(rng), _rand(rng)
    return MercCommitment(params.g_pow(r0), params.g_pow(r1)), MercRandomness(SOFT, r0, r1)


def merc_open(params: MercParams, msg: int, r: MercRandomness, trapdoor: int | None = None):
    if r.kind == SOFT:
        if trapdoor is None:
            raise CannotOpenSoft("soft commitments cannot be opened")
        # r0, r1 are the dlogs of (C0, C1) w.r.t. g
        q = CURVE_ORDER
        return OpenProof((r.r0 - msg) * pow(r.r1, -1, q) % q, r.r1 * pow(trapdoor, -1, q) % q)
    if msg % CURVE_ORDER != r.message:
        raise ValueError("hard commitment opens only to its own message")
    return OpenProof(r.r0, r.r1)


def merc_tease(params: MercParams, msg: int, r: MercRandomness) -> TeaseProof:
    if r.kind == HARD:
        if msg % CURVE_ORDER != r.message:
            raise ValueError("hard commitment teases only to its own message")
        return TeaseProof(r.r0)
    q = CURVE_ORDER
    return TeaseProof((r.r0 - msg) * pow(r.r1, -1, q) % q)


def ver_open(params: MercParams, com: MercCommitment, msg: int, proof: OpenProof) -> bool:
    if not isinstance(proof, OpenProof):
        return False
    r0, r1 = proof.r0 % CURVE_ORDER, proof.r1 % CURVE_ORDER
    if r1 == 0:
        return False
    return com.c1 == params.h_pow(r1) and com.c0 == params.g_pow(msg) + params.h_pow(r1 * r0)


def ver_tease(params: MercParams, com: MercCommitment, msg: int, proof: TeaseProof) -> bool:
    if not isinstance(proof, TeaseProof):
        return False
    return com.c0 == params.g_pow(msg) + com.c1 * to_scalar(proof.tau)


def leaf_message(value: Optional[bytes]) -> int:
    if value is None:
        return hash_to_scalar(b"bottom", dst=MSG_DST)
    return hash_to_scalar(b"leaf", value, dst=MSG_DST)


def node_message(left: MercCommitment, right: MercCommitment) -> int:
    return hash_to_scalar(b"node", left.to_bytes(), right.to_bytes(), dst=MSG_DST)


# --- zero-knowledge set ------------------------------------------------------


@dataclass(frozen=True)
class ZksCommitment:
    root: MercCommitment

    def to_bytes(self) -> bytes:
        return self.root.to_bytes()


@dataclass(frozen=True)
class ZksProof:
    """Root-to-leaf path.

    ``path[i]`` is the pair (node on the key's path, its sibling) at depth
    ``i + 1``; ``steps[i]`` opens or teases the depth-``i`` node to its
    children (``steps[height]`` handles the leaf value).
    """

    path: tuple[tuple[MercCommitment, MercCommitment], ...]
    steps: tuple[Union[OpenProof, TeaseProof], ...]


@dataclass
class _Node:
    com: MercCommitment
    rand: MercRandomness


@dataclass
class ZksState:
    """Prover state: every defined node with its randomness, keyed by (depth, prefix)."""

    height: int
    nodes: dict = field(repr=False)
    values: dict = field(repr=False)
    cache: dict = field(default_factory=dict, repr=False)


def _check_key(key: int, height: int) -> None:
    if not isinstance(key, int) or not 0 <= key < (1 << height):
        raise KeyLengthError(f"key must be a {height}-bit non-negative integer")


def zks_commit(params: MercParams, data: Mapping[int, bytes], height: int, rng=None):
    """Commit to ``data``; returns ``(ZksCommitment, ZksState)``."""
    rng = rng if rng is not None else secrets.SystemRandom()
    for key in data:
        _check_key(key, height)
    nodes: dict[tuple[int, int], _Node] = {}
    for key, value in data.items():
        nodes[(height, key)] = _Node(*hard_commit(params, leaf_message(value), rng))
    for key in data:
        sib = (height, key ^ 1)
        if sib not in nodes:
            nodes[sib] = _Node(*soft_commit(params, rng))

    level = {v for (d, v) in nodes if d == height}
    for depth in range(height - 1, -1, -1):
        parents = sorted({v >> 1 for v in level})
        for v in parents:
            left = nodes[(depth + 1, 2 * v)].com
            right = nodes[(depth + 1, 2 * v + 1)].com
            nodes[(depth, v)] = _Node(*hard_commit(params, node_message(left, right), rng))
        level = set(parents)
        if depth > 0:
            for v in parents:
                if (depth, v ^ 1) not in nodes:
                    nodes[(depth, v ^ 1)] = _Node(*soft_commit(params, rng))
                level.add(v ^ 1)
    if (0, 0) not in nodes:
        nodes[(0, 0)] = _Node(*soft_commit(params, rng))
    state = ZksState(height=height, nodes=nodes, values=dict(data))
    return ZksCommitment(nodes[(0, 0)].com), state


def _extend(params: MercParams, state: ZksState, key: int, rng) -> None:
    """Grow the tree down to leaf ``key`` below its deepest defined ancestor."""
    l = state.height
    nodes = state.nodes
    h = l
    while (h, key >> (l - h)) not in nodes:
        h -= 1
    if h == l:
        return
    # build bottom-up from the new leaf to depth h + 1
    new = {}
    new[(l, key)] = _Node(*hard_commit(params, leaf_message(None), rng))
    new[(l, key ^ 1)] = _Node(*soft_commit(params, rng))
    for depth in range(l - 1, h, -1):
        v = key >> (l - depth)
        left = new[(depth + 1, 2 * v)].com
        right = new[(depth + 1, 2 * v + 1)].com
        new[(depth, v)] = _Node(*hard_commit(params, node_message(left, right), rng))
        new[(depth, v ^ 1)] = _Node(*soft_commit(params, rng))
    nodes.update(new)


def zks_prove(params: MercParams, state: ZksState, key: int, rng=None):
    """Return ``(value or None, ZksProof)`` for ``key``."""
    l = state.height
    _check_key(key, l)
    if key in state.cache:
        return state.cache[key]
    value = state.values.get(key)
    member = value is not None
    if not member:
        _extend(params, state, key, rng if rng is not None else secrets.SystemRandom())
    nodes = state.nodes
    path = []
    steps = []
    for depth in range(l):
        v = key >> (l - depth)
        node = nodes[(depth, v)]
        left = nodes[(depth + 1, 2 * v)].com
        right = nodes[(depth + 1, 2 * v + 1)].com
        msg = node_message(left, right)
        steps.append(merc_open(params, msg, node.rand) if member else merc_tease(params, msg, node.rand))
        on_path = key >> (l - depth - 1)
        path.append((nodes[(depth + 1, on_path)].com, nodes[(depth + 1, on_path ^ 1)].com))
    leaf = nodes[(l, key)]
    msg = leaf_message(value)
    steps.append(merc_open(params, msg, leaf.rand) if member else merc_tease(params, msg, leaf.rand))
    result = (value, ZksProof(tuple(path), tuple(steps)))
    state.cache[key] = result
    return result


def zks_verify(
    params: MercParams,
    com: ZksCommitment,
    key: int,
    answer: Optional[bytes],
    proof: ZksProof,
    height: int,
) -> bool:
    try:
        _check_key(key, height)
    except KeyLengthError:
        return False
    if len(proof.path) != height or len(proof.steps) != height + 1:
        return False
    check = ver_tease if answer is None else ver_open
    current = com.root
    for depth in range(height):
        on_path, sibling = proof.path[depth]
        bit = (key >> (height - depth - 1)) & 1
        left, right = (sibling, on_path) if bit else (on_path, sibling)
        if not check(params, current, node_message(left, right), proof.steps[depth]):
            return False
        current = on_path
    return check(params, current, leaf_message(answer), proof.steps[height])


class ZksSimulator:
    """Answers (non-)membership queries from an oracle using the setup trapdoor.

    All nodes are trapdoor commitments created lazily along queried paths and
    opened or teased to whatever the answers require; created nodes are
    tabled so overlapping paths stay consistent.
    """

    def __init__(self, params: MercParams, trapdoor: int, height: int, rng=None):
        self.params = params
        self.trapdoor = trapdoor
        self.height = height
        self._rng = rng if rng is not None else secrets.SystemRandom()
        self.nodes: dict[tuple[int, int], _Node] = {(0, 0): self._fake()}
        self.com = ZksCommitment(self.nodes[(0, 0)].com)

    def _fake(self) -> _Node:
        com, rand = soft_commit(self.params, self._rng)
        return _Node(com, rand)

    def _node(self, depth: int, v: int) -> _Node:
        if (depth, v) not in self.nodes:
            self.nodes[(depth, v)] = self._fake()
        return self.nodes[(depth, v)]

    def _step(self, node: _Node, msg: int, member: bool):
        if member:
            return merc_open(self.params, msg, node.rand, trapdoor=self.trapdoor)
        return merc_tease(self.params, msg, node.rand)

    def prove(self, key: int, value: Optional[bytes]) -> ZksProof:
        l = self.height
        _check_key(key, l)
        member = value is not None
        path = []
        steps = []
        for depth in range(l):
            v = key >> (l - depth)
            left = self._node(depth + 1, 2 * v).com
            right = self._node(depth + 1, 2 * v + 1).com
            steps.append(self._step(self._node(depth, v), node_message(left, right), member))
            on_path = key >> (l - depth - 1)
            path.append((self._node(depth + 1, on_path).com, self._node(depth + 1, on_path ^ 1).com))
        steps.append(self._step(self._node(l, key), leaf_message(value), member))
        return ZksProof(tuple(path), tuple(steps))
