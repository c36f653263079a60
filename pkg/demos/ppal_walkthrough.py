"""
Authenticated order queries with PPAL
=====================================

An owner authenticates a list, a server answers order queries on it, and a
client checks the answers against a constant-size digest.
"""

import dataclasses
import random

from ordlist.curve import OpStats, default_context
from ordlist.ppal import build_product_tree, ppal_query, ppal_setup, ppal_verify

ctx = default_context()
rng = random.Random(2024)

# the owner's list: list order is rank order
runners = [b"Ana", b"Bo", b"Chen", b"Dara", b"Eli", b"Femi", b"Gus", b"Hana"]
client_digest, server_digest, _, _ = ppal_setup(ctx, runners, rng)

# the server builds a product tree once so each query costs O(m log n)
tree = build_product_tree(ctx, server_digest, runners)

# a client asks who finished first among three runners
query = [b"Gus", b"Bo", b"Eli"]
proof = ppal_query(ctx, server_digest, runners, query, tree=tree)
print("claimed order:", [y.decode() for y in proof.order])

stats = OpStats()
print("verified:", ppal_verify(ctx, client_digest, query, proof, stats))
print("pairings used:", stats.pairings, "= 2m + 2 with m =", len(query))

# a server that lies about the order is caught
lie = dataclasses.replace(
    proof, order=proof.order[::-1], member_witnesses=proof.member_witnesses[::-1]
)
print("reversed order verified:", ppal_verify(ctx, client_digest, query, lie))
