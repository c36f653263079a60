"""
Zero-knowledge lists
====================

A prover commits to a list and answers membership and order queries without
revealing anything else, not even the list length.
"""

import random

from ordlist.zkl import MEMBERSHIP, ORDER, ZklQuery, test_profile_setup, zkl_commit, zkl_query, zkl_verify

rng = random.Random(7)

# small insecure parameters keep the demo quick (512-bit modulus, 16-bit keys)
pk = test_profile_setup(rng)
com, state = zkl_commit(pk, [b"A", b"B", b"C"], rng)
print("commitment bytes:", len(com.to_bytes()))

# membership only: order and its proof are left empty
query = ZklQuery((b"B", b"D", b"A"), MEMBERSHIP)
response = zkl_query(pk, state, query, rng)
print("members:", response.member, "order:", response.order)
print("verified:", zkl_verify(pk, com, query, response))

# order query: D is absent and silently dropped from the order
query = ZklQuery((b"B", b"D", b"A"), ORDER)
response = zkl_query(pk, state, query, rng)
print("order:", [y.decode() for y in response.order])
print("gap proofs:", len(response.order_proofs))
print("verified:", zkl_verify(pk, com, query, response))
