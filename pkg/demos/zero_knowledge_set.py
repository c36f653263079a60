"""
Zero-knowledge sets
===================

Commit to a key-value map with a tree of mercurial commitments; prove that a
key maps to a value, or that it is absent.
"""

import random

from ordlist.zks import merc_setup, zks_commit, zks_prove, zks_verify

rng = random.Random(5)
params = merc_setup()
height = 16

data = {0x0042: b"forty-two", 0xBEEF: b"beef"}
com, state = zks_commit(params, data, height, rng)

# present keys open the path from the root
value, proof = zks_prove(params, state, 0xBEEF)
print("0xBEEF ->", value, zks_verify(params, com, 0xBEEF, value, proof, height))

# absent keys tease it; the path is grown on demand and remembered
value, proof = zks_prove(params, state, 0x1234)
print("0x1234 ->", value, zks_verify(params, com, 0x1234, value, proof, height))
print("nodes after the query:", len(state.nodes))

# claiming the member is absent fails
_, proof = zks_prove(params, state, 0x0042)
print("0x0042 claimed absent:", zks_verify(params, com, 0x0042, None, proof, height))
