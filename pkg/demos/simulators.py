"""
Simulated proofs
================

Both schemes come with simulators that answer queries from an oracle alone.
Their outputs pass the real verifiers, which is the core of the
zero-knowledge argument.
"""

import random

from ordlist.curve import default_context
from ordlist.ppal import ppal_simulate, ppal_verify
from ordlist.zkl import ORDER, ZklQuery, list_oracle, zkl_simulate, zkl_verify

rng = random.Random(11)
hidden = [b"red", b"orange", b"yellow", b"green", b"blue"]
rank = {y: i for i, y in enumerate(hidden)}

# PPAL: the simulator only learns the order of each queried sublist
ctx = default_context()
sim = ppal_simulate(ctx, lambda delta: sorted(delta, key=rank.__getitem__), rng)
delta = [b"blue", b"red", b"green"]
print("PPAL simulated proof verifies:", ppal_verify(ctx, sim.digest, delta, sim.query(delta)))

# ZKL: rank commitments are fresh commitments to 0, gaps are equivocated
zsim = zkl_simulate(list_oracle(hidden), 512, 16, rng, insecure=True)
query = ZklQuery((b"green", b"purple", b"orange"), ORDER)
response = zsim.query(query)
print("ZKL simulated order:", [y.decode() for y in response.order])
print("ZKL simulated response verifies:", zkl_verify(zsim.pk, zsim.com, query, response))
