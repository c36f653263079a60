"""
Integer commitments and non-negativity proofs
=============================================

Commit to integers in an RSA group, add and subtract them under the
commitment, and prove a committed value is not negative.
"""

import random

from ordlist.intcom import (
    combine_openings,
    divide_openings,
    ic_combine,
    ic_commit,
    ic_divide,
    ic_setup,
    ic_verify_open,
)
from ordlist.rangeproof import four_square_decompose, nn_prove, nn_verify

rng = random.Random(3)
params, trapdoor = ic_setup(512, rng, insecure=True)

# homomorphism: products of commitments open to sums of the integers
c7, o7 = ic_commit(params, 7, rng)
c5, o5 = ic_commit(params, 5, rng)
print("7 + 5 opens:", ic_verify_open(params, ic_combine(params, c7, c5), combine_openings(o7, o5)))
print("7 - 5 opens:", ic_verify_open(params, ic_divide(params, c7, c5), divide_openings(o7, o5)))

# every non-negative integer is a sum of four squares, negative ones are not
squares = four_square_decompose(123456789, rng)
print("123456789 =", " + ".join(f"{w}^2" for w in squares))

# which is what makes the non-negativity proof sound
c, o = ic_commit(params, 2, rng)
proof = nn_prove(params, c, o, rng)
print("x >= 0 verified:", nn_verify(params, c, proof))
