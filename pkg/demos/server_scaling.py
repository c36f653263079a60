"""
Server cost with and without preprocessing
==========================================

Time PPAL queries for growing lists.  With the product tree the server's
work grows with log n; without it, linearly.
"""

import io
import random

from ordlist.bench import run_ppal_bench, write_csv

rows = run_ppal_bench([256, 1024, 4096], [16], trials=3, rng=random.Random(1))
out = io.StringIO()
write_csv(rows, out)
print(out.getvalue())

# the same table from the command line:
#   ordlist bench --scheme ppal --n 256,1024,4096 --m 16 --trials 3
