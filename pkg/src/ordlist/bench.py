"""Desk-scale timing of the PPAL phases."""

from __future__ import annotations

import csv
import time
from dataclasses import dataclass

from . import codec
from .curve import default_context
from .ppal import build_product_tree, ppal_query, ppal_setup, ppal_verify

COLUMNS = ("scheme", "n", "m", "phase", "mean_ms", "proof_bytes")


@dataclass(frozen=True)
class BenchRow:
    scheme: str
    n: int
    m: int
    phase: str
    mean_ms: float
    proof_bytes: int


def _elements(n: int) -> list[bytes]:
    # fixed width so proof sizes are comparable across n
    return [f"item-{i:010d}".encode() for i in range(n)]


def _ms(start: float) -> float:
    return (time.perf_counter() - start) * 1000.0


def run_ppal_bench(ns, ms, trials: int, rng) -> list[BenchRow]:
    """One setup per list size; ``trials`` random queries per (n, m).

    Product-tree construction is server preprocessing and is not counted in
    any phase.  ``proof_bytes`` is the serialized proof container size (0 for
    setup).
    """
    ctx = default_context()
    rows = []
    for n in ns:
        elements = _elements(n)
        start = time.perf_counter()
        client, server, _, _ = ppal_setup(ctx, elements, rng)
        rows.append(BenchRow("ppal", n, 0, "setup", _ms(start), 0))
        tree = build_product_tree(ctx, server, elements)
        for m in ms:
            if m > n:
                continue
            totals = {"query_pretree": 0.0, "query_linear": 0.0, "verify": 0.0}
            size = 0
            for _ in range(trials):
                delta = rng.sample(elements, m)
                start = time.perf_counter()
                proof = ppal_query(ctx, server, elements, delta, tree=tree)
                totals["query_pretree"] += _ms(start)
                start = time.perf_counter()
                ppal_query(ctx, server, elements, delta)
                totals["query_linear"] += _ms(start)
                start = time.perf_counter()
                ok = ppal_verify(ctx, client, delta, proof)
                totals["verify"] += _ms(start)
                if not ok:
                    raise RuntimeError("benchmark proof failed to verify")
                size = len(codec.encode_query_proof(proof))
            for phase, total in totals.items():
                rows.append(BenchRow("ppal", n, m, phase, total / max(trials, 1), size))
    return rows


def write_csv(rows, stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in rows:
        writer.writerow([r.scheme, r.n, r.m, r.phase, f"{r.mean_ms:.3f}", r.proof_bytes])
