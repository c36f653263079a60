"""Command-line front end.

Exit codes: 0 accept/success, 1 reject, 2 invalid list or query,
3 I/O failure, 4 non-member in a PPAL query, 5 malformed container.
"""

from __future__ import annotations

import argparse
import os
import random
import secrets
import sys
from pathlib import Path

from . import codec
from .curve import default_context
from .errors import InconsistentDigest, InvalidFlag, InvalidList, InvalidQuery, MalformedContainer, NotMember
from .intcom import TEST_MODULUS_BITS
from .ppal import build_product_tree, ppal_query, ppal_setup, ppal_verify, validate_list
from .zkl import DEFAULT_HEIGHT, MEMBERSHIP, ORDER, TEST_HEIGHT, ZklQuery, zkl_commit, zkl_query, zkl_setup, zkl_verify

EXIT_OK, EXIT_REJECT, EXIT_INVALID, EXIT_IO, EXIT_NOT_MEMBER, EXIT_MALFORMED = range(6)
SEED_ENV = "ORDLIST_SEED"


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def read_lines(path: str) -> list[bytes]:
    """Parse a list file: UTF-8, one element per line, no blank lines, distinct."""
    raw = _read(path)
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError:
        raise CliError(EXIT_INVALID, f"{path}: not valid UTF-8") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CliError(EXIT_INVALID, f"{path}: empty list")
    if any(line == "" for line in lines):
        raise CliError(EXIT_INVALID, f"{path}: blank lines are not allowed")
    elements = [line.encode("utf-8") for line in lines]
    try:
        validate_list(elements)
    except InvalidList as exc:
        raise CliError(EXIT_INVALID, f"{path}: {exc}") from None
    return elements


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot read {path}: {exc.strerror or exc}") from None


def _write(path: str, data: bytes) -> None:
    try:
        Path(path).write_bytes(data)
    except OSError as exc:
        raise CliError(EXIT_IO, f"cannot write {path}: {exc.strerror or exc}") from None


def make_rng(seed_hex: str | None):
    """Seeded generator if a seed is given (the environment wins), else the OS source."""
    seed_hex = os.environ.get(SEED_ENV) or seed_hex
    if seed_hex is None:
        return secrets.SystemRandom()
    try:
        return random.Random(int(seed_hex, 16))
    except ValueError:
        raise CliError(EXIT_INVALID, f"seed must be hexadecimal, got {seed_hex!r}") from None


def _show(value: bytes) -> str:
    return value.decode("utf-8", errors="backslashreplace")


# --- PPAL --------------------------------------------------------------------


def ppal_setup_cmd(args) -> int:
    elements = read_lines(args.list)
    rng = make_rng(args.seed)
    client, server, _, _ = ppal_setup(default_context(), elements, rng)
    _write(args.client_out, codec.encode_client_digest(client))
    _write(args.server_out, codec.encode_server_digest(server))
    return EXIT_OK


def ppal_query_cmd(args) -> int:
    ctx = default_context()
    server = codec.decode_server_digest(_read(args.server))
    elements = read_lines(args.list)
    delta = read_lines(args.query)
    tree = None if args.no_pretree else build_product_tree(ctx, server, elements)
    try:
        proof = ppal_query(ctx, server, elements, delta, tree=tree)
    except NotMember as exc:
        listing = "\n".join(_show(x) for x in exc.missing)
        raise CliError(EXIT_NOT_MEMBER, f"not in the list:\n{listing}") from None
    _write(args.out, codec.encode_query_proof(proof))
    return EXIT_OK


def ppal_verify_cmd(args) -> int:
    client = codec.decode_client_digest(_read(args.client))
    delta = read_lines(args.query)
    proof = codec.decode_query_proof(_read(args.proof))
    if not ppal_verify(default_context(), client, delta, proof):
        print("REJECT", file=sys.stderr)
        return EXIT_REJECT
    for y in proof.order:
        print(_show(y))
    return EXIT_OK


# --- ZKL ---------------------------------------------------------------------

_FLAGS = {"member": MEMBERSHIP, "order": ORDER}


def zkl_commit_cmd(args) -> int:
    elements = read_lines(args.list)
    rng = make_rng(args.seed)
    if args.insecure_test_profile:
        pk = zkl_setup(TEST_MODULUS_BITS, TEST_HEIGHT, rng, insecure=True)
    else:
        pk = zkl_setup(args.modulus_bits, DEFAULT_HEIGHT, rng)
    com, state = zkl_commit(pk, elements, rng)
    _write(args.pk_out, codec.encode_zkl_public_key(pk))
    _write(args.com_out, codec.encode_zkl_commitment(com))
    _write(args.state_out, codec.encode_zkl_state(state))
    return EXIT_OK


def zkl_query_cmd(args) -> int:
    pk = codec.decode_zkl_public_key(_read(args.pk))
    state = codec.decode_zkl_state(_read(args.state))
    query = ZklQuery(tuple(read_lines(args.query)), _FLAGS[args.flag])
    response = zkl_query(pk, state, query, make_rng(args.seed))
    _write(args.out, codec.encode_zkl_response(response))
    # persist tree extensions so repeated queries stay consistent
    _write(args.state, codec.encode_zkl_state(state))
    return EXIT_OK


def zkl_verify_cmd(args) -> int:
    pk = codec.decode_zkl_public_key(_read(args.pk))
    com = codec.decode_zkl_commitment(_read(args.com))
    query = ZklQuery(tuple(read_lines(args.query)), _FLAGS[args.flag])
    response = codec.decode_zkl_response(_read(args.response))
    if not zkl_verify(pk, com, query, response):
        print("REJECT", file=sys.stderr)
        return EXIT_REJECT
    if query.flag == MEMBERSHIP:
        for bit in response.member:
            print("true" if bit else "false")
    else:
        for y in response.order:
            print(_show(y))
    return EXIT_OK


# --- bench -------------------------------------------------------------------


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not sizes or any(s <= 0 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def bench_cmd(args) -> int:
    from .bench import run_ppal_bench, write_csv

    rows = run_ppal_bench(args.n, args.m, args.trials, make_rng(args.seed))
    write_csv(rows, sys.stdout)
    return EXIT_OK


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordlist", description=__doc__.splitlines()[0])
    schemes = parser.add_subparsers(dest="scheme", required=True)

    ppal = schemes.add_parser("ppal", help="privacy-preserving authenticated lists")
    ops = ppal.add_subparsers(dest="op", required=True)
    p = ops.add_parser("setup", help="owner: authenticate a list")
    p.add_argument("--list", required=True)
    p.add_argument("--client-out", required=True)
    p.add_argument("--server-out", required=True)
    p.add_argument("--seed", help="hex seed for reproducible output (ORDLIST_SEED overrides)")
    p.set_defaults(func=ppal_setup_cmd)
    p = ops.add_parser("query", help="server: answer an order query")
    p.add_argument("--server", required=True)
    p.add_argument("--list", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--no-pretree", action="store_true", help="skip the product tree (linear path)")
    p.set_defaults(func=ppal_query_cmd)
    p = ops.add_parser("verify", help="client: check a proof and print the order")
    p.add_argument("--client", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--proof", required=True)
    p.set_defaults(func=ppal_verify_cmd)

    zkl = schemes.add_parser("zkl", help="zero-knowledge lists")
    ops = zkl.add_subparsers(dest="op", required=True)
    p = ops.add_parser("commit", help="prover: set up keys and commit to a list")
    p.add_argument("--list", required=True)
    p.add_argument("--pk-out", required=True)
    p.add_argument("--com-out", required=True)
    p.add_argument("--state-out", required=True, help="secret prover state")
    p.add_argument("--seed")
    p.add_argument("--modulus-bits", type=int, default=2048)
    p.add_argument("--insecure-test-profile", action="store_true",
                   help=f"{TEST_MODULUS_BITS}-bit modulus and tree height {TEST_HEIGHT}")
    p.set_defaults(func=zkl_commit_cmd)
    p = ops.add_parser("query", help="prover: answer a query (updates the state file)")
    p.add_argument("--pk", required=True)
    p.add_argument("--state", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--flag", choices=sorted(_FLAGS), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed")
    p.set_defaults(func=zkl_query_cmd)
    p = ops.add_parser("verify", help="verifier: check a response and print the answer")
    p.add_argument("--pk", required=True)
    p.add_argument("--com", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--flag", choices=sorted(_FLAGS), required=True)
    p.add_argument("--response", required=True)
    p.set_defaults(func=zkl_verify_cmd)

    bench = schemes.add_parser("bench", help="timing table as CSV")
    bench.add_argument("--scheme", dest="bench_scheme", choices=["ppal"], default="ppal")
    bench.add_argument("--n", type=_sizes, required=True, help="comma-separated list sizes")
    bench.add_argument("--m", type=_sizes, required=True, help="comma-separated query sizes")
    bench.add_argument("--trials", type=int, default=3)
    bench.add_argument("--seed")
    bench.set_defaults(func=bench_cmd)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"ordlist: {exc}", file=sys.stderr)
        return exc.code
    except MalformedContainer as exc:
        print(f"ordlist: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except (InvalidQuery, InvalidList, InvalidFlag, InconsistentDigest) as exc:
        print(f"ordlist: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
