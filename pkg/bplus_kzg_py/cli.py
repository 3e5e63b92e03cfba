"""Command line interface of the authenticated store.

Exit codes are 0 for success or an accepted proof, 1 for a rejected
proof or a missing key, 2 for usage errors and 3 for I/O or integrity
errors.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import os
import sys
import argparse
import warnings

from bplus_kzg_py.algebra.curve import hash_digest
from bplus_kzg_py.bench.proof_size import run_proof_size_sweep, save_sweep
from bplus_kzg_py.polycommit.kzg import setup, save_params, load_params
from bplus_kzg_py.proofs.proofs import (MembershipProof, NonMembershipProof,
                                        RangeProof, BatchMembershipProof,
                                        prove_membership, prove_nonmembership,
                                        prove_range, verify_membership,
                                        verify_nonmembership, verify_range,
                                        verify_batch_membership)
from bplus_kzg_py.proofs.wire import encode_proof, decode_proof
from bplus_kzg_py.store.store import Store
from bplus_kzg_py.tree.authtree import RootRecord
from bplus_kzg_py.visualizations.plot_proof_size import plot_proof_sizes
from bplus_kzg_py.utils.config import (Config, DEFAULT_STORE_PATH,
                                       DEFAULT_PARAMS_PATH)
from bplus_kzg_py.utils.constants import (DEFAULT_BENCH_SIZES,
                                          DEFAULT_BRANCHING_FACTOR,
                                          ROOTS_FILE)
import bplus_kzg_py.utils.file_operations as fo

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_IO = 3

BENCH_BRANCHING_FACTOR = 256

def _parse_bytes(text, hex_mode):
    if hex_mode:
        return bytes.fromhex(text)
    return text.encode("utf-8")

def _format_bytes(data, hex_mode):
    if hex_mode:
        return data.hex()
    return data.decode("utf-8", errors="backslashreplace")

def _read_hex_argument(text):
    """Bytes of a hex string, or of the hex text stored in file ``text``."""
    try:
        return bytes.fromhex(text)
    except ValueError:
        if not os.path.isfile(text):
            raise
    with open(text, "r", encoding="utf-8") as file_obj:
        return bytes.fromhex(file_obj.read().strip())

def _emit(text, output):
    if output is None:
        print(text)
    else:
        with open(output, "w", encoding="utf-8") as file_obj:
            file_obj.write(text + "\n")

def _config(args, q=None):
    if q is None:
        q = DEFAULT_BRANCHING_FACTOR if args.q is None else args.q
    return Config(store_path=args.store, branching_factor=q,
                  params_path=args.params, seed=getattr(args, "seed", None))

def _open_store(args):
    params = load_params(args.params, verbose=args.verbose)
    q = args.q
    # new stores default to q = min(16, t)
    if q is None and not os.path.exists(os.path.join(args.store, ROOTS_FILE)):
        q = min(DEFAULT_BRANCHING_FACTOR, params.degree_bound)
    if q is not None:
        _config(args, q).validate(params)
    return Store(args.store, params, q=q, verbose=args.verbose)

def cmd_setup(args):
    """Write test-mode parameters with ``t = q``."""
    config = _config(args)
    config.validate()
    seed = 0 if args.seed is None else args.seed
    params = setup(config.branching_factor, mode="test", seed=seed,
                   verbose=args.verbose)
    fo.make_dir(os.path.dirname(os.path.abspath(config.params_path)))
    save_params(params, config.params_path)
    warnings.warn("test-mode setup: the trapdoor is derived from seed "
                  + str(seed) + " and stored in " + str(config.params_path)
                  + "; commitments are not binding.", RuntimeWarning)
    print("wrote params with t =", params.degree_bound, "to",
          config.params_path)
    return EXIT_OK

def cmd_insert(args):
    """Insert or update one key."""
    with _open_store(args) as store:
        record = store.insert(_parse_bytes(args.key, args.hex),
                              _parse_bytes(args.value, args.hex))
    print(record.root_hash.hex())
    return EXIT_OK

def cmd_get(args):
    """Print the value stored under a key."""
    with _open_store(args) as store:
        value = store.get(_parse_bytes(args.key, args.hex))
    print(_format_bytes(value, args.hex))
    return EXIT_OK

def cmd_delete(args):
    """Delete one key."""
    with _open_store(args) as store:
        record = store.delete(_parse_bytes(args.key, args.hex))
    print(record.root_hash.hex())
    return EXIT_OK

def cmd_range(args):
    """Print every key and value inside ``[lo, hi]``."""
    with _open_store(args) as store:
        pairs = store.range(_parse_bytes(args.lo, args.hex),
                            _parse_bytes(args.hi, args.hex))
    for key, value in pairs:
        print(_format_bytes(key, args.hex) + "\t"
              + _format_bytes(value, args.hex))
    return EXIT_OK

def cmd_prove(args):
    """Print a hex membership proof."""
    with _open_store(args) as store:
        proof = prove_membership(store.auth_tree,
                                 _parse_bytes(args.key, args.hex))
    _emit(encode_proof(proof).hex(), args.output)
    return EXIT_OK

def cmd_prove_absent(args):
    """Print a hex non-membership proof."""
    with _open_store(args) as store:
        proof = prove_nonmembership(store.auth_tree,
                                    _parse_bytes(args.key, args.hex))
    _emit(encode_proof(proof).hex(), args.output)
    return EXIT_OK

def cmd_prove_range(args):
    """Print a hex range proof."""
    with _open_store(args) as store:
        proof = prove_range(store.auth_tree, _parse_bytes(args.lo, args.hex),
                            _parse_bytes(args.hi, args.hex))
    _emit(encode_proof(proof).hex(), args.output)
    return EXIT_OK

def cmd_root(args):
    """Print the current RootRecord as hex."""
    with _open_store(args) as store:
        record = store.record
    _emit(record.to_bytes().hex(), args.output)
    return EXIT_OK

def cmd_history(args):
    """Print one line per published root, oldest first."""
    with _open_store(args) as store:
        records = store.history()
    for record in records:
        print(record.root_hash.hex(), record.element_count, record.height)
    return EXIT_OK

def cmd_verify(args):
    """Check a proof blob against a RootRecord without a store.

    The query is ``KEY VALUE`` for membership, ``KEY`` for
    non-membership, ``LO HI`` for range proofs and ``KEY VALUE ...``
    pairs for batched membership.

    """

    params = load_params(args.params, verbose=args.verbose)
    root = RootRecord.from_bytes(_read_hex_argument(args.root))
    blob = _read_hex_argument(args.proof)
    try:
        proof = decode_proof(blob)
    except ValueError as exception:
        print("reject:", exception)
        return EXIT_REJECT
    query = [_parse_bytes(item, args.hex) for item in args.query]

    if isinstance(proof, MembershipProof):
        _check_query(query, 2)
        accepted = verify_membership(params, root, query[0],
                                     hash_digest(query[1]), proof)
    elif isinstance(proof, NonMembershipProof):
        _check_query(query, 1)
        accepted = verify_nonmembership(params, root, query[0], proof)
    elif isinstance(proof, RangeProof):
        _check_query(query, 2)
        accepted = verify_range(params, root, query[0], query[1], proof)
    elif isinstance(proof, BatchMembershipProof):
        if len(query) == 0 or len(query) % 2 != 0:
            raise ValueError("batch verification expects KEY VALUE pairs.")
        pairs = [(query[i], hash_digest(query[i + 1]))
                 for i in range(0, len(query), 2)]
        accepted = verify_batch_membership(params, root, pairs, proof)

    print("accept" if accepted else "reject")
    return EXIT_OK if accepted else EXIT_REJECT

def _check_query(query, expected):
    if len(query) != expected:
        raise ValueError("this proof type expects " + str(expected)
                         + " query arguments, got " + str(len(query)) + ".")

def cmd_bench(args):
    """Run the proof size sweep and write its CSV."""
    q = BENCH_BRANCHING_FACTOR if args.q is None else args.q
    config = _config(args, q)
    params = load_params(config.params_path, verbose=args.verbose)
    config.validate(params)
    frame = run_proof_size_sweep(params, ns=args.sizes, q=q,
                                 max_measured=args.max_measured,
                                 samples=args.samples, rng_seed=args.rng_seed,
                                 verbose=args.verbose)
    if args.output is None:
        print(frame.to_csv(index=False), end="")
    else:
        save_sweep(frame, args.output)
    if args.plot:
        plot_proof_sizes(frame, save=True, prefix="bench")
    return EXIT_OK

def build_parser():
    """Argument parser with one sub-command per operation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--store", default=DEFAULT_STORE_PATH,
                        help="store directory")
    common.add_argument("--params", default=DEFAULT_PARAMS_PATH,
                        help="public parameter file")
    common.add_argument("--q", type=int, default=None,
                        help="branching factor")
    common.add_argument("--hex", action="store_true",
                        help="keys and values are hex encoded")
    common.add_argument("--output", default=None,
                        help="write the result to this file")
    common.add_argument("-v", "--verbose", action="store_true",
                        help="print progress")

    parser = argparse.ArgumentParser(prog="bplus-kzg",
        description="Authenticated key-value store on a B+ tree with "
                  + "polynomial commitments.")
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("setup", parents=[common],
                              help="generate test-mode parameters")
    sub.add_argument("--seed", type=int, default=None, help="trapdoor seed")
    sub.set_defaults(func=cmd_setup)

    for name, func, arguments in (
            ("insert", cmd_insert, ("key", "value")),
            ("get", cmd_get, ("key",)),
            ("delete", cmd_delete, ("key",)),
            ("range", cmd_range, ("lo", "hi")),
            ("prove", cmd_prove, ("key",)),
            ("prove-absent", cmd_prove_absent, ("key",)),
            ("prove-range", cmd_prove_range, ("lo", "hi")),
            ("root", cmd_root, ()),
            ("history", cmd_history, ()),
            ):
        sub = commands.add_parser(name, parents=[common],
                                  help=func.__doc__.splitlines()[0])
        for argument in arguments:
            sub.add_argument(argument)
        sub.set_defaults(func=func)

    sub = commands.add_parser("verify", parents=[common],
                              help="check a proof without the store")
    sub.add_argument("root", help="hex RootRecord or file holding it")
    sub.add_argument("proof", help="hex proof blob or file holding it")
    sub.add_argument("query", nargs="*", help="key, value or bounds")
    sub.set_defaults(func=cmd_verify)

    sub = commands.add_parser("bench", parents=[common],
                              help="proof size sweep as CSV")
    sub.add_argument("--sizes", type=int, nargs="+",
                     default=list(DEFAULT_BENCH_SIZES), help="tree sizes")
    sub.add_argument("--max-measured", type=int, default=None,
                     help="largest tree actually built, larger sizes are "
                          "extrapolated (default: measure every size)")
    sub.add_argument("--samples", type=int, default=8,
                     help="proofs measured per tree")
    sub.add_argument("--rng-seed", type=int, default=0,
                     help="seed of the random keys")
    sub.add_argument("--plot", action="store_true",
                     help="save a proof size figure")
    sub.set_defaults(func=cmd_bench)
    return parser

def main(argv=None):
    """Run the command line and return its exit code.

    Parameters
    ----------
    argv : list of string or None
        Arguments without the program name, ``sys.argv[1:]`` by default.

    Returns
    -------
    code : int
        Process exit code.

    """

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exception:
        return EXIT_OK if exception.code == 0 else EXIT_USAGE

    try:
        return args.func(args)
    except KeyError as exception:
        print("not found:", exception, file=sys.stderr)
        return EXIT_REJECT
    except OSError as exception:
        print("error:", exception, file=sys.stderr)
        return EXIT_IO
    except RuntimeError as exception:
        print("integrity error:", exception, file=sys.stderr)
        return EXIT_IO
    except (ValueError, TypeError) as exception:
        print("error:", exception, file=sys.stderr)
        return EXIT_USAGE

if __name__ == "__main__":
    sys.exit(main())
