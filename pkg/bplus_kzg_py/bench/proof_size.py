"""Proof size comparison between the B+ tree and competing designs.

Builds trees of random keys, measures serialized proof sizes and
tabulates them next to the size models of an IAVL tree, an RSA
accumulator and a q-ary vector commitment tree.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import math
import time
import warnings

import numpy as np
import pandas as pd
from tqdm import tqdm

from bplus_kzg_py.algebra.curve import hash_digest
from bplus_kzg_py.proofs.proofs import (prove_membership, verify_membership,
                                        prove_nonmembership)
from bplus_kzg_py.proofs.wire import proof_size
from bplus_kzg_py.tree.authtree import AuthTree
from bplus_kzg_py.utils.constants import (IAVL_BYTES_PER_LEVEL,
                                          BPLUS_MODEL_BYTES_PER_LEVEL,
                                          BPLUS_MODEL_FANOUT,
                                          RSA_ACCUMULATOR_BYTES,
                                          QARY_TREE_BYTES,
                                          DEFAULT_BENCH_SIZES)

BENCH_COLUMNS = ["n", "q", "levels",
                 "bplus_membership_bytes", "bplus_nonmembership_bytes",
                 "iavl_model_bytes", "bplus_model_bytes", "rsa_model_bytes",
                 "qary_model_bytes", "prove_s", "verify_s", "extrapolated"]
"""list : Column order of the sweep table."""

def iavl_model_bytes(n):
    """Binary Merkle proof size ``log2(n) * 34`` [bytes]."""
    return math.log2(n) * IAVL_BYTES_PER_LEVEL

def bplus_model_bytes(n):
    """Modelled B+ proof size ``log_200(n) * 96`` [bytes]."""
    return math.log10(n) / math.log10(BPLUS_MODEL_FANOUT) \
         * BPLUS_MODEL_BYTES_PER_LEVEL

def rsa_model_bytes(n):
    """RSA accumulator witness size, independent of ``n`` [bytes]."""
    return float(RSA_ACCUMULATOR_BYTES)

def qary_model_bytes(n):
    """q-ary vector commitment tree proof size [bytes]."""
    return float(QARY_TREE_BYTES)

def levels_for(n, q):
    """Smallest ``h`` with ``q**h >= n``, at least one."""
    levels = 1
    while q ** levels < n:
        levels += 1
    return levels

def expected_bit_count(m, q, h):
    """Bits a range proof of ``m`` leaf elements carries.

    Parameters
    ----------
    m : int
        Number of opened leaf-level elements.
    q : int
        Branching factor.
    h : int
        Number of levels above the leaf level.

    Returns
    -------
    bits : int
        ``sum(ceil(m / q**j) for j in 0..h)``.

    """
    return sum(-(-m // q ** j) for j in range(h + 1))

def sample_keys(n, rng):
    """``n`` distinct random eight byte keys.

    Keys are even integers so that odd neighbours are known absent.

    """
    values = rng.choice(2 ** 40, size=n, replace=False)
    return [int(value * 2).to_bytes(8, "big") for value in values]

def build_tree(params, keys, q):
    """AuthTree holding ``keys`` with digests derived from each key."""
    auth_tree = AuthTree(params, q)
    auth_tree.apply_updates([("insert", key, hash_digest(b"value" + key))
                             for key in keys])
    return auth_tree

def measure_tree(params, auth_tree, keys, samples, rng):
    """Mean proof sizes and timings over sampled keys.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters.
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Populated tree.
    keys : list of bytes
        Keys stored in ``auth_tree``.
    samples : int
        Number of membership and non-membership proofs to measure.
    rng : np.random.Generator
        Source of sampled keys.

    Returns
    -------
    measured : dict
        Mean membership and non-membership bytes, mean prove and verify
        seconds.

    """

    chosen = rng.choice(len(keys), size=min(samples, len(keys)),
                        replace=False)
    root = auth_tree.record
    member_sizes, absent_sizes, prove_times, verify_times = [], [], [], []
    for index in chosen:
        key = keys[index]
        start = time.perf_counter()
        proof = prove_membership(auth_tree, key)
        prove_times.append(time.perf_counter() - start)
        start = time.perf_counter()
        accepted = verify_membership(params, root, key,
                                     auth_tree.get(key), proof)
        verify_times.append(time.perf_counter() - start)
        if not accepted:
            raise RuntimeError("honest membership proof was rejected.")
        member_sizes.append(proof_size(proof))

        absent = (int.from_bytes(key, "big") + 1).to_bytes(8, "big")
        absent_sizes.append(proof_size(prove_nonmembership(auth_tree,
                                                           absent)))
    return {"bplus_membership_bytes" : float(np.mean(member_sizes)),
            "bplus_nonmembership_bytes" : float(np.mean(absent_sizes)),
            "prove_s" : float(np.mean(prove_times)),
            "verify_s" : float(np.mean(verify_times)),
            }

def run_proof_size_sweep(params, ns=DEFAULT_BENCH_SIZES, q=256,
                         max_measured=None, samples=8, rng_seed=0,
                         verbose=False):
    """Proof sizes over a sweep of tree sizes.

    Trees are built and measured for every ``n <= max_measured``, so by
    default every size is measured. Sizes above an explicit
    ``max_measured`` reuse the per-level size of the largest measured tree
    and are flagged in the ``extrapolated`` column.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters with degree bound at least ``q - 1``.
    ns : sequence of int
        Tree sizes, each at least two.
    q : int
        Branching factor.
    max_measured : int or None
        Largest tree size actually built, ``max(ns)`` when None.
    samples : int
        Proofs measured per tree.
    rng_seed : int
        Seed of the key generator.
    verbose : bool
        Show a progress bar and print each measured row.

    Returns
    -------
    frame : pd.DataFrame
        One row per ``n`` with columns ``BENCH_COLUMNS``.

    """

    ns = sorted(int(n) for n in ns)
    if len(ns) == 0 or ns[0] < 2:
        raise ValueError("bench sizes must be integers >= 2.")
    if max_measured is None:
        max_measured = ns[-1]
    if ns[0] > max_measured:
        raise ValueError("at least one bench size must be <= max_measured="
                         + str(max_measured) + ".")

    rng = np.random.default_rng(rng_seed)
    rows = []
    per_level = None
    for n in tqdm(ns, desc="proof size sweep", disable=not verbose):
        row = {"n" : n, "q" : q,
               "iavl_model_bytes" : iavl_model_bytes(n),
               "bplus_model_bytes" : bplus_model_bytes(n),
               "rsa_model_bytes" : rsa_model_bytes(n),
               "qary_model_bytes" : qary_model_bytes(n),
               }
        if n <= max_measured:
            keys = sample_keys(n, rng)
            auth_tree = build_tree(params, keys, q)
            row["levels"] = auth_tree.record.height
            row.update(measure_tree(params, auth_tree, keys, samples, rng))
            row["extrapolated"] = False
            per_level = {column : row[column] / row["levels"] for column in
                         ("bplus_membership_bytes",
                          "bplus_nonmembership_bytes")}
            if verbose:
                print("n =", n, "levels =", row["levels"], "membership =",
                      row["bplus_membership_bytes"], "bytes")
        else:
            warnings.warn("n=" + str(n) + " exceeds max_measured="
                          + str(max_measured) + ", extrapolating from the "
                          + "largest measured tree.", RuntimeWarning)
            row["levels"] = levels_for(n, q)
            for column, size in per_level.items():
                row[column] = size * row["levels"]
            row["prove_s"] = np.nan
            row["verify_s"] = np.nan
            row["extrapolated"] = True
        rows.append(row)

    return pd.DataFrame(rows, columns=BENCH_COLUMNS)

def save_sweep(frame, output_path):
    """Write a sweep table as CSV with a header row."""
    frame.to_csv(output_path, index=False)
