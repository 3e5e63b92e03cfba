"""Protocol constants for the authenticated B+ tree.

Byte tags, file magics and benchmark model constants live here so that
every encoder and decoder in the package agrees on them.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

DIGEST_SIZE = 32
"""int : Length of every sha256 digest (node hashes, value digests)."""

G1_SIZE = 48
"""int : Length of a compressed commitment-group point [bytes]."""

G2_SIZE = 96
"""int : Length of a compressed verification-group point [bytes]."""

SCALAR_SIZE = 32
"""int : Length of a serialized field scalar [bytes]."""

MAX_KEY_LENGTH = 255
"""int : Longest key accepted by the tree [bytes]."""

MIN_BRANCHING_FACTOR = 4
"""int : Smallest branching factor q accepted by the tree."""

DEFAULT_BRANCHING_FACTOR = 16
"""int : Branching factor used when none is configured."""

TYPE_ROOT = 0
"""int : Type byte appended to the root node commitment before hashing."""

TYPE_INTERNAL = 1
"""int : Type byte of internal (non-root, non-leaf) nodes."""

TYPE_LEAF = 2
"""int : Type byte of leaf nodes."""

EMPTY_ROOT_MARKER = b"\xff"
"""bytes : Marker hashed to give the root hash of the empty tree."""

PARAMS_MAGIC = b"BKZGPARM"
"""bytes : Magic bytes opening a public parameter file."""

PARAMS_VERSION = 1
"""int : Public parameter file format version."""

PAGES_MAGIC = b"BKZGPAGE"
"""bytes : Magic bytes opening the node page file."""

VALUES_MAGIC = b"BKZGVLOG"
"""bytes : Magic bytes opening the value log."""

ROOTS_MAGIC = b"BKZGROOT"
"""bytes : Magic bytes opening the root record file."""

STORE_VERSION = 1
"""int : On-disk format version shared by the three store files."""

PAGES_FILE = "pages.dat"
"""string : File name of the node page file inside a store directory."""

VALUES_FILE = "values.log"
"""string : File name of the value log inside a store directory."""

ROOTS_FILE = "roots.dat"
"""string : File name of the root record file inside a store directory."""

WIRE_VERSION = 1
"""int : Version byte leading every serialized proof."""

PROOF_MEMBERSHIP = 1
"""int : Wire tag of a membership proof."""

PROOF_NONMEMBERSHIP = 2
"""int : Wire tag of a non-membership proof."""

PROOF_RANGE = 3
"""int : Wire tag of a range proof."""

PROOF_BATCH_MEMBERSHIP = 4
"""int : Wire tag of a batched membership proof."""

IAVL_BYTES_PER_LEVEL = 34
"""int : Bytes per level in the IAVL proof size model."""

BPLUS_MODEL_BYTES_PER_LEVEL = 96
"""int : Bytes per level in the modelled B+ Merkle tree curve."""

BPLUS_MODEL_FANOUT = 200
"""int : Fan-out assumed by the modelled B+ Merkle tree curve."""

RSA_ACCUMULATOR_BYTES = 1500
"""int : Constant proof size of the RSA accumulator baseline [bytes]."""

QARY_TREE_BYTES = 1000
"""int : Constant proof size of the q-ary prefix tree baseline [bytes]."""

DEFAULT_BENCH_SIZES = (10**3, 10**4, 10**5, 10**6)
"""tuple : Tree sizes swept by the proof size benchmark by default."""
