"""Merkle overlay of per-node polynomial commitments on the B+ tree.

Each node commits to the polynomial through the points
``(hash(k_i || i), hash(v_i))`` where ``i`` is the 1-based sorted
position of the element and ``v_i`` is the child node hash (internal
nodes) or the value digest (leaves). The node hash is
``sha256(C || type_byte)``.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import struct
from dataclasses import dataclass
from typing import Optional

from bplus_kzg_py.algebra.curve import (G1_IDENTITY, hash_digest,
                                        hash_to_scalar, points_equal,
                                        g1_to_bytes, g1_from_bytes)
from bplus_kzg_py.polycommit.kzg import commit, verify_poly
from bplus_kzg_py.polycommit.polynomial import interpolate
from bplus_kzg_py.tree.btree import BPlusTree, check_key
from bplus_kzg_py.utils.constants import (DIGEST_SIZE, G1_SIZE,
                                          EMPTY_ROOT_MARKER,
                                          DEFAULT_BRANCHING_FACTOR)

EMPTY_ROOT_HASH = hash_digest(EMPTY_ROOT_MARKER)
"""bytes : Root hash of the tree without elements."""

ROOT_RECORD_SIZE = DIGEST_SIZE + G1_SIZE + 8 + 2 + 2 + 1 + DIGEST_SIZE
"""int : Serialized length of a RootRecord [bytes]."""

@dataclass(frozen=True)
class NodeAuth:
    """Commitment data of one node.

    Attributes
    ----------
    commitment : tuple
        G1 commitment to ``poly``.
    node_hash : bytes
        ``sha256(compressed commitment || type byte)``.
    poly : tuple of int
        Polynomial through the node's salted elements.

    """

    commitment: tuple
    node_hash: bytes
    poly: tuple

@dataclass(frozen=True)
class RootRecord:
    """Published digest of one tree version.

    Attributes
    ----------
    root_hash : bytes
        Node hash of the root, ``EMPTY_ROOT_HASH`` for the empty tree.
    root_commitment : tuple
        G1 commitment of the root, the identity for the empty tree.
    element_count : int
        Number of stored keys.
    height : int
        Number of levels, zero for the empty tree.
    root_fanout : int
        Number of elements in the root node.
    previous : bytes or None
        Root hash of the version this one was derived from.

    """

    root_hash: bytes
    root_commitment: tuple
    element_count: int
    height: int
    root_fanout: int
    previous: Optional[bytes] = None

    def to_bytes(self):
        """Fixed-width little-endian serialization."""
        return self.root_hash \
             + g1_to_bytes(self.root_commitment) \
             + struct.pack("<QHHB", self.element_count, self.height,
                           self.root_fanout, self.previous is not None) \
             + (self.previous if self.previous is not None
                else bytes(DIGEST_SIZE))

    @classmethod
    def from_bytes(cls, data):
        """Parse the output of ``to_bytes``."""
        if len(data) != ROOT_RECORD_SIZE:
            raise ValueError("root record must be " + str(ROOT_RECORD_SIZE)
                             + " bytes, got " + str(len(data)) + ".")
        root_hash = bytes(data[:DIGEST_SIZE])
        offset = DIGEST_SIZE
        commitment = g1_from_bytes(data[offset:offset + G1_SIZE])
        offset += G1_SIZE
        count, height, fanout, has_previous = struct.unpack_from("<QHHB",
                                                                 data, offset)
        offset += 13
        if has_previous not in (0, 1):
            raise ValueError("root record has invalid previous flag.")
        previous = bytes(data[offset:]) if has_previous else None
        return cls(root_hash, commitment, count, height, fanout, previous)

def salted_key(key, index):
    """Evaluation point of the element ``key`` at 1-based ``index``.

    Parameters
    ----------
    key : bytes
        Element key.
    index : int
        1-based sorted position inside the node.

    Returns
    -------
    scalar : int
        ``hash_to_scalar(key || u32_le(index))``.

    """
    return hash_to_scalar(key + struct.pack("<I", index))

def compute_node_hash(commitment, node_type):
    """Node hash ``sha256(compressed commitment || type byte)``."""
    return hash_digest(g1_to_bytes(commitment) + bytes([node_type]))

def commit_elements(params, keys, digests, node_type, use_trapdoor=True):
    """Commit to a full node.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters.
    keys : sequence of bytes
        Sorted keys of the node.
    digests : sequence of bytes
        Child node hashes or value digests, one per key.
    node_type : int
        Type byte of the node.
    use_trapdoor : bool
        Passed to ``commit``; verifiers recommitting nodes pass False.

    Returns
    -------
    auth : NodeAuth
        Polynomial, commitment and node hash.

    """

    if len(keys) == 0 or len(keys) != len(digests):
        raise ValueError("a node commitment needs one digest per key.")
    points = [(salted_key(key, index), hash_to_scalar(digest))
              for index, (key, digest) in enumerate(zip(keys, digests), 1)]
    if len({x for x, _ in points}) != len(points):
        raise RuntimeError("salted key collision inside a node.")
    poly = interpolate(points, max_count=params.degree_bound + 1)
    commitment = commit(params, poly, use_trapdoor=use_trapdoor)
    return NodeAuth(commitment, compute_node_hash(commitment, node_type), poly)

def empty_root_record(previous=None):
    """RootRecord of the empty tree."""
    return RootRecord(EMPTY_ROOT_HASH, G1_IDENTITY, 0, 0, 0, previous)

class AuthTree:
    """Authenticated B+ tree with a history of published roots.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters, degree bound at least ``q - 1``.
    q : int
        Branching factor.
    verbose : bool
        Print progress of batch updates.
    versions : list of tuple or None
        ``(RootRecord, BPlusTree)`` history to resume from, oldest
        first, each tree a read-only snapshot.
    read_only : bool
        Serve the last version of ``versions`` without allowing writes.

    """

    def __init__(self, params, q=DEFAULT_BRANCHING_FACTOR, verbose=False,
                 versions=None, read_only=False):
        if q - 1 > params.degree_bound:
            raise ValueError("branching factor q=" + str(q)
                             + " exceeds params degree bound t="
                             + str(params.degree_bound) + ".")
        if q - 1 > params.batch_bound:
            raise ValueError("params verification key opens at most "
                             + str(params.batch_bound)
                             + " points, q=" + str(q) + " needs "
                             + str(q - 1) + ".")
        self.params = params
        self.q = q
        self.verbose = verbose
        self.last_changes = ([], [])
        if versions:
            self.records = [record for record, _ in versions]
            self._snapshots = [snapshot for _, snapshot in versions]
            self.tree = versions[-1][1] if read_only \
                        else versions[-1][1].writable_copy()
        else:
            self.tree = BPlusTree(q)
            record = empty_root_record()
            self.records = [record]
            self._snapshots = [self.tree.snapshot()]

    @property
    def record(self):
        """RootRecord : Most recently published root."""
        return self.records[-1]

    @property
    def read_only(self):
        """bool : Whether this handle is a historical snapshot."""
        return self.tree.read_only

    def __len__(self):
        return len(self.tree)

    def search(self, key):
        """See ``BPlusTree.search``."""
        return self.tree.search(key)

    def get(self, key):
        """Value digest stored under ``key``."""
        return self.tree.get(key)

    def range_scan(self, lo, hi):
        """See ``BPlusTree.range_scan``."""
        return self.tree.range_scan(lo, hi)

    def node(self, node_id):
        """Node stored under ``node_id``."""
        return self.tree.node(node_id)

    def element_digest(self, node, index):
        """Digest committed for the element at 0-based ``index``.

        Parameters
        ----------
        node : bplus_kzg_py.tree.btree.TreeNode
            Node of this tree.
        index : int
            0-based element index.

        Returns
        -------
        digest : bytes
            Child node hash for internal nodes, value digest for leaves.

        """
        if node.leaf:
            return node.values[index]
        return self.tree.node(node.values[index]).auth.node_hash

    def value_scalar(self, node, index):
        """Committed evaluation of the element at 0-based ``index``."""
        return hash_to_scalar(self.element_digest(node, index))

    def recommit_node(self, node):
        """Recompute the NodeAuth of a non-empty node.

        Children must already carry up-to-date NodeAuth.

        """
        digests = [self.element_digest(node, index)
                   for index in range(len(node))]
        return commit_elements(self.params, node.keys, digests,
                               node.node_type)

    def _recommit(self, dirty):
        """Recommit dirty nodes, children before parents."""
        order = []

        def visit(node_id):
            node = self.tree.node(node_id)
            if not node.leaf:
                for child_id in node.values:
                    if child_id in dirty:
                        visit(child_id)
            order.append(node_id)

        if self.tree.root_id in dirty:
            visit(self.tree.root_id)
        if len(order) != len(dirty):
            raise RuntimeError("modified nodes unreachable from the root.")

        for node_id in order:
            node = self.tree.node(node_id)
            node.auth = self.recommit_node(node) if len(node) > 0 else None
        return order

    def _root_record(self, previous):
        tree = self.tree
        if tree.count == 0:
            return empty_root_record(previous)
        root = tree.root
        return RootRecord(root.auth.node_hash, root.auth.commitment,
                          tree.count, tree.height, len(root), previous)

    def apply_updates(self, ops):
        """Apply a batch of mutations and publish one new root.

        Parameters
        ----------
        ops : list of tuple
            ``("insert", key, value_digest)``,
            ``("insert", key, value_digest, (offset, length))`` or
            ``("delete", key)``.

        Returns
        -------
        record : RootRecord
            The published record, or the current one when the batch
            changed nothing.

        """

        if self.read_only:
            raise RuntimeError("cannot modify a read-only tree snapshot.")
        for op in ops:
            if op[0] not in ("insert", "delete"):
                raise ValueError("invalid operation " + repr(op[0])
                                 + ", expected 'insert' or 'delete'.")
            check_key(op[1])
            if op[0] == "insert" and (not isinstance(op[2], bytes)
                                      or len(op[2]) != DIGEST_SIZE):
                raise ValueError("value digest must be "
                                 + str(DIGEST_SIZE) + " bytes.")
        for op in ops:
            if op[0] == "insert":
                position = op[3] if len(op) > 3 else None
                self.tree.insert(op[1], op[2], position)
            else:
                self.tree.delete(op[1])

        modified, removed = self.tree.take_changes()
        if len(modified) == 0 and len(removed) == 0:
            return self.record
        order, record = self._publish(modified, removed)
        if self.verbose:
            print("applied", len(ops), "operations, recommitted",
                  len(order), "nodes, removed", len(removed),
                  "nodes, root", record.root_hash.hex())
        return record

    def _publish(self, modified, removed=()):
        """Recommit ``modified`` and publish the next version.

        Returns
        -------
        order : list of int
            Recommitted node ids, children first.
        record : RootRecord
            The new record.

        """
        order = self._recommit(set(modified))
        record = self._root_record(previous=self.record.root_hash)
        self._snapshots.append(self.tree.snapshot())
        self.records.append(record)
        self.last_changes = (sorted(modified), sorted(removed))
        return order, record

    def insert(self, key, value_digest, position=None):
        """Insert or update one key, publishing a new root."""
        if position is None:
            return self.apply_updates([("insert", key, value_digest)])
        return self.apply_updates([("insert", key, value_digest, position)])

    def delete(self, key):
        """Delete one key, publishing a new root if it was present."""
        return self.apply_updates([("delete", key)])

    def version_index(self, root_hash):
        """Index in ``history()`` of the latest record with ``root_hash``.

        A root hash can come back after updates that undo each other,
        the latest publication wins. Raises KeyError for unknown roots.

        """
        for index in range(len(self.records) - 1, -1, -1):
            if self.records[index].root_hash == root_hash:
                return index
        raise KeyError("unknown root " + bytes(root_hash).hex())

    def load_version(self, index):
        """Read-only handle onto the version at ``index`` of ``history()``.

        Parameters
        ----------
        index : int
            Version number, 0 for the initial empty root.

        Returns
        -------
        snapshot : AuthTree
            Handle whose ``record`` is ``history()[index]``.

        """
        if not 0 <= index < len(self.records):
            raise IndexError("no version " + str(index) + ", history holds "
                             + str(len(self.records)) + " records.")
        return AuthTree(self.params, self.q, verbose=self.verbose,
                        versions=list(zip(self.records[:index + 1],
                                          self._snapshots[:index + 1])),
                        read_only=True)

    def load_snapshot(self, root_hash):
        """Read-only handle onto a published version.

        Parameters
        ----------
        root_hash : bytes
            Root hash of any record in the history.

        Returns
        -------
        snapshot : AuthTree
            Handle whose ``record`` is the latest record with that root.

        """
        return self.load_version(self.version_index(root_hash))

    def history(self):
        """All published records, oldest first."""
        return list(self.records)

def audit_tree(auth_tree):
    """Recompute every commitment and hash of a tree.

    Parameters
    ----------
    auth_tree : AuthTree
        Tree to audit.

    Returns
    -------
    audited : int
        Number of nodes checked.

    """

    tree = auth_tree.tree
    record = auth_tree.record
    if tree.count == 0:
        if record.root_hash != EMPTY_ROOT_HASH:
            raise RuntimeError("empty tree published a non-empty root.")
        return 0

    audited = 0
    stack = [tree.root_id]
    while stack:
        node_id = stack.pop()
        node = tree.node(node_id)
        if not node.leaf:
            stack.extend(node.values)
        expected = auth_tree.recommit_node(node)
        if node.auth is None or node.auth.poly != expected.poly:
            raise RuntimeError("node " + str(node_id)
                               + " polynomial does not match its elements.")
        if not verify_poly(auth_tree.params, node.auth.commitment,
                           node.auth.poly):
            raise RuntimeError("node " + str(node_id)
                               + " commitment does not open to its polynomial.")
        if node.auth.node_hash != compute_node_hash(node.auth.commitment,
                                                    node.node_type):
            raise RuntimeError("node " + str(node_id) + " hash mismatch.")
        audited += 1

    root_auth = tree.root.auth
    if root_auth.node_hash != record.root_hash \
        or not points_equal(root_auth.commitment, record.root_commitment):
        raise RuntimeError("root node does not match the published record.")
    return audited
