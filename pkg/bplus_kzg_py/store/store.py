"""Durable persistence of an authenticated tree.

A store directory holds three append-only files:

* ``pages.dat`` : node pages, one per node version.
* ``values.log`` : raw value bytes addressed by ``(offset, length)``.
* ``roots.dat`` : one framed entry per published root, carrying the
  RootRecord and the page table changes of its batch.

A batch writes its values and pages first and its root entry last, so a
crash mid-batch leaves the previous root intact.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import os
import struct
import warnings
from dataclasses import dataclass

from bplus_kzg_py.algebra.curve import (hash_digest, g1_to_bytes,
                                        g1_from_bytes)
from bplus_kzg_py.tree.authtree import (AuthTree, NodeAuth, RootRecord,
                                        ROOT_RECORD_SIZE, compute_node_hash,
                                        audit_tree)
from bplus_kzg_py.tree.btree import (BPlusTree, PageTable, PageRef, TreeNode,
                                     check_key)
from bplus_kzg_py.utils.constants import (PAGES_MAGIC, VALUES_MAGIC,
                                          ROOTS_MAGIC, STORE_VERSION,
                                          PAGES_FILE, VALUES_FILE, ROOTS_FILE,
                                          DIGEST_SIZE, G1_SIZE, SCALAR_SIZE,
                                          DEFAULT_BRANCHING_FACTOR)
import bplus_kzg_py.utils.file_operations as fo

@dataclass(frozen=True)
class ValueLogEntry:
    """Location and digest of one value in the value log.

    Attributes
    ----------
    offset : int
        Absolute offset of the value bytes in ``values.log``.
    length : int
        Number of value bytes.
    digest : bytes
        sha256 of the value bytes.

    """

    offset: int
    length: int
    digest: bytes

def node_to_bytes(node):
    """Serialize a TreeNode together with its NodeAuth."""
    out = bytearray(struct.pack("<BBH", node.node_type, node.leaf,
                                len(node.keys)))
    for key in node.keys:
        out += bytes([len(key)]) + key
    for value in node.values:
        out += value if node.leaf else struct.pack("<Q", value)
    if node.leaf:
        for position in node.positions:
            if position is None:
                out += b"\x00" + bytes(12)
            else:
                out += b"\x01" + struct.pack("<QI", *position)
        out += b"\x00" + bytes(8) if node.next_leaf is None \
               else b"\x01" + struct.pack("<Q", node.next_leaf)
    if node.auth is None:
        out += b"\x00"
    else:
        out += b"\x01" + g1_to_bytes(node.auth.commitment) + node.auth.node_hash
        out += struct.pack("<H", len(node.auth.poly))
        for coeff in node.auth.poly:
            out += coeff.to_bytes(SCALAR_SIZE, "little")
    return bytes(out)

def node_from_bytes(data):
    """Parse the output of ``node_to_bytes`` and check its node hash."""
    node_type, leaf, count = struct.unpack_from("<BBH", data, 0)
    offset = 4
    keys = []
    for _ in range(count):
        length = data[offset]
        keys.append(bytes(data[offset + 1:offset + 1 + length]))
        offset += 1 + length
    values = []
    for _ in range(count):
        if leaf:
            values.append(bytes(data[offset:offset + DIGEST_SIZE]))
            offset += DIGEST_SIZE
        else:
            values.append(struct.unpack_from("<Q", data, offset)[0])
            offset += 8
    positions = None
    next_leaf = None
    if leaf:
        positions = []
        for _ in range(count):
            flag = data[offset]
            position = struct.unpack_from("<QI", data, offset + 1)
            positions.append(tuple(position) if flag else None)
            offset += 13
        flag = data[offset]
        next_leaf = struct.unpack_from("<Q", data, offset + 1)[0] \
                    if flag else None
        offset += 9

    auth = None
    if data[offset]:
        offset += 1
        commitment = g1_from_bytes(data[offset:offset + G1_SIZE])
        offset += G1_SIZE
        node_hash = bytes(data[offset:offset + DIGEST_SIZE])
        offset += DIGEST_SIZE
        n_coeffs, = struct.unpack_from("<H", data, offset)
        offset += 2
        poly = tuple(int.from_bytes(data[offset + SCALAR_SIZE * i:
                                         offset + SCALAR_SIZE * (i + 1)],
                                    "little") for i in range(n_coeffs))
        offset += SCALAR_SIZE * n_coeffs
        if compute_node_hash(commitment, node_type) != node_hash:
            raise RuntimeError("stored node hash does not match its "
                               + "commitment and type.")
        auth = NodeAuth(commitment, node_hash, poly)
    else:
        offset += 1
    if offset != len(data):
        raise RuntimeError("node page has trailing bytes.")
    return TreeNode(node_type, bool(leaf), keys, values, positions,
                    next_leaf, auth)

class Store:
    """Persistent authenticated key-value store.

    Parameters
    ----------
    path : string or path-like
        Store directory, created when missing.
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters.
    q : int or None
        Branching factor of a new store. An existing store keeps the q
        recorded in its roots file and rejects a different one.
    verbose : bool
        Print progress.
    audit : bool
        Recompute every commitment after opening.

    """

    def __init__(self, path, params, q=None, verbose=False, audit=False):
        self.path = path
        self.params = params
        self.verbose = verbose
        fo.make_dir(path)
        self._pages_path = os.path.join(path, PAGES_FILE)
        self._values_path = os.path.join(path, VALUES_FILE)
        self._roots_path = os.path.join(path, ROOTS_FILE)

        if os.path.exists(self._roots_path):
            self._open_files()
            try:
                self._load(q)
                if audit:
                    audited = audit_tree(self.auth_tree)
                    if verbose:
                        print("audited", audited, "nodes")
            except (ValueError, RuntimeError, OSError):
                self.close()
                raise
        else:
            self._create(DEFAULT_BRANCHING_FACTOR if q is None else q)

    # ------------------------------------------------------------------
    # files

    def _open_files(self):
        self._pages = open(self._pages_path, "r+b")
        self._values = open(self._values_path, "r+b")
        self._roots = open(self._roots_path, "r+b")

    def _create(self, q):
        self.q = q
        self.auth_tree = AuthTree(self.params, q, verbose=self.verbose)
        for file_path, header in ((self._pages_path, PAGES_MAGIC),
                                  (self._values_path, VALUES_MAGIC),
                                  (self._roots_path, ROOTS_MAGIC)):
            with open(file_path, "wb") as file_obj:
                file_obj.write(header + bytes([STORE_VERSION]))
                if header == ROOTS_MAGIC:
                    file_obj.write(struct.pack("<H", q))
        self._open_files()
        tree = self.auth_tree.tree
        self._persist(self.auth_tree.record, [tree.root_id], [])
        if self.verbose:
            print("created store at", self.path, "with q =", q)

    def _check_header(self, file_obj, magic):
        header = file_obj.read(len(magic) + 1)
        if header[:len(magic)] != magic:
            raise ValueError(file_obj.name + " has wrong magic bytes.")
        if header[len(magic):] != bytes([STORE_VERSION]):
            raise ValueError(file_obj.name + " has unsupported version.")

    def _load(self, q):
        self._check_header(self._pages, PAGES_MAGIC)
        self._check_header(self._values, VALUES_MAGIC)
        self._check_header(self._roots, ROOTS_MAGIC)
        stored_q, = struct.unpack("<H", fo.read_exact(
            self._roots, len(ROOTS_MAGIC) + 1, 2))
        if q is not None and q != stored_q:
            raise ValueError("store was created with q=" + str(stored_q)
                             + ", not q=" + str(q) + ".")
        self.q = stored_q

        data = self._roots.read()
        start = len(ROOTS_MAGIC) + 3
        offset = 0
        entries = []
        while offset < len(data):
            entry = self._parse_root_entry(data, offset)
            if entry is None:
                warnings.warn("skipping torn root entry at offset "
                              + str(start + offset) + " of "
                              + self._roots_path, RuntimeWarning)
                self._roots.truncate(start + offset)
                break
            payload, offset = entry
            entries.append(payload)
        if len(entries) == 0:
            raise ValueError(self._roots_path + " holds no root records.")

        # pages are read on first access
        table = PageTable(loader=self._read_page)
        versions = []
        n_pages = 0
        for version, payload in enumerate(entries):
            record, root_id, next_id, delta, removed = \
                self._decode_root_payload(payload)
            for node_id in removed:
                table.write(node_id, version, None)
            for node_id, page_offset in delta:
                table.write(node_id, version, PageRef(page_offset))
            n_pages += len(delta)
            table.head = version
            snapshot = BPlusTree(stored_q, pages=table, root_id=root_id,
                                 next_id=next_id, count=record.element_count,
                                 read_only=True, version=version)
            versions.append((record, snapshot))
        self.auth_tree = AuthTree(self.params, stored_q, verbose=self.verbose,
                                  versions=versions)
        if self.verbose:
            print("opened store at", self.path, "with", len(versions),
                  "roots and", n_pages, "pages")

    @staticmethod
    def _parse_root_entry(data, offset):
        if offset + 4 > len(data):
            return None
        length, = struct.unpack_from("<I", data, offset)
        end = offset + 4 + length + DIGEST_SIZE
        if end > len(data):
            return None
        payload = data[offset + 4:offset + 4 + length]
        if hash_digest(payload) != data[offset + 4 + length:end]:
            return None
        return payload, end

    @staticmethod
    def _decode_root_payload(payload):
        record = RootRecord.from_bytes(payload[:ROOT_RECORD_SIZE])
        offset = ROOT_RECORD_SIZE
        root_id, next_id, n_delta = struct.unpack_from("<QQI", payload, offset)
        offset += 20
        delta = []
        for _ in range(n_delta):
            delta.append(struct.unpack_from("<QQ", payload, offset))
            offset += 16
        n_removed, = struct.unpack_from("<I", payload, offset)
        offset += 4
        removed = [struct.unpack_from("<Q", payload, offset + 8 * i)[0]
                   for i in range(n_removed)]
        return record, root_id, next_id, delta, removed

    def _read_page(self, page_offset):
        length, = struct.unpack("<I", fo.read_exact(self._pages,
                                                    page_offset, 4))
        return node_from_bytes(fo.read_exact(self._pages, page_offset + 4,
                                             length))

    def _persist(self, record, modified, removed):
        tree = self.auth_tree.tree
        delta = []
        for node_id in modified:
            page = node_to_bytes(tree.node(node_id))
            self._pages.seek(0, os.SEEK_END)
            delta.append((node_id, self._pages.tell()))
            self._pages.write(struct.pack("<I", len(page)) + page)
        self._pages.flush()
        os.fsync(self._pages.fileno())

        payload = bytearray(record.to_bytes())
        payload += struct.pack("<QQI", tree.root_id, tree.next_id, len(delta))
        for node_id, page_offset in delta:
            payload += struct.pack("<QQ", node_id, page_offset)
        payload += struct.pack("<I", len(removed))
        for node_id in removed:
            payload += struct.pack("<Q", node_id)
        payload = bytes(payload)
        fo.append_durable(self._roots, struct.pack("<I", len(payload))
                          + payload + hash_digest(payload))

    def close(self):
        """Close the store files."""
        for file_obj in (self._pages, self._values, self._roots):
            file_obj.close()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        self.close()

    # ------------------------------------------------------------------
    # values

    def put_value(self, data):
        """Append value bytes to the value log.

        Parameters
        ----------
        data : bytes
            Value bytes, possibly empty.

        Returns
        -------
        entry : ValueLogEntry
            Offset, length and digest of the stored bytes.

        """
        if not isinstance(data, bytes):
            raise TypeError("values must be bytes.")
        offset = fo.append_durable(self._values, data)
        return ValueLogEntry(offset, len(data), hash_digest(data))

    def get_value(self, entry):
        """Read the value bytes of a ValueLogEntry and check its digest."""
        data = fo.read_exact(self._values, entry.offset, entry.length)
        if hash_digest(data) != entry.digest:
            raise RuntimeError("value at offset " + str(entry.offset)
                               + " does not match its digest.")
        return data

    # ------------------------------------------------------------------
    # tree operations

    @property
    def record(self):
        """RootRecord : Current root."""
        return self.auth_tree.record

    def apply(self, ops):
        """Apply a batch of operations atomically.

        Parameters
        ----------
        ops : list of tuple
            ``("insert", key, value_bytes)`` or ``("delete", key)``.

        Returns
        -------
        record : RootRecord
            Root after the batch.

        """

        for op in ops:
            if op[0] not in ("insert", "delete"):
                raise ValueError("invalid operation " + repr(op[0])
                                 + ", expected 'insert' or 'delete'.")
            check_key(op[1])
        tree_ops = []
        for op in ops:
            if op[0] == "insert":
                entry = self.put_value(op[2])
                tree_ops.append(("insert", op[1], entry.digest,
                                 (entry.offset, entry.length)))
            else:
                tree_ops.append(("delete", op[1]))

        previous = self.auth_tree.record
        record = self.auth_tree.apply_updates(tree_ops)
        if record is previous:
            return record
        modified, removed = self.auth_tree.last_changes
        self._persist(record, modified, removed)
        if self.verbose:
            print("published root", record.root_hash.hex(), "with",
                  len(modified), "new pages")
        return record

    def insert(self, key, value):
        """Insert or update ``key`` with ``value`` bytes."""
        return self.apply([("insert", key, value)])

    def delete(self, key):
        """Delete ``key`` if present."""
        return self.apply([("delete", key)])

    def get(self, key, snapshot=None):
        """Value bytes stored under ``key``.

        Parameters
        ----------
        key : bytes
            Stored key.
        snapshot : AuthTree or None
            Version to read, the current one by default.

        Returns
        -------
        value : bytes
            Value bytes checked against the committed digest.

        """
        tree = self.auth_tree if snapshot is None else snapshot
        found, digest, path = tree.search(key)
        if not found:
            raise KeyError(key)
        leaf_id, index = path[-1]
        position = tree.node(leaf_id).positions[index]
        if position is None:
            raise RuntimeError("key has no stored value position.")
        return self.get_value(ValueLogEntry(position[0], position[1], digest))

    def range(self, lo, hi):
        """``(key, value bytes)`` pairs with ``lo <= key <= hi``."""
        return [(key, self.get(key)) for key, _ in
                self.auth_tree.range_scan(lo, hi)]

    def load_snapshot(self, root_hash):
        """Read-only handle onto the version published as ``root_hash``."""
        return self.auth_tree.load_snapshot(root_hash)

    def history(self):
        """All published records, oldest first."""
        return self.auth_tree.history()
