"""Plain B+ tree with copy-on-write versions.

Nodes are addressed by logical ids through a versioned page table. Each
id keeps the list of versions it was written at, so reading an old
version is a bisect per node and publishing a version copies nothing.
The writer clones every node it touches into the version it is
building, leaving the node objects of published versions untouched.

Every element of an internal node is ``(k_i, child_i)`` where ``k_i`` is
exactly the largest key stored under ``child_i``. Leaves hold
``(key, value)`` elements and link to the next leaf by id, which every
version resolves against its own pages.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

from bisect import bisect_left, bisect_right
from collections.abc import Mapping
from dataclasses import dataclass

from bplus_kzg_py.utils.constants import (MAX_KEY_LENGTH,
                                          MIN_BRANCHING_FACTOR,
                                          TYPE_ROOT, TYPE_INTERNAL,
                                          TYPE_LEAF)

def check_key(key):
    """Raise unless ``key`` is a byte string of allowed length.

    Parameters
    ----------
    key : bytes
        Candidate key.

    """
    if not isinstance(key, bytes):
        raise TypeError("keys must be bytes, got " + type(key).__name__ + ".")
    if not 1 <= len(key) <= MAX_KEY_LENGTH:
        raise ValueError("key length must be between 1 and "
                         + str(MAX_KEY_LENGTH) + " bytes, got "
                         + str(len(key)) + ".")

@dataclass(frozen=True)
class PageRef:
    """Node not read yet, resolved through the page table loader.

    Attributes
    ----------
    location : int
        Loader specific address, a page offset for stores.

    """

    location: int

class PageTable:
    """Versioned map from node id to node.

    Versions are consecutive integers. Versions up to ``head`` are
    published and immutable; at most one writer builds ``head + 1``.

    Parameters
    ----------
    loader : callable or None
        ``loader(location)`` returning the TreeNode behind a PageRef.

    """

    def __init__(self, loader=None):
        self.loader = loader
        self.head = -1
        self.has_writer = False
        self._versions = {}
        self._nodes = {}

    @classmethod
    def from_pages(cls, pages):
        """Table whose version 0 holds ``{node_id : TreeNode}``."""
        table = cls()
        for node_id, node in pages.items():
            table.write(node_id, 0, node)
        table.head = 0
        return table

    def write(self, node_id, version, node):
        """Store ``node``, None for a removal, under ``node_id``."""
        if version <= self.head:
            raise RuntimeError("version " + str(version)
                               + " is already published.")
        versions = self._versions.setdefault(node_id, [])
        nodes = self._nodes.setdefault(node_id, [])
        if versions and versions[-1] == version:
            nodes[-1] = node
        elif versions and versions[-1] > version:
            raise RuntimeError("node " + str(node_id)
                               + " was already written at a later version.")
        else:
            versions.append(version)
            nodes.append(node)

    def _index(self, node_id, version):
        versions = self._versions.get(node_id)
        if not versions:
            return None
        if versions[-1] <= version:
            index = len(versions) - 1
        else:
            index = bisect_right(versions, version) - 1
            if index < 0:
                return None
        if self._nodes[node_id][index] is None:
            return None
        return index

    def contains(self, node_id, version):
        """Whether ``node_id`` exists at ``version``."""
        return self._index(node_id, version) is not None

    def lookup(self, node_id, version):
        """Node ``node_id`` as of ``version``, raises KeyError if absent."""
        index = self._index(node_id, version)
        if index is None:
            raise KeyError(node_id)
        node = self._nodes[node_id][index]
        if isinstance(node, PageRef):
            if self.loader is None:
                raise RuntimeError("page table has no loader for "
                                   + repr(node) + ".")
            node = self.loader(node.location)
            self._nodes[node_id][index] = node
        return node

    def written_at(self, node_id, version):
        """Whether ``node_id`` has its own entry at ``version``."""
        versions = self._versions.get(node_id)
        return bool(versions) and versions[-1] == version

    def node_ids(self, version):
        """Ids of the nodes alive at ``version``."""
        return [node_id for node_id in self._versions
                if self._index(node_id, version) is not None]

class PageView(Mapping):
    """Read-only ``{node_id : TreeNode}`` view of one table version."""

    def __init__(self, table, version):
        self.table = table
        self.version = version

    def __getitem__(self, node_id):
        return self.table.lookup(node_id, self.version)

    def __contains__(self, node_id):
        return self.table.contains(node_id, self.version)

    def __iter__(self):
        return iter(self.table.node_ids(self.version))

    def __len__(self):
        return len(self.table.node_ids(self.version))

class TreeNode:
    """One node of the B+ tree.

    Attributes
    ----------
    node_type : int
        ``TYPE_ROOT``, ``TYPE_INTERNAL`` or ``TYPE_LEAF``.
    leaf : bool
        Whether values are value references rather than child ids. The
        root of a one-level tree is a leaf of type ``TYPE_ROOT``.
    keys : list of bytes
        Sorted keys.
    values : list
        Child node ids (internal) or value digests (leaf).
    positions : list of tuple or None
        Leaf-only ``(offset, length)`` of each value in the value log.
    next_leaf : int or None
        Leaf-only id of the next leaf in key order.
    auth : object or None
        Commitment data attached by the authenticated layer.

    """

    __slots__ = ("node_type", "leaf", "keys", "values", "positions",
                 "next_leaf", "auth")

    def __init__(self, node_type, leaf, keys=None, values=None,
                 positions=None, next_leaf=None, auth=None):
        self.node_type = node_type
        self.leaf = leaf
        self.keys = list(keys) if keys is not None else []
        self.values = list(values) if values is not None else []
        if leaf:
            self.positions = list(positions) if positions is not None \
                             else [None] * len(self.keys)
        else:
            self.positions = None
        self.next_leaf = next_leaf
        self.auth = auth

    def __len__(self):
        return len(self.keys)

    def __repr__(self):
        return "TreeNode(type=" + str(self.node_type) + ", leaf=" \
             + str(self.leaf) + ", keys=" + repr(self.keys) + ")"

    def clone(self):
        """Shallow copy with private element lists."""
        return TreeNode(self.node_type, self.leaf, self.keys, self.values,
                        self.positions, self.next_leaf, self.auth)

class BPlusTree:
    """B+ tree of branching factor ``q``.

    Parameters
    ----------
    q : int
        Maximum number of children of a node. Every node holds at most
        ``q - 1`` elements and non-root nodes at least ``q // 2``.
    pages : PageTable, dict or None
        Shared page table, or ``{node_id : TreeNode}`` to start a new
        table from. A new table with an empty root is created when None.
    root_id : int or None
        Id of the root node in ``pages``.
    next_id : int
        Next unused node id.
    count : int
        Number of stored keys.
    read_only : bool
        Reject mutations.
    version : int or None
        Published version a read-only tree reads, the table head by
        default.

    """

    def __init__(self, q, pages=None, root_id=None, next_id=0, count=0,
                 read_only=False, version=None):
        if not isinstance(q, int):
            raise TypeError("branching factor q must be an integer.")
        if q < MIN_BRANCHING_FACTOR:
            raise ValueError("branching factor q must be at least "
                             + str(MIN_BRANCHING_FACTOR) + ".")
        self.q = q
        self.max_elements = q - 1
        self.min_elements = q // 2
        self.read_only = read_only
        self.count = count
        self.next_id = next_id
        self._modified = set()
        self._removed = set()

        if pages is None:
            if read_only:
                raise ValueError("a read-only tree needs existing pages.")
            self.table = PageTable()
        elif isinstance(pages, PageTable):
            self.table = pages
        else:
            self.table = PageTable.from_pages(pages)

        if read_only:
            self.version = self.table.head if version is None else version
            if not 0 <= self.version <= self.table.head:
                raise ValueError("version " + str(self.version)
                                 + " is not published.")
        else:
            if self.table.has_writer:
                raise RuntimeError("page table already has a writer.")
            self.table.has_writer = True
            self.version = self.table.head + 1

        if pages is None:
            self.root_id = self._new_node(TreeNode(TYPE_ROOT, True))
            self._modified = set()
        else:
            self.root_id = root_id

    # ------------------------------------------------------------------
    # bookkeeping

    def _new_node(self, node):
        node_id = self.next_id
        self.next_id += 1
        self.table.write(node_id, self.version, node)
        self._modified.add(node_id)
        return node_id

    def _writable(self, node_id):
        """Return a node that may be mutated in place."""
        if self.read_only:
            raise RuntimeError("cannot modify a read-only tree snapshot.")
        node = self.node(node_id)
        if not self.table.written_at(node_id, self.version):
            node = node.clone()
            self.table.write(node_id, self.version, node)
        self._modified.add(node_id)
        return node

    def _remove(self, node_id):
        self.table.write(node_id, self.version, None)
        self._modified.discard(node_id)
        self._removed.add(node_id)

    def node(self, node_id):
        """Node stored under ``node_id``."""
        return self.table.lookup(node_id, self.version)

    @property
    def pages(self):
        """PageView : ``{node_id : TreeNode}`` of this version."""
        return PageView(self.table, self.version)

    @property
    def root(self):
        """TreeNode : Current root node."""
        return self.node(self.root_id)

    @property
    def height(self):
        """int : Number of levels, zero for the empty tree."""
        if self.count == 0:
            return 0
        levels = 1
        node = self.root
        while not node.leaf:
            node = self.node(node.values[0])
            levels += 1
        return levels

    def take_changes(self):
        """Return and reset the node ids changed since the last call.

        Returns
        -------
        modified : set of int
            Ids of nodes created or changed that still exist.
        removed : set of int
            Ids of nodes deleted.

        """
        modified, removed = self._modified, self._removed
        self._modified, self._removed = set(), set()
        return modified, removed

    def snapshot(self):
        """Publish the current version.

        Returns a read-only tree over the published version; this tree
        moves on to the next version and clones whatever it touches.

        """
        if self.read_only:
            return self
        self.table.head = self.version
        frozen = BPlusTree(self.q, pages=self.table, root_id=self.root_id,
                           next_id=self.next_id, count=self.count,
                           read_only=True, version=self.version)
        self.version += 1
        return frozen

    def writable_copy(self):
        """Writable tree starting from this version.

        The page table is shared when this is its head version and no
        writer exists, otherwise the version is copied into a new table.

        """
        if self.read_only and self.version == self.table.head \
                and not self.table.has_writer:
            pages = self.table
        else:
            pages = dict(self.pages)
        return BPlusTree(self.q, pages=pages, root_id=self.root_id,
                         next_id=self.next_id, count=self.count)

    # ------------------------------------------------------------------
    # reads

    def search(self, key):
        """Descend toward ``key``.

        Parameters
        ----------
        key : bytes
            Search key.

        Returns
        -------
        found : bool
            Whether ``key`` is stored.
        value : object or None
            Stored value reference if found.
        path : list of tuple
            ``(node_id, index)`` from the root to a leaf. Internal
            indices are the child followed, the leaf index is the
            insertion position of ``key``.

        """

        check_key(key)
        path = []
        node_id = self.root_id
        node = self.node(node_id)
        while not node.leaf:
            index = bisect_left(node.keys, key)
            if index == len(node.keys):
                index -= 1
            path.append((node_id, index))
            node_id = node.values[index]
            node = self.node(node_id)
        index = bisect_left(node.keys, key)
        path.append((node_id, index))
        if index < len(node.keys) and node.keys[index] == key:
            return True, node.values[index], path
        return False, None, path

    def get(self, key):
        """Value stored under ``key``, raises KeyError when absent."""
        found, value, _ = self.search(key)
        if not found:
            raise KeyError(key)
        return value

    def __contains__(self, key):
        return self.search(key)[0]

    def __len__(self):
        return self.count

    def leftmost_leaf(self):
        """Id of the first leaf in key order."""
        node_id = self.root_id
        while not self.node(node_id).leaf:
            node_id = self.node(node_id).values[0]
        return node_id

    def items(self):
        """All ``(key, value)`` pairs in ascending key order."""
        result = []
        node_id = self.leftmost_leaf()
        while node_id is not None:
            node = self.node(node_id)
            result.extend(zip(node.keys, node.values))
            node_id = node.next_leaf
        return result

    def range_scan(self, lo, hi):
        """Stored pairs with ``lo <= key <= hi`` in ascending order.

        Parameters
        ----------
        lo : bytes
            Inclusive lower bound.
        hi : bytes
            Inclusive upper bound.

        Returns
        -------
        pairs : list of tuple
            ``(key, value)`` pairs.

        """

        check_key(lo)
        check_key(hi)
        if lo > hi:
            raise ValueError("range lower bound exceeds upper bound.")
        _, _, path = self.search(lo)
        node_id, index = path[-1]
        result = []
        while node_id is not None:
            node = self.node(node_id)
            while index < len(node.keys):
                if node.keys[index] > hi:
                    return result
                result.append((node.keys[index], node.values[index]))
                index += 1
            node_id = node.next_leaf
            index = 0
        return result

    def predecessor(self, key):
        """Largest stored key strictly below ``key``, or None."""
        _, _, path = self.search(key)
        leaf_id, index = path[-1]
        if index > 0:
            return self.node(leaf_id).keys[index - 1]
        for node_id, child_index in reversed(path[:-1]):
            if child_index > 0:
                return self.node(node_id).keys[child_index - 1]
        return None

    def successor(self, key):
        """Smallest stored key strictly above ``key``, or None."""
        _, _, path = self.search(key)
        leaf = self.node(path[-1][0])
        index = bisect_right(leaf.keys, key)
        if index < len(leaf.keys):
            return leaf.keys[index]
        if leaf.next_leaf is not None:
            return self.node(leaf.next_leaf).keys[0]
        return None

    # ------------------------------------------------------------------
    # writes

    def _writable_path(self, key):
        found, _, path = self.search(key)
        for node_id, _ in path:
            self._writable(node_id)
        return found, path

    def insert(self, key, value, position=None):
        """Insert or update ``key``.

        Parameters
        ----------
        key : bytes
            Key to store.
        value : object
            Value reference (a value digest for authenticated trees).
        position : tuple or None
            ``(offset, length)`` of the value in the value log.

        Returns
        -------
        modified : list of int
            Ids of every node whose contents changed.

        """

        if self.read_only:
            raise RuntimeError("cannot modify a read-only tree snapshot.")
        before = set(self._modified)
        self._modified = set()
        found, path = self._writable_path(key)

        leaf_id, index = path[-1]
        leaf = self.node(leaf_id)
        if found:
            leaf.values[index] = value
            leaf.positions[index] = position
        else:
            leaf.keys.insert(index, key)
            leaf.values.insert(index, value)
            leaf.positions.insert(index, position)
            self.count += 1

        for depth in range(len(path) - 1, -1, -1):
            node_id = path[depth][0]
            if depth > 0:
                parent_id, parent_index = path[depth - 1]
                parent = self.node(parent_id)
                parent.keys[parent_index] = self.node(node_id).keys[-1]
                if len(self.node(node_id)) > self.max_elements:
                    self._split(node_id, parent, parent_index)
            elif len(self.node(node_id)) > self.max_elements:
                self._split_root(node_id)

        modified = self._modified
        self._modified = (before | modified) - self._removed
        return sorted(modified)

    def _split_node(self, node_id, node_type):
        node = self.node(node_id)
        keep = (self.q + 1) // 2
        right = TreeNode(node_type, node.leaf, node.keys[keep:],
                         node.values[keep:],
                         node.positions[keep:] if node.leaf else None,
                         node.next_leaf if node.leaf else None)
        right_id = self._new_node(right)
        node.keys = node.keys[:keep]
        node.values = node.values[:keep]
        if node.leaf:
            node.positions = node.positions[:keep]
            node.next_leaf = right_id
        return right_id

    def _split(self, node_id, parent, parent_index):
        node = self.node(node_id)
        right_id = self._split_node(node_id, node.node_type)
        parent.keys[parent_index] = node.keys[-1]
        parent.keys.insert(parent_index + 1, self.node(right_id).keys[-1])
        parent.values.insert(parent_index + 1, right_id)

    def _split_root(self, node_id):
        node = self.node(node_id)
        child_type = TYPE_LEAF if node.leaf else TYPE_INTERNAL
        node.node_type = child_type
        right_id = self._split_node(node_id, child_type)
        new_root = TreeNode(TYPE_ROOT, False,
                            [node.keys[-1], self.node(right_id).keys[-1]],
                            [node_id, right_id])
        self.root_id = self._new_node(new_root)

    def delete(self, key):
        """Remove ``key`` if present.

        Parameters
        ----------
        key : bytes
            Key to remove.

        Returns
        -------
        modified : list of int
            Ids of every surviving node whose contents changed, empty if
            the key was absent.

        """

        if self.read_only:
            raise RuntimeError("cannot modify a read-only tree snapshot.")
        found, _, path = self.search(key)
        if not found:
            return []
        before = set(self._modified)
        self._modified = set()
        for node_id, _ in path:
            self._writable(node_id)

        leaf_id, index = path[-1]
        leaf = self.node(leaf_id)
        del leaf.keys[index]
        del leaf.values[index]
        del leaf.positions[index]
        self.count -= 1

        for depth in range(len(path) - 1, 0, -1):
            node_id = path[depth][0]
            parent_id, parent_index = path[depth - 1]
            parent = self.node(parent_id)
            if len(self.node(node_id)) < self.min_elements:
                self._rebalance(parent, parent_index)
            parent.keys = [self.node(child).keys[-1]
                           for child in parent.values]

        root = self.root
        if not root.leaf and len(root) == 1:
            child_id = root.values[0]
            child = self._writable(child_id)
            child.node_type = TYPE_ROOT
            self._remove(self.root_id)
            self.root_id = child_id

        modified = self._modified
        self._modified = (before | modified) - self._removed
        return sorted(modified)

    def _rebalance(self, parent, index):
        """Repair an underfull child of ``parent`` at ``index``."""
        node_id = parent.values[index]
        if index > 0:
            sibling_index = index - 1
        else:
            sibling_index = index + 1
        sibling_id = parent.values[sibling_index]
        node = self.node(node_id)
        sibling = self._writable(sibling_id)

        if len(sibling) > self.min_elements:
            if sibling_index < index:
                node.keys.insert(0, sibling.keys.pop())
                node.values.insert(0, sibling.values.pop())
                if node.leaf:
                    node.positions.insert(0, sibling.positions.pop())
            else:
                node.keys.append(sibling.keys.pop(0))
                node.values.append(sibling.values.pop(0))
                if node.leaf:
                    node.positions.append(sibling.positions.pop(0))
            return

        if sibling_index < index:
            left, right_id, right_index = sibling, node_id, index
        else:
            left, right_id, right_index = node, sibling_id, sibling_index
        right = self.node(right_id)
        left.keys.extend(right.keys)
        left.values.extend(right.values)
        if left.leaf:
            left.positions.extend(right.positions)
            left.next_leaf = right.next_leaf
        del parent.keys[right_index]
        del parent.values[right_index]
        self._remove(right_id)

    # ------------------------------------------------------------------
    # checks

    def check_invariants(self):
        """Raise AssertionError if any structural invariant fails.

        Checks key ordering, occupancy bounds, exact subtree bounds,
        uniform leaf depth, node types, leaf links and the key count.

        """

        leaf_depths = set()
        leaves = []

        def visit(node_id, depth, is_root):
            node = self.node(node_id)
            assert all(a < b for a, b in zip(node.keys, node.keys[1:])), \
                "keys out of order"
            assert len(node) <= self.max_elements, "node overflow"
            if is_root:
                assert node.node_type == TYPE_ROOT, "root has wrong type"
                if not node.leaf:
                    assert len(node) >= 2, "internal root with one child"
            else:
                assert len(node) >= self.min_elements, "node underflow"
                expected = TYPE_LEAF if node.leaf else TYPE_INTERNAL
                assert node.node_type == expected, "node has wrong type"
            assert len(node.values) == len(node.keys), "values misaligned"
            if node.leaf:
                assert len(node.positions) == len(node.keys), \
                    "positions misaligned"
                leaf_depths.add(depth)
                leaves.append(node_id)
                return
            for bound, child_id in zip(node.keys, node.values):
                child = self.node(child_id)
                assert len(child) > 0, "empty child"
                assert child.keys[-1] == bound, "bound is not the child max"
                visit(child_id, depth + 1, False)

        visit(self.root_id, 0, True)
        assert len(leaf_depths) == 1, "leaves at different depths"
        for left, right in zip(leaves, leaves[1:]):
            assert self.node(left).next_leaf == right, "broken leaf link"
        assert self.node(leaves[-1]).next_leaf is None, "dangling leaf link"
        assert sum(len(self.node(leaf)) for leaf in leaves) == self.count, \
            "key count mismatch"
