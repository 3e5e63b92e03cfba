"""Tests for the plain B+ tree.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import bisect

import pytest
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from bplus_kzg_py.tree.btree import (BPlusTree, PageTable, PageView, PageRef,
                                     TreeNode, check_key)
from bplus_kzg_py.utils.constants import TYPE_ROOT, TYPE_LEAF, TYPE_INTERNAL

NUM_ORACLE_OPERATIONS = 10_000
"""int : Random operations replayed against the sorted list oracle."""

def _key(number):
    return b"%05d" % number

def _height_bound(count, q):
    """Largest height allowed for ``count`` keys under minimum occupancy."""
    levels = 0
    while (q // 2) ** levels < count:
        levels += 1
    return levels + 1

class SortedOracle:
    """Brute force ordered map over a sorted list."""

    def __init__(self):
        self.keys = []
        self.values = {}

    def insert(self, key, value):
        if key not in self.values:
            bisect.insort(self.keys, key)
        self.values[key] = value

    def delete(self, key):
        if key in self.values:
            self.keys.remove(key)
            del self.values[key]

    def range(self, lo, hi):
        return [(key, self.values[key]) for key in self.keys
                if lo <= key <= hi]

def test_check_key():
    """Keys are byte strings of 1 to 255 bytes.

    """
    check_key(b"a")
    check_key(b"a" * 255)

    with pytest.raises(TypeError) as excinfo:
        check_key("a")
    assert "bytes" in str(excinfo.value)

    with pytest.raises(ValueError) as excinfo:
        check_key(b"")
    assert "between 1 and 255" in str(excinfo.value)

    with pytest.raises(ValueError) as excinfo:
        check_key(b"a" * 256)
    assert "got 256" in str(excinfo.value)

def test_branching_factor_fail():
    """Branching factors below four are rejected.

    """
    with pytest.raises(ValueError) as excinfo:
        BPlusTree(3)
    assert "at least 4" in str(excinfo.value)

    with pytest.raises(TypeError):
        BPlusTree(4.0)

def test_empty_tree():
    """An empty tree is a single empty root leaf.

    """
    tree = BPlusTree(4)
    assert len(tree) == 0
    assert tree.height == 0
    assert tree.items() == []
    assert tree.root.node_type == TYPE_ROOT
    assert tree.predecessor(b"m") is None
    assert tree.successor(b"m") is None
    assert b"m" not in tree
    tree.check_invariants()
    with pytest.raises(KeyError):
        tree.get(b"m")

def test_first_split():
    """Four keys at q=4 split into two leaves under a new root.

    """
    tree = BPlusTree(4)
    for number in range(1, 5):
        tree.insert(_key(number), number)
    tree.check_invariants()
    root = tree.root
    assert tree.height == 2
    assert root.keys == [_key(2), _key(4)]
    left, right = (tree.node(child) for child in root.values)
    assert left.keys == [_key(1), _key(2)]
    assert right.keys == [_key(3), _key(4)]
    assert left.node_type == TYPE_LEAF and right.node_type == TYPE_LEAF
    assert left.next_leaf == root.values[1]

def test_update_keeps_count():
    """Reinserting a key updates its value only.

    """
    tree = BPlusTree(4)
    tree.insert(b"a", 1, position=(0, 1))
    tree.insert(b"a", 2, position=(1, 1))
    assert len(tree) == 1
    assert tree.get(b"a") == 2
    _, _, path = tree.search(b"a")
    assert tree.node(path[-1][0]).positions[0] == (1, 1)

def test_search_path_and_neighbours():
    """Search paths end at the insertion position of absent keys.

    """
    tree = BPlusTree(4)
    for number in range(0, 40, 2):
        tree.insert(_key(number), number)
    found, value, path = tree.search(_key(10))
    assert found and value == 10
    assert len(path) == tree.height

    found, value, path = tree.search(_key(11))
    assert not found and value is None
    leaf = tree.node(path[-1][0])
    assert path[-1][1] == bisect.bisect_left(leaf.keys, _key(11))

    assert tree.predecessor(_key(11)) == _key(10)
    assert tree.predecessor(_key(10)) == _key(8)
    assert tree.predecessor(_key(0)) is None
    assert tree.successor(_key(11)) == _key(12)
    assert tree.successor(_key(38)) is None
    assert tree.successor(_key(100)) is None

    for number in range(0, 40, 2):
        found, _, path = tree.search(_key(number))
        for depth, (node_id, index) in enumerate(path[:-1]):
            assert tree.node(node_id).keys[index] >= _key(number)

def test_range_scan():
    """Range scans are inclusive and ordered.

    """
    tree = BPlusTree(5)
    for number in range(30):
        tree.insert(_key(number), number)
    pairs = tree.range_scan(_key(5), _key(9))
    assert [value for _, value in pairs] == [5, 6, 7, 8, 9]
    assert tree.range_scan(b"00010a", b"00011a") == [(_key(11), 11)]
    assert tree.range_scan(b"1", b"2") == []
    assert tree.range_scan(_key(29), _key(29)) == [(_key(29), 29)]

    with pytest.raises(ValueError) as excinfo:
        tree.range_scan(_key(9), _key(5))
    assert "exceeds" in str(excinfo.value)

def test_delete_collapses_root():
    """Deleting everything collapses the tree back to an empty leaf.

    """
    tree = BPlusTree(4)
    for number in range(50):
        tree.insert(_key(number), number)
    assert tree.height >= 3
    assert tree.delete(b"absent") == []
    for number in range(50):
        assert len(tree.delete(_key(number))) > 0
        tree.check_invariants()
    assert len(tree) == 0
    assert tree.root.leaf
    assert tree.root.node_type == TYPE_ROOT

def test_change_tracking():
    """Changed and removed ids are reported once and then reset.

    """
    tree = BPlusTree(4)
    for number in range(4):
        tree.insert(_key(number), number)
    modified, removed = tree.take_changes()
    assert set(tree.pages) <= modified | {0}
    assert removed == set()
    assert tree.take_changes() == (set(), set())

    tree.delete(_key(0))
    tree.delete(_key(1))
    modified, removed = tree.take_changes()
    assert len(removed) > 0
    assert not modified & removed
    assert modified <= set(tree.pages)

def test_snapshot_isolation():
    """Published snapshots never see later writes.

    """
    tree = BPlusTree(4)
    for number in range(20):
        tree.insert(_key(number), number)
    snapshot = tree.snapshot()
    before = snapshot.items()

    for number in range(20, 40):
        tree.insert(_key(number), number)
    for number in range(0, 20, 3):
        tree.delete(_key(number))
    tree.check_invariants()
    snapshot.check_invariants()
    assert snapshot.items() == before
    assert len(snapshot) == 20
    assert tree.items() != before

    with pytest.raises(RuntimeError) as excinfo:
        snapshot.insert(b"x", 1)
    assert "read-only" in str(excinfo.value)
    with pytest.raises(RuntimeError):
        snapshot.delete(_key(1))

    branch = snapshot.writable_copy()
    branch.insert(b"x", 1)
    assert b"x" in branch and b"x" not in snapshot

def test_snapshots_share_pages():
    """Publishing versions shares one page table and copies no nodes.

    """
    tree = BPlusTree(4)
    snapshots = []
    for number in range(30):
        tree.insert(_key(number), number)
        snapshots.append(tree.snapshot())
    assert all(snapshot.table is tree.table for snapshot in snapshots)
    for number, snapshot in enumerate(snapshots):
        assert len(snapshot) == number + 1
        assert [key for key, _ in snapshot.items()] \
            == [_key(i) for i in range(number + 1)]
        snapshot.check_invariants()

    # an untouched leaf keeps one entry across every later version
    first_leaf = snapshots[-1].leftmost_leaf()
    assert snapshots[-1].node(first_leaf) is snapshots[-2].node(first_leaf)

def test_page_table():
    """Page table versions resolve to the latest write at or below them.

    """
    table = PageTable()
    first = TreeNode(TYPE_LEAF, True, [b"a"], [1])
    second = TreeNode(TYPE_LEAF, True, [b"b"], [2])
    table.write(7, 0, first)
    table.write(7, 2, second)
    table.write(8, 1, first)
    table.write(8, 2, None)
    table.head = 2

    assert table.lookup(7, 0) is first
    assert table.lookup(7, 1) is first
    assert table.lookup(7, 5) is second
    assert table.node_ids(1) == [7, 8]
    assert table.node_ids(2) == [7]
    assert not table.contains(8, 0)
    with pytest.raises(KeyError):
        table.lookup(8, 2)
    assert dict(PageView(table, 1)) == {7: first, 8: first}

    with pytest.raises(RuntimeError) as excinfo:
        table.write(7, 2, first)
    assert "already published" in str(excinfo.value)

def test_page_table_loader():
    """Deferred pages are loaded once and then served from memory.

    """
    loaded = []

    def loader(location):
        loaded.append(location)
        return TreeNode(TYPE_ROOT, True, [b"k"], [location])

    table = PageTable(loader=loader)
    table.write(0, 0, PageRef(40))
    table.head = 0
    tree = BPlusTree(4, pages=table, root_id=0, next_id=1, count=1,
                     read_only=True)
    assert tree.get(b"k") == 40
    assert tree.get(b"k") == 40
    assert loaded == [40]

    bare = PageTable()
    bare.write(0, 0, PageRef(1))
    with pytest.raises(RuntimeError) as excinfo:
        bare.lookup(0, 0)
    assert "no loader" in str(excinfo.value)

def test_single_writer():
    """A page table accepts one writer; other branches copy their pages.

    """
    tree = BPlusTree(4)
    tree.insert(b"a", 1)
    snapshot = tree.snapshot()
    with pytest.raises(RuntimeError) as excinfo:
        BPlusTree(4, pages=tree.table, root_id=tree.root_id,
                  next_id=tree.next_id, count=len(tree))
    assert "already has a writer" in str(excinfo.value)

    branch = snapshot.writable_copy()
    assert branch.table is not tree.table
    with pytest.raises(ValueError) as excinfo:
        BPlusTree(4, pages=tree.table, root_id=tree.root_id,
                  read_only=True, version=5)
    assert "not published" in str(excinfo.value)

@pytest.mark.slow
@pytest.mark.parametrize("q", [4, 8, 16])
def test_random_operations_match_oracle(q):
    """Random operations agree with a sorted list oracle.

    Every structural invariant and the logarithmic height bound are
    checked after each operation.

    Parameters
    ----------
    q : int
        Branching factor.

    """
    rng = np.random.default_rng(q)
    tree = BPlusTree(q)
    oracle = SortedOracle()
    for step in range(NUM_ORACLE_OPERATIONS):
        operation = rng.integers(0, 4)
        key = _key(int(rng.integers(0, 400)))
        if operation == 0 or operation == 1:
            tree.insert(key, step)
            oracle.insert(key, step)
        elif operation == 2:
            tree.delete(key)
            oracle.delete(key)
        else:
            found, value, _ = tree.search(key)
            assert found == (key in oracle.values)
            assert value == oracle.values.get(key)
            other = _key(int(rng.integers(0, 400)))
            lo, hi = min(key, other), max(key, other)
            assert tree.range_scan(lo, hi) == oracle.range(lo, hi)
        assert len(tree) == len(oracle.keys)
        tree.check_invariants()
        if len(tree) > 1:
            assert tree.height <= _height_bound(len(tree), q)
    assert tree.items() == oracle.range(_key(0), _key(99999))

@settings(max_examples=60, deadline=None)
@given(operations=st.lists(st.tuples(st.booleans(),
                                     st.integers(min_value=0,
                                                 max_value=60)),
                           max_size=150),
       q=st.sampled_from([4, 5, 8]))
def test_operations_property(operations, q):
    """Any insert/delete sequence keeps every structural invariant.

    Parameters
    ----------
    operations : list of tuple
        ``(is_insert, key number)`` pairs.
    q : int
        Branching factor.

    """
    tree = BPlusTree(q)
    oracle = SortedOracle()
    for is_insert, number in operations:
        if is_insert:
            tree.insert(_key(number), number)
            oracle.insert(_key(number), number)
        else:
            tree.delete(_key(number))
            oracle.delete(_key(number))
        tree.check_invariants()
    assert [key for key, _ in tree.items()] == oracle.keys
    for node_id, node in tree.pages.items():
        if node_id != tree.root_id:
            assert node.node_type in (TYPE_LEAF, TYPE_INTERNAL)
