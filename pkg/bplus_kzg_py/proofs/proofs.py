"""Membership, non-membership and range proofs.

Provers read one tree version through an ``AuthTree`` handle. Verifiers
only need the public parameters, a ``RootRecord`` and the proof; they
return False on any inconsistency instead of raising.

Every proof level opens elements of one node with a single batch
witness. Levels below the root also carry the node commitment, whose
hash must equal the digest opened one level up.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

from collections import namedtuple
from dataclasses import dataclass
from typing import Optional

from bplus_kzg_py.algebra.curve import hash_to_scalar
from bplus_kzg_py.polycommit.kzg import create_batch_witness, verify_batch
from bplus_kzg_py.tree.authtree import (EMPTY_ROOT_HASH, salted_key,
                                        compute_node_hash, commit_elements)
from bplus_kzg_py.tree.btree import check_key
from bplus_kzg_py.utils.constants import (TYPE_ROOT, TYPE_INTERNAL,
                                          TYPE_LEAF)

NONMEMBERSHIP_KINDS = ("empty", "leaf_gap", "node_gap", "below_min",
                       "above_max")

OpenedElement = namedtuple("OpenedElement", ["key", "index", "digest"])
"""Opened element: key, 1-based index in its node and committed digest."""

@dataclass(frozen=True)
class LevelProof:
    """Opening of one or two elements of one node.

    Attributes
    ----------
    node_type : int
        Type byte of the node.
    opened : tuple of OpenedElement
        Opened elements, indices strictly increasing.
    witness : tuple
        G1 batch witness for all opened elements.
    commitment : tuple or None
        Node commitment, None at the root level.

    """

    node_type: int
    opened: tuple
    witness: tuple
    commitment: Optional[tuple] = None

@dataclass(frozen=True)
class MembershipProof:
    """Audit path from the root to the leaf element of a key."""

    levels: tuple

    @property
    def key(self):
        """bytes : Key opened at the leaf."""
        return self.levels[-1].opened[0].key

    @property
    def value_digest(self):
        """bytes : Value digest opened at the leaf."""
        return self.levels[-1].opened[0].digest

@dataclass(frozen=True)
class NonMembershipProof:
    """Proof that a key is absent.

    Attributes
    ----------
    kind : string
        One of ``NONMEMBERSHIP_KINDS``.
    levels : tuple of LevelProof
        Main path from the root. The interval node opens two adjacent
        elements; ``above_max`` proofs only hold the root level.
    split_levels : tuple of LevelProof
        ``node_gap`` only: path below the interval node's left element
        down to the largest key of the left leaf.

    """

    kind: str
    levels: tuple = ()
    split_levels: tuple = ()

    @property
    def interval_depth(self):
        """int or None : Depth of the level opening two elements."""
        for depth, level in enumerate(self.levels):
            if len(level.opened) == 2:
                return depth
        return None

    @property
    def successor(self):
        """bytes or None : Smallest stored key above the absent key."""
        if self.kind == "leaf_gap":
            return self.levels[-1].opened[1].key
        if self.kind in ("node_gap", "below_min"):
            return self.levels[-1].opened[0].key
        return None

@dataclass(frozen=True)
class RangeLevel:
    """All opened elements of one tree level in a range proof.

    Attributes
    ----------
    node_type : int
        Type byte shared by the nodes of this level.
    start_index : int
        1-based index of the first opened element in the leftmost node.
    elements : tuple of tuple
        ``(key, digest)`` of every opened element, left to right.
    bits : tuple of bool
        One bit per element, set on the last opened element of each
        node.
    boundaries : tuple of tuple
        ``(commitment, witness)`` for the leftmost node and, if
        different, the rightmost node. Commitment is None at the root.
    left_fence : bool
        Leaf level only: the first element is the largest key below the
        range.
    right_fence : bool
        Leaf level only: the last element is the smallest key above the
        range.

    """

    node_type: int
    start_index: int
    elements: tuple
    bits: tuple
    boundaries: tuple
    left_fence: bool = False
    right_fence: bool = False

@dataclass(frozen=True)
class RangeProof:
    """Covering of every node holding keys of a range.

    ``empty`` holds a non-membership proof for the lower bound when no
    key falls in the range, in which case ``levels`` is empty.

    """

    levels: tuple = ()
    empty: Optional[NonMembershipProof] = None

    @property
    def interior(self):
        """list of tuple : In-range ``(key, digest)`` pairs."""
        if self.empty is not None or len(self.levels) == 0:
            return []
        leaf = self.levels[-1]
        elements = list(leaf.elements)
        if leaf.right_fence:
            elements = elements[:-1]
        if leaf.left_fence:
            elements = elements[1:]
        return elements

@dataclass(frozen=True)
class BatchMembershipProof:
    """Shared audit paths of several keys against one root.

    ``levels[d]`` lists the depth ``d`` nodes on any of the paths in key
    order, each opening the union of the elements its keys pass through
    with one witness. The nodes at depth ``d + 1`` correspond one to one,
    in order, to the elements opened at depth ``d``; the leaf level opens
    exactly the proven keys in ascending order.

    Attributes
    ----------
    levels : tuple of tuple of LevelProof
        Node openings per depth, root first.

    """

    levels: tuple

    @property
    def keys(self):
        """list of bytes : Proven keys in ascending order."""
        if len(self.levels) == 0:
            return []
        return [element.key for level in self.levels[-1]
                for element in level.opened]

# ----------------------------------------------------------------------
# provers

def _open_node(auth_tree, node_id, indices, with_commitment):
    """LevelProof opening 0-based ``indices`` of one node."""
    node = auth_tree.node(node_id)
    opened = tuple(OpenedElement(node.keys[i], i + 1,
                                 auth_tree.element_digest(node, i))
                   for i in indices)
    witness = create_batch_witness(auth_tree.params, node.auth.poly,
                                   [salted_key(element.key, element.index)
                                    for element in opened])
    return LevelProof(node.node_type, opened, witness,
                      node.auth.commitment if with_commitment else None)

def prove_membership(auth_tree, key):
    """Prove that ``key`` is stored.

    Parameters
    ----------
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Tree version to prove against.
    key : bytes
        Stored key.

    Returns
    -------
    proof : MembershipProof
        One opened element per level, root to leaf.

    """

    found, _, path = auth_tree.search(key)
    if not found:
        raise KeyError("key " + key.hex() + " is not present, "
                       + "request a non-membership proof.")
    return MembershipProof(tuple(_open_node(auth_tree, node_id, [index],
                                            depth > 0)
                                 for depth, (node_id, index)
                                 in enumerate(path)))

def prove_nonmembership(auth_tree, key):
    """Prove that ``key`` is absent.

    Parameters
    ----------
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Tree version to prove against.
    key : bytes
        Absent key.

    Returns
    -------
    proof : NonMembershipProof
        Proof of the shape matching where ``key`` would sit.

    """

    found, _, path = auth_tree.search(key)
    if found:
        raise KeyError("key " + key.hex() + " is present, "
                       + "request a membership proof.")
    if len(auth_tree) == 0:
        return NonMembershipProof("empty")

    root_id = path[0][0]
    leaf_id, position = path[-1]
    if position == len(auth_tree.node(leaf_id)):
        root = auth_tree.node(root_id)
        return NonMembershipProof("above_max",
                                  (_open_node(auth_tree, root_id,
                                              [len(root) - 1], False),))

    if position > 0:
        levels = [_open_node(auth_tree, node_id, [index], depth > 0)
                  for depth, (node_id, index) in enumerate(path[:-1])]
        levels.append(_open_node(auth_tree, leaf_id,
                                 [position - 1, position], len(path) > 1))
        return NonMembershipProof("leaf_gap", tuple(levels))

    interval = None
    for depth in range(len(path) - 2, -1, -1):
        if path[depth][1] > 0:
            interval = depth
            break
    if interval is None:
        return NonMembershipProof("below_min",
                                  tuple(_open_node(auth_tree, node_id,
                                                   [index], depth > 0)
                                        for depth, (node_id, index)
                                        in enumerate(path)))

    levels = []
    for depth, (node_id, index) in enumerate(path):
        indices = [index - 1, index] if depth == interval else [index]
        levels.append(_open_node(auth_tree, node_id, indices, depth > 0))
    split_levels = []
    interval_node = auth_tree.node(path[interval][0])
    node_id = interval_node.values[path[interval][1] - 1]
    while True:
        node = auth_tree.node(node_id)
        split_levels.append(_open_node(auth_tree, node_id, [len(node) - 1],
                                       True))
        if node.leaf:
            break
        node_id = node.values[-1]
    return NonMembershipProof("node_gap", tuple(levels), tuple(split_levels))

def prove_range(auth_tree, lo, hi):
    """Prove the complete set of stored keys in ``[lo, hi]``.

    Parameters
    ----------
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Tree version to prove against.
    lo : bytes
        Inclusive lower bound.
    hi : bytes
        Inclusive upper bound.

    Returns
    -------
    proof : RangeProof
        Per-level covering, or the empty-range form.

    """

    check_key(lo)
    check_key(hi)
    if lo > hi:
        raise ValueError("range lower bound exceeds upper bound.")
    tree = auth_tree.tree
    in_range = tree.range_scan(lo, hi)
    if len(in_range) == 0:
        return RangeProof(empty=prove_nonmembership(auth_tree, lo))

    start_key = tree.predecessor(lo)
    if start_key is None:
        start_key = in_range[0][0]
    end_key = tree.successor(hi)
    if end_key is None:
        end_key = in_range[-1][0]
    _, _, start_path = tree.search(start_key)
    _, _, end_path = tree.search(end_key)

    levels = []
    groups = [(start_path[0][0], start_path[0][1], end_path[0][1])]
    for depth in range(len(start_path)):
        elements = []
        bits = []
        for node_id, first, last in groups:
            node = tree.node(node_id)
            elements.extend((node.keys[i], auth_tree.element_digest(node, i))
                            for i in range(first, last + 1))
            bits.extend([False] * (last - first) + [True])

        boundary_groups = groups[:1] if len(groups) == 1 \
                          else [groups[0], groups[-1]]
        boundaries = []
        for node_id, first, last in boundary_groups:
            level = _open_node(auth_tree, node_id, range(first, last + 1),
                               depth > 0)
            boundaries.append((level.commitment, level.witness))

        is_leaf = depth == len(start_path) - 1
        levels.append(RangeLevel(
            node_type=tree.node(groups[0][0]).node_type,
            start_index=groups[0][1] + 1,
            elements=tuple(elements),
            bits=tuple(bits),
            boundaries=tuple(boundaries),
            left_fence=is_leaf and start_key < lo,
            right_fence=is_leaf and end_key > hi))
        if is_leaf:
            break

        next_groups = []
        for node_id, first, last in groups:
            node = tree.node(node_id)
            for child_id in node.values[first:last + 1]:
                child_first = start_path[depth + 1][1] \
                    if child_id == start_path[depth + 1][0] else 0
                child_last = end_path[depth + 1][1] \
                    if child_id == end_path[depth + 1][0] \
                    else len(tree.node(child_id)) - 1
                next_groups.append((child_id, child_first, child_last))
        groups = next_groups

    return RangeProof(levels=tuple(levels))

def prove_batch_membership(auth_tree, keys):
    """Prove several stored keys, opening every shared node once.

    Parameters
    ----------
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Tree version to prove against.
    keys : list of bytes
        Stored keys, any order, duplicates ignored.

    Returns
    -------
    proof : BatchMembershipProof
        Per-depth node openings.

    """

    if len(keys) == 0:
        raise ValueError("batch membership needs at least one key.")
    paths = []
    for key in sorted(set(keys)):
        found, _, path = auth_tree.search(key)
        if not found:
            raise KeyError(key)
        paths.append(path)

    levels = []
    for depth in range(len(paths[0])):
        # keys are sorted, so nodes come out left to right
        indices = {}
        for path in paths:
            node_id, index = path[depth]
            indices.setdefault(node_id, set()).add(index)
        levels.append(tuple(_open_node(auth_tree, node_id, sorted(opened),
                                       depth > 0)
                            for node_id, opened in indices.items()))
    return BatchMembershipProof(tuple(levels))

# ----------------------------------------------------------------------
# verifiers

def _expected_type(depth, height):
    if depth == 0:
        return TYPE_ROOT
    if depth == height - 1:
        return TYPE_LEAF
    return TYPE_INTERNAL

def _root_is_consistent(root):
    return root.height > 0 \
        and compute_node_hash(root.root_commitment, TYPE_ROOT) == root.root_hash

def _opening_is_valid(params, commitment, keys_indices_digests, witness):
    """Batch-check opened ``(key, index, digest)`` triples of one node."""
    indices = [index for _, index, _ in keys_indices_digests]
    if len(indices) == 0 or indices[0] < 1 \
        or indices[-1] > params.degree_bound \
        or any(a >= b for a, b in zip(indices, indices[1:])):
        return False
    points = [(salted_key(key, index), hash_to_scalar(digest))
              for key, index, digest in keys_indices_digests]
    try:
        return verify_batch(params, commitment, points, witness)
    except ValueError:
        return False

def _verify_chain(params, root, levels, first_depth, parent_digest,
                  height):
    """Check types, hash links and openings of a run of levels.

    Level ``j`` sits at depth ``first_depth + j``; each level below the
    first links to the last element opened one level up.

    """

    for offset, level in enumerate(levels):
        depth = first_depth + offset
        if level.node_type != _expected_type(depth, height):
            return False
        if depth == 0:
            if level.commitment is not None:
                return False
            commitment = root.root_commitment
        else:
            if level.commitment is None:
                return False
            commitment = level.commitment
            link = parent_digest if offset == 0 \
                   else levels[offset - 1].opened[-1].digest
            if compute_node_hash(commitment, level.node_type) != link:
                return False
        if not _opening_is_valid(params, commitment, level.opened,
                                 level.witness):
            return False
    return True

def _path_is_ordered(levels, key):
    """Opened keys never grow down a single path and end at ``key``.

    Each internal element is the exact maximum of its child, so the key
    opened one level down can not exceed it.

    """
    path_keys = [level.opened[0].key for level in levels]
    if path_keys[-1] != key:
        return False
    return all(lower <= upper
               for upper, lower in zip(path_keys, path_keys[1:]))

def verify_membership(params, root, key, value_digest, proof):
    """Verify a membership proof.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters.
    root : bplus_kzg_py.tree.authtree.RootRecord
        Trusted root.
    key : bytes
        Queried key.
    value_digest : bytes
        Claimed value digest.
    proof : MembershipProof
        Proof to check.

    Returns
    -------
    accepted : bool
        True iff ``key`` maps to ``value_digest`` under ``root``.

    """

    try:
        levels = proof.levels
        if not _root_is_consistent(root) or len(levels) != root.height:
            return False
        if any(len(level.opened) != 1 for level in levels):
            return False
        if not _path_is_ordered(levels, key):
            return False
        if levels[-1].opened[0].digest != value_digest:
            return False
        return _verify_chain(params, root, levels, 0, None, root.height)
    except (AttributeError, IndexError, TypeError, ValueError):
        return False

def verify_nonmembership(params, root, key, proof):
    """Verify a non-membership proof.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters.
    root : bplus_kzg_py.tree.authtree.RootRecord
        Trusted root.
    key : bytes
        Queried key.
    proof : NonMembershipProof
        Proof to check.

    Returns
    -------
    accepted : bool
        True iff ``key`` is absent under ``root``.

    """

    try:
        return _verify_nonmembership(params, root, key, proof)
    except (AttributeError, IndexError, TypeError, ValueError):
        return False

def _verify_nonmembership(params, root, key, proof):
    kind = proof.kind
    levels = proof.levels
    if kind == "empty":
        return root.root_hash == EMPTY_ROOT_HASH and root.height == 0 \
            and root.element_count == 0 and len(levels) == 0 \
            and len(proof.split_levels) == 0
    if not _root_is_consistent(root):
        return False
    height = root.height

    if kind == "above_max":
        if len(levels) != 1 or len(proof.split_levels) != 0:
            return False
        opened = levels[0].opened
        if len(opened) != 1 or opened[0].index != root.root_fanout \
            or not opened[0].key < key:
            return False
        return _verify_chain(params, root, levels, 0, None, height)

    if len(levels) != height:
        return False
    double = [depth for depth, level in enumerate(levels)
              if len(level.opened) == 2]
    if any(len(level.opened) not in (1, 2) for level in levels) \
        or len(double) > 1:
        return False
    leaf_key = levels[-1].opened[0].key

    if kind == "leaf_gap":
        if double != [height - 1] or len(proof.split_levels) != 0:
            return False
        left, right = levels[-1].opened
        if right.index != left.index + 1 or not left.key < key < right.key:
            return False
        if any(level.opened[0].key < key for level in levels[:-1]):
            return False
    elif kind == "below_min":
        if double or len(proof.split_levels) != 0:
            return False
        if any(level.opened[0].index != 1 for level in levels) \
            or not key < leaf_key:
            return False
    elif kind == "node_gap":
        if len(double) != 1 or double[0] >= height - 1:
            return False
        interval = double[0]
        left, right = levels[interval].opened
        if right.index != left.index + 1 or not left.key < key < right.key:
            return False
        if any(level.opened[0].key < key for level in levels[:interval]):
            return False
        if any(level.opened[0].index != 1
               for level in levels[interval + 1:]) or not key < leaf_key:
            return False
        split = proof.split_levels
        if len(split) != height - 1 - interval:
            return False
        if any(len(level.opened) != 1 or level.opened[0].key != left.key
               for level in split):
            return False
        if not _verify_chain(params, root, split, interval + 1, left.digest,
                             height):
            return False
    else:
        return False

    return _verify_chain(params, root, levels, 0, None, height)

def _split_groups(level):
    groups = []
    current = []
    for element, bit in zip(level.elements, level.bits):
        current.append(element)
        if bit:
            groups.append(current)
            current = []
    if current:
        return None
    return groups

def verify_range(params, root, lo, hi, proof):
    """Verify a range proof.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters.
    root : bplus_kzg_py.tree.authtree.RootRecord
        Trusted root.
    lo : bytes
        Inclusive lower bound.
    hi : bytes
        Inclusive upper bound.
    proof : RangeProof
        Proof to check.

    Returns
    -------
    accepted : bool
        True iff ``proof.interior`` is exactly the set of stored pairs
        with keys in ``[lo, hi]``.

    """

    try:
        return _verify_range(params, root, lo, hi, proof)
    except (AttributeError, IndexError, TypeError, ValueError,
            RuntimeError):
        return False

def _verify_range(params, root, lo, hi, proof):
    if lo > hi:
        return False
    if proof.empty is not None:
        if len(proof.levels) != 0:
            return False
        if not verify_nonmembership(params, root, lo, proof.empty):
            return False
        successor = proof.empty.successor
        return successor is None or successor > hi

    levels = proof.levels
    height = root.height
    if not _root_is_consistent(root) or len(levels) != height:
        return False
    leaf_level = levels[-1]
    left_fence = leaf_level.left_fence
    right_fence = leaf_level.right_fence

    parent_elements = None
    for depth, level in enumerate(levels):
        if level.node_type != _expected_type(depth, height):
            return False
        if depth < height - 1 and (level.left_fence or level.right_fence):
            return False
        if len(level.elements) == 0 or len(level.bits) != len(level.elements):
            return False
        groups = _split_groups(level)
        expected_groups = 1 if depth == 0 else len(parent_elements)
        if groups is None or len(groups) != expected_groups:
            return False
        if len(level.boundaries) != min(len(groups), 2):
            return False
        if not left_fence and level.start_index != 1:
            return False

        last_group = len(groups) - 1
        for position, group in enumerate(groups):
            first_index = level.start_index if position == 0 else 1
            opened = [(key, first_index + offset, digest)
                      for offset, (key, digest) in enumerate(group)]
            if opened[-1][1] > params.degree_bound:
                return False
            link = None if depth == 0 else parent_elements[position][1]

            if position in (0, last_group):
                commitment, witness = level.boundaries[
                    0 if position == 0 else -1]
                if depth == 0:
                    if commitment is not None:
                        return False
                    commitment = root.root_commitment
                elif compute_node_hash(commitment, level.node_type) != link:
                    return False
                if not _opening_is_valid(params, commitment, opened, witness):
                    return False
            else:
                auth = commit_elements(params, [key for key, _ in group],
                                       [digest for _, digest in group],
                                       level.node_type, use_trapdoor=False)
                if auth.node_hash != link:
                    return False

            if position < last_group or not right_fence:
                if depth == 0:
                    if opened[-1][1] != root.root_fanout:
                        return False
                elif group[-1][0] != parent_elements[position][0]:
                    return False
        parent_elements = level.elements

    keys = [key for key, _ in leaf_level.elements]
    if any(a >= b for a, b in zip(keys, keys[1:])):
        return False
    if left_fence and not keys[0] < lo:
        return False
    if not left_fence and not keys[0] >= lo:
        return False
    if right_fence and not keys[-1] > hi:
        return False
    interior = proof.interior
    if len(interior) == 0:
        return False
    return all(lo <= key <= hi for key, _ in interior)

def verify_batch_membership(params, root, pairs, proof):
    """Verify a batched membership proof.

    Parameters
    ----------
    params : bplus_kzg_py.polycommit.kzg.PublicParams
        Public parameters.
    root : bplus_kzg_py.tree.authtree.RootRecord
        Trusted root.
    pairs : list of tuple
        ``(key, value_digest)`` pairs, any order, keys distinct.
    proof : BatchMembershipProof
        Proof to check.

    Returns
    -------
    accepted : bool
        True iff the proof covers exactly ``pairs`` under ``root``.

    """

    try:
        levels = proof.levels
        if not _root_is_consistent(root) or len(levels) != root.height:
            return False
        if len(levels[0]) != 1:
            return False
        parents = None
        for depth, nodes in enumerate(levels):
            if parents is not None and len(nodes) != len(parents):
                return False
            node_type = _expected_type(depth, root.height)
            for position, level in enumerate(nodes):
                if level.node_type != node_type:
                    return False
                if depth == 0:
                    if level.commitment is not None:
                        return False
                    commitment = root.root_commitment
                else:
                    parent = parents[position]
                    commitment = level.commitment
                    if commitment is None or compute_node_hash(
                            commitment, node_type) != parent.digest:
                        return False
                    if level.opened[-1].key > parent.key:
                        return False
                if any(a.key >= b.key
                       for a, b in zip(level.opened, level.opened[1:])):
                    return False
                if not _opening_is_valid(params, commitment, level.opened,
                                         level.witness):
                    return False
            parents = [element for level in nodes
                       for element in level.opened]
        opened = [(element.key, element.digest) for element in parents]
        return opened == sorted(pairs) and len(dict(pairs)) == len(pairs)
    except (AttributeError, IndexError, TypeError, ValueError):
        return False

def count_bits(proof):
    """Number of occupancy bits a range proof carries."""
    return sum(len(level.bits) for level in proof.levels)
