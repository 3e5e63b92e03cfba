"""Tests for the proof wire format.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import pytest

from conftest import value_digest
from bplus_kzg_py.algebra.curve import G1_GENERATOR, g1_to_bytes
from bplus_kzg_py.proofs import proofs, wire
from bplus_kzg_py.polycommit.kzg import setup
from bplus_kzg_py.proofs.proofs import RangeLevel, RangeProof
from bplus_kzg_py.tree.authtree import AuthTree
from bplus_kzg_py.utils.constants import (DIGEST_SIZE, G1_SIZE, TYPE_ROOT,
                                          WIRE_VERSION, PROOF_MEMBERSHIP)

# pylint: disable=protected-access

def _single_level_range():
    level = RangeLevel(TYPE_ROOT, 1, ((b"k", bytes(DIGEST_SIZE)),), (True,),
                       ((None, G1_GENERATOR),))
    return RangeProof(levels=(level,))

@pytest.mark.parametrize("value, expected",
                         [(0, b"\x00"),
                          (1, b"\x01"),
                          (127, b"\x7f"),
                          (128, b"\x80\x01"),
                          (300, b"\xac\x02"),
                         ])
def test_encode_varint(value, expected):
    """Varints follow unsigned LEB128.

    Parameters
    ----------
    value : int
        Integer to encode.
    expected : bytes
        Expected encoding.

    """
    assert wire.encode_varint(value) == expected

def test_encode_varint_fail():
    """Negative integers have no varint encoding.

    """
    with pytest.raises(ValueError) as excinfo:
        wire.encode_varint(-1)
    assert "non-negative" in str(excinfo.value)

def test_membership_size(auth_tree, keys):
    """Membership proofs cost one key, digest and witness per level.

    Parameters
    ----------
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Populated tree.
    keys : list of bytes
        Stored keys, six bytes each.

    """
    height = auth_tree.record.height
    proof = proofs.prove_membership(auth_tree, keys[4])
    blob = wire.encode_proof(proof)
    assert blob[0] == WIRE_VERSION
    assert blob[1] == PROOF_MEMBERSHIP
    per_level = 1 + 1 + 1 + len(keys[4]) + 1 + DIGEST_SIZE + G1_SIZE
    assert len(blob) == 3 + per_level * height + G1_SIZE * (height - 1)
    assert wire.proof_size(proof) == len(blob)
    for level in proof.levels:
        assert len(g1_to_bytes(level.witness)) == G1_SIZE

def test_decoded_proofs_verify(public_params, auth_tree, keys):
    """Decoded proofs of every type verify like the originals.

    Parameters
    ----------
    public_params : bplus_kzg_py.polycommit.kzg.PublicParams
        Parameters without trapdoor.
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Populated tree.
    keys : list of bytes
        Stored keys.

    """
    root = auth_tree.record

    blob = wire.encode_proof(proofs.prove_membership(auth_tree, keys[9]))
    decoded = wire.decode_proof(blob)
    assert isinstance(decoded, proofs.MembershipProof)
    assert proofs.verify_membership(public_params, root, keys[9],
                                    value_digest(keys[9]), decoded)

    blob = wire.encode_proof(proofs.prove_nonmembership(auth_tree, b"key003"))
    decoded = wire.decode_proof(blob)
    assert decoded.kind == "node_gap"
    assert len(decoded.split_levels) > 0
    assert proofs.verify_nonmembership(public_params, root, b"key003",
                                       decoded)

    original = proofs.prove_range(auth_tree, b"key005", b"key031")
    decoded = wire.decode_proof(wire.encode_proof(original))
    assert decoded.interior == original.interior
    assert proofs.count_bits(decoded) == proofs.count_bits(original)
    assert decoded.levels[-1].left_fence and decoded.levels[-1].right_fence
    assert proofs.verify_range(public_params, root, b"key005", b"key031",
                               decoded)

    empty = proofs.prove_range(auth_tree, b"zz", b"zzz")
    decoded = wire.decode_proof(wire.encode_proof(empty))
    assert decoded.empty.kind == "above_max"

    batch = proofs.prove_batch_membership(auth_tree, keys[:3])
    decoded = wire.decode_proof(wire.encode_proof(batch))
    assert decoded.keys == keys[:3]
    assert [len(nodes) for nodes in decoded.levels] \
        == [len(nodes) for nodes in batch.levels]
    assert proofs.verify_batch_membership(
        public_params, root, [(key, value_digest(key)) for key in keys[:3]],
        decoded)

@pytest.mark.slow
def test_membership_level_size_independent_of_q():
    """Membership levels cost the same bytes at q=16 and q=256.

    """
    params = setup(255, mode="test", seed=2)
    keys = [b"k%04d" % number for number in range(600)]
    sizes = {}
    for q in (16, 256):
        auth_tree = AuthTree(params, q=q)
        auth_tree.apply_updates([("insert", key, value_digest(key))
                                 for key in keys])
        proof = proofs.prove_membership(auth_tree, keys[0])
        assert len(proof.levels) == auth_tree.record.height >= 2
        sizes[q] = {len(wire._encode_level(level, True))
                    for level in proof.levels}
        for level in proof.levels:
            assert len(g1_to_bytes(level.witness)) == G1_SIZE
    assert len(sizes[16]) == 1
    assert sizes[16] == sizes[256] \
        == {1 + 1 + 1 + len(keys[0]) + 1 + DIGEST_SIZE + 2 * G1_SIZE}

def test_empty_tree_nonmembership():
    """The empty-tree proof is a handful of bytes.

    """
    proof = proofs.NonMembershipProof("empty")
    blob = wire.encode_proof(proof)
    assert len(blob) == 5
    assert wire.decode_proof(blob) == proof

def test_encode_fail():
    """Only proof objects can be encoded.

    """
    with pytest.raises(TypeError) as excinfo:
        wire.encode_proof("proof")
    assert "cannot encode str" in str(excinfo.value)

def test_decode_fail(auth_tree, keys):
    """Malformed blobs raise ValueError with a reason.

    Parameters
    ----------
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Populated tree.
    keys : list of bytes
        Stored keys.

    """
    blob = wire.encode_proof(proofs.prove_membership(auth_tree, keys[0]))

    broken = {
        "unsupported proof version": bytes([WIRE_VERSION + 1]) + blob[1:],
        "unknown proof type": blob[:1] + b"\x09" + blob[2:],
        "truncated": blob[:-1],
        "trailing": blob + b"\x00",
        "non-canonical": blob[:2] + bytes([blob[2] | 0x80, 0]) + blob[3:],
    }
    for message, data in broken.items():
        with pytest.raises(ValueError) as excinfo:
            wire.decode_proof(data)
        assert message in str(excinfo.value)

    absent = wire.encode_proof(proofs.prove_nonmembership(auth_tree, b"a"))
    with pytest.raises(ValueError) as excinfo:
        wire.decode_proof(absent[:2] + b"\x07" + absent[3:])
    assert "unknown non-membership kind" in str(excinfo.value)

    with pytest.raises(ValueError):
        wire.decode_proof(b"")

def test_decode_range_fail():
    """Range levels reject bad markers, flags and padding bits.

    """
    blob = wire.encode_proof(_single_level_range())
    packed_offset = 10 + DIGEST_SIZE
    assert blob[packed_offset] == 0x01

    broken = {
        "invalid range proof marker": blob[:2] + b"\x02" + blob[3:],
        "invalid range level flags": blob[:6] + b"\x04" + blob[7:],
        "padding bits": blob[:packed_offset] + b"\x03"
                        + blob[packed_offset + 1:],
    }
    for message, data in broken.items():
        with pytest.raises(ValueError) as excinfo:
            wire.decode_proof(data)
        assert message in str(excinfo.value)

    decoded = wire.decode_proof(blob)
    assert decoded.levels[0].bits == (True,)
    assert decoded.levels[0].boundaries[0][0] is None

def test_corrupted_witness(public_params, auth_tree, keys):
    """A flipped witness byte is caught at decode or at verification.

    Parameters
    ----------
    public_params : bplus_kzg_py.polycommit.kzg.PublicParams
        Parameters without trapdoor.
    auth_tree : bplus_kzg_py.tree.authtree.AuthTree
        Populated tree.
    keys : list of bytes
        Stored keys.

    """
    blob = bytearray(wire.encode_proof(proofs.prove_membership(auth_tree,
                                                               keys[1])))
    # last witness of the root level ends right before the next level
    witness_end = 3 + 1 + 1 + 1 + len(keys[1]) + 1 + DIGEST_SIZE + G1_SIZE
    blob[witness_end - 1] ^= 0x01
    try:
        decoded = wire.decode_proof(bytes(blob))
    except ValueError:
        return
    assert not proofs.verify_membership(public_params, auth_tree.record,
                                        keys[1], value_digest(keys[1]),
                                        decoded)
