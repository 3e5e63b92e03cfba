"""Byte encoding of proofs.

Every blob starts with a version byte and a proof type byte. Counts,
key lengths and indices are unsigned LEB128 varints; group elements use
their 48 byte compressed encoding; range proof bits are packed
little-endian within each byte. Batched membership proofs list the
nodes of each depth, every node encoded like a single proof level.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import numpy as np

from bplus_kzg_py.algebra.curve import g1_to_bytes, g1_from_bytes
from bplus_kzg_py.proofs.proofs import (OpenedElement, LevelProof,
                                        MembershipProof, NonMembershipProof,
                                        RangeLevel, RangeProof,
                                        BatchMembershipProof,
                                        NONMEMBERSHIP_KINDS)
from bplus_kzg_py.utils.constants import (WIRE_VERSION, DIGEST_SIZE, G1_SIZE,
                                          PROOF_MEMBERSHIP,
                                          PROOF_NONMEMBERSHIP, PROOF_RANGE,
                                          PROOF_BATCH_MEMBERSHIP)

def encode_varint(value):
    """Unsigned LEB128 encoding of a non-negative integer."""
    if value < 0:
        raise ValueError("varints encode non-negative integers only.")
    out = bytearray()
    while True:
        byte = value & 0x7f
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)

class _Reader:
    """Cursor over a proof blob raising ValueError on malformed input."""

    def __init__(self, data):
        self.data = bytes(data)
        self.offset = 0

    def take(self, length):
        if self.offset + length > len(self.data):
            raise ValueError("proof blob is truncated.")
        chunk = self.data[self.offset:self.offset + length]
        self.offset += length
        return chunk

    def byte(self):
        return self.take(1)[0]

    def varint(self):
        value = 0
        shift = 0
        while True:
            byte = self.byte()
            value |= (byte & 0x7f) << shift
            if not byte & 0x80:
                if byte == 0 and shift > 0:
                    raise ValueError("non-canonical varint in proof blob.")
                return value
            shift += 7
            if shift > 63:
                raise ValueError("varint too long in proof blob.")

    def point(self):
        return g1_from_bytes(self.take(G1_SIZE))

    def key(self):
        return self.take(self.varint())

    def done(self):
        if self.offset != len(self.data):
            raise ValueError("proof blob has trailing bytes.")

def _encode_key(key):
    return encode_varint(len(key)) + key

def _encode_level(level, with_commitment):
    out = bytearray([level.node_type])
    out += encode_varint(len(level.opened))
    for element in level.opened:
        out += _encode_key(element.key)
        out += encode_varint(element.index)
        out += element.digest
    out += g1_to_bytes(level.witness)
    if with_commitment:
        out += g1_to_bytes(level.commitment)
    return bytes(out)

def _decode_level(reader, with_commitment):
    node_type = reader.byte()
    opened = []
    for _ in range(reader.varint()):
        key = reader.key()
        index = reader.varint()
        opened.append(OpenedElement(key, index, reader.take(DIGEST_SIZE)))
    witness = reader.point()
    commitment = reader.point() if with_commitment else None
    return LevelProof(node_type, tuple(opened), witness, commitment)

def _encode_path(levels, first_has_commitment):
    out = bytearray(encode_varint(len(levels)))
    for depth, level in enumerate(levels):
        out += _encode_level(level, depth > 0 or first_has_commitment)
    return bytes(out)

def _decode_path(reader, first_has_commitment):
    return tuple(_decode_level(reader, depth > 0 or first_has_commitment)
                 for depth in range(reader.varint()))

def _encode_membership(proof):
    return _encode_path(proof.levels, False)

def _encode_nonmembership(proof):
    return bytes([NONMEMBERSHIP_KINDS.index(proof.kind)]) \
         + _encode_path(proof.levels, False) \
         + _encode_path(proof.split_levels, True)

def _decode_nonmembership(reader):
    kind_code = reader.byte()
    if kind_code >= len(NONMEMBERSHIP_KINDS):
        raise ValueError("unknown non-membership kind " + str(kind_code) + ".")
    levels = _decode_path(reader, False)
    split_levels = _decode_path(reader, True)
    return NonMembershipProof(NONMEMBERSHIP_KINDS[kind_code], levels,
                              split_levels)

def _encode_range(proof):
    if proof.empty is not None:
        return b"\x01" + _encode_nonmembership(proof.empty)
    out = bytearray(b"\x00")
    out += encode_varint(len(proof.levels))
    for depth, level in enumerate(proof.levels):
        out.append(level.node_type)
        out += encode_varint(level.start_index)
        out.append(int(level.left_fence) | int(level.right_fence) << 1)
        out += encode_varint(len(level.elements))
        for key, digest in level.elements:
            out += _encode_key(key)
            out += digest
        out += np.packbits(np.array(level.bits, dtype=np.uint8),
                           bitorder="little").tobytes()
        out.append(len(level.boundaries))
        for commitment, witness in level.boundaries:
            out += g1_to_bytes(witness)
            if depth > 0:
                out += g1_to_bytes(commitment)
    return bytes(out)

def _decode_range(reader):
    marker = reader.byte()
    if marker == 1:
        return RangeProof(empty=_decode_nonmembership(reader))
    if marker != 0:
        raise ValueError("invalid range proof marker.")
    levels = []
    for depth in range(reader.varint()):
        node_type = reader.byte()
        start_index = reader.varint()
        flags = reader.byte()
        if flags > 3:
            raise ValueError("invalid range level flags.")
        elements = []
        count = reader.varint()
        for _ in range(count):
            key = reader.key()
            elements.append((key, reader.take(DIGEST_SIZE)))
        packed = reader.take((count + 7) // 8)
        bits = np.unpackbits(np.frombuffer(packed, dtype=np.uint8),
                             count=count, bitorder="little")
        if np.packbits(bits, bitorder="little").tobytes() != packed:
            raise ValueError("non-zero padding bits in range level.")
        boundaries = []
        for _ in range(reader.byte()):
            witness = reader.point()
            commitment = reader.point() if depth > 0 else None
            boundaries.append((commitment, witness))
        levels.append(RangeLevel(node_type, start_index, tuple(elements),
                                 tuple(bool(bit) for bit in bits),
                                 tuple(boundaries),
                                 bool(flags & 1), bool(flags & 2)))
    return RangeProof(levels=tuple(levels))

def _encode_batch(proof):
    out = bytearray(encode_varint(len(proof.levels)))
    for depth, nodes in enumerate(proof.levels):
        out += encode_varint(len(nodes))
        for level in nodes:
            out += _encode_level(level, depth > 0)
    return bytes(out)

def _decode_batch(reader):
    levels = []
    for depth in range(reader.varint()):
        levels.append(tuple(_decode_level(reader, depth > 0)
                            for _ in range(reader.varint())))
    return BatchMembershipProof(tuple(levels))

def encode_proof(proof):
    """Serialize any proof.

    Parameters
    ----------
    proof : MembershipProof, NonMembershipProof, RangeProof or
            BatchMembershipProof
        Proof to encode.

    Returns
    -------
    blob : bytes
        Wire encoding.

    """

    if isinstance(proof, MembershipProof):
        body = bytes([PROOF_MEMBERSHIP]) + _encode_membership(proof)
    elif isinstance(proof, NonMembershipProof):
        body = bytes([PROOF_NONMEMBERSHIP]) + _encode_nonmembership(proof)
    elif isinstance(proof, RangeProof):
        body = bytes([PROOF_RANGE]) + _encode_range(proof)
    elif isinstance(proof, BatchMembershipProof):
        body = bytes([PROOF_BATCH_MEMBERSHIP]) + _encode_batch(proof)
    else:
        raise TypeError("cannot encode " + type(proof).__name__ + ".")
    return bytes([WIRE_VERSION]) + body

def decode_proof(blob):
    """Parse a proof blob.

    Parameters
    ----------
    blob : bytes
        Output of ``encode_proof``.

    Returns
    -------
    proof : MembershipProof, NonMembershipProof, RangeProof or
            BatchMembershipProof
        Decoded proof.

    """

    reader = _Reader(blob)
    version = reader.byte()
    if version != WIRE_VERSION:
        raise ValueError("unsupported proof version " + str(version) + ".")
    proof_type = reader.byte()
    if proof_type == PROOF_MEMBERSHIP:
        proof = MembershipProof(_decode_path(reader, False))
    elif proof_type == PROOF_NONMEMBERSHIP:
        proof = _decode_nonmembership(reader)
    elif proof_type == PROOF_RANGE:
        proof = _decode_range(reader)
    elif proof_type == PROOF_BATCH_MEMBERSHIP:
        proof = _decode_batch(reader)
    else:
        raise ValueError("unknown proof type " + str(proof_type) + ".")
    reader.done()
    return proof

def proof_size(proof):
    """Exact serialized length of a proof [bytes]."""
    return len(encode_proof(proof))
