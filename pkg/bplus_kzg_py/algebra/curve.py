"""Adapter over the BLS12-381 pairing curve.

All curve arithmetic used by the package goes through this module so
that the commitment scheme and the proofs only ever see scalars
(python integers modulo the group order) and opaque group points.

Commitments and witnesses live in G1 (48 byte compressed encoding),
verification keys live in G2 (96 byte compressed encoding).

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import hashlib

from py_ecc.optimized_bls12_381 import (G1, G2, Z1, Z2, FQ12, add, eq,
                                        multiply, neg, is_inf,
                                        curve_order, pairing,
                                        final_exponentiate)
from py_ecc.bls.g2_primitives import (G1_to_pubkey, pubkey_to_G1,
                                      G2_to_signature, signature_to_G2)

from bplus_kzg_py.utils.constants import G1_SIZE, G2_SIZE

CURVE_ORDER = curve_order
"""int : Prime order p of G1, G2 and the target group."""

G1_GENERATOR = G1
G2_GENERATOR = G2
G1_IDENTITY = Z1
G2_IDENTITY = Z2

def hash_digest(data):
    """Return the sha256 digest of a byte string.

    Parameters
    ----------
    data : bytes
        Input bytes.

    Returns
    -------
    digest : bytes
        32 byte digest.

    """
    return hashlib.sha256(data).digest()

def hash_to_scalar(data):
    """Map a byte string to a field scalar.

    The sha256 digest of ``data`` is read as a big-endian integer and
    reduced modulo the group order.

    Parameters
    ----------
    data : bytes
        Input bytes.

    Returns
    -------
    scalar : int
        Value in ``[0, CURVE_ORDER)``.

    """
    if not isinstance(data, (bytes, bytearray)):
        raise TypeError("hash_to_scalar input must be bytes.")
    return int.from_bytes(hash_digest(bytes(data)), "big") % CURVE_ORDER

def scalar_inverse(value):
    """Multiplicative inverse of a nonzero scalar."""
    value %= CURVE_ORDER
    if value == 0:
        raise ZeroDivisionError("zero has no inverse in the scalar field.")
    return pow(value, -1, CURVE_ORDER)

def scalar_mul(point, scalar):
    """Multiply a G1 or G2 point by a scalar reduced modulo p."""
    return multiply(point, scalar % CURVE_ORDER)

def point_add(point_a, point_b):
    """Add two points of the same group."""
    return add(point_a, point_b)

def point_neg(point):
    """Negate a G1 or G2 point."""
    return neg(point)

def points_equal(point_a, point_b):
    """Compare two points of the same group for equality.

    Points are kept in projective coordinates, so tuple equality is
    not meaningful.

    """
    return eq(point_a, point_b)

def is_identity(point):
    """Whether a point is the group identity."""
    return is_inf(point)

def multi_scalar_mul(bases, scalars):
    """Compute the product of bases raised to scalars.

    Parameters
    ----------
    bases : list
        Points of a single group.
    scalars : list of int
        Exponents, one per base.

    Returns
    -------
    result : tuple
        Sum of ``bases[j] * scalars[j]`` in additive notation.

    """

    if len(bases) != len(scalars):
        raise ValueError("multi_scalar_mul needs one scalar per base, got "
                         + str(len(bases)) + " bases and "
                         + str(len(scalars)) + " scalars.")
    if len(bases) == 0:
        raise ValueError("multi_scalar_mul needs at least one base.")

    result = None
    for base, scalar in zip(bases, scalars):
        scalar %= CURVE_ORDER
        term = multiply(base, scalar)
        result = term if result is None else add(result, term)
    return result

def pair(point_g1, point_g2):
    """Evaluate the bilinear map e(P, Q) with final exponentiation.

    Parameters
    ----------
    point_g1 : tuple
        Point of G1.
    point_g2 : tuple
        Point of G2.

    Returns
    -------
    value : py_ecc.fields.optimized_bls12_381_FQ12
        Element of the target group.

    """
    return pairing(point_g2, point_g1)

def pairing_product_is_one(pairs):
    """Check that a product of pairings equals the target identity.

    Parameters
    ----------
    pairs : list of tuple
        ``(point_g1, point_g2)`` pairs.

    Returns
    -------
    accepted : bool
        True iff the product of ``e(point_g1, point_g2)`` is one.

    """

    product = FQ12.one()
    for point_g1, point_g2 in pairs:
        product = product * pairing(point_g2, point_g1,
                                    final_exponentiate=False)
    return final_exponentiate(product) == FQ12.one()

def g1_to_bytes(point):
    """Compressed 48 byte encoding of a G1 point."""
    return bytes(G1_to_pubkey(point))

def g1_from_bytes(data):
    """Decode and validate a compressed G1 point.

    Parameters
    ----------
    data : bytes
        48 byte compressed encoding.

    Returns
    -------
    point : tuple
        G1 point in the prime order subgroup.

    """

    if len(data) != G1_SIZE:
        raise ValueError("G1 encoding must be " + str(G1_SIZE)
                         + " bytes, got " + str(len(data)) + ".")
    try:
        point = pubkey_to_G1(bytes(data))
    except (ValueError, AssertionError) as error:
        raise ValueError("invalid G1 encoding.") from error
    if not is_inf(multiply(point, CURVE_ORDER)):
        raise ValueError("G1 point is not in the prime order subgroup.")
    return point

def g2_to_bytes(point):
    """Compressed 96 byte encoding of a G2 point."""
    return bytes(G2_to_signature(point))

def g2_from_bytes(data):
    """Decode and validate a compressed G2 point.

    Parameters
    ----------
    data : bytes
        96 byte compressed encoding.

    Returns
    -------
    point : tuple
        G2 point in the prime order subgroup.

    """

    if len(data) != G2_SIZE:
        raise ValueError("G2 encoding must be " + str(G2_SIZE)
                         + " bytes, got " + str(len(data)) + ".")
    try:
        point = signature_to_G2(bytes(data))
    except (ValueError, AssertionError) as error:
        raise ValueError("invalid G2 encoding.") from error
    if not is_inf(multiply(point, CURVE_ORDER)):
        raise ValueError("G2 point is not in the prime order subgroup.")
    return point
