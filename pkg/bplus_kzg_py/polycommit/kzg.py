"""KZG polynomial commitments with single and batch openings.

Implements setup, commit, open, verify_poly, create_witness and
verify_eval plus batch witnesses over several evaluation points, and
the public parameter file format.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

import struct
import secrets
import warnings
from dataclasses import dataclass
from typing import Optional

from bplus_kzg_py.algebra.curve import (CURVE_ORDER, G1_GENERATOR,
                                        G2_GENERATOR, G1_IDENTITY,
                                        hash_to_scalar, scalar_mul,
                                        point_add, point_neg,
                                        points_equal, multi_scalar_mul,
                                        pairing_product_is_one,
                                        g1_to_bytes, g1_from_bytes,
                                        g2_to_bytes, g2_from_bytes)
from bplus_kzg_py.polycommit.polynomial import (normalize, evaluate,
                                                synthetic_division,
                                                exact_division,
                                                sub_polys, interpolate,
                                                vanishing_polynomial)
from bplus_kzg_py.utils.constants import (PARAMS_MAGIC, PARAMS_VERSION,
                                          G1_SIZE, G2_SIZE, SCALAR_SIZE)

@dataclass(frozen=True)
class PublicParams:
    """Powers of the trapdoor in both pairing groups.

    Attributes
    ----------
    degree_bound : int
        Largest committable degree t.
    powers : tuple
        G1 points ``g^(alpha^j)`` for ``j = 0..t``.
    g2_powers : tuple
        G2 points ``h^(alpha^j)`` for ``j = 0..batch_bound``.
    test_trapdoor : int or None
        The trapdoor alpha, kept only by test-mode setups.

    """

    degree_bound: int
    powers: tuple
    g2_powers: tuple
    test_trapdoor: Optional[int] = None

    @property
    def verification_key(self):
        """tuple : ``(h, h^alpha)`` in G2."""
        return self.g2_powers[0], self.g2_powers[1]

    @property
    def batch_bound(self):
        """int : Largest number of points one batch witness can open."""
        return len(self.g2_powers) - 1

def setup(t, mode="test", seed=0, params_path=None, batch_bound=None,
          check=True, verbose=False):
    """Generate or load public parameters.

    Parameters
    ----------
    t : int
        Degree bound, at least one.
    mode : string
        ``"test"`` derives the trapdoor from ``seed`` and keeps it,
        ``"external"`` loads ``params_path``.
    seed : int
        Test-mode seed, serialized as eight little-endian bytes.
    params_path : string or path-like
        Parameter file read in external mode.
    batch_bound : int or None
        Number of G2 powers beyond the generator, defaults to ``t``.
    check : bool
        Run the pairing consistency check on loaded parameters.
    verbose : bool
        Print progress.

    Returns
    -------
    params : PublicParams
        The public parameters.

    """

    if not isinstance(t, int) or t < 1:
        raise ValueError("setup degree bound t must be an integer >= 1.")
    if mode == "external":
        if params_path is None:
            raise ValueError("external setup needs a params_path.")
        params = load_params(params_path, check=check, verbose=verbose)
        if params.degree_bound < t:
            raise ValueError("params file degree bound "
                             + str(params.degree_bound)
                             + " is below requested t=" + str(t) + ".")
        return params
    if mode != "test":
        raise ValueError("invalid setup mode " + str(mode)
                         + ", expected 'test' or 'external'.")

    if batch_bound is None:
        batch_bound = t
    alpha = hash_to_scalar(struct.pack("<Q", seed))
    if alpha == 0:
        raise ValueError("seed " + str(seed) + " derives a zero trapdoor.")
    if verbose:
        print("generating test parameters with t =", t)

    powers = []
    exponent = 1
    for _ in range(t + 1):
        powers.append(scalar_mul(G1_GENERATOR, exponent))
        exponent = exponent * alpha % CURVE_ORDER
    g2_powers = []
    exponent = 1
    for _ in range(batch_bound + 1):
        g2_powers.append(scalar_mul(G2_GENERATOR, exponent))
        exponent = exponent * alpha % CURVE_ORDER

    return PublicParams(degree_bound=t, powers=tuple(powers),
                        g2_powers=tuple(g2_powers), test_trapdoor=alpha)

def check_degree(params, poly):
    """Raise ValueError if ``poly`` exceeds the degree bound."""
    if len(normalize(poly)) - 1 > params.degree_bound:
        raise ValueError("polynomial degree " + str(len(normalize(poly)) - 1)
                         + " exceeds degree bound "
                         + str(params.degree_bound) + ".")

def commit(params, poly, use_trapdoor=True):
    """Commit to a polynomial.

    Parameters
    ----------
    params : PublicParams
        Public parameters.
    poly : sequence of int
        Coefficients, lowest degree first.
    use_trapdoor : bool
        Allow the single exponentiation ``g^(poly(alpha))`` when the
        trapdoor is known. Verifiers pass False.

    Returns
    -------
    commitment : tuple
        G1 point ``g^(poly(alpha))``.

    """

    check_degree(params, poly)
    poly = normalize(poly)
    if len(poly) == 0:
        return G1_IDENTITY
    if use_trapdoor and params.test_trapdoor is not None:
        return scalar_mul(G1_GENERATOR, evaluate(poly, params.test_trapdoor))
    return multi_scalar_mul(list(params.powers[:len(poly)]), list(poly))

def open_commitment(params, commitment, poly):
    """Reveal the polynomial behind a commitment.

    Returns the polynomial when it matches ``commitment`` and raises
    ValueError otherwise.

    """
    if not verify_poly(params, commitment, poly):
        raise ValueError("polynomial does not open the given commitment.")
    return normalize(poly)

def verify_poly(params, commitment, poly):
    """Whether ``commitment`` commits to ``poly``.

    Parameters
    ----------
    params : PublicParams
        Public parameters.
    commitment : tuple
        G1 point.
    poly : sequence of int
        Claimed polynomial.

    Returns
    -------
    accepted : bool
        True iff ``commit(params, poly) == commitment``.

    """
    return points_equal(commit(params, poly, use_trapdoor=False), commitment)

def create_witness(params, poly, i):
    """Open a polynomial at one point.

    Parameters
    ----------
    params : PublicParams
        Public parameters.
    poly : sequence of int
        Committed polynomial.
    i : int
        Evaluation point.

    Returns
    -------
    i : int
        The evaluation point.
    value : int
        ``poly(i)``.
    witness : tuple
        G1 commitment to ``(poly(x) - poly(i)) / (x - i)``.

    """

    check_degree(params, poly)
    value = evaluate(poly, i)
    shifted = sub_polys(poly, (value,))
    quotient, remainder = synthetic_division(shifted, i)
    assert remainder == 0, "witness quotient left a remainder"
    return i % CURVE_ORDER, value, commit(params, quotient)

def verify_eval(params, commitment, i, value, witness):
    """Check a single opening with the pairing equation.

    Tests ``e(C - g^value, h) == e(w, h^alpha - h^i)``.

    Returns
    -------
    accepted : bool
        True iff the opening is valid.

    """

    try:
        g2_gen, g2_alpha = params.verification_key
        lhs = point_add(commitment, point_neg(scalar_mul(G1_GENERATOR, value)))
        shifted_key = point_add(g2_alpha, point_neg(scalar_mul(g2_gen, i)))
        return pairing_product_is_one([(lhs, g2_gen),
                                       (point_neg(witness), shifted_key)])
    except (AssertionError, TypeError, ValueError, IndexError):
        return False

def create_batch_witness(params, poly, points):
    """Witness for the evaluations of a polynomial at several points.

    Parameters
    ----------
    params : PublicParams
        Public parameters.
    poly : sequence of int
        Committed polynomial.
    points : sequence of int
        Distinct evaluation points.

    Returns
    -------
    witness : tuple
        G1 commitment to ``(poly - r) / Z`` where ``r`` interpolates the
        opened evaluations and ``Z`` vanishes on ``points``.

    """

    check_degree(params, poly)
    points = [point % CURVE_ORDER for point in points]
    if len(points) == 0:
        raise ValueError("batch witness needs at least one point.")
    if len(set(points)) != len(points):
        raise ValueError("batch witness needs distinct points.")
    remainder_poly = interpolate([(point, evaluate(poly, point))
                                  for point in points])
    quotient = exact_division(sub_polys(poly, remainder_poly),
                              vanishing_polynomial(points))
    return commit(params, quotient)

def verify_batch(params, commitment, opened, witness):
    """Check a batch opening.

    Tests ``e(C - g^(r(alpha)), h) == e(w, h^(Z(alpha)))`` using only the
    public powers.

    Parameters
    ----------
    params : PublicParams
        Public parameters.
    commitment : tuple
        G1 commitment.
    opened : sequence of tuple
        ``(x, y)`` evaluation pairs with distinct ``x``.
    witness : tuple
        G1 batch witness.

    Returns
    -------
    accepted : bool
        True iff every opened evaluation is consistent with the
        commitment.

    """

    if len(opened) > params.batch_bound:
        raise ValueError("batch of " + str(len(opened))
                         + " points exceeds verification key capability of "
                         + str(params.batch_bound) + ".")
    try:
        remainder_poly = interpolate(list(opened),
                                     max_count=params.degree_bound + 1)
        xs = [x for x, _ in opened]
        vanishing = vanishing_polynomial(xs)
        remainder_commitment = commit(params, remainder_poly,
                                      use_trapdoor=False)
        lhs = point_add(commitment, point_neg(remainder_commitment))
        vanishing_commitment = multi_scalar_mul(
            list(params.g2_powers[:len(vanishing)]), list(vanishing))
        return pairing_product_is_one([(lhs, params.g2_powers[0]),
                                       (point_neg(witness),
                                        vanishing_commitment)])
    except (AssertionError, TypeError, ValueError, IndexError):
        return False

def _check_consistency(params):
    """Raise ValueError unless every power follows from its predecessor.

    A random linear combination folds every adjacent pair
    ``(P_{j-1}, P_j)`` into one pairing-product equation per group.

    """

    if not points_equal(params.powers[0], G1_GENERATOR):
        raise ValueError("params powers[0] is not the G1 generator.")
    if not points_equal(params.g2_powers[0], G2_GENERATOR):
        raise ValueError("params g2_powers[0] is not the G2 generator.")
    g2_gen, g2_alpha = params.verification_key

    weights = [secrets.randbelow(CURVE_ORDER - 1) + 1
               for _ in range(len(params.powers) - 1)]
    upper = multi_scalar_mul(list(params.powers[1:]), weights)
    lower = multi_scalar_mul(list(params.powers[:-1]), weights)
    if not pairing_product_is_one([(upper, g2_gen),
                                   (point_neg(lower), g2_alpha)]):
        raise ValueError("params G1 powers are inconsistent.")

    if len(params.g2_powers) > 2:
        weights = [secrets.randbelow(CURVE_ORDER - 1) + 1
                   for _ in range(len(params.g2_powers) - 2)]
        upper = multi_scalar_mul(list(params.g2_powers[2:]), weights)
        lower = multi_scalar_mul(list(params.g2_powers[1:-1]), weights)
        if not pairing_product_is_one([(G1_GENERATOR, upper),
                                       (point_neg(params.powers[1]), lower)]):
            raise ValueError("params G2 powers are inconsistent.")

def params_to_bytes(params):
    """Serialize public parameters.

    Layout: magic, version byte, ``u32 t``, ``u32`` G1 count and points,
    ``u32`` G2 count and points, trapdoor flag byte and optional 32 byte
    trapdoor. Integers are little-endian.

    """
    out = bytearray(PARAMS_MAGIC)
    out += struct.pack("<BI", PARAMS_VERSION, params.degree_bound)
    out += struct.pack("<I", len(params.powers))
    for point in params.powers:
        out += g1_to_bytes(point)
    out += struct.pack("<I", len(params.g2_powers))
    for point in params.g2_powers:
        out += g2_to_bytes(point)
    if params.test_trapdoor is None:
        out += b"\x00"
    else:
        out += b"\x01" + params.test_trapdoor.to_bytes(SCALAR_SIZE, "little")
    return bytes(out)

def params_from_bytes(data, check=True, verbose=False):
    """Parse and optionally validate serialized public parameters.

    Parameters
    ----------
    data : bytes
        Output of ``params_to_bytes``.
    check : bool
        Run the pairing consistency check.
    verbose : bool
        Print progress.

    Returns
    -------
    params : PublicParams
        The decoded parameters.

    """

    try:
        return _params_from_bytes(data, check, verbose)
    except struct.error as error:
        raise ValueError("params file is truncated.") from error

def _params_from_bytes(data, check, verbose):
    if data[:len(PARAMS_MAGIC)] != PARAMS_MAGIC:
        raise ValueError("params file has wrong magic bytes.")
    offset = len(PARAMS_MAGIC)
    version, degree_bound = struct.unpack_from("<BI", data, offset)
    offset += 5
    if version != PARAMS_VERSION:
        raise ValueError("unsupported params file version "
                         + str(version) + ".")

    count, = struct.unpack_from("<I", data, offset)
    offset += 4
    if count != degree_bound + 1:
        raise ValueError("params file holds " + str(count)
                         + " G1 powers for degree bound "
                         + str(degree_bound) + ".")
    powers = []
    for _ in range(count):
        powers.append(g1_from_bytes(data[offset:offset + G1_SIZE]))
        offset += G1_SIZE

    count, = struct.unpack_from("<I", data, offset)
    offset += 4
    if count < 2:
        raise ValueError("params file needs at least two G2 powers.")
    g2_powers = []
    for _ in range(count):
        g2_powers.append(g2_from_bytes(data[offset:offset + G2_SIZE]))
        offset += G2_SIZE

    flag, = struct.unpack_from("<B", data, offset)
    offset += 1
    trapdoor = None
    if flag == 1:
        if len(data) < offset + SCALAR_SIZE:
            raise ValueError("params file is truncated.")
        trapdoor = int.from_bytes(data[offset:offset + SCALAR_SIZE], "little")
        offset += SCALAR_SIZE
    elif flag != 0:
        raise ValueError("params file has invalid trapdoor flag.")
    if offset != len(data):
        raise ValueError("params file has trailing bytes.")

    params = PublicParams(degree_bound=degree_bound, powers=tuple(powers),
                          g2_powers=tuple(g2_powers), test_trapdoor=trapdoor)
    if check:
        if verbose:
            print("checking consistency of", len(powers), "G1 powers and",
                  len(g2_powers), "G2 powers")
        _check_consistency(params)
        if trapdoor is not None and not points_equal(
                params.powers[1], scalar_mul(G1_GENERATOR, trapdoor)):
            raise ValueError("params trapdoor does not match its powers.")
    if trapdoor is not None:
        warnings.warn("loaded test-mode params: the trapdoor is known "
                      + "and commitments are not binding.", RuntimeWarning)
    return params

def save_params(params, params_path):
    """Write public parameters to ``params_path``."""
    with open(params_path, "wb") as file_obj:
        file_obj.write(params_to_bytes(params))

def load_params(params_path, check=True, verbose=False):
    """Read public parameters from ``params_path``.

    See ``params_from_bytes`` for the parameters.

    """
    with open(params_path, "rb") as file_obj:
        data = file_obj.read()
    return params_from_bytes(data, check=check, verbose=verbose)
