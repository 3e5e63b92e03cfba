"""Polynomial arithmetic over the scalar field.

Polynomials are tuples of python integers modulo ``CURVE_ORDER``,
lowest degree coefficient first, with trailing zeros trimmed. The zero
polynomial is the empty tuple.

"""

__authors__ = "bplus_kzg_py contributors"
__date__ = "18 Oct 2026"

from bplus_kzg_py.algebra.curve import CURVE_ORDER, scalar_inverse

def normalize(coefficients):
    """Reduce coefficients modulo p and trim trailing zeros.

    Parameters
    ----------
    coefficients : iterable of int
        Coefficients, lowest degree first.

    Returns
    -------
    poly : tuple of int
        Canonical polynomial.

    """
    poly = [int(coeff) % CURVE_ORDER for coeff in coefficients]
    while poly and poly[-1] == 0:
        poly.pop()
    return tuple(poly)

def evaluate(poly, x):
    """Evaluate a polynomial with Horner's rule.

    Parameters
    ----------
    poly : sequence of int
        Coefficients, lowest degree first.
    x : int
        Evaluation point.

    Returns
    -------
    value : int
        ``poly(x)`` modulo p.

    """
    value = 0
    x %= CURVE_ORDER
    for coeff in reversed(poly):
        value = (value * x + coeff) % CURVE_ORDER
    return value

def sub_polys(poly_a, poly_b):
    """Difference ``poly_a - poly_b``."""
    length = max(len(poly_a), len(poly_b))
    return normalize((poly_a[i] if i < len(poly_a) else 0)
                   - (poly_b[i] if i < len(poly_b) else 0)
                     for i in range(length))

def mul_polys(poly_a, poly_b):
    """Product of two polynomials."""
    if len(poly_a) == 0 or len(poly_b) == 0:
        return ()
    product = [0] * (len(poly_a) + len(poly_b) - 1)
    for i, coeff_a in enumerate(poly_a):
        if coeff_a == 0:
            continue
        for j, coeff_b in enumerate(poly_b):
            product[i + j] = (product[i + j] + coeff_a * coeff_b) % CURVE_ORDER
    return normalize(product)

def synthetic_division(poly, root):
    """Divide by ``(x - root)``.

    Parameters
    ----------
    poly : sequence of int
        Dividend, lowest degree first.
    root : int
        Root of the linear divisor.

    Returns
    -------
    quotient : tuple of int
        Quotient polynomial.
    remainder : int
        Remainder, equal to ``poly(root)``.

    """
    poly = normalize(poly)
    if len(poly) == 0:
        return (), 0
    root %= CURVE_ORDER
    quotient = [0] * (len(poly) - 1)
    carry = 0
    for i in range(len(poly) - 1, 0, -1):
        carry = (carry * root + poly[i]) % CURVE_ORDER
        quotient[i - 1] = carry
    remainder = (carry * root + poly[0]) % CURVE_ORDER
    return normalize(quotient), remainder

def divmod_polys(dividend, divisor):
    """Long division of polynomials.

    Parameters
    ----------
    dividend : sequence of int
        Polynomial to divide.
    divisor : sequence of int
        Nonzero polynomial to divide by.

    Returns
    -------
    quotient : tuple of int
        Quotient polynomial.
    remainder : tuple of int
        Remainder with degree below the divisor's.

    """
    dividend = list(normalize(dividend))
    divisor = normalize(divisor)
    if len(divisor) == 0:
        raise ZeroDivisionError("division by the zero polynomial.")
    if len(dividend) < len(divisor):
        return (), tuple(dividend)

    lead_inverse = scalar_inverse(divisor[-1])
    quotient = [0] * (len(dividend) - len(divisor) + 1)
    for shift in range(len(quotient) - 1, -1, -1):
        coeff = dividend[shift + len(divisor) - 1] * lead_inverse % CURVE_ORDER
        quotient[shift] = coeff
        if coeff == 0:
            continue
        for j, divisor_coeff in enumerate(divisor):
            dividend[shift + j] = (dividend[shift + j]
                                   - coeff * divisor_coeff) % CURVE_ORDER
    return normalize(quotient), normalize(dividend[:len(divisor) - 1])

def exact_division(dividend, divisor):
    """Divide polynomials whose remainder must be zero.

    A nonzero remainder means the caller passed inconsistent data and
    fails an assertion.

    """
    quotient, remainder = divmod_polys(dividend, divisor)
    assert len(remainder) == 0, "exact polynomial division left a remainder"
    return quotient

def vanishing_polynomial(points):
    """Monic polynomial with a root at every given point.

    Parameters
    ----------
    points : sequence of int
        Roots.

    Returns
    -------
    poly : tuple of int
        ``prod(x - m)`` over the points.

    """
    poly = [1]
    for point in points:
        point %= CURVE_ORDER
        shifted = [0] + poly
        for i, coeff in enumerate(poly):
            shifted[i] = (shifted[i] - point * coeff) % CURVE_ORDER
        poly = shifted
    return normalize(poly)

def interpolate(points, max_count=None):
    """Lagrange interpolation through a list of points.

    Runs in quadratic time: the vanishing polynomial of all abscissae is
    divided by each ``(x - x_i)`` to obtain the basis numerators.

    Parameters
    ----------
    points : sequence of tuple
        ``(x, y)`` pairs with distinct ``x``.
    max_count : int or None
        Largest number of points allowed, normally the degree bound
        plus one.

    Returns
    -------
    poly : tuple of int
        Polynomial of degree below ``len(points)`` through every point.

    """

    if len(points) == 0:
        raise ValueError("interpolate needs at least one point.")
    if max_count is not None and len(points) > max_count:
        raise ValueError("interpolate got " + str(len(points))
                         + " points, degree bound allows at most "
                         + str(max_count) + ".")
    xs = [x % CURVE_ORDER for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolate needs distinct x values.")

    full = vanishing_polynomial(xs)
    coefficients = [0] * len(points)
    for x_i, (_, y_i) in zip(xs, points):
        y_i %= CURVE_ORDER
        if y_i == 0:
            continue
        numerator, _ = synthetic_division(full, x_i)
        denominator = evaluate(numerator, x_i)
        factor = y_i * scalar_inverse(denominator) % CURVE_ORDER
        for j, coeff in enumerate(numerator):
            coefficients[j] = (coefficients[j] + factor * coeff) % CURVE_ORDER
    return normalize(coefficients)
