from typing import List, Sequence, Union

import numpy as np
from numpy.polynomial import Polynomial

from src.utils.errors import UnsupportedDegreeError

MAX_DEGREE = 4
POLISH_ITERATIONS = 8

# A closed-loop pole; conjugate pairs are exact conjugates of each other.
ComplexRoot = complex


def as_poly(p: Union[Polynomial, Sequence[float]]) -> Polynomial:
    """Accept a Polynomial or ascending coefficients and drop zero leading terms."""
    coeffs = p.coef if isinstance(p, Polynomial) else np.asarray(p, dtype=float)
    return Polynomial(np.asarray(coeffs, dtype=float)).trim()


def poly_roots(p: Union[Polynomial, Sequence[float]]) -> List[ComplexRoot]:
    """All complex roots of a real polynomial of degree 1 to 4.

    Roots come from the eigenvalues of the companion matrix, are polished by
    Newton steps that never increase the residual, and complex roots are
    emitted as exact conjugate pairs. The result is sorted by real then
    imaginary part.
    """
    poly = as_poly(p)
    degree = poly.degree()
    if degree < 1 or degree > MAX_DEGREE:
        raise UnsupportedDegreeError(f"Root finding supports degree 1-{MAX_DEGREE}, got degree {degree}")

    monic = Polynomial(poly.coef / poly.coef[-1])
    slope = monic.deriv()

    roots: List[ComplexRoot] = []
    for raw in np.atleast_1d(monic.roots()):
        raw = complex(raw)
        if raw.imag < 0:
            continue
        if raw.imag == 0:
            roots.append(complex(_polish(monic, slope, raw.real), 0.0))
        else:
            root = complex(_polish(monic, slope, raw))
            roots.append(root)
            roots.append(root.conjugate())

    return sorted(roots, key=lambda r: (r.real, r.imag))


def residual(p: Union[Polynomial, Sequence[float]], root: ComplexRoot) -> float:
    """|p(root)| relative to the leading coefficient and the largest coefficient."""
    poly = as_poly(p)
    monic = poly.coef / poly.coef[-1]
    return abs(Polynomial(monic)(root)) / np.max(np.abs(monic))


def _polish(poly: Polynomial, slope: Polynomial, root):
    best = root
    best_residual = abs(poly(root))
    for _ in range(POLISH_ITERATIONS):
        if best_residual == 0:
            break
        derivative = slope(best)
        if derivative == 0:
            break
        candidate = best - poly(best) / derivative
        candidate_residual = abs(poly(candidate))
        if not candidate_residual < best_residual:
            break
        best, best_residual = candidate, candidate_residual
    return best
