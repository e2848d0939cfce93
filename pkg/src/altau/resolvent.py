"""Basic matrix resolvents of the Ablowitz-Ladik Lax operator.

The Lax operator is L = shift + U with U = [[lam, r_n], [lam*q_n, 1]].  The
two basic resolvents are the unique series solutions of shift(R) U = U R
with trace 1, determinant 0 and prescribed constant term: R_minus is a power
series in lam, R_plus in 1/lam.

Writing R_minus = [[a, b], [c, 1-a]] and R_plus = [[1+a, b], [c, -a]], the
resolvent equation reduces to a linear recursion for the coefficient families
a_p, b_p, c_p, with the quadratic normalization a -+ a^2 -+ b c = a fixing the
integration constants.  Two of the scalar equations are redundant and are
kept as consistency assertions at every order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .matrix import Direction, Matrix2, MatrixSeries
from .poly import ONE, ZERO, Polynomial, qvar, rvar

MINUS = -1
PLUS = +1

_QN = qvar(0)
_RN = rvar(0)


class ConsistencyError(RuntimeError):
    """An internal cross-check of the resolvent recursion failed."""


@dataclass
class ResolventBundle:
    sign: int                 # +1 or -1
    a: List[Polynomial]
    b: List[Polynomial]
    c: List[Polynomial]

    @property
    def order(self) -> int:
        return len(self.a) - 1

    def constant_matrix(self) -> Matrix2:
        if self.sign == MINUS:
            return Matrix2(ZERO, ZERO, ZERO, ONE)
        return Matrix2(ONE, ZERO, ZERO, ZERO)

    def coeff(self, p: int) -> Matrix2:
        """Series coefficient of lam^p (minus) or lam^-p (plus)."""
        m = Matrix2(self.a[p], self.b[p], self.c[p], -self.a[p])
        if p == 0:
            m = m + self.constant_matrix()
        return m

    @property
    def series(self) -> MatrixSeries:
        direction = Direction.ASCENDING if self.sign == MINUS else Direction.ASCENDING_INVERSE
        return MatrixSeries(direction, [self.coeff(p) for p in range(self.order + 1)])

    def to_json(self) -> dict:
        return {
            "sign": "-" if self.sign == MINUS else "+",
            "order": self.order,
            "a": [p.to_json() for p in self.a],
            "b": [p.to_json() for p in self.b],
            "c": [p.to_json() for p in self.c],
        }


def _lam_plus_one(f: Polynomial) -> Polynomial:
    return f.shift(1) + f


def _extend_minus(a, b, c) -> None:
    """Append the next-order coefficients for R_minus.

    Order p from order p-1:
      c_p = shift(c_{p-1}) - q_n (shift+1) a_{p-1} + delta_{p,1} q_n
      a_p = sum_{j=1}^{p-1} (a_j a_{p-j} + b_j c_{p-j}) + r_{n-1} c_p
      b_p = shift^{-1}( b_{p-1} - r_n (shift+1) a_p )
    """
    p = len(a)
    cp = c[p - 1].shift(1) - _QN * _lam_plus_one(a[p - 1])
    if p == 1:
        cp = cp + _QN
    ap = rvar(-1) * cp
    for j in range(1, p):
        ap = ap + a[j] * a[p - j] + b[j] * c[p - j]
    bp = (b[p - 1] - _RN * _lam_plus_one(ap)).shift(-1)
    a.append(ap)
    b.append(bp)
    c.append(cp)
    # Redundant scalar equations, kept as internal cross-checks.
    lhs11 = (a[p - 1].shift(1) - a[p - 1]) + _QN * b[p - 1].shift(1) - _RN * cp
    if lhs11:
        raise ConsistencyError(f"R_minus (1,1)-equation fails at order {p - 1}: {lhs11}")
    lhs21 = (ap.shift(1) - ap) - _RN * cp.shift(1) + _QN * b[p - 1]
    if lhs21:
        raise ConsistencyError(f"R_minus (2,1)-equation fails at order {p}: {lhs21}")


def _extend_plus(a, b, c) -> None:
    """Append the next-order coefficients for R_plus.

    Order p from order p-1:
      b_p = shift(b_{p-1}) + r_n (shift+1) a_{p-1} + delta_{p,1} r_n
      a_p = -sum_{j=1}^{p-1} (a_j a_{p-j} + b_j c_{p-j}) - q_{n-1} b_p
      c_p = shift^{-1}( c_{p-1} + q_n (shift+1) a_p )
    """
    p = len(a)
    bp = b[p - 1].shift(1) + _RN * _lam_plus_one(a[p - 1])
    if p == 1:
        bp = bp + _RN
    ap = -(qvar(-1) * bp)
    for j in range(1, p):
        ap = ap - a[j] * a[p - j] - b[j] * c[p - j]
    cp = (c[p - 1] + _QN * _lam_plus_one(ap)).shift(-1)
    a.append(ap)
    b.append(bp)
    c.append(cp)
    lhs11 = (ap.shift(1) - ap) + _QN * bp.shift(1) - _RN * c[p - 1]
    if lhs11:
        raise ConsistencyError(f"R_plus (1,1)-equation fails at order {p}: {lhs11}")
    lhs21 = (a[p - 1].shift(1) - a[p - 1]) - _RN * c[p - 1].shift(1) + _QN * bp
    if lhs21:
        raise ConsistencyError(f"R_plus (2,1)-equation fails at order {p - 1}: {lhs21}")


_CACHE: Dict[int, Tuple[list, list, list]] = {
    MINUS: ([ZERO], [rvar(-1)], [ZERO]),
    PLUS: ([ZERO], [ZERO], [qvar(-1)]),
}


def compute_resolvent(sign: int, order: int) -> ResolventBundle:
    """Basic matrix resolvent of the given sign, truncated at ``order``.

    Coefficients are cached and extended on demand; the recursion is
    sequential in the order but each extension is pure.
    """
    if sign not in (PLUS, MINUS):
        raise ValueError("sign must be +1 or -1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    a, b, c = _CACHE[sign]
    extend = _extend_minus if sign == MINUS else _extend_plus
    while len(a) <= order:
        extend(a, b, c)
    return ResolventBundle(sign, a[: order + 1], b[: order + 1], c[: order + 1])


def extract_abc(bundle: ResolventBundle):
    return bundle.a, bundle.b, bundle.c


@dataclass
class VMatrix:
    """Polynomial-in-lam generator matrix of one hierarchy flow.

    For sign -1 the support is lam^-p .. lam^0, for sign +1 it is
    lam^0 .. lam^p; ``value`` stores it ascending from lam^0 toward the
    supported side.
    """
    sign: int
    p: int
    value: MatrixSeries

    def coeff_signed(self, exponent: int) -> Matrix2:
        """Coefficient of lam^exponent (exponent signed)."""
        if self.sign == PLUS:
            return self.value.coeff(exponent) if exponent >= 0 else Matrix2.zeros()
        return self.value.coeff(-exponent) if exponent <= 0 else Matrix2.zeros()


def compute_v(sign: int, p: int, bundle: ResolventBundle = None) -> VMatrix:
    """Assemble V_{sign,p} as the polynomial part of lam^{-sign*p} R_sign.

    V_{-,p} = (lam^-p R_-)_{<=0} - [[a_p, b_p], [0, 0]]
    V_{+,p} = (lam^p  R_+)_{>=0} - [[0, 0], [c_p, -a_p]]
    """
    if bundle is None or bundle.order < p:
        bundle = compute_resolvent(sign, p)
    if bundle.sign != sign:
        raise ValueError("bundle sign mismatch")
    # Index j in `coeffs` is the coefficient of lam^{-j} (minus) / lam^{j} (plus);
    # position j holds the resolvent coefficient of order p-j.
    coeffs = [bundle.coeff(p - j) for j in range(p + 1)]
    if sign == MINUS:
        coeffs[0] = coeffs[0] - Matrix2(bundle.a[p], bundle.b[p], ZERO, ZERO)
        return VMatrix(MINUS, p, MatrixSeries(Direction.ASCENDING_INVERSE, coeffs))
    coeffs[0] = coeffs[0] - Matrix2(ZERO, ZERO, bundle.c[p], -bundle.a[p])
    return VMatrix(PLUS, p, MatrixSeries(Direction.ASCENDING, coeffs))
