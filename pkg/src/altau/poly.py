"""Exact sparse polynomials in the shifted lattice variables q_{n+i}, r_{n+i}.

The ring is generated over the rationals by two families of indeterminates
indexed by an integer offset.  A variable is a pair ``(kind, offset)`` with
``kind`` in ``{"q", "r"}``; the canonical variable order is kind first
(``"q"`` before ``"r"``), then offset ascending.  Monomials are stored as
sorted tuples of ``(variable, exponent)`` pairs with positive exponents, and
polynomials as a map from monomial to nonzero :class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

Var = Tuple[str, int]
Monomial = Tuple[Tuple[Var, int], ...]
Scalar = Union[int, Fraction]

_ONE_MONO: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    """Merge two sorted monomials, adding exponents."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            out.append((v1, e1 + e2))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class Polynomial:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] = ()):
        # Callers must pass canonical data: no zero coefficients, sorted keys.
        self.terms: Dict[Monomial, Fraction] = dict(terms)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def const(value: Scalar) -> "Polynomial":
        value = Fraction(value)
        if value == 0:
            return Polynomial()
        return Polynomial({_ONE_MONO: value})

    @staticmethod
    def variable(kind: str, offset: int) -> "Polynomial":
        if kind not in ("q", "r"):
            raise ValueError(f"variable kind must be 'q' or 'r', got {kind!r}")
        # Plain int coefficient: integer arithmetic stays on the fast path,
        # and int == Fraction comparisons keep equality semantics intact.
        return Polynomial({(((kind, offset), 1),): 1})

    # -- ring structure ----------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            if acc is None:
                out[mono] = coeff
            else:
                acc = acc + coeff
                if acc:
                    out[mono] = acc
                else:
                    del out[mono]
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial()
            f = Fraction(other)
            return Polynomial({m: c * f for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        if len(self.terms) > len(other.terms):
            big, small = self.terms, other.terms
        else:
            big, small = other.terms, self.terms
        out: Dict[Monomial, Fraction] = {}
        for m2, c2 in small.items():
            for m1, c1 in big.items():
                mono = _mono_mul(m1, m2)
                coeff = c1 * c2
                acc = out.get(mono)
                if acc is None:
                    out[mono] = coeff
                else:
                    acc = acc + coeff
                    if acc:
                        out[mono] = acc
                    else:
                        del out[mono]
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base if exponent > 1 else base
            exponent >>= 1
        return result

    # -- comparisons / predicates -------------------------------------------

    def __eq__(self, other) -> bool:
        other = Polynomial._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_constant(self) -> bool:
        return all(m == _ONE_MONO for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(_ONE_MONO, Fraction(0))

    # -- operations ---------------------------------------------------------

    def shift(self, k: int) -> "Polynomial":
        """Apply the shift automorphism: every offset increases by k."""
        if k == 0 or not self.terms:
            return self
        out = {}
        for mono, coeff in self.terms.items():
            out[tuple(((kind, off + k), e) for (kind, off), e in mono)] = coeff
        return Polynomial(out)

    def variables(self) -> set:
        vs = set()
        for mono in self.terms:
            for var, _ in mono:
                vs.add(var)
        return vs

    def substitute(self, assign: Mapping[Var, Fraction]) -> Fraction:
        """Evaluate with every variable mapped to a rational."""
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            value = coeff
            for var, e in mono:
                value *= Fraction(assign[var]) ** e
            total += value
        return total

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        items = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            items.append(
                {
                    "coeff": f"{coeff.numerator}/{coeff.denominator}",
                    "vars": [[kind, off, e] for (kind, off), e in mono],
                }
            )
        return {"terms": items}

    @staticmethod
    def from_json(data: dict) -> "Polynomial":
        out: Dict[Monomial, Fraction] = {}
        for item in data["terms"]:
            mono = tuple(((kind, off), e) for kind, off, e in item["vars"])
            out[mono] = Fraction(item["coeff"])
        return Polynomial(out)

    # -- display ---------------------------------------------------------------

    @staticmethod
    def _var_str(var: Var) -> str:
        kind, off = var
        if off == 0:
            return f"{kind}[n]"
        return f"{kind}[n{off:+d}]"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            coeff = self.terms[mono]
            factors = []
            for var, e in mono:
                factors.append(self._var_str(var) + (f"^{e}" if e > 1 else ""))
            body = "*".join(factors)
            if not body:
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(body)
            elif coeff == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{coeff}*{body}")
        out = " + ".join(parts)
        return out.replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Polynomial({self})"


ZERO = Polynomial()
ONE = Polynomial.const(1)


def qvar(offset: int = 0) -> Polynomial:
    return Polynomial.variable("q", offset)


def rvar(offset: int = 0) -> Polynomial:
    return Polynomial.variable("r", offset)


def poly_sum(polys: Iterable[Polynomial]) -> Polynomial:
    total = ZERO
    for p in polys:
        total = total + p
    return total
