"""Multi-variable truncated Laurent expansions in a fixed modulus regime.

The generating identities for the hierarchy involve rational kernels
1/(lam_i - lam_j) that only become series after declaring which variable has
the larger modulus.  The regime used throughout is: every variable attached
to a "+" resolvent dominates every variable attached to a "-" resolvent, and
inside each sign class the modulus decreases with list position.

A :class:`RegimeSeries` is a plain sparse table of integer exponent vectors.
Exactness of coefficient extraction is guaranteed by interval constraint
propagation over the factor supports (see :func:`factor_windows`): an
exponent is dropped only when no completion by the remaining factors can
reach a requested target exponent vector, so the extracted coefficients are
exact values of the full (untruncated) expansion.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Sequence, Tuple

from .matrix import Matrix2

_INF = 10 ** 9

ExpVec = Tuple[int, ...]


class RegimeSeries:
    """Sparse multi-variable Laurent data: exponent vector -> coefficient."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Dict[ExpVec, object] = None):
        self.nvars = nvars
        self.terms = dict(terms) if terms else {}

    def coeff(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def _check(self, other: "RegimeSeries"):
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: "RegimeSeries") -> "RegimeSeries":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            acc = out.get(e)
            if acc is None:
                out[e] = c
            else:
                acc = acc + c
                if acc:
                    out[e] = acc
                else:
                    del out[e]
        return RegimeSeries(self.nvars, out)

    def __neg__(self) -> "RegimeSeries":
        return RegimeSeries(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "RegimeSeries") -> "RegimeSeries":
        return self + (-other)

    def __mul__(self, other: "RegimeSeries") -> "RegimeSeries":
        self._check(other)
        out: Dict[ExpVec, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc = out.get(e)
                if acc is None:
                    out[e] = c
                else:
                    acc = acc + c
                    if acc:
                        out[e] = acc
                    else:
                        del out[e]
        return RegimeSeries(self.nvars, out)

    def scale(self, factor) -> "RegimeSeries":
        if not factor:
            return RegimeSeries(self.nvars)
        return RegimeSeries(self.nvars, {e: c * factor for e, c in self.terms.items()})

    def clamp(self, bounds: Sequence[Tuple[int, int]]) -> "RegimeSeries":
        out = {
            e: c
            for e, c in self.terms.items()
            if all(lo <= x <= hi for x, (lo, hi) in zip(e, bounds))
        }
        return RegimeSeries(self.nvars, out)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, RegimeSeries) and self.terms == other.terms


def regime_ranks(pattern: Sequence[int]) -> List[int]:
    """Modulus rank per variable (0 = largest modulus) in the fixed regime."""
    order = sorted(range(len(pattern)), key=lambda j: (pattern[j] != 1, j))
    ranks = [0] * len(pattern)
    for rank, j in enumerate(order):
        ranks[j] = rank
    return ranks


def kernel_expand(nvars: int, i: int, j: int, power: int,
                  ranks: Sequence[int], order: int) -> RegimeSeries:
    """Expand 1/(lam_i - lam_j)^power in the declared regime.

    If lam_i dominates:  sum_{m>=0} C(m+power-1, power-1) lam_j^m lam_i^{-m-power};
    otherwise the expansion is anchored at lam_j, with sign (-1)^power.
    """
    if i == j:
        raise ValueError("kernel variables must differ")
    if power < 1:
        raise ValueError("power must be >= 1")
    sign = 1
    dom, sub = i, j
    if ranks[i] > ranks[j]:
        dom, sub = j, i
        sign = (-1) ** power
    terms: Dict[ExpVec, object] = {}
    for m in range(order + 1):
        e = [0] * nvars
        e[dom] = -m - power
        e[sub] = m
        terms[tuple(e)] = sign * comb(m + power - 1, power - 1)
    return RegimeSeries(nvars, terms)


# ---------------------------------------------------------------------------
# Exact truncation windows for cyclic trace products.
# ---------------------------------------------------------------------------

@dataclass
class FactorPlan:
    """Truncation plan for one cyclic-product factor set.

    resolvent_orders[j]: maximal resolvent order of variable j that can
    contribute to any target exponent vector; kernel_orders[e]: maximal
    geometric index of kernel e.  Both are derived purely from the factor
    supports, so exponents beyond them provably cannot reach the targets.
    """
    resolvent_orders: List[int]
    kernel_orders: List[int]
    feasible: bool


def _kernel_interval(dom_side: bool, m_hi: int, power: int) -> Tuple[int, int]:
    if dom_side:
        return (-m_hi - power, -power)
    return (0, m_hi)


def factor_windows(pattern: Sequence[int], pairs: Sequence[Tuple[int, int]],
                   tlo: Sequence[int], thi: Sequence[int],
                   ranks: Sequence[int], power: int = 1) -> FactorPlan:
    """Interval constraint propagation over one cyclic product.

    ``pattern[j]`` is the resolvent sign of variable j; ``pairs`` lists the
    kernel factors 1/(lam_u - lam_w)^power; ``[tlo, thi]`` is the requested
    per-variable target exponent window.  Constraints used:

    * per variable: resolvent exponent = target - sum of kernel exponents;
    * per product: the total exponent of each kernel term is -power, so the
      signed sum of resolvent orders is fixed by the targets.
    """
    k = len(pattern)
    d_hi = [_INF] * k
    m_hi = [_INF] * len(pairs)
    at_var = [[] for _ in range(k)]
    for e, (u, w) in enumerate(pairs):
        dom = u if ranks[u] < ranks[w] else w
        at_var[u].append((e, dom == u))
        at_var[w].append((e, dom == w))

    def r_interval(j):
        return (-d_hi[j], 0) if pattern[j] == 1 else (0, d_hi[j])

    t_sum_lo = sum(tlo) + power * len(pairs)
    t_sum_hi = sum(thi) + power * len(pairs)

    for _ in range(4 * (k + len(pairs)) + 8):
        changed = False
        for j in range(k):
            klo = sum(_kernel_interval(d, min(m_hi[e], _INF), power)[0] for e, d in at_var[j])
            khi = sum(_kernel_interval(d, min(m_hi[e], _INF), power)[1] for e, d in at_var[j])
            if pattern[j] == 1:
                new = min(d_hi[j], khi - tlo[j])
            else:
                new = min(d_hi[j], thi[j] - klo)
            # Conservation: sum_j (-alpha_j d_j) = sum(targets) + power * #kernels.
            others_minus = sum(d_hi[l] for l in range(k) if l != j and pattern[l] == -1)
            if pattern[j] == 1:
                new = min(new, -t_sum_lo + min(others_minus, _INF))
            else:
                new = min(new, t_sum_hi + sum(d_hi[l] for l in range(k)
                                              if l != j and pattern[l] == 1))
            new = max(new, -1)
            if new < d_hi[j]:
                d_hi[j] = new
                changed = True
        for e, (u, w) in enumerate(pairs):
            for v in (u, w):
                rlo, rhi = r_interval(v)
                olo = sum(_kernel_interval(d, m_hi[e2], power)[0]
                          for e2, d in at_var[v] if e2 != e)
                ohi = sum(_kernel_interval(d, m_hi[e2], power)[1]
                          for e2, d in at_var[v] if e2 != e)
                dom_here = next(d for e2, d in at_var[v] if e2 == e)
                if dom_here:
                    new = min(m_hi[e], (rhi + ohi) - tlo[v] - power)
                else:
                    new = min(m_hi[e], thi[v] - rlo - olo)
                new = max(new, -1)
                if new < m_hi[e]:
                    m_hi[e] = new
                    changed = True
        if not changed:
            break
    feasible = all(d >= 0 for d in d_hi) and all(m >= 0 for m in m_hi)
    return FactorPlan(d_hi, m_hi, feasible)


def _matrix_scale_add(out: Dict[ExpVec, Matrix2], e: ExpVec, m: Matrix2):
    acc = out.get(e)
    out[e] = m if acc is None else acc + m


def fold_cyclic_product(matrix_factors: List[Dict[int, Matrix2]],
                        var_of_factor: List[int],
                        kernels: List[RegimeSeries],
                        tlo: Sequence[int], thi: Sequence[int],
                        plan: FactorPlan, pattern: Sequence[int]) -> RegimeSeries:
    """tr( R_1 ... R_k ) * prod(kernels), clamped to the target window.

    ``matrix_factors[i]`` maps a signed exponent of its own variable to a
    2x2 coefficient matrix.  Kernels are scalar and are folded in first
    (they are tiny); matrix factors are folded left to right, and the last
    one enters through the trace only.  After every step the accumulator is
    clamped using the exact supports of the not-yet-consumed factors.
    """
    k = len(matrix_factors)
    nvars = len(tlo)

    # Per-factor per-variable support intervals, for suffix clamping.
    def support(factor_terms, var):
        lo = [0] * nvars
        hi = [0] * nvars
        exps = list(factor_terms)
        lo[var] = min(exps)
        hi[var] = max(exps)
        return lo, hi

    seq = []
    for i, f in enumerate(matrix_factors):
        if not f:
            return RegimeSeries(nvars)
        seq.append(("m", f, support(f, var_of_factor[i])))
    for ker in kernels:
        if not ker.terms:
            return RegimeSeries(nvars)
        lo = [min(e[v] for e in ker.terms) for v in range(nvars)]
        hi = [max(e[v] for e in ker.terms) for v in range(nvars)]
        seq.append(("s", ker, (lo, hi)))
    # Scalars first keeps the matrix chain order intact (scalars commute).
    seq.sort(key=lambda item: item[0] == "m")
    m_positions = [i for i, item in enumerate(seq) if item[0] == "m"]

    suffix_lo = [[0] * nvars for _ in range(len(seq) + 1)]
    suffix_hi = [[0] * nvars for _ in range(len(seq) + 1)]
    for i in range(len(seq) - 1, -1, -1):
        lo, hi = seq[i][2]
        for v in range(nvars):
            suffix_lo[i][v] = suffix_lo[i + 1][v] + lo[v]
            suffix_hi[i][v] = suffix_hi[i + 1][v] + hi[v]

    def clamp_bounds(after_index):
        return [
            (tlo[v] - suffix_hi[after_index][v], thi[v] - suffix_lo[after_index][v])
            for v in range(nvars)
        ]

    acc: Dict[ExpVec, Matrix2] = None
    out_scalar: Dict[ExpVec, object] = {}
    for i, (kind, data, _) in enumerate(seq):
        bounds = clamp_bounds(i + 1)
        last = i == len(seq) - 1
        if acc is None:
            # First factor is a scalar kernel unless there are none.
            if kind == "s":
                acc = {e: None for e in data.terms}  # placeholder, replaced below
                acc = {}
                for e, c in data.terms.items():
                    acc[e] = ("scalar", c)
            else:
                acc = {}
                var = var_of_factor[m_positions.index(i)] if False else None
                raise AssertionError("cyclic product always has kernels")
            continue
        new: Dict[ExpVec, object] = {}
        if kind == "s":
            for e1, payload in acc.items():
                for e2, c2 in data.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    if any(x < lo or x > hi for x, (lo, hi) in zip(e, bounds)):
                        continue
                    if payload[0] == "scalar":
                        item = ("scalar", payload[1] * c2)
                    else:
                        item = ("matrix", payload[1].scale(c2))
                    old = new.get(e)
                    if old is None:
                        new[e] = item
                    else:
                        if old[0] == "scalar":
                            new[e] = ("scalar", old[1] + item[1])
                        else:
                            new[e] = ("matrix", old[1] + item[1])
            acc = new
        else:
            var = var_of_factor[m_positions.index(i)]
            for e2, mat2 in data.items():
                for e1, payload in acc.items():
                    e = list(e1)
                    e[var] += e2
                    e = tuple(e)
                    if any(x < lo or x > hi for x, (lo, hi) in zip(e, bounds)):
                        continue
                    if last:
                        # Only the trace of the full product is needed.
                        a = payload[1]
                        val = (a.e11 * mat2.e11 + a.e12 * mat2.e21
                               + a.e21 * mat2.e12 + a.e22 * mat2.e22) \
                            if payload[0] == "matrix" else mat2.trace() * payload[1]
                        acc_out = out_scalar.get(e)
                        if acc_out is None:
                            out_scalar[e] = val
                        else:
                            out_scalar[e] = acc_out + val
                    else:
                        if payload[0] == "scalar":
                            item = ("matrix", mat2.scale(payload[1]))
                        else:
                            item = ("matrix", payload[1] @ mat2)
                        old = new.get(e)
                        if old is None:
                            new[e] = item
                        else:
                            new[e] = ("matrix", old[1] + item[1])
            if not last:
                acc = new
    if acc is not None and not m_positions:
        raise AssertionError("cyclic product must contain matrix factors")
    return RegimeSeries(nvars, {e: c for e, c in out_scalar.items() if c})
