"""Symmetric tensors and the tensor valuation M^{0,p}.

A symmetric tensor of order p on R^n is stored sparsely by sorted
multi-index.  The stored value is the tensor entry itself (for every
permutation of the index), so contraction with ``x^p`` multiplies each stored
entry by the number of distinct permutations of its index.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial
from typing import Callable, Sequence

from .linalg import LinearMap
from .polytope import Polytope
from .scalar import Scalar, as_scalar

__all__ = ["MAX_ORDER", "SymTensor", "act_inverse_transpose", "contract", "m0p"]

MAX_ORDER = 6


def _multiplicity(idx: tuple) -> int:
    out = factorial(len(idx))
    for c in Counter(idx).values():
        out //= factorial(c)
    return out


@dataclass(frozen=True)
class SymTensor:
    order: int
    dim: int
    coeffs: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not 1 <= self.order <= MAX_ORDER:
            raise ValueError(f"tensor order must lie in 1..{MAX_ORDER}")
        clean = {}
        for idx, v in self.coeffs.items():
            key = tuple(sorted(idx))
            if len(key) != self.order or not all(0 <= i < self.dim for i in key):
                raise ValueError(f"bad multi-index {idx!r}")
            if v != 0:
                clean[key] = clean.get(key, 0) + v
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v != 0})

    def __getitem__(self, idx) -> Scalar:
        return self.coeffs.get(tuple(sorted(idx)), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.order, self.dim, self.coeffs) == (other.order, other.dim, other.coeffs)

    def __add__(self, other: SymTensor) -> SymTensor:
        if (self.order, self.dim) != (other.order, other.dim):
            raise ValueError("shape mismatch")
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return SymTensor(self.order, self.dim, out)

    def is_zero(self) -> bool:
        return not self.coeffs

    @classmethod
    def power(cls, v: Sequence, p: int, weight=1) -> SymTensor:
        """``weight * v^{(x) p}``"""
        coeffs = {}
        for idx in combinations_with_replacement(range(len(v)), p):
            term = weight
            for i in idx:
                term = term * v[i]
            if term:
                coeffs[idx] = term
        return cls(p, len(v), coeffs)


def contract(T: SymTensor, x: Sequence) -> Scalar:
    """``<T, x^p>``"""
    if len(x) != T.dim:
        raise ValueError("dimension mismatch")
    x = [as_scalar(c) for c in x]
    total = Fraction(0)
    for idx, v in T.coeffs.items():
        term = v * _multiplicity(idx)
        for i in idx:
            term = term * x[i]
        total = total + term
    return total


def _identity(v):
    return v


def m0p(P: Polytope, xi: Callable = _identity, p: int = 1) -> SymTensor:
    """``sum over u in N_o(P) of (u/h_P(u))^p xi(V_P(u))``."""
    if p < 1:
        raise ValueError("order must be at least 1")
    acc: dict = {}
    for f in P.facets:
        if f.support == 0:
            continue
        v = [c / f.support for c in f.normal]
        for idx, val in SymTensor.power(v, p, xi(f.cone_volume)).coeffs.items():
            acc[idx] = acc.get(idx, 0) + val
    return SymTensor(p, P.ambient_dim, acc)


def act_inverse_transpose(phi: LinearMap, T: SymTensor) -> SymTensor:
    """The tensor S with ``<S, x^p> = <T, (phi^{-1} x)^p>``.

    For p = 1 this is ``phi^{-t}`` applied to the vector of entries.
    """
    if phi.n != T.dim:
        raise ValueError("dimension mismatch")
    inv = phi.inverse.matrix  # raises on singular maps
    n, p = T.dim, T.order
    out = {}
    for jdx in combinations_with_replacement(range(n), p):
        # S_j = sum over all (unsorted) i of T_i prod_k inv[i_k][j_k]
        total = Fraction(0)
        for idx in product(range(n), repeat=p):
            v = T.coeffs.get(tuple(sorted(idx)))
            if v is None:
                continue
            term = v
            for i, j in zip(idx, jdx):
                c = inv[i][j]
                if not c:
                    term = 0
                    break
                term = term * c
            if term:
                total = total + term
        if total:
            out[jdx] = total
    return SymTensor(p, n, out)
