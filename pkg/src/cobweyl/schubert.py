"""Divided-difference operators on Sym(T-hat) and the torsion index.

The characteristic map lands in the Chow ring of the flag variety, free on
classes indexed by Weyl elements; the coefficient of the length-k class at a
degree-k input is the constant term of the composite divided difference
along one reduced word.  The torsion index is the lcm over degrees of the
exponent of the cokernel of that map on monomials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Sequence

from .lattices import IntMat, cokernel
from .series import Generator, GradedPoly, PolyRing
from .weyl import Mat, RootDatum, WeylElement, WeylGroup, weyl_group


class DivisionError(ArithmeticError):
    """Internal error: (f - s_i f) failed to divide by alpha_i exactly."""


@lru_cache(maxsize=None)
def sym_ring(rank: int) -> PolyRing:
    """Sym(T-hat): polynomials in l1..lr, each of degree 1."""
    return PolyRing([Generator(f"l{i}", 1) for i in range(1, rank + 1)])


def linear_form(ring: PolyRing, coords: Sequence[int]) -> GradedPoly:
    out = ring.zero()
    for i, c in enumerate(coords):
        if c:
            out = out + ring.gen(f"l{i + 1}").scale(c)
    return out


def apply_matrix(ring: PolyRing, m: Mat, f: GradedPoly) -> GradedPoly:
    """Linear substitution l_j -> sum_k m[k][j] l_k."""
    rank = len(m)
    images = [linear_form(ring, [m[k][j] for k in range(rank)]) for j in range(rank)]
    pow_cache: list[list[GradedPoly]] = [[ring.one(), img] for img in images]

    def power(j: int, e: int) -> GradedPoly:
        cache = pow_cache[j]
        while len(cache) <= e:
            cache.append(cache[-1] * cache[1])
        return cache[e]

    out = ring.zero()
    for exps, c in f.terms.items():
        term = ring.const(c)
        for j, e in enumerate(exps):
            if e:
                term = term * power(j, e)
        out = out + term
    return out


def weyl_substitute(rd: RootDatum, w: WeylElement, f: GradedPoly) -> GradedPoly:
    return apply_matrix(sym_ring(rd.rank), w.matrix, f)


def exact_div_linear(f: GradedPoly, alpha: GradedPoly) -> GradedPoly:
    """Exact quotient f / alpha for a nonzero linear form alpha."""
    ring = f.ring
    pivot = None
    for e, c in sorted(alpha.terms.items()):
        k = next(i for i, p in enumerate(e) if p)
        pivot = (k, c)
        break
    if pivot is None:
        raise ZeroDivisionError("division by the zero form")
    k, ck = pivot
    quotient = ring.zero()
    rem = f
    while rem.terms:
        exps, c = max(rem.terms.items(), key=lambda t: (t[0][k], sum(t[0]), t[0]))
        if exps[k] == 0:
            raise DivisionError(f"{f} is not divisible by {alpha}")
        ne = list(exps)
        ne[k] -= 1
        mono = ring.monomial(tuple(ne), Fraction(c) / ck)
        quotient = quotient + mono
        rem = rem - mono * alpha
    return quotient


def divided_difference(rd: RootDatum, i: int, f: GradedPoly) -> GradedPoly:
    """The operator f -> (f - s_i f)/alpha_i; drops degree by one."""
    ring = sym_ring(rd.rank)
    num = f - weyl_substitute(rd, _simple_element(rd, i), f)
    if num.is_zero():
        return ring.zero()
    return exact_div_linear(num, linear_form(ring, rd.simple_roots[i - 1]))


def _simple_element(rd: RootDatum, i: int) -> WeylElement:
    return weyl_group(rd).simple(i)


def demazure_word(rd: RootDatum, word: Sequence[int], f: GradedPoly) -> GradedPoly:
    """Composite along a word, rightmost letter applied first."""
    out = f
    for i in reversed(tuple(word)):
        out = divided_difference(rd, i, out)
        if out.is_zero():
            break
    return out


@dataclass(frozen=True)
class SchubertVector:
    degree: int
    entries: dict  # reduced word of w (length == degree) -> int

    def as_list(self, group: WeylGroup) -> list[int]:
        ws = [e for e in group if e.length == self.degree]
        return [self.entries.get(e.word, 0) for e in ws]


def char_hom_schubert(rd: RootDatum, f: GradedPoly) -> SchubertVector:
    """Coefficients of the characteristic map on the degree-k cell classes."""
    k = f.degree()
    if k is None:
        return SchubertVector(0, {})
    group = weyl_group(rd)
    if group.datum.nsimple and k > group.positive_root_count():
        return SchubertVector(k, {})
    entries = {}
    for e in group:
        if e.length != k:
            continue
        g = demazure_word(rd, e.word, f)
        val = g.constant_term()
        if g != g.ring.const(val):
            raise AssertionError(f"nonconstant after {k} divided differences: {g}")
        if not isinstance(val, int):
            raise AssertionError(f"non-integer cell coefficient {val}")
        if val:
            entries[e.word] = val
    return SchubertVector(k, entries)


def degree_monomials(rank: int, k: int) -> list[tuple[int, ...]]:
    """Exponent tuples of the degree-k monomials in l1..lr, deterministic."""
    out = []
    for combo in combinations_with_replacement(range(rank), k):
        e = [0] * rank
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out


@dataclass(frozen=True)
class DegreeCokernel:
    degree: int
    matrix_shape: tuple[int, int]
    divisors: tuple[int, ...]
    exponent: int


@dataclass(frozen=True)
class TorsionReport:
    name: str
    tau: int
    connected_tau: int
    component_count: int
    per_degree: tuple[DegreeCokernel, ...]


def torsion_index(rd: RootDatum, component_count: int = 1) -> TorsionReport:
    """Least positive integer killing the cokernel of the characteristic map,
    computed degree by degree; an optional component-count multiplier models
    disconnected groups."""
    if component_count < 1:
        raise ValueError("component count must be a positive integer")
    group = weyl_group(rd)
    npos = group.positive_root_count() if rd.nsimple else 0
    ring = sym_ring(rd.rank)
    tau = 1
    per_degree = []
    for k in range(npos + 1):
        ws = [e for e in group if e.length == k]
        mons = degree_monomials(rd.rank, k)
        cols = []
        for exps in mons:
            vec = char_hom_schubert(rd, ring.monomial(exps, 1))
            cols.append([vec.entries.get(e.word, 0) for e in ws])
        M = IntMat.from_rows([[col[i] for col in cols] for i in range(len(ws))], len(mons))
        free, divisors = cokernel(M)
        if free:
            raise AssertionError(
                f"degree-{k} characteristic map not rationally surjective (free rank {free})"
            )
        exponent = divisors[-1] if divisors else 1
        per_degree.append(DegreeCokernel(k, (M.rows, M.cols), tuple(divisors), exponent))
        tau = tau * exponent // math.gcd(tau, exponent)
    return TorsionReport(rd.name, tau * component_count, tau, component_count, tuple(per_degree))
