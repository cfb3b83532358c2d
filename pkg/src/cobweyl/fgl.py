"""Formal group laws and the per-degree integral model of the Lazard ring.

The universal law is built over Q[m1..mN] (deg m_i = i) from the logarithm
l(x) = x + sum m_i x^(i+1) as F = e(l(x) + l(y)) with e the reversion of l.
The integral coefficient ring is realized as the lattice inside Q[m] spanned
by monomials in the law's coefficients, one HNF basis per degree; integrality
of an element is membership in that lattice.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .lattices import IntMat, hnf_basis
from .series import (
    Coeff,
    ContextError,
    Generator,
    GradedPoly,
    PolyRing,
    normalize_coeff,
    series_reverse,
    substitute_series,
)

ADDITIVE = "additive"
MULTIPLICATIVE = "multiplicative"
UNIVERSAL = "universal"


class FormalGroupLaw:
    """A truncated bivariate law F(x, y) over a named coefficient ring."""

    def __init__(self, kind: str, order: int, coeff_gens: Sequence[Generator], F_builder):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.kind = kind
        self.order = order
        self.coeff_gens = tuple(coeff_gens)
        gens = [Generator("x", 1, series=True), Generator("y", 1, series=True)]
        self.ring = PolyRing(gens + list(self.coeff_gens), trunc=order + 1)
        self.F = F_builder(self.ring)
        self._inverse: Optional[GradedPoly] = None

    def __repr__(self):
        return f"FormalGroupLaw({self.kind}, order={self.order})"

    def univariate_ring(self, trunc: Optional[int] = None) -> PolyRing:
        if trunc is None:
            trunc = self.order + 1
        return PolyRing(
            [Generator("x", 1, series=True)] + list(self.coeff_gens), trunc=trunc
        )

    def coefficient_ring(self) -> PolyRing:
        return PolyRing(self.coeff_gens)

    def plus(self, a: GradedPoly, b: GradedPoly) -> GradedPoly:
        """a +_F b = F(a, b) in the shared ring of a and b."""
        if a.ring != b.ring:
            raise ContextError("formal sum of series over different rings")
        return substitute_series(self.F, {"x": a, "y": b}, a.ring)

    def inverse_series(self) -> GradedPoly:
        """The formal inverse iota(x) with F(x, iota(x)) = 0, univariate."""
        if self._inverse is None:
            R = self.univariate_ring()
            x = R.gen("x")
            mixed = self.F - self.ring.gen("x") - self.ring.gen("y")
            iota = -x
            for _ in range(2, R.trunc + 1):
                iota = -x - substitute_series(mixed, {"x": x, "y": iota}, R)
            resid = substitute_series(self.F, {"x": x, "y": iota}, R)
            assert resid.is_zero(), "formal inverse failed to close"
            self._inverse = iota
        return self._inverse

    def inverse(self, a: GradedPoly) -> GradedPoly:
        return substitute_series(self.inverse_series(), {"x": a}, a.ring)

    def n_series(self, n: int, a: GradedPoly) -> GradedPoly:
        """[n]_F a, by iterated formal sum (and the inverse for n < 0)."""
        if n == 0:
            return a.ring.zero()
        if n < 0:
            return self.inverse(self.n_series(-n, a))
        out = a
        for _ in range(n - 1):
            out = self.plus(out, a)
        return out

    def coefficient(self, i: int, j: int) -> GradedPoly:
        """a_ij, the x^i y^j coefficient of F, in the coefficient ring."""
        target = self.coefficient_ring()
        xi = self.ring.index("x")
        yi = self.ring.index("y")
        picked = {}
        for e, c in self.F.terms.items():
            if e[xi] == i and e[yi] == j:
                rest = list(e)
                rest[xi] = 0
                rest[yi] = 0
                picked[tuple(rest)] = c
        return GradedPoly(self.ring, picked, clean=False).map_to(target)


@lru_cache(maxsize=None)
def fgl_additive(N: int) -> FormalGroupLaw:
    return FormalGroupLaw(
        ADDITIVE, N, [], lambda R: R.gen("x") + R.gen("y")
    )


@lru_cache(maxsize=None)
def fgl_multiplicative(N: int) -> FormalGroupLaw:
    beta = Generator("beta", -1)
    return FormalGroupLaw(
        MULTIPLICATIVE,
        N,
        [beta],
        lambda R: R.gen("x") + R.gen("y") + R.gen("beta") * R.gen("x") * R.gen("y"),
    )


def log_series(N: int) -> GradedPoly:
    """l(x) = x + sum_{i<=N} m_i x^(i+1), truncated at order N+1."""
    gens = [Generator("x", 1, series=True)] + [
        Generator(f"m{i}", i) for i in range(1, N + 1)
    ]
    R = PolyRing(gens, trunc=N + 1)
    x = R.gen("x")
    out = x
    for i in range(1, N + 1):
        out = out + R.gen(f"m{i}") * x ** (i + 1)
    return out


@lru_cache(maxsize=None)
def exp_series(N: int) -> GradedPoly:
    """Reversion of the logarithm, e(l(x)) = x up to order N+1."""
    return series_reverse(log_series(N))


@lru_cache(maxsize=None)
def fgl_universal(N: int) -> FormalGroupLaw:
    coeff = [Generator(f"m{i}", i) for i in range(1, N + 1)]

    def build(R: PolyRing) -> GradedPoly:
        l = log_series(N)
        e = exp_series(N)
        lx = l.map_to(R)
        ly = substitute_series(l, {"x": R.gen("y")}, R)
        return substitute_series(e, {"x": lx + ly}, R)

    return FormalGroupLaw(UNIVERSAL, N, coeff, build)


def by_kind(kind: str, N: int) -> FormalGroupLaw:
    table = {
        ADDITIVE: fgl_additive,
        MULTIPLICATIVE: fgl_multiplicative,
        UNIVERSAL: fgl_universal,
    }
    if kind not in table:
        raise ValueError(f"unknown formal group law kind {kind!r}")
    return table[kind](N)


def _partition_count(n: int) -> int:
    # Euler recurrence with pentagonal numbers
    p = [1] + [0] * n
    for k in range(1, n + 1):
        total = 0
        j = 1
        while True:
            g1 = j * (3 * j - 1) // 2
            g2 = j * (3 * j + 1) // 2
            if g1 > k and g2 > k:
                break
            sign = -1 if j % 2 == 0 else 1
            if g1 <= k:
                total += sign * p[k - g1]
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p[n]


class LazardBasis:
    """Per-degree HNF bases of the coefficient lattice inside Q[m1..mN]."""

    def __init__(self, N: int):
        if N < 0:
            raise ValueError("max degree must be >= 0")
        self.max_degree = N
        self.law = fgl_universal(max(N, 1))
        self.mring = self.law.coefficient_ring()
        self._monomials: dict[int, list[tuple]] = {}
        self._mono_index: dict[int, dict[tuple, int]] = {}
        self._basis: dict[int, IntMat] = {}
        self._build()

    # -- monomial bookkeeping ---------------------------------------------

    def monomials(self, d: int) -> list[tuple]:
        """Exponent tuples of the degree-d monomials of Q[m], graded-lex."""
        if d not in self._monomials:
            n = len(self.mring.gens)
            out = []

            def rec(i, remaining, acc):
                if i == n:
                    if remaining == 0:
                        out.append(tuple(acc))
                    return
                deg = self.mring.gens[i].degree
                for e in range(remaining // deg + 1):
                    rec(i + 1, remaining - e * deg, acc + [e])

            rec(0, d, [])
            out.sort(key=lambda e: (sum(e), e))
            self._monomials[d] = out
            self._mono_index[d] = {e: k for k, e in enumerate(out)}
        return self._monomials[d]

    def vector(self, poly: GradedPoly, d: int) -> list[Coeff]:
        """Coordinates of a homogeneous degree-d polynomial on monomials(d)."""
        mono = self.monomials(d)
        idx = self._mono_index[d]
        v: list[Coeff] = [0] * len(mono)
        for e, c in poly.terms.items():
            if self.mring.term_degree(e) != d:
                raise ValueError(f"term of degree != {d} in {poly}")
            v[idx[e]] = c
        return v

    def from_vector(self, vec: Sequence[Coeff], d: int) -> GradedPoly:
        mono = self.monomials(d)
        return GradedPoly(self.mring, {e: c for e, c in zip(mono, vec) if c != 0})

    # -- lattice construction ----------------------------------------------

    def _build(self) -> None:
        N = self.max_degree
        agens = []
        for i in range(1, N + 1):
            for j in range(i, N + 2 - i):
                agens.append((i + j - 1, self.law.coefficient(i, j)))
        agens.sort(key=lambda t: t[0])
        by_degree: dict[int, list[list[int]]] = {d: [] for d in range(N + 1)}
        by_degree[0].append([1])

        def products(start: int, remaining: int, acc: GradedPoly, sink: list):
            if remaining == 0:
                sink.append(acc)
                return
            for k in range(start, len(agens)):
                d, poly = agens[k]
                if d > remaining:
                    break
                products(k, remaining - d, acc * poly, sink)

        for d in range(1, N + 1):
            polys: list[GradedPoly] = []
            products(0, d, self.mring.one(), polys)
            vecs = []
            for p in polys:
                v = self.vector(p, d)
                assert all(isinstance(c, int) for c in v)
                vecs.append(v)
            by_degree[d] = vecs
        for d in range(N + 1):
            self._basis[d] = hnf_basis(by_degree[d], len(self.monomials(d)))

    def rank(self, d: int) -> int:
        return self._basis[d].rows

    def ranks(self) -> list[int]:
        return [self.rank(d) for d in range(self.max_degree + 1)]

    def basis_matrix(self, d: int) -> IntMat:
        return self._basis[d]

    def basis_polys(self, d: int) -> list[GradedPoly]:
        return [self.from_vector(row, d) for row in self._basis[d].data]

    # -- membership ----------------------------------------------------------

    def solve(self, vec: Sequence[Coeff], d: int) -> list[Coeff]:
        """Coordinates on the degree-d basis; raises if not in the Q-span."""
        B = self._basis[d]
        v = [Fraction(c) for c in vec]
        coords: list[Coeff] = []
        for row in B.data:
            p = next((j for j, x in enumerate(row) if x), None)
            if p is None:
                continue
            c = v[p] / row[p]
            coords.append(normalize_coeff(c))
            if c:
                for j, x in enumerate(row):
                    if x:
                        v[j] -= c * x
        if any(v):
            raise ValueError(f"vector not in the rational span in degree {d}")
        return coords

    def decompose(self, poly: GradedPoly) -> dict[int, list[Coeff]]:
        """Per-degree basis coordinates of an element of Q[m]."""
        out = {}
        for d, part in poly.homogeneous_components().items():
            if d > self.max_degree or d < 0:
                raise ValueError(f"degree {d} beyond basis range {self.max_degree}")
            out[d] = self.solve(self.vector(part, d), d)
        return out

    def integral_coords(self, poly: GradedPoly) -> Optional[dict[int, list[int]]]:
        """Integer basis coordinates, or None if outside the lattice."""
        try:
            coords = self.decompose(poly)
        except ValueError:
            return None
        for v in coords.values():
            if any(not isinstance(c, int) for c in v):
                return None
        return coords

    def is_integral(self, poly: GradedPoly) -> bool:
        return self.integral_coords(poly) is not None

    # -- distinguished elements ----------------------------------------------

    def element(self, poly: GradedPoly) -> "LElement":
        return LElement(self, poly)

    def pn(self, n: int) -> "LElement":
        """The projective-space class in degree n: (n+1) m_n."""
        if n < 0:
            raise ValueError("negative projective dimension")
        if n == 0:
            return LElement(self, self.mring.one())
        if n > self.max_degree:
            raise ValueError(f"degree {n} beyond basis range {self.max_degree}")
        poly = self.mring.gen(f"m{n}").scale(n + 1)
        el = LElement(self, poly)
        if not el.is_integral():
            raise AssertionError(f"(n+1)m_n not in the degree-{n} lattice")
        return el

    def pn_poly(self, n: int) -> GradedPoly:
        if n == 0:
            return self.mring.one()
        return self.mring.gen(f"m{n}").scale(n + 1)


class LElement:
    """A coefficient-ring element with lattice coordinates on demand."""

    __slots__ = ("basis", "poly")

    def __init__(self, basis: LazardBasis, poly: GradedPoly):
        self.basis = basis
        self.poly = poly

    def degree(self) -> Optional[int]:
        return self.poly.degree()

    def coords(self) -> dict[int, list[Coeff]]:
        return self.basis.decompose(self.poly)

    def integral_coords(self) -> Optional[dict[int, list[int]]]:
        return self.basis.integral_coords(self.poly)

    def is_integral(self) -> bool:
        return self.basis.is_integral(self.poly)

    def _coerce(self, other):
        if isinstance(other, LElement):
            if other.basis is not self.basis:
                raise ContextError("LElements over different bases")
            return other.poly
        if isinstance(other, (int, Fraction)):
            return self.basis.mring.const(other)
        return other

    def __add__(self, other):
        return LElement(self.basis, self.poly + self._coerce(other))

    def __sub__(self, other):
        return LElement(self.basis, self.poly - self._coerce(other))

    def __neg__(self):
        return LElement(self.basis, -self.poly)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LElement(self.basis, self.poly.scale(other))
        return LElement(self.basis, self.poly * self._coerce(other))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, LElement):
            return self.basis is other.basis and self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash(self.poly)

    def __repr__(self):
        return f"LElement({self.poly})"


@lru_cache(maxsize=None)
def lazard_basis(N: int) -> LazardBasis:
    return LazardBasis(N)


def partition_numbers(N: int) -> list[int]:
    return [_partition_count(n) for n in range(N + 1)]
