"""Exact sparse multivariate polynomials and truncated power series.

Coefficients are exact rationals; values with denominator 1 are normalized
to python ints.  A ring is an ordered list of named, graded generators.
Generators flagged as series variables carry a truncation order: every term
whose total series-variable exponent weight exceeds the order is dropped, in
every operation, so truncation closure holds by construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

Coeff = Union[int, Fraction]


class ContextError(ValueError):
    """Operands over mismatched rings, or an unknown generator."""


class CompositionError(ValueError):
    """Substituted series has a constant term in the series variables."""


class ReversionError(ValueError):
    """Reversion input is not of the form x + (higher order)."""


def normalize_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


@dataclass(frozen=True)
class Generator:
    """A named generator with a fixed (algebraic) degree."""

    name: str
    degree: int = 1
    series: bool = False


class PolyRing:
    """An ordered tuple of generators, an optional truncation order, and
    optional per-series-variable exponent caps."""

    __slots__ = ("gens", "trunc", "caps", "_index", "_series_idx", "_hash")

    def __init__(
        self,
        gens: Sequence[Generator],
        trunc: Optional[int] = None,
        caps: Optional[Mapping[str, int]] = None,
    ):
        self.gens = tuple(gens)
        names = [g.name for g in self.gens]
        if len(set(names)) != len(names):
            raise ContextError(f"duplicate generator names in {names}")
        self.trunc = trunc
        cap_list: list[Optional[int]] = [None] * len(self.gens)
        if caps:
            for name, cap in caps.items():
                i = names.index(name)
                if not self.gens[i].series:
                    raise ContextError(f"cap on non-series generator {name}")
                cap_list[i] = cap
        self.caps = tuple(cap_list)
        self._index = {g.name: i for i, g in enumerate(self.gens)}
        self._series_idx = tuple(i for i, g in enumerate(self.gens) if g.series)
        self._hash = hash((self.gens, self.trunc, self.caps))

    def __eq__(self, other):
        return self is other or (
            isinstance(other, PolyRing)
            and self.gens == other.gens
            and self.trunc == other.trunc
            and self.caps == other.caps
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        names = ",".join(g.name for g in self.gens)
        return f"PolyRing({names}; trunc={self.trunc})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ContextError(f"no generator {name!r} in {self!r}") from None

    @property
    def series_names(self) -> tuple[str, ...]:
        return tuple(self.gens[i].name for i in self._series_idx)

    def weight(self, exps: Sequence[int]) -> int:
        """Total series-variable exponent weight of a monomial."""
        return sum(exps[i] for i in self._series_idx)

    def admissible(self, exps: Sequence[int]) -> bool:
        if self.trunc is not None and self.weight(exps) > self.trunc:
            return False
        for i, cap in enumerate(self.caps):
            if cap is not None and exps[i] > cap:
                return False
        return True

    def term_degree(self, exps: Sequence[int]) -> int:
        return sum(e * g.degree for e, g in zip(exps, self.gens))

    def zero(self) -> "GradedPoly":
        return GradedPoly(self, {})

    def one(self) -> "GradedPoly":
        return self.const(1)

    def const(self, c: Coeff) -> "GradedPoly":
        c = normalize_coeff(c)
        if c == 0:
            return self.zero()
        return GradedPoly(self, {(0,) * len(self.gens): c}, clean=False)

    def gen(self, name: str) -> "GradedPoly":
        exps = [0] * len(self.gens)
        exps[self.index(name)] = 1
        return self.monomial(tuple(exps), 1)

    def monomial(self, exps: Sequence[int], coeff: Coeff) -> "GradedPoly":
        exps = tuple(exps)
        if len(exps) != len(self.gens):
            raise ContextError("exponent tuple length mismatch")
        coeff = normalize_coeff(coeff)
        if coeff == 0 or not self.admissible(exps):
            return self.zero()
        return GradedPoly(self, {exps: coeff}, clean=False)

    def poly(self, terms: Mapping[tuple, Coeff]) -> "GradedPoly":
        return GradedPoly(self, dict(terms))

    def with_trunc(self, trunc: Optional[int]) -> "PolyRing":
        caps = {
            self.gens[i].name: c for i, c in enumerate(self.caps) if c is not None
        }
        return PolyRing(self.gens, trunc, caps or None)


def _add_into(dst: dict, src: Mapping[tuple, Coeff], scale: Coeff = 1) -> None:
    if scale == 1:
        for e, c in src.items():
            acc = dst.get(e)
            if acc is None:
                dst[e] = c
            else:
                acc = acc + c
                if acc == 0:
                    del dst[e]
                else:
                    dst[e] = acc
    else:
        for e, c in src.items():
            acc = dst.get(e, 0) + scale * c
            if acc == 0:
                dst.pop(e, None)
            else:
                dst[e] = acc


def _mul_dicts(ring: PolyRing, A: Mapping[tuple, Coeff], B: Mapping[tuple, Coeff]) -> dict:
    """Truncation-aware product of two term dicts over the same ring."""
    if not A or not B:
        return {}
    if len(A) > len(B):
        A, B = B, A
    out: dict = {}
    trunc = ring.trunc
    caps = ring.caps
    any_cap = any(c is not None for c in caps)
    if trunc is None:
        items_b = list(B.items())
        for ea, ca in A.items():
            for eb, cb in items_b:
                e = tuple(x + y for x, y in zip(ea, eb))
                if any_cap and not ring.admissible(e):
                    continue
                acc = out.get(e, 0) + ca * cb
                if acc == 0:
                    out.pop(e, None)
                else:
                    out[e] = acc
        return out
    w = ring.weight
    items_a = sorted(((w(e), e, c) for e, c in A.items()), key=lambda t: t[0])
    items_b = sorted(((w(e), e, c) for e, c in B.items()), key=lambda t: t[0])
    wb_min = items_b[0][0]
    for wa, ea, ca in items_a:
        if wa + wb_min > trunc:
            break
        for wb, eb, cb in items_b:
            if wa + wb > trunc:
                break
            e = tuple(x + y for x, y in zip(ea, eb))
            if any_cap and not ring.admissible(e):
                continue
            acc = out.get(e, 0) + ca * cb
            if acc == 0:
                out.pop(e, None)
            else:
                out[e] = acc
    return out


class GradedPoly:
    """Immutable sparse polynomial / truncated series over a PolyRing."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict, clean: bool = True):
        self.ring = ring
        if clean:
            cleaned = {}
            for e, c in terms.items():
                e = tuple(e)
                c = normalize_coeff(c)
                if c != 0 and ring.admissible(e):
                    cleaned[e] = c
            terms = cleaned
        self.terms = terms

    # -- queries ---------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, exps: Sequence[int]) -> Coeff:
        return self.terms.get(tuple(exps), 0)

    def constant_term(self) -> Coeff:
        return self.terms.get((0,) * len(self.ring.gens), 0)

    def coeff_of_gen(self, name: str, power: int = 1) -> Coeff:
        exps = [0] * len(self.ring.gens)
        exps[self.ring.index(name)] = power
        return self.coeff(exps)

    def sorted_terms(self) -> list[tuple[tuple, Coeff]]:
        """Terms in the canonical graded-lexicographic order."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]))

    def degrees(self) -> set[int]:
        return {self.ring.term_degree(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        """Degree of a homogeneous polynomial (None for 0)."""
        degs = self.degrees()
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def homogeneous_part(self, d: int) -> "GradedPoly":
        td = self.ring.term_degree
        return GradedPoly(
            self.ring, {e: c for e, c in self.terms.items() if td(e) == d}, clean=False
        )

    def homogeneous_components(self) -> dict[int, "GradedPoly"]:
        out: dict[int, dict] = {}
        td = self.ring.term_degree
        for e, c in self.terms.items():
            out.setdefault(td(e), {})[e] = c
        return {d: GradedPoly(self.ring, t, clean=False) for d, t in sorted(out.items())}

    def filtration(self, exps: Sequence[int]) -> int:
        return self.ring.weight(exps)

    def filtration_part(self, w: int) -> "GradedPoly":
        wt = self.ring.weight
        return GradedPoly(
            self.ring, {e: c for e, c in self.terms.items() if wt(e) == w}, clean=False
        )

    def filtration_components(self) -> dict[int, "GradedPoly"]:
        out: dict[int, dict] = {}
        wt = self.ring.weight
        for e, c in self.terms.items():
            out.setdefault(wt(e), {})[e] = c
        return {w: GradedPoly(self.ring, t, clean=False) for w, t in sorted(out.items())}

    def min_filtration(self) -> Optional[int]:
        if not self.terms:
            return None
        wt = self.ring.weight
        return min(wt(e) for e in self.terms)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other: "GradedPoly") -> None:
        if self.ring is not other.ring and self.ring != other.ring:
            raise ContextError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")

    def __eq__(self, other):
        if isinstance(other, GradedPoly):
            self._check(other)
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == self.ring.const(other).terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        _add_into(out, other.terms)
        return GradedPoly(self.ring, out, clean=False)

    __radd__ = __add__

    def __neg__(self):
        return GradedPoly(self.ring, {e: -c for e, c in self.terms.items()}, clean=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        self._check(other)
        out = dict(self.terms)
        _add_into(out, other.terms, -1)
        return GradedPoly(self.ring, out, clean=False)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coeff) -> "GradedPoly":
        c = normalize_coeff(c)
        if c == 0:
            return self.ring.zero()
        if c == 1:
            return self
        return GradedPoly(
            self.ring,
            {e: normalize_coeff(v * c) for e, v in self.terms.items()},
            clean=False,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check(other)
        return GradedPoly(self.ring, _mul_dicts(self.ring, self.terms, other.terms), clean=False)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
            if out.is_zero():
                break
        return out

    # -- structure maps --------------------------------------------------

    def map_to(self, target: PolyRing) -> "GradedPoly":
        """Re-express over a ring containing the same-named generators.

        Terms inadmissible in the target (over its truncation or caps) are
        dropped, so mapping into a lower-order ring truncates.
        """
        src = self.ring.gens
        idx: dict[int, int] = {}

        def lookup(i: int) -> int:
            j = idx.get(i)
            if j is None:
                g = src[i]
                j = target.index(g.name)
                if target.gens[j].degree != g.degree or target.gens[j].series != g.series:
                    raise ContextError(f"generator {g.name!r} differs in target ring")
                idx[i] = j
            return j

        n = len(target.gens)
        out: dict = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, p in enumerate(e):
                if p:
                    ne[lookup(i)] += p
            ne = tuple(ne)
            if target.admissible(ne):
                acc = out.get(ne, 0) + c
                if acc == 0:
                    out.pop(ne, None)
                else:
                    out[ne] = acc
        return GradedPoly(target, out, clean=False)

    def collect_series(self) -> dict[tuple, "GradedPoly"]:
        """Group terms by their series-variable exponents.

        Keys are exponent tuples over the ring's series variables (in ring
        order); values are polynomials in the same ring carrying only
        coefficient generators.
        """
        sidx = self.ring._series_idx
        out: dict[tuple, dict] = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in sidx)
            rest = list(e)
            for i in sidx:
                rest[i] = 0
            out.setdefault(key, {})[tuple(rest)] = c
        return {
            k: GradedPoly(self.ring, t, clean=False)
            for k, t in sorted(out.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        }

    def __str__(self):
        if not self.terms:
            return "0"
        names = [g.name for g in self.ring.gens]
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for name, p in zip(names, e):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        s = " + ".join(parts)
        return s.replace("+ -", "- ")

    __repr__ = __str__


def substitute_series(
    f: GradedPoly,
    repl: Mapping[str, GradedPoly],
    target: PolyRing,
) -> GradedPoly:
    """Substitute series for every series variable of f's ring.

    Coefficient generators are matched by name into the target ring.  Each
    replacement must live in the target ring and have zero constant term in
    the target's series variables; the target truncation may not exceed f's
    (a truncated f cannot be composed to higher precision than it carries).
    """
    ring = f.ring
    snames = ring.series_names
    missing = [n for n in snames if n not in repl]
    if missing:
        raise ContextError(f"no replacement for series variables {missing}")
    for name in snames:
        g = repl[name]
        if g.ring is not target and g.ring != target:
            raise ContextError(f"replacement for {name!r} not in target ring")
        for e in g.terms:
            if target.weight(e) == 0:
                raise CompositionError(
                    f"replacement for {name!r} has a constant term"
                )
    if ring.trunc is not None and (target.trunc is None or target.trunc > ring.trunc):
        raise ContextError(
            f"target truncation {target.trunc} exceeds source truncation {ring.trunc}"
        )

    n = len(target.gens)
    zero_exps = (0,) * n
    pow_cache: dict[str, list[dict]] = {
        name: [{zero_exps: 1}, dict(repl[name].terms)] for name in snames
    }

    def power(name: str, k: int) -> dict:
        cache = pow_cache[name]
        while len(cache) <= k:
            cache.append(_mul_dicts(target, cache[-1], cache[1]))
        return cache[k]

    out: dict = {}
    coeff_map = {}
    for i, g in enumerate(ring.gens):
        if not g.series:
            j = target.index(g.name)
            tg = target.gens[j]
            if tg.degree != g.degree:
                raise ContextError(f"generator {g.name!r} differs in target ring")
            coeff_map[i] = j

    for e, c in f.terms.items():
        base = [0] * n
        series_part: list[tuple[str, int]] = []
        for i, p in enumerate(e):
            if not p:
                continue
            g = ring.gens[i]
            if g.series:
                series_part.append((g.name, p))
            else:
                base[coeff_map[i]] += p
        term: dict = {tuple(base): c}
        for name, p in series_part:
            term = _mul_dicts(target, term, power(name, p))
            if not term:
                break
        _add_into(out, term)
    return GradedPoly(target, out, clean=False)


def series_reverse(f: GradedPoly, order: Optional[int] = None) -> GradedPoly:
    """Compositional inverse of f = x + O(x^2) in its single series variable.

    Returns g with f(g(x)) = g(f(x)) = x up to the ring truncation (or the
    requested order).
    """
    ring = f.ring
    if len(ring.series_names) != 1:
        raise ReversionError("reversion needs exactly one series variable")
    if order is None:
        order = ring.trunc
    if order is None:
        raise ReversionError("no truncation order for reversion")
    name = ring.series_names[0]
    x = ring.gen(name)
    lead = f.filtration_part(1)
    if f.filtration_part(0).terms or lead != x:
        raise ReversionError("series must be x + (higher order) with unit linear term")
    g = x
    for _ in range(2, order + 1):
        err = substitute_series(f, {name: g}, ring) - x
        if err.is_zero():
            break
        g = g - err
    assert substitute_series(f, {name: g}, ring) == x
    return g
