"""Root data and finite Weyl group enumeration.

A root datum fixes a basis of the character lattice; Weyl elements act by
integer matrices on coordinates in that basis.  Basis conventions for the
presets: SL(n) and the other simply connected presets use fundamental
weights, GL(n) uses the diagonal characters, PGL(2) uses the root basis.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]

ELEMENT_CAP = 200000


class UsageError(ValueError):
    """Bad user-facing input (unknown preset, malformed datum)."""


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _mat_vec(m: Mat, v: Sequence[int]) -> Vec:
    return tuple(_dot(row, v) for row in m)


def _mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(tuple(_dot(row, col) for col in bt) for row in a)


@dataclass(frozen=True)
class RootDatum:
    name: str
    rank: int
    simple_roots: tuple[Vec, ...]
    simple_coroots: tuple[Vec, ...]

    def __post_init__(self):
        if len(self.simple_roots) != len(self.simple_coroots):
            raise UsageError("roots and coroots must pair up")
        for v in self.simple_roots + self.simple_coroots:
            if len(v) != self.rank:
                raise UsageError("root/coroot length differs from the rank")
        C = self.cartan()
        n = len(C)
        for i in range(n):
            if C[i][i] != 2:
                raise UsageError(f"<alpha_{i}, alpha_{i}^vee> = {C[i][i]} != 2")
            for j in range(n):
                if i != j:
                    if C[i][j] > 0:
                        raise UsageError("positive off-diagonal Cartan integer")
                    if (C[i][j] == 0) != (C[j][i] == 0):
                        raise UsageError("asymmetric vanishing in the Cartan matrix")

    @property
    def nsimple(self) -> int:
        return len(self.simple_roots)

    def cartan(self) -> list[list[int]]:
        """C[i][j] = <alpha_j, alpha_i^vee>."""
        return [
            [_dot(self.simple_roots[j], self.simple_coroots[i]) for j in range(self.nsimple)]
            for i in range(self.nsimple)
        ]

    def reflection_matrix(self, i: int) -> Mat:
        """Matrix of s_i on character-lattice coordinates (1-indexed i)."""
        if not 1 <= i <= self.nsimple:
            raise IndexError(f"simple reflection index {i} out of range")
        a = self.simple_roots[i - 1]
        av = self.simple_coroots[i - 1]
        r = self.rank
        return tuple(
            tuple((1 if k == l else 0) - a[k] * av[l] for l in range(r)) for k in range(r)
        )

    def reflect(self, i: int, v: Sequence[int]) -> Vec:
        """s_i(v) = v - <v, alpha_i^vee> alpha_i."""
        if not 1 <= i <= self.nsimple:
            raise IndexError(f"simple reflection index {i} out of range")
        a = self.simple_roots[i - 1]
        c = _dot(v, self.simple_coroots[i - 1])
        return tuple(x - c * y for x, y in zip(v, a))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rank": self.rank,
            "simple_roots": [list(v) for v in self.simple_roots],
            "simple_coroots": [list(v) for v in self.simple_coroots],
        }


def _from_cartan(name: str, cartan: list[list[int]]) -> RootDatum:
    # fundamental-weight basis: alpha_j has coordinates column j of the
    # Cartan matrix, coroots are the dual basis vectors
    n = len(cartan)
    roots = tuple(tuple(cartan[i][j] for i in range(n)) for j in range(n))
    coroots = tuple(tuple(1 if k == j else 0 for k in range(n)) for j in range(n))
    return RootDatum(name, n, roots, coroots)


def torus(r: int) -> RootDatum:
    if r < 1:
        raise UsageError("torus rank must be >= 1")
    return RootDatum(f"Torus{r}", r, (), ())


def special_linear(n: int) -> RootDatum:
    if n < 2:
        raise UsageError("SL(n) needs n >= 2")
    size = n - 1
    cartan = [
        [2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(size)]
        for i in range(size)
    ]
    return _from_cartan(f"SL{n}", cartan)


def general_linear(n: int) -> RootDatum:
    if n < 1:
        raise UsageError("GL(n) needs n >= 1")
    roots = []
    coroots = []
    for i in range(n - 1):
        v = [0] * n
        v[i], v[i + 1] = 1, -1
        roots.append(tuple(v))
        coroots.append(tuple(v))
    return RootDatum(f"GL{n}", n, tuple(roots), tuple(coroots))


def projective_linear_2() -> RootDatum:
    # root basis: the character lattice is spanned by alpha itself
    return RootDatum("PGL2", 1, ((1,),), ((2,),))


def symplectic_4() -> RootDatum:
    return _from_cartan("Sp4", [[2, -2], [-1, 2]])


def g2() -> RootDatum:
    return _from_cartan("G2", [[2, -1], [-3, 2]])


_PRESET_RE = re.compile(r"^([A-Za-z]+)\(?(\d*)\)?$")


def preset(name: str) -> RootDatum:
    """Resolve a preset name like SL3, GL(2), Torus2, PGL2, Sp4, G2."""
    m = _PRESET_RE.match(name.strip())
    if not m:
        raise UsageError(f"cannot parse group name {name!r}: {preset_help()}")
    head, num = m.group(1).lower(), m.group(2)
    n = int(num) if num else None
    try:
        if head == "torus":
            return torus(n if n is not None else 1)
        if head == "sl":
            return special_linear(n)
        if head == "gl":
            return general_linear(n)
        if head == "pgl" and n == 2:
            return projective_linear_2()
        if head == "sp" and n == 4:
            return symplectic_4()
        if head == "g" and n == 2:
            return g2()
    except TypeError:
        pass
    raise UsageError(f"unknown group {name!r}: {preset_help()}")


def preset_help() -> str:
    return "supported presets are Torus(r), SL(n), GL(n), PGL2, Sp4, G2"


def from_json(obj: dict) -> RootDatum:
    try:
        return RootDatum(
            str(obj.get("name", "custom")),
            int(obj["rank"]),
            tuple(tuple(int(x) for x in v) for v in obj["simple_roots"]),
            tuple(tuple(int(x) for x in v) for v in obj["simple_coroots"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed root-datum JSON: {exc}") from exc


def load_json(path: str) -> RootDatum:
    with open(path, "r", encoding="utf-8") as fh:
        return from_json(json.load(fh))


@dataclass(frozen=True)
class WeylElement:
    matrix: Mat
    length: int
    word: tuple[int, ...]  # one reduced word, 1-indexed simple reflections

    def act(self, v: Sequence[int]) -> Vec:
        return _mat_vec(self.matrix, v)


class WeylGroup:
    """Complete enumeration of a finite Weyl group with its lattice action."""

    def __init__(self, datum: RootDatum, cap: int = ELEMENT_CAP):
        self.datum = datum
        r = datum.rank
        ident: Mat = tuple(tuple(1 if i == j else 0 for j in range(r)) for i in range(r))
        simples = [datum.reflection_matrix(i) for i in range(1, datum.nsimple + 1)]
        lengths: dict[Mat, int] = {ident: 0}
        frontier = [ident]
        while frontier:
            new = []
            for w in frontier:
                for s in simples:
                    m = _mat_mul(s, w)
                    if m not in lengths:
                        lengths[m] = lengths[w] + 1
                        new.append(m)
            frontier = new
            if len(lengths) > cap:
                raise RuntimeError(
                    f"Weyl enumeration exceeded the cap {cap}: datum not finite type?"
                )
        words: dict[Mat, tuple[int, ...]] = {ident: ()}

        def word_of(m: Mat) -> tuple[int, ...]:
            # lexicographically least reduced word, via least left descents
            got = words.get(m)
            if got is not None:
                return got
            for i, s in enumerate(simples, start=1):
                prev = _mat_mul(s, m)
                if lengths[prev] < lengths[m]:
                    w = (i,) + word_of(prev)
                    words[m] = w
                    return w
            raise AssertionError("no descent on a non-identity element")

        elems = [
            WeylElement(m, lengths[m], word_of(m))
            for m in sorted(lengths, key=lambda m: (lengths[m], word_of(m)))
        ]
        self.elements: tuple[WeylElement, ...] = tuple(elems)
        self._index = {e.matrix: k for k, e in enumerate(self.elements)}
        self.identity = self.elements[0]
        self._roots: set[Vec] | None = None

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def index(self, w: WeylElement) -> int:
        return self._index[w.matrix]

    def simple(self, i: int) -> WeylElement:
        m = self.datum.reflection_matrix(i)
        return self.elements[self._index[m]]

    def simples(self) -> list[WeylElement]:
        return [self.simple(i) for i in range(1, self.datum.nsimple + 1)]

    def mul(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.elements[self._index[_mat_mul(a.matrix, b.matrix)]]

    def by_length(self) -> dict[int, list[WeylElement]]:
        out: dict[int, list[WeylElement]] = {}
        for e in self.elements:
            out.setdefault(e.length, []).append(e)
        return out

    def length_generating_function(self) -> list[int]:
        by = self.by_length()
        top = max(by)
        return [len(by.get(k, [])) for k in range(top + 1)]

    def longest_length(self) -> int:
        return max(e.length for e in self.elements)

    def roots(self) -> set[Vec]:
        """The full (finite) set of roots: the W-orbit of the simple roots."""
        if self._roots is None:
            out: set[Vec] = set(self.datum.simple_roots)
            frontier = list(out)
            while frontier:
                new = []
                for v in frontier:
                    for e in self.elements:
                        w = e.act(v)
                        if w not in out:
                            out.add(w)
                            new.append(w)
                frontier = new
            self._roots = out
        return self._roots

    def positive_root_count(self) -> int:
        roots = self.roots()
        assert len(roots) % 2 == 0
        return len(roots) // 2


@lru_cache(maxsize=None)
def weyl_group(datum: RootDatum) -> WeylGroup:
    return WeylGroup(datum)
