"""The twisted group algebra of a character lattice over a formal group law.

Character classes x_m are stored expanded in the basis series variables
t_i = x_{lambda_i}, truncated at the context's filtration order N.  The Weyl
group acts by t_i -> x_{w(lambda_i)}.  Truncated invariants are computed per
level (filtration minus coefficient degree, which every w preserves) as
integer kernels of the stacked (s_i - 1) maps, modulo filtration > N.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .fgl import ADDITIVE, UNIVERSAL, FormalGroupLaw, LazardBasis, lazard_basis
from .lattices import IntMat, hnf_basis, kernel_basis, rank_rational
from .schubert import degree_monomials
from .series import ContextError, Generator, GradedPoly, PolyRing
from .weyl import RootDatum, WeylElement, weyl_group


class TwistedContext:
    """A formal group law, a root datum, and a filtration-truncation order."""

    def __init__(self, law: FormalGroupLaw, rd: RootDatum, N: int):
        if N < 1:
            raise ValueError("truncation order must be >= 1")
        if law.order < N:
            raise ContextError(
                f"law of order {law.order} cannot back a context truncated at {N}"
            )
        self.law = law
        self.rd = rd
        self.N = N
        gens = [Generator(f"t{i}", 1, series=True) for i in range(1, rd.rank + 1)]
        self.ring = PolyRing(gens + list(law.coeff_gens), trunc=N)
        self._chars: dict[tuple, GradedPoly] = {}
        self._wT: dict[tuple, dict[tuple, GradedPoly]] = {}

    def tvar(self, i: int) -> GradedPoly:
        return self.ring.gen(f"t{i}")

    def character_class(self, m: Sequence[int]) -> GradedPoly:
        """x_m, the expanded class of the character with coordinates m."""
        m = tuple(m)
        if len(m) != self.rd.rank:
            raise ContextError(f"character {m} has wrong rank")
        got = self._chars.get(m)
        if got is None:
            got = self.ring.zero()
            for i, n in enumerate(m, start=1):
                if n:
                    got = self.law.plus(got, self.law.n_series(n, self.tvar(i)))
            self._chars[m] = got
        return got

    def twisted_mul(self, u: GradedPoly, v: GradedPoly) -> GradedPoly:
        return u * v

    def relations_check(self, m: Sequence[int], mp: Sequence[int]) -> bool:
        """x_m +_F x_{m'} == x_{m+m'}, up to truncation."""
        lhs = self.law.plus(self.character_class(m), self.character_class(mp))
        total = tuple(a + b for a, b in zip(m, mp))
        return lhs == self.character_class(total)

    # -- Weyl action -------------------------------------------------------

    def _twisted_monomials(self, w: WeylElement) -> dict[tuple, GradedPoly]:
        """Cache of w(t^k) for the exponent tuples needed so far."""
        key = w.matrix
        if key not in self._wT:
            self._wT[key] = {}
        return self._wT[key]

    def _w_images(self, w: WeylElement) -> list[GradedPoly]:
        r = self.rd.rank
        return [
            self.character_class(tuple(w.matrix[k][i] for k in range(r)))
            for i in range(r)
        ]

    def weyl_act(self, w: WeylElement, u: GradedPoly) -> GradedPoly:
        """Ring map sending t_i to x_{w(lambda_i)}."""
        images = self._w_images(w)
        cache = self._twisted_monomials(w)
        sidx = [self.ring.index(f"t{i}") for i in range(1, self.rd.rank + 1)]
        out = self.ring.zero()
        for exps, c in u.terms.items():
            k = tuple(exps[i] for i in sidx)
            mono = cache.get(k)
            if mono is None:
                mono = self.ring.one()
                for img, e in zip(images, k):
                    if e:
                        mono = mono * img**e
                cache[k] = mono
            rest = list(exps)
            for i in sidx:
                rest[i] = 0
            out = out + mono * self.ring.monomial(tuple(rest), c)
        return out

    # -- coefficient lattice ------------------------------------------------

    def coeff_lattice(self) -> Optional[LazardBasis]:
        if self.law.kind == UNIVERSAL:
            return lazard_basis(max(self.law.order, self.N))
        if self.law.kind == ADDITIVE:
            return None
        raise ContextError(
            "truncated invariants are supported for the additive and universal laws"
        )

    def coeff_rank(self, d: int) -> int:
        lb = self.coeff_lattice()
        if lb is None:
            return 1 if d == 0 else 0
        return lb.rank(d)

    def coeff_polys(self, d: int) -> list[GradedPoly]:
        """Integral basis of the degree-d coefficient lattice, in mring."""
        lb = self.coeff_lattice()
        if lb is None:
            if d != 0:
                return []
            return [PolyRing(()).one()]
        return lb.basis_polys(d)

    def coeff_decompose(self, poly: GradedPoly, d: int) -> list[int]:
        """Integer coordinates of a degree-d coefficient polynomial."""
        lb = self.coeff_lattice()
        if lb is None:
            c = poly.constant_term()
            if poly != poly.ring.const(c) or not isinstance(c, int):
                raise AssertionError(f"non-integer additive coefficient {poly}")
            return [c] if d == 0 else []
        target = poly.map_to(lb.mring) if poly.ring.gens != lb.mring.gens else poly
        if target.is_zero():
            return [0] * lb.rank(d)
        coords = lb.solve(lb.vector(target, d), d)
        if any(not isinstance(c, int) for c in coords):
            raise AssertionError(f"coefficient {poly} is not in the degree-{d} lattice")
        return coords


class LevelSpace:
    """The level-nu slice of the truncated algebra as an integer lattice.

    Level nu collects the bidegrees (filtration f, coefficient degree d)
    with f - d = nu; its basis is (coefficient-lattice basis) x (t-monomials)
    per component, filtration capped at the context order and the coefficient
    degree optionally capped at D.
    """

    def __init__(self, ctx: TwistedContext, level: int, coeff_bound: Optional[int] = None):
        self.ctx = ctx
        self.level = level
        comps = []
        for f in range(level, ctx.N + 1):
            d = f - level
            if coeff_bound is not None and d > coeff_bound:
                break
            if ctx.coeff_rank(d) == 0 and d > 0:
                continue
            comps.append((f, d))
        self.components = tuple(comps)
        self._mons = {f: degree_monomials(ctx.rd.rank, f) for f, _ in comps}
        self._offsets = {}
        dim = 0
        for f, d in comps:
            self._offsets[f] = dim
            dim += len(self._mons[f]) * ctx.coeff_rank(d)
        self.dim = dim

    def labels(self) -> list[tuple[int, tuple, int]]:
        """(filtration, t-exponents, coefficient-basis index) per coordinate."""
        out = []
        for f, d in self.components:
            nb = self.ctx.coeff_rank(d)
            for k in self._mons[f]:
                for b in range(nb):
                    out.append((f, k, b))
        return out

    def basis_polys(self) -> list[GradedPoly]:
        ring = self.ctx.ring
        out = []
        for f, d in self.components:
            coeffs = [p.map_to(ring) for p in self.ctx.coeff_polys(d)]
            for k in self._mons[f]:
                exps = [0] * len(ring.gens)
                for i, e in enumerate(k, start=1):
                    exps[ring.index(f"t{i}")] = e
                tmono = ring.monomial(tuple(exps), 1)
                for b in coeffs:
                    out.append(b * tmono)
        return out

    def coords(self, u: GradedPoly) -> list[int]:
        """Integer coordinates of an element supported on this level."""
        ctx = self.ctx
        vec = [0] * self.dim
        for k, coeff in u.collect_series().items():
            f = sum(k)
            if f not in self._offsets or f - self.level < 0:
                raise ValueError(
                    f"filtration-{f} term outside level-{self.level} space"
                )
            d = f - self.level
            mons = self._mons[f]
            nb = ctx.coeff_rank(d)
            pos = self._offsets[f] + mons.index(k) * nb
            for b, c in enumerate(ctx.coeff_decompose(coeff, d)):
                vec[pos + b] = c
        return vec

    def action_matrix(self, w: WeylElement) -> IntMat:
        """Matrix of w on this space, modulo filtration > N (columns = basis).

        Only meaningful on an un-capped space, where the action closes.
        """
        cols = [self.coords(self.ctx.weyl_act(w, u)) for u in self.basis_polys()]
        return IntMat.from_rows(
            [[col[i] for col in cols] for i in range(self.dim)], len(cols)
        )


def stacked_minus_one(
    src: LevelSpace, dst: LevelSpace, elements: Sequence[WeylElement]
) -> IntMat:
    """The stacked (w - 1) maps from src into dst, as one integer matrix."""
    basis = src.basis_polys()
    rows: list[list[int]] = []
    for w in elements:
        cols = [dst.coords(src.ctx.weyl_act(w, u) - u) for u in basis]
        for i in range(dst.dim):
            rows.append([col[i] for col in cols])
    return IntMat.from_rows(rows, src.dim)


@dataclass(frozen=True)
class InvariantBlock:
    level: int
    components: tuple[tuple[int, int], ...]  # (filtration, coefficient degree)
    space_dim: int
    kernel: IntMat  # HNF basis rows over the level-space coordinates
    stable: Optional[bool]

    @property
    def rank(self) -> int:
        return self.kernel.rows


def invariants_truncated(
    ctx: TwistedContext,
    coeff_bound: Optional[int] = None,
    levels: Optional[Sequence[int]] = None,
    stability: bool = True,
) -> list[InvariantBlock]:
    """Integral bases of the truncated Weyl invariants, one block per level.

    The stability flag records whether recomputing at filtration cut N+2 and
    projecting back changes the kernel; it needs the context law to carry
    order >= N+2 and is skipped (None) otherwise unless explicitly requested.
    """
    W = weyl_group(ctx.rd)
    gens = W.simples()
    if levels is None:
        levels = range(ctx.N + 1)
    hi_ctx = None
    if stability:
        if ctx.law.order >= ctx.N + 2:
            hi_ctx = TwistedContext(ctx.law, ctx.rd, ctx.N + 2)
        else:
            raise ContextError(
                f"stability check needs law order >= {ctx.N + 2}; "
                "construct the law with headroom or pass stability=False"
            )
    out = []
    for level in levels:
        space = LevelSpace(ctx, level, coeff_bound)
        if not gens:
            kernel = hnf_basis(IntMat.identity(space.dim).data, space.dim)
            out.append(
                InvariantBlock(level, space.components, space.dim, kernel, True)
            )
            continue
        full = LevelSpace(ctx, level)
        ker = kernel_basis(stacked_minus_one(space, full, gens))
        stable = None
        if hi_ctx is not None:
            hi_space = LevelSpace(hi_ctx, level, coeff_bound)
            hi_full = LevelSpace(hi_ctx, level)
            hi_ker = kernel_basis(stacked_minus_one(hi_space, hi_full, gens))
            proj = _project_rows(hi_ker, hi_space, space)
            stable = proj.data == ker.data
        out.append(InvariantBlock(level, space.components, space.dim, ker, stable))
    return out


def _project_rows(rows: IntMat, src: LevelSpace, dst: LevelSpace) -> IntMat:
    """Restrict level-space vectors to the components of a smaller space."""
    src_labels = src.labels()
    dst_index = {lab: i for i, lab in enumerate(dst.labels())}
    projected = []
    for row in rows.data:
        vec = [0] * dst.dim
        for val, lab in zip(row, src_labels):
            if val and lab in dst_index:
                vec[dst_index[lab]] = val
        projected.append(vec)
    return hnf_basis(projected, dst.dim)


def averaged_rank(ctx: TwistedContext, level: int) -> int:
    """Q-rank of the averaging projector (1/|W|) sum_w w on the full level
    space, modulo filtration > N."""
    W = weyl_group(ctx.rd)
    space = LevelSpace(ctx, level)
    if space.dim == 0:
        return 0
    total = [[0] * space.dim for _ in range(space.dim)]
    for w in W:
        m = space.action_matrix(w)
        for i in range(space.dim):
            row = m.data[i]
            trow = total[i]
            for j in range(space.dim):
                trow[j] += row[j]
    n = Fraction(1, len(W))
    avg = [[x * n for x in row] for row in total]
    return rank_rational(avg)
