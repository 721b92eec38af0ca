"""Roots as half-spaces of a Coxeter system.

A root is stored as its exact vector in the geometric representation plus an
optional provenance expression (w, s) with alpha = w . alpha_s.  Chamber
membership, positivity, reflections, intervals and prenilpotency are all
derived from the vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

from .coxeter import CoxeterSystem, Vector, Word
from .errors import InternalConsistencyError, RgdError
from .qf24 import ONE, QF24, ZERO


@dataclass(frozen=True)
class Root:
    """Half-space root; equality and hashing are by exact vector."""

    vec: Vector
    expr: tuple[Word, int] | None = field(default=None, compare=False, hash=False)

    def is_positive(self, cox: CoxeterSystem) -> bool:
        return cox.vec_sign(self.vec) > 0

    def describe(self) -> str:
        word, s = self.expr if self.expr else ((), -1)
        expr = ".".join(str(x + 1) for x in word) if word else "e"
        coords = ",".join(repr(c) for c in self.vec)
        return f"({expr}|{s + 1})[{coords}]"


def simple_root(cox: CoxeterSystem, s: int) -> Root:
    return Root(cox.basis[s], ((), s))


def root_from_vec(cox: CoxeterSystem, vec: Vector) -> Root:
    return Root(vec, _derive_expr(cox, vec))


def _derive_expr(cox: CoxeterSystem, vec: Vector) -> tuple[Word, int]:
    """Recover some (w, s) with vec = w . e_s by depth descent."""
    sign = cox.vec_sign(vec)
    work = vec if sign > 0 else tuple(-c for c in vec)
    prefix: list[int] = []
    for _ in range(10_000):
        for s in range(cox.rank):
            if work == cox.basis[s]:
                word = tuple(prefix)
                if sign < 0:
                    word = cox.normal_form(word + (s,))
                return (word, s)
        for s in range(cox.rank):
            if cox.bform(cox.basis[s], work).sign() > 0:
                prefix.append(s)
                work = cox.reflect(s, work)
                break
        else:
            raise RgdError("no descent found for root vector; not a root?")
    raise RgdError("root expression derivation did not terminate")


def expression(cox: CoxeterSystem, alpha: Root) -> tuple[Word, int]:
    if alpha.expr is not None:
        return alpha.expr
    return _derive_expr(cox, alpha.vec)


def act(cox: CoxeterSystem, word: Word, alpha: Root) -> Root:
    """w . alpha with provenance carried along."""
    vec = cox.apply(word, alpha.vec)
    w, s = expression(cox, alpha)
    return Root(vec, (cox.normal_form(word + w), s))


def reflect_root(cox: CoxeterSystem, s: int, alpha: Root) -> Root:
    return act(cox, (s,), alpha)


def member(cox: CoxeterSystem, w: Word, alpha: Root) -> bool:
    """Chamber membership: w in alpha iff w^-1 . vec is positive."""
    return cox.vec_sign(cox.apply_inv(w, alpha.vec)) > 0


def opposite(cox: CoxeterSystem, alpha: Root) -> Root:
    vec = tuple(-c for c in alpha.vec)
    word, s = expression(cox, alpha)
    return Root(vec, (cox.normal_form(word + (s,)), s))


def reflection_word(cox: CoxeterSystem, alpha: Root) -> Word:
    """Normal form of the reflection r_alpha = w s w^-1."""
    word, s = expression(cox, alpha)
    return cox.normal_form(word + (s,) + tuple(reversed(word)))


def depth(cox: CoxeterSystem, alpha: Root) -> int:
    """Depth of a positive root: (l(r_alpha) + 1) / 2."""
    return (len(reflection_word(cox, alpha)) + 1) // 2


def phi_w(cox: CoxeterSystem, w: Word) -> list[Root]:
    """Crossed roots of the reduced word w, in gallery order."""
    return [Root(vec, (w[:i], w[i])) for i, vec in enumerate(cox.prefix_root_vectors(w))]


def pair_order(cox: CoxeterSystem, alpha: Root, beta: Root) -> float:
    """Order of r_alpha r_beta, matched from |B(alpha, beta)|."""
    if alpha == beta or alpha.vec == tuple(-c for c in beta.vec):
        raise RgdError("pair_order requires alpha != +-beta")
    b = cox.bform(alpha.vec, beta.vec)
    b2 = b * b
    if (b2 - ONE).sign() >= 0:
        return inf
    table = {
        ZERO: 2,
        QF24.of("1/4"): 3,
        QF24.of("1/2"): 4,
        QF24.of("3/4"): 6,
    }
    order = table.get(b2)
    if order is None:
        raise InternalConsistencyError(f"unexpected |B|^2 = {b2} for a finite pair")
    return order


def prenilpotent(cox: CoxeterSystem, alpha: Root, beta: Root,
                 radius: int | None = None) -> bool:
    """Both positive: true iff some chamber lies outside both half-spaces.

    Finite pair order settles it immediately; otherwise a bounded chamber
    search over ball(dp(alpha) + dp(beta) + 2) looks for a witness.
    """
    if not alpha.is_positive(cox) or not beta.is_positive(cox):
        raise RgdError("prenilpotent is defined for positive roots")
    if alpha == beta:
        return True
    if pair_order(cox, alpha, beta) != inf:
        return True
    if radius is None:
        radius = depth(cox, alpha) + depth(cox, beta) + 2
    for w in cox.ball(radius):
        if not member(cox, w, alpha) and not member(cox, w, beta):
            return True
    return False


def _solve_cone(cox: CoxeterSystem, alpha: Vector, beta: Vector, gamma: Vector) -> tuple[QF24, QF24] | None:
    """Solve gamma = a*alpha + b*beta exactly; None if gamma is outside the span."""
    n = len(gamma)
    piv = None
    for p in range(n):
        for q in range(p + 1, n):
            det = alpha[p] * beta[q] - alpha[q] * beta[p]
            if not det.is_zero():
                piv = (p, q, det)
                break
        if piv:
            break
    if piv is None:
        raise RgdError("cone solve needs independent roots")
    p, q, det = piv
    a = (gamma[p] * beta[q] - gamma[q] * beta[p]) / det
    b = (alpha[p] * gamma[q] - alpha[q] * gamma[p]) / det
    for i in range(n):
        if not (a * alpha[i] + b * beta[i] - gamma[i]).is_zero():
            return None
    return a, b


def _noncrossing(cox: CoxeterSystem, alpha: Root, beta: Root) -> bool:
    """|B(alpha, beta)| >= 1: the two walls do not cross."""
    b = cox.bform(alpha.vec, beta.vec)
    return (b * b - ONE).sign() >= 0


def interval(cox: CoxeterSystem, alpha: Root, beta: Root, gallery) -> list[Root]:
    """Closed interval [alpha, beta] inside Phi(G), ordered by the gallery.

    Finite reflection order: the cone criterion (gamma = a*alpha + b*beta,
    a, b >= 0; both walls lie in one rank-2 residue, so the interval spans
    their plane).  Infinite order: the pair is nested with the earlier root
    inside the later one (two non-crossing walls crossed by one minimal
    gallery leave exactly one empty sector, which must be alpha ^ -gamma),
    so gamma lies in the interval iff its wall crosses neither endpoint
    wall.  The half-space oracle `interval_oracle` is the permanent
    cross-check for this computation.
    """
    roots = list(gallery.roots)
    if alpha not in roots or beta not in roots:
        raise RgdError("interval endpoints must be crossed by the gallery")
    if alpha == beta:
        return [alpha]
    i, j = gallery.position(alpha), gallery.position(beta)
    if i > j:
        raise RgdError("interval endpoints must be in gallery order")
    out = [alpha]
    if pair_order(cox, alpha, beta) != inf:
        for gamma in roots[i:j - 1]:
            sol = _solve_cone(cox, alpha.vec, beta.vec, gamma.vec)
            if sol is None:
                continue
            a, b = sol
            if a.sign() >= 0 and b.sign() >= 0:
                out.append(gamma)
    else:
        for gamma in roots[i:j - 1]:
            if _noncrossing(cox, alpha, gamma) and _noncrossing(cox, gamma, beta):
                out.append(gamma)
    out.append(beta)
    return out


def open_interval(cox: CoxeterSystem, alpha: Root, beta: Root, gallery) -> list[Root]:
    return [g for g in interval(cox, alpha, beta, gallery) if g != alpha and g != beta]


def interval_oracle(cox: CoxeterSystem, alpha: Root, beta: Root, r: int) -> set[Root]:
    """Brute-force [alpha, beta] from the half-space definition over ball(r).

    Candidates are the crossed roots of all chambers in ball(r); gamma
    qualifies iff every ball chamber in alpha^beta lies in gamma and every
    ball chamber in (-alpha)^(-beta) lies outside gamma.
    """
    chambers = cox.ball(r)
    masks = _membership_masks(cox, r)
    am, bm = masks[alpha.vec], masks[beta.vec]
    full = (1 << len(chambers)) - 1
    both = am & bm
    neither = full & ~am & ~bm
    out: set[Root] = set()
    for vec, gm in masks.items():
        if both & ~gm:
            continue
        if neither & gm:
            continue
        out.add(Root(vec))
    return out


_MASK_CACHE: dict[tuple[int, int], dict[Vector, int]] = {}


def _membership_masks(cox: CoxeterSystem, r: int) -> dict[Vector, int]:
    """vec -> bitmask over ball(r) chambers of the half-space w in alpha."""
    key = (id(cox), r)
    cached = _MASK_CACHE.get(key)
    if cached is not None:
        return cached
    chambers = cox.ball(r)
    index = {w: i for i, w in enumerate(chambers)}
    vecs: set[Vector] = set()
    for w in chambers:
        for v in cox.prefix_root_vectors(w):
            vecs.add(v)
    masks: dict[Vector, int] = {}
    for vec in vecs:
        # BFS propagation: value at chamber w is w^-1 . vec
        carried: dict[Word, Vector] = {(): vec}
        mask = 0
        for w in chambers:  # ball() is ordered by length, so prefixes come first
            if w:
                prev = carried[w[:-1]]
                cur = cox.reflect(w[-1], prev)
                carried[w] = cur
            else:
                cur = vec
            if cox.vec_sign(cur) > 0:
                mask |= 1 << index[w]
        masks[vec] = mask
    _MASK_CACHE[key] = masks
    return masks


@dataclass(frozen=True)
class Residue2:
    """Spherical rank-2 residue, named by its gate (minimal chamber) and type."""

    base: Word
    J: tuple[int, int]

    def label(self) -> str:
        gate = ".".join(str(x + 1) for x in self.base) if self.base else "e"
        return f"R{{{self.J[0] + 1},{self.J[1] + 1}}}({gate})"


def residue_at(cox: CoxeterSystem, w: Word, J: tuple[int, int]) -> Residue2:
    s, t = sorted(J)
    if cox.matrix.m(s, t) == inf:
        raise RgdError("residue type must be spherical")
    return Residue2(cox.coset_gate(w, (s, t)), (s, t))


def residue_chambers(cox: CoxeterSystem, R: Residue2) -> list[Word]:
    return [cox.normal_form(R.base + v) for v in cox.parabolic_elements(R.J)]


def residue_roots(cox: CoxeterSystem, R: Residue2) -> list[Root]:
    """Phi(R): the m positive roots whose walls run through the residue."""
    s, t = R.J
    m = int(cox.matrix.m(s, t))
    g = R.base
    word = tuple(s if i % 2 == 0 else t for i in range(m))
    out = []
    for i in range(m):
        vec = cox.apply(g + word[:i], cox.basis[word[i]])
        out.append(Root(vec, (cox.normal_form(g + word[:i]), word[i])))
    if len({r.vec for r in out}) != m:
        raise InternalConsistencyError("residue walls are not distinct")
    return out


def stabilizes_residue(cox: CoxeterSystem, refl: Word, R: Residue2) -> bool:
    """r . R = R iff gate^-1 r gate lies in the parabolic <J>."""
    g = R.base
    conj = cox.normal_form(tuple(reversed(g)) + refl + g)
    return set(conj) <= set(R.J)


def residues_on_wall(cox: CoxeterSystem, alpha: Root, r: int) -> list[Residue2]:
    """All spherical rank-2 residues met by ball(r) stabilized by r_alpha."""
    refl = reflection_word(cox, alpha)
    seen: set[Residue2] = set()
    for w in cox.ball(r):
        for s in range(cox.rank):
            for t in range(s + 1, cox.rank):
                if cox.matrix.m(s, t) == inf:
                    continue
                R = residue_at(cox, w, (s, t))
                if R in seen:
                    continue
                if stabilizes_residue(cox, refl, R):
                    seen.add(R)
    return sorted(seen, key=lambda R: (len(R.base), R.base, R.J))
