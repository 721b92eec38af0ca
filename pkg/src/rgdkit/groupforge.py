"""Finite 2-groups from blueprint relations, via power-commutator collection.

A presentation has involutive generators u_1 < ... < u_k (one per crossed
root of a base gallery) and relations [u_i, u_j] = prod of generators
strictly between i and j.  Elements are bit vectors: bit i-1 is the exponent
of u_i in the normal form u_1^e1 ... u_k^ek.  Collection from the left
rewrites any word to this normal form; the consistency (overlap) test
certifies that normal forms are unique, equivalently that the group has
order exactly 2^k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .blueprints import Blueprint
from .coxeter import Word
from .errors import CapExceeded, CollectionOverflow, RgdError
from .galleries import Gallery, min_gal
from .reports import Report, Violation
from .roots import Root


@dataclass(frozen=True)
class GroupElem:
    """Normal form as a bit vector; bit i-1 = exponent of generator i."""

    bits: int

    def __bool__(self) -> bool:
        return self.bits != 0


IDENTITY = GroupElem(0)


class PCPres:
    """Power-commutator presentation over an ordered root basis."""

    def __init__(self, basis: Sequence[Root], rel: dict[tuple[int, int], tuple[int, ...]],
                 gallery: Gallery | None = None, step_cap: int = 1_000_000):
        self.basis = tuple(basis)
        self.k = len(self.basis)
        self.gallery = gallery
        self.step_cap = step_cap
        self._consistent: bool | None = None
        self.inconsistency_witness: str | None = None
        self.rel: dict[tuple[int, int], tuple[int, ...]] = {}
        for (i, j), word in rel.items():
            if not (1 <= i < j <= self.k):
                raise RgdError(f"relation key ({i},{j}) out of range")
            if any(not i < x < j for x in word):
                raise RgdError(f"relation word {word} leaves the open range ({i},{j})")
            if tuple(sorted(word)) != tuple(word) or len(set(word)) != len(word):
                raise RgdError(f"relation word {word} not strictly increasing")
            self.rel[(i, j)] = tuple(word)

    @property
    def consistent(self) -> bool | None:
        return self._consistent

    @property
    def order(self) -> int:
        return 1 << self.k

    def position(self, root: Root) -> int:
        for i, b in enumerate(self.basis):
            if b == root:
                return i + 1
        raise RgdError(f"root {root.describe()} not in basis")

    # -- collection -------------------------------------------------------

    def collect(self, word: Iterable[int]) -> GroupElem:
        """Leftmost collection to the unique ascending normal form."""
        buf = list(word)
        for x in buf:
            if not 1 <= x <= self.k:
                raise RgdError(f"generator index {x} out of range")
        i = 0
        steps = 0
        while i + 1 <= len(buf) - 1:
            a, b = buf[i], buf[i + 1]
            if a == b:
                del buf[i:i + 2]
                i = max(0, i - 1)
            elif a > b:
                tail = self.rel.get((b, a), ())
                buf[i:i + 2] = [b, a, *reversed(tail)]
                i = max(0, i - 1)
            else:
                i += 1
            steps += 1
            if steps > self.step_cap:
                raise CollectionOverflow(
                    f"collection exceeded {self.step_cap} steps; malformed table?")
        bits = 0
        for x in buf:
            bits |= 1 << (x - 1)
        return GroupElem(bits)

    def word_of(self, x: GroupElem) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.k) if x.bits >> i & 1)

    def generator(self, i: int) -> GroupElem:
        if not 1 <= i <= self.k:
            raise RgdError(f"generator index {i} out of range")
        return GroupElem(1 << (i - 1))

    def mul(self, x: GroupElem, y: GroupElem) -> GroupElem:
        return self.collect(self.word_of(x) + self.word_of(y))

    def inv(self, x: GroupElem) -> GroupElem:
        return self.collect(tuple(reversed(self.word_of(x))))

    def comm(self, x: GroupElem, y: GroupElem) -> GroupElem:
        """[x, y] = x y x^-1 y^-1."""
        wx, wy = self.word_of(x), self.word_of(y)
        return self.collect(wx + wy + tuple(reversed(wx)) + tuple(reversed(wy)))

    def conj(self, x: GroupElem, y: GroupElem) -> GroupElem:
        """x y x^-1."""
        wx = self.word_of(x)
        return self.collect(wx + self.word_of(y) + tuple(reversed(wx)))

    def elements(self) -> list[GroupElem]:
        return [GroupElem(bits) for bits in range(1 << self.k)]

    # -- consistency ------------------------------------------------------

    def consistency_check(self) -> bool:
        """Overlap test: all parenthesizations of u_k u_j u_i agree, and the
        square relations interact correctly with every exchange."""
        try:
            for j in range(1, self.k + 1):
                uj = self.generator(j)
                for i in range(1, j):
                    ui = self.generator(i)
                    ji = self.mul(uj, ui)
                    if self.mul(ji, ui) != uj:
                        self._set_witness(f"(u{j} u{i}) u{i} != u{j}")
                        return False
                    if self.mul(uj, self.mul(ui, ui)) != uj:
                        self._set_witness(f"u{j} (u{i} u{i}) != u{j}")
                        return False
                    if self.mul(self.mul(uj, uj), ui) != self.mul(uj, ji):
                        self._set_witness(f"(u{j} u{j}) u{i} != u{j} (u{j} u{i})")
                        return False
            for kk in range(1, self.k + 1):
                uk = self.generator(kk)
                for j in range(1, kk):
                    uj = self.generator(j)
                    kj = self.mul(uk, uj)
                    for i in range(1, j):
                        ui = self.generator(i)
                        left = self.mul(kj, ui)
                        right = self.mul(uk, self.mul(uj, ui))
                        if left != right:
                            self._set_witness(
                                f"(u{kk} u{j}) u{i} = {self.word_of(left)} but "
                                f"u{kk} (u{j} u{i}) = {self.word_of(right)}")
                            return False
        except CollectionOverflow as exc:
            self._set_witness(str(exc))
            return False
        self._consistent = True
        return True

    def _set_witness(self, text: str) -> None:
        self._consistent = False
        self.inconsistency_witness = text

    def relators(self) -> list[tuple[int, ...]]:
        """All defining relators [u_i, u_j] * (M-word)^-1, for enumeration oracles.

        The squares u_i^2 are implicit in the oracle's involutive generators."""
        out = []
        for i in range(1, self.k + 1):
            for j in range(i + 1, self.k + 1):
                m_word = self.rel.get((i, j), ())
                out.append((i, j, i, j) + tuple(reversed(m_word)))
        return out


# ---------------------------------------------------------------------------
# construction from a blueprint


def presentation_for_gallery(bp: Blueprint, G: Gallery, step_cap: int = 1_000_000) -> PCPres:
    rel = {}
    for i in range(1, len(G) + 1):
        for j in range(i + 1, len(G) + 1):
            rel[(i, j)] = bp.query_positions(G, i, j)
    return PCPres(G.roots, rel, gallery=G, step_cap=step_cap)


def build_Uw(bp: Blueprint, w: Word, gallery_cap: int = 10_000,
             step_cap: int = 1_000_000) -> tuple[PCPres, Report]:
    """Group on Phi(w) from the lex-least gallery, cross-checked against the
    relations of every other gallery of w (the executable content of the
    order-2^l axiom).  If the gallery count exceeds the cap, only the base
    gallery is certified and the report says so explicitly."""
    cox = bp.cox
    w = cox.normal_form(w)
    report = Report(f"U_w({bp.name}, w={_wl(w)})")
    try:
        galleries = min_gal(cox, w, gallery_cap)
    except CapExceeded:
        galleries = [Gallery(cox, w)]  # the normal form is the lex-least word
        report.note(f"partial: more than {gallery_cap} galleries; "
                    f"cross-checked the base gallery only")
    base = galleries[0]
    pres = presentation_for_gallery(bp, base, step_cap)
    report.checks += 1
    if not pres.consistency_check():
        report.add(Violation(axiom="CB3", w=_wl(w), gallery=base.label(),
                             expected="consistent collection",
                             found=pres.inconsistency_witness or "inconsistent"))
        return pres, report
    for H in galleries[1:]:
        for i in range(1, len(H) + 1):
            a = pres.position(H.root(i))
            ua = pres.generator(a)
            for j in range(i + 1, len(H) + 1):
                b = pres.position(H.root(j))
                report.checks += 1
                lhs = pres.comm(ua, pres.generator(b))
                rhs = pres.collect([pres.position(r) for r in bp.query(H, i, j)])
                if lhs != rhs:
                    report.add(Violation(
                        axiom="CB3", w=_wl(w), gallery=H.label(), i=i, j=j,
                        expected=str(pres.word_of(rhs)), found=str(pres.word_of(lhs))))
    return pres, report


def _wl(w: Word) -> str:
    return ".".join(str(x + 1) for x in w) if w else "e"


# ---------------------------------------------------------------------------
# subgroups, series, decompositions


def subgroup_closure(pres: PCPres, gens: Iterable[GroupElem],
                     cap: int = 1 << 24) -> set[GroupElem]:
    """Subgroup generated by `gens`, as an explicit element set (BFS)."""
    gens = list(gens)
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = pres.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    new.append(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"subgroup closure cap {cap} exceeded")
        frontier = new
    return seen


def normal_closure(pres: PCPres, seed: Iterable[GroupElem],
                   cap: int = 1 << 24) -> set[GroupElem]:
    """Smallest normal subgroup containing `seed` (conjugation by the
    presentation generators suffices since they generate)."""
    gens = {x for x in seed if x}
    group_gens = [pres.generator(i) for i in range(1, pres.k + 1)]
    while True:
        closure = subgroup_closure(pres, gens, cap)
        new = {pres.conj(g, x) for x in closure for g in group_gens} - closure
        if not new:
            return closure
        gens |= new


def lower_central_series(pres: PCPres, cap: int = 1 << 24) -> list[set[GroupElem]]:
    """gamma_1 = U, gamma_{i+1} = <[gamma_i, U]>, until it stabilizes at 1.

    [gamma_i, U] is the normal closure of the commutators of gamma_i with the
    generators of U."""
    if pres.order > cap:
        raise CapExceeded(f"group order {pres.order} exceeds cap {cap}")
    whole = set(pres.elements())
    group_gens = [pres.generator(i) for i in range(1, pres.k + 1)]
    series = [whole]
    current = whole
    while len(current) > 1:
        comms = {pres.comm(x, g) for x in current for g in group_gens}
        nxt = normal_closure(pres, comms, cap)
        if nxt == current:
            raise RgdError("lower central series did not terminate; group not nilpotent?")
        series.append(nxt)
        current = nxt
    return series


def nilpotency_class(pres: PCPres, cap: int = 1 << 24) -> int:
    series = lower_central_series(pres, cap)
    return len(series) - 1


def project_to_first(pres: PCPres, s_pos: int) -> Report:
    """Certify the retraction u_{s_pos} -> u_{s_pos}, all other u -> 1.

    It is a homomorphism iff the distinguished generator never occurs in a
    relation value; that splits the group as <u_s> x| (kernel bits)."""
    report = Report(f"project(u{s_pos})")
    for (i, j), word in sorted(pres.rel.items()):
        report.checks += 1
        if s_pos in word:
            report.add(Violation(axiom="semidirect", i=i, j=j,
                                 expected=f"u{s_pos} absent from relation value",
                                 found=str(word)))
    return report


def build_Vws(bp: Blueprint, w: Word, s: int,
              step_cap: int = 1_000_000) -> tuple[PCPres, PCPres, Gallery]:
    """U_w over a gallery starting with s, plus the presentation V_G on the
    remaining k-1 generators. Requires l(sw) = l(w) - 1."""
    cox = bp.cox
    w = cox.normal_form(w)
    if not (w and cox.is_left_descent(s, w)):
        raise RgdError("build_Vws needs s to be a left descent of w")
    G = Gallery(cox, (s,) + cox.normal_form(cox.left_mult(s, w)))
    pres_u = presentation_for_gallery(bp, G, step_cap)
    rel_v = {}
    for (i, j), word in pres_u.rel.items():
        if i >= 2:
            rel_v[(i - 1, j - 1)] = tuple(x - 1 for x in word)
    pres_v = PCPres(G.roots[1:], rel_v, step_cap=step_cap)
    return pres_u, pres_v, G


def vws_iso_check(bp: Blueprint, w: Word, s: int) -> Report:
    """Verify V_G ~= V_{w,s} inside U_w and u_alpha -> u_{s.alpha} onto U_{sw}."""
    from .roots import act  # local import to avoid cycle noise

    cox = bp.cox
    report = Report(f"Vws({bp.name}, w={_wl(cox.normal_form(w))}, s={s + 1})")
    pres_u, pres_v, G = build_Vws(bp, w, s)
    if not pres_u.consistency_check() or not pres_v.consistency_check():
        report.add(Violation(axiom="CB3", w=_wl(w), gallery=G.label(),
                             expected="consistent", found="inconsistent"))
        return report

    # (a) canonical embedding V_G -> U_w lands on the bit-subgroup without u_1
    v_elems = subgroup_closure(pres_u, [pres_u.generator(i) for i in range(2, pres_u.k + 1)])
    report.checks += 1
    if len(v_elems) != 1 << (pres_u.k - 1):
        report.add(Violation(axiom="Vws", w=_wl(w),
                             expected=str(1 << (pres_u.k - 1)), found=str(len(v_elems))))
    report.checks += 1
    if any(x.bits & 1 for x in v_elems):
        report.add(Violation(axiom="Vws", w=_wl(w),
                             expected="V avoids the u_1 bit", found="u_1 bit set"))

    # (b) u_alpha -> u_{s.alpha} is an isomorphism V_{w,s} -> U_{sw}
    sw = cox.normal_form(cox.left_mult(s, cox.normal_form(w)))
    pres_sw, rep_sw = build_Uw(bp, sw)
    report.merge(rep_sw)
    image_pos = {}
    for i in range(2, pres_u.k + 1):
        image_pos[i] = pres_sw.position(act(cox, (s,), G.roots[i - 1]))
    report.checks += 1
    if sorted(image_pos.values()) != list(range(1, pres_sw.k + 1)):
        report.add(Violation(axiom="Vws", w=_wl(w),
                             expected="bijection on generators", found=str(image_pos)))
    for (i, j), word in sorted(pres_u.rel.items()):
        if i < 2:
            continue
        report.checks += 1
        lhs = pres_sw.comm(pres_sw.generator(image_pos[i]), pres_sw.generator(image_pos[j]))
        rhs = pres_sw.collect([image_pos[x] for x in word])
        if lhs != rhs:
            report.add(Violation(axiom="Vws", w=_wl(w), gallery=G.label(), i=i, j=j,
                                 expected=str(pres_sw.word_of(rhs)),
                                 found=str(pres_sw.word_of(lhs))))
    return report
