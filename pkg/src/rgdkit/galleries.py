"""Minimal galleries from the identity chamber.

A gallery is a reduced word read as a chamber path 1 = c0, c1, ..., ck with
its crossed-root sequence; the index order on crossed roots is the gallery
order used by blueprints. Root positions are 1-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .coxeter import CoxeterSystem, Word
from .errors import CapExceeded, RgdError
from .roots import Root, phi_w


@dataclass(frozen=True)
class Gallery:
    cox: CoxeterSystem
    word: Word

    def __post_init__(self):
        if not self.cox.is_reduced(self.word):
            raise RgdError(f"gallery type {self.word} is not reduced")

    def __len__(self) -> int:
        return len(self.word)

    @cached_property
    def chambers(self) -> tuple[Word, ...]:
        return tuple(self.word[:i] for i in range(len(self.word) + 1))

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        out = tuple(phi_w(self.cox, self.word))
        if len({r.vec for r in out}) != len(out):
            raise RgdError("minimal gallery crossed a wall twice")
        return out

    @cached_property
    def _pos(self) -> dict:
        return {r.vec: i + 1 for i, r in enumerate(self.roots)}

    def root(self, i: int) -> Root:
        """Crossed root at 1-based position i."""
        return self.roots[i - 1]

    def position(self, alpha: Root) -> int:
        p = self._pos.get(alpha.vec)
        if p is None:
            raise RgdError(f"root not crossed by gallery {self.word}")
        return p

    def crosses(self, alpha: Root) -> bool:
        return alpha.vec in self._pos

    def prefix(self, m: int) -> "Gallery":
        return Gallery(self.cox, self.word[:m])

    def label(self) -> str:
        return ".".join(str(x + 1) for x in self.word) if self.word else "e"


def get_gallery(cox: CoxeterSystem, word: Word) -> Gallery:
    """Gallery for a reduced word, cached per system."""
    g = cox._gallery_cache.get(word)
    if g is None:
        g = Gallery(cox, word)
        cox._gallery_cache[word] = g
    return g


def min_gal(cox: CoxeterSystem, w: Word, cap: int = 10_000) -> list[Gallery]:
    """All minimal galleries for w (one per reduced word), lex order."""
    words = _reduced_words(cox, cox.normal_form(w), cap)
    return [get_gallery(cox, word) for word in words]


def _reduced_words(cox: CoxeterSystem, w: Word, cap: int) -> tuple[Word, ...]:
    cached = cox._min_gal_cache.get(w)
    if cached is not None:
        if len(cached) > cap:
            raise CapExceeded(f"gallery cap {cap} exceeded for {w}")
        return cached
    if not w:
        out: tuple[Word, ...] = ((),)
    else:
        acc: list[Word] = []
        for s in range(cox.rank):
            if cox.is_left_descent(s, w):
                for tail in _reduced_words(cox, cox.normal_form(cox.left_mult(s, w)), cap):
                    acc.append((s,) + tail)
                    if len(acc) > cap:
                        raise CapExceeded(f"gallery cap {cap} exceeded for {w}")
        out = tuple(acc)
    cox._min_gal_cache[w] = out
    return out


def min_gal_s(cox: CoxeterSystem, w: Word, s: int, cap: int = 10_000) -> list[Gallery]:
    """Min_s(w): galleries starting with s if s is a left descent, else Min(w)."""
    gals = min_gal(cox, w, cap)
    if w and cox.is_left_descent(s, cox.normal_form(w)):
        return [G for G in gals if G.word[0] == s]
    return gals


def shift(G: Gallery, s: int) -> Gallery:
    """The gallery sG: drop the leading s (descent) or prepend s (ascent)."""
    cox = G.cox
    if G.word and cox.is_left_descent(s, G.word):
        if G.word[0] != s:
            raise RgdError("descent shift needs a gallery of type (s, ...)")
        return get_gallery(cox, G.word[1:])
    return get_gallery(cox, (s,) + G.word)


def order_leq(G: Gallery, alpha: Root, beta: Root) -> bool:
    """Crossing order: alpha <=_G beta."""
    return G.position(alpha) <= G.position(beta)
