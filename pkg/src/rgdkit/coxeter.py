"""Exact-arithmetic Coxeter group engine.

Generators are 0-based ints; words are tuples of generators read left to
right, with the leftmost letter applied last (w = s1...sk acts on the left).
All element computations go through the geometric representation over
Q(sqrt2, sqrt3), which is faithful, so exact vector arithmetic decides
lengths, descents and equality.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf

from .errors import CapExceeded, NotSpherical, RgdError
from .qf24 import HALF, ONE, QF24, SQRT2_HALF, SQRT3_HALF, ZERO

Word = tuple[int, ...]
Vector = tuple[QF24, ...]

ALLOWED_LABELS = (2, 3, 4, 6, inf)

_COS = {2: ZERO, 3: HALF, 4: SQRT2_HALF, 6: SQRT3_HALF, inf: ONE}


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix with labels in {2,3,4,6,inf}, plus a direction
    (t, s) for every edge labeled 6."""

    rank: int
    entries: tuple[tuple[float, ...], ...]
    directed6: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self):
        if self.rank < 1:
            raise RgdError("rank must be positive")
        n = self.rank
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise RgdError("entries must be a rank x rank matrix")
        directed = set(self.directed6)
        for i in range(n):
            if self.entries[i][i] != 1:
                raise RgdError("diagonal entries must be 1")
            for j in range(n):
                if i == j:
                    continue
                m = self.entries[i][j]
                if m != self.entries[j][i]:
                    raise RgdError("matrix must be symmetric")
                if m not in ALLOWED_LABELS:
                    raise RgdError(f"label m({i},{j}) = {m} not in {{2,3,4,6,inf}}")
                if m == 6 and i < j:
                    dirs = directed & {(i, j), (j, i)}
                    if len(dirs) != 1:
                        raise RgdError(f"6-edge {{{i},{j}}} needs exactly one direction")
        for (t, s) in directed:
            if self.m(t, s) != 6:
                raise RgdError(f"direction ({t},{s}) on an edge not labeled 6")

    def m(self, s: int, t: int) -> float:
        return self.entries[s][t]

    @staticmethod
    def from_dict(rank: int, labels: dict[tuple[int, int], float],
                  directed6: frozenset[tuple[int, int]] = frozenset()) -> "CoxeterMatrix":
        rows = [[1.0 if i == j else 0.0 for j in range(rank)] for i in range(rank)]
        for i in range(rank):
            rows[i][i] = 1
        for (i, j), m in labels.items():
            rows[i][j] = m
            rows[j][i] = m
        for i in range(rank):
            for j in range(rank):
                if i != j and rows[i][j] == 0.0:
                    raise RgdError(f"missing label for pair ({i},{j})")
        return CoxeterMatrix(rank, tuple(tuple(r) for r in rows), directed6)

    @staticmethod
    def universal(rank: int) -> "CoxeterMatrix":
        labels = {(i, j): inf for i in range(rank) for j in range(i + 1, rank)}
        return CoxeterMatrix.from_dict(rank, labels)

    @staticmethod
    def dihedral(m: float, direction: tuple[int, int] | None = None) -> "CoxeterMatrix":
        directed = frozenset() if direction is None else frozenset({direction})
        return CoxeterMatrix.from_dict(2, {(0, 1): m}, directed)


class CoxeterSystem:
    """Word arithmetic for one Coxeter matrix, with memoized normal forms."""

    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self.rank = matrix.rank
        self.bilinear = tuple(
            tuple(ONE if i == j else -_COS[matrix.m(i, j)] for j in range(self.rank))
            for i in range(self.rank)
        )
        self.basis: tuple[Vector, ...] = tuple(
            tuple(ONE if i == j else ZERO for j in range(self.rank)) for i in range(self.rank)
        )
        self._nf_cache: dict[Word, Word] = {(): ()}
        self._append_cache: dict[tuple[Word, int], Word] = {}
        self._ball_layers: list[list[Word]] = [[()]]
        self._min_gal_cache: dict[Word, tuple[Word, ...]] = {}
        self._gallery_cache: dict[Word, object] = {}

    # ---- geometric representation -------------------------------------

    def bform(self, u: Vector, v: Vector) -> QF24:
        total = ZERO
        for i, ui in enumerate(u):
            if ui.is_zero():
                continue
            row = self.bilinear[i]
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                total = total + ui * row[j] * vj
        return total

    def reflect(self, s: int, v: Vector) -> Vector:
        """Simple reflection sigma_s(v) = v - 2 B(e_s, v) e_s."""
        row = self.bilinear[s]
        coeff = ZERO
        for j, vj in enumerate(v):
            if not vj.is_zero():
                coeff = coeff + row[j] * vj
        out = list(v)
        out[s] = v[s] - (coeff + coeff)
        return tuple(out)

    def apply(self, word: Word, v: Vector) -> Vector:
        """Act by the group element of `word` (rightmost letter first)."""
        for s in reversed(word):
            v = self.reflect(s, v)
        return v

    def apply_inv(self, word: Word, v: Vector) -> Vector:
        for s in word:
            v = self.reflect(s, v)
        return v

    @staticmethod
    def vec_sign(v: Vector) -> int:
        """+1 for a positive vector, -1 for negative; mixed signs are an error."""
        pos = neg = False
        for coord in v:
            sg = coord.sign()
            if sg > 0:
                pos = True
            elif sg < 0:
                neg = True
        if pos and neg:
            raise RgdError(f"mixed-sign vector is not a root image: {v}")
        if not pos and not neg:
            raise RgdError("zero vector has no sign")
        return 1 if pos else -1

    def matrix_of(self, word: Word) -> tuple[Vector, ...]:
        """Image of the basis under the element; faithful, so an equality oracle."""
        return tuple(self.apply(word, e) for e in self.basis)

    # ---- length, descents, reduction ----------------------------------

    def is_right_descent(self, word: Word, t: int) -> bool:
        return self.vec_sign(self.apply(word, self.basis[t])) < 0

    def is_left_descent(self, s: int, word: Word) -> bool:
        """True iff l(s*w) = l(w) - 1; `word` must be reduced."""
        return self.vec_sign(self.apply_inv(word, self.basis[s])) < 0

    def prefix_root_vectors(self, word: Word) -> list[Vector]:
        """Crossed-root vectors beta_i = s1...s_{i-1} . e_{s_i} of a reduced word."""
        out = []
        for i, s in enumerate(word):
            out.append(self.apply(word[:i], self.basis[s]))
        return out

    def right_mult(self, word: Word, t: int) -> Word:
        """Reduced word for w*t given a reduced word for w (exchange condition)."""
        v = self.apply(word, self.basis[t])
        if self.vec_sign(v) > 0:
            return word + (t,)
        target = tuple(-c for c in v)
        for i in range(len(word)):
            beta = self.apply(word[:i], self.basis[word[i]])
            if beta == target:
                return word[:i] + word[i + 1:]
        raise RgdError("exchange condition failed; input word not reduced?")

    def left_mult(self, s: int, word: Word) -> Word:
        """Reduced word for s*w given a reduced word for w."""
        e_s = self.basis[s]
        if self.vec_sign(self.apply_inv(word, e_s)) > 0:
            return (s,) + word
        for i in range(len(word)):
            beta = self.apply(word[:i], self.basis[word[i]])
            if beta == e_s:
                return word[:i] + word[i + 1:]
        raise RgdError("exchange condition failed; input word not reduced?")

    def reduce_word(self, word: Word) -> Word:
        """Deterministic reduced word for the same element."""
        out: Word = ()
        for t in word:
            out = self.right_mult(out, t)
        return out

    def is_reduced(self, word: Word) -> bool:
        return len(self.reduce_word(word)) == len(word)

    def normal_form(self, word: Word) -> Word:
        """Lex-least reduced word: repeatedly pick the smallest left descent."""
        red = self.reduce_word(word)
        return self._nf_reduced(red)

    def _nf_reduced(self, red: Word) -> Word:
        cached = self._nf_cache.get(red)
        if cached is not None:
            return cached
        for s in range(self.rank):
            if self.is_left_descent(s, red):
                nf = (s,) + self._nf_reduced(self.left_mult(s, red))
                break
        else:  # pragma: no cover - empty word is cached
            nf = ()
        self._nf_cache[red] = nf
        return nf

    def nf_append(self, word: Word, t: int) -> Word:
        """normal_form(w * t) for a word already in normal form (memoized)."""
        key = (word, t)
        out = self._append_cache.get(key)
        if out is None:
            out = self._nf_reduced(self.right_mult(word, t))
            self._append_cache[key] = out
        return out

    def same_element(self, u: Word, v: Word) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def inverse_nf(self, word: Word) -> Word:
        return self.normal_form(tuple(reversed(word)))

    # ---- enumeration ---------------------------------------------------

    def ball(self, r: int, cap: int = 200_000) -> list[Word]:
        """Normal forms of all elements of length <= r, each exactly once."""
        if r < 0:
            raise RgdError("radius must be >= 0")
        while len(self._ball_layers) <= r:
            layer = self._ball_layers[-1]
            nxt = set()
            for w in layer:
                for t in range(self.rank):
                    if not self.is_right_descent(w, t):
                        nxt.add(self.normal_form(w + (t,)))
            self._ball_layers.append(sorted(nxt))
            if sum(len(l) for l in self._ball_layers) > cap:
                raise CapExceeded(f"ball cap {cap} exceeded at radius {len(self._ball_layers) - 1}")
        out: list[Word] = []
        for layer in self._ball_layers[: r + 1]:
            out.extend(layer)
        if len(out) > cap:
            raise CapExceeded(f"ball cap {cap} exceeded")
        return out

    def longest_element(self, J: tuple[int, ...]) -> Word:
        """Reduced word for the longest element of a spherical rank<=2 parabolic."""
        J = tuple(sorted(set(J)))
        if len(J) == 1:
            return (J[0],)
        if len(J) != 2:
            raise NotSpherical("only rank <= 2 standard parabolics are supported")
        s, t = J
        m = self.matrix.m(s, t)
        if m == inf:
            raise NotSpherical(f"parabolic {{{s},{t}}} is infinite")
        word = tuple(s if i % 2 == 0 else t for i in range(int(m)))
        return self.normal_form(word)

    def coset_gate(self, word: Word, J: tuple[int, ...]) -> Word:
        """Minimal-length element of w<J>: strip right descents in J."""
        w = self.normal_form(word)
        changed = True
        while changed:
            changed = False
            for j in J:
                if w and self.is_right_descent(w, j):
                    w = self.normal_form(self.right_mult(w, j))
                    changed = True
        return w

    def parabolic_elements(self, J: tuple[int, ...], cap: int = 4096) -> list[Word]:
        """All elements of the standard parabolic <J> (must be finite)."""
        seen = {(): None}
        frontier = [()]
        while frontier:
            new = []
            for w in frontier:
                for j in J:
                    v = self.normal_form(w + (j,))
                    if v not in seen:
                        seen[v] = None
                        new.append(v)
            frontier = new
            if len(seen) > cap:
                raise NotSpherical(f"parabolic {J} exceeds cap {cap}; not finite?")
        return sorted(seen, key=lambda w: (len(w), w))


def support(word: Word) -> frozenset[int]:
    return frozenset(word)
