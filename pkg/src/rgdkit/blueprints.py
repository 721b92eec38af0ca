"""Commutator blueprints: the assignment (G, alpha, beta) -> M^G_{alpha,beta}.

A blueprint answers, for every gallery G and crossed roots alpha <=_G beta,
an ordered subset of the open interval (alpha, beta); these sets prescribe
the relations [u_alpha, u_beta] = prod u_gamma of the groups built in
`groupforge`.  Backends: built-in rank-2 Moufang tables, the all-empty
blueprint, line-oriented files, and composites.  Validators check the three
blueprint axioms (CB1 prefix coherence, CB2 rank-2 Moufang values, CB3 via
group construction elsewhere) and Weyl-invariance.
"""

from __future__ import annotations

import io
from math import inf

from .coxeter import CoxeterMatrix, CoxeterSystem, Word
from .errors import BlueprintError, ParseError, RgdError
from .galleries import Gallery, min_gal, min_gal_s, shift
from .reports import Report, Violation
from .roots import (Root, act, open_interval, pair_order, residue_at,
                    residue_roots, residues_on_wall, simple_root,
                    stabilizes_residue, reflection_word)

# Non-trivial commutation sets of the rank-2 Moufang tables over GF(2),
# keyed by crossing positions (i, j) on the distinguished length-m gallery.
RANK2_M_SETS: dict[int, dict[tuple[int, int], tuple[int, ...]]] = {
    2: {},
    3: {(1, 3): (2,)},
    4: {(1, 4): (2, 3)},
    6: {(1, 3): (2,), (3, 5): (4,), (1, 5): (2, 4), (2, 6): (4,), (1, 6): (2, 3, 4, 5)},
}


class Blueprint:
    """Base class; subclasses provide values for root pairs or gallery triples."""

    def __init__(self, cox: CoxeterSystem, name: str):
        self.cox = cox
        self.name = name
        # when set, every query re-checks containment in the computed
        # open interval (slow; meant for debugging blueprint sources)
        self.debug_containment = False

    # -- core query -------------------------------------------------------

    def query(self, G: Gallery, i: int, j: int) -> tuple[Root, ...]:
        """Ordered M-set for positions 1 <= i <= j <= len(G)."""
        if not (1 <= i <= j <= len(G)):
            raise BlueprintError(f"positions ({i},{j}) out of range for gallery {G.label()}")
        if i == j:
            return ()
        value = self._value(G, i, j)
        for root in value:
            p = G.position(root)
            if not (i < p < j):
                raise BlueprintError(
                    f"{self.name}: M^{G.label()}({i},{j}) contains position {p}, "
                    f"outside the open interval")
        if self.debug_containment and value:
            allowed = set(open_interval(self.cox, G.root(i), G.root(j), G))
            if not set(value) <= allowed:
                raise BlueprintError(
                    f"{self.name}: M^{G.label()}({i},{j}) leaves the open interval")
        return value

    def query_positions(self, G: Gallery, i: int, j: int) -> tuple[int, ...]:
        return tuple(G.position(r) for r in self.query(G, i, j))

    def _value(self, G: Gallery, i: int, j: int) -> tuple[Root, ...]:
        raise NotImplementedError

    def describe(self) -> str:
        return self.name


def _order_by_gallery(G: Gallery, roots: frozenset) -> tuple[Root, ...]:
    return tuple(sorted(roots, key=G.position))


class PairTableBlueprint(Blueprint):
    """Blueprint whose values depend only on the unordered root pair."""

    def pair_value(self, alpha: Root, beta: Root) -> frozenset:
        raise NotImplementedError

    def _value(self, G: Gallery, i: int, j: int) -> tuple[Root, ...]:
        return _order_by_gallery(G, self.pair_value(G.root(i), G.root(j)))


class AllEmpty(PairTableBlueprint):
    """Every commutator trivial; valid for right-angled and universal types."""

    def __init__(self, cox: CoxeterSystem, name: str = "allempty"):
        super().__init__(cox, name)

    def pair_value(self, alpha: Root, beta: Root) -> frozenset:
        return frozenset()


class LocalRank2(PairTableBlueprint):
    """Moufang rank-2 values propagated to every spherical residue.

    For a pair of roots whose reflections have finite product order, the
    value is the Moufang table entry of the base residue of that type,
    translated by the gate of a common residue; infinite pairs get the
    empty set.  On a rank-2 system this is exactly the built-in table.
    """

    def __init__(self, cox: CoxeterSystem, name: str = "rank2",
                 search_radius: int = 8):
        super().__init__(cox, name)
        self.search_radius = search_radius
        self._base_tables: dict[tuple[int, int], dict[frozenset, frozenset]] = {}
        self._pair_cache: dict[frozenset, frozenset] = {}

    def _base_table(self, J: tuple[int, int]) -> dict[frozenset, frozenset]:
        cached = self._base_tables.get(J)
        if cached is not None:
            return cached
        s, t = J
        m = int(self.cox.matrix.m(s, t))
        first = s
        if m == 6:
            # the directed pair (t', s') anchors the table at galleries starting s'
            for (a, b) in self.cox.matrix.directed6:
                if {a, b} == {s, t}:
                    first = b
        second = t if first == s else s
        word = tuple(first if k % 2 == 0 else second for k in range(m))
        G = Gallery(self.cox, word)
        table: dict[frozenset, frozenset] = {}
        for (i, j), ks in RANK2_M_SETS[m].items():
            key = frozenset({G.root(i), G.root(j)})
            table[key] = frozenset(G.root(k) for k in ks)
        self._base_tables[J] = table
        return table

    def pair_value(self, alpha: Root, beta: Root) -> frozenset:
        if alpha == beta:
            return frozenset()
        key = frozenset({alpha, beta})
        cached = self._pair_cache.get(key)
        if cached is not None:
            return cached
        order = pair_order(self.cox, alpha, beta)
        if order == inf or order == 2:
            value = frozenset()
        else:
            value = self._residue_value(alpha, beta)
        self._pair_cache[key] = value
        return value

    def _residue_value(self, alpha: Root, beta: Root) -> frozenset:
        cox = self.cox
        ra = reflection_word(cox, alpha)
        rb = reflection_word(cox, beta)
        best = None
        for w in cox.ball(self.search_radius):
            for s in range(cox.rank):
                for t in range(s + 1, cox.rank):
                    if cox.matrix.m(s, t) == inf:
                        continue
                    R = residue_at(cox, w, (s, t))
                    if stabilizes_residue(cox, ra, R) and stabilizes_residue(cox, rb, R):
                        if best is None or len(R.base) < len(best.base):
                            best = R
            if best is not None and len(best.base) <= len(w):
                break
        if best is None:
            raise BlueprintError(
                f"no common rank-2 residue within radius {self.search_radius} "
                f"for pair {alpha.describe()}, {beta.describe()}")
        g = best.base
        g_inv = tuple(reversed(g))
        a0 = act(cox, g_inv, alpha)
        b0 = act(cox, g_inv, beta)
        table = self._base_table(best.J)
        value = table.get(frozenset({a0, b0}), frozenset())
        return frozenset(act(cox, g, gamma) for gamma in value)


class Rank2Table(LocalRank2):
    """The built-in blueprint of a rank-2 spherical system."""

    def __init__(self, cox: CoxeterSystem, name: str = "rank2table"):
        if cox.rank != 2 or cox.matrix.m(0, 1) == inf:
            raise BlueprintError("Rank2Table needs a rank-2 spherical system")
        super().__init__(cox, name)


class Composite(Blueprint):
    """Rank-2 residues answered by the Moufang tables, the rest by a
    secondary source; conflicts resolve in favor of the tables."""

    def __init__(self, cox: CoxeterSystem, secondary: Blueprint, name: str = "composite"):
        super().__init__(cox, name)
        self.local = LocalRank2(cox, name=name + ":local")
        self.secondary = secondary
        self.conflicts: list[str] = []

    def _value(self, G: Gallery, i: int, j: int) -> tuple[Root, ...]:
        alpha, beta = G.root(i), G.root(j)
        if pair_order(self.cox, alpha, beta) != inf:
            local = _order_by_gallery(G, self.local.pair_value(alpha, beta))
            try:
                other = self.secondary.query(G, i, j)
            except BlueprintError:
                other = None
            if other is not None and other != local:
                self.conflicts.append(
                    f"pair ({G.label()},{i},{j}): table {_fmt(G, local)} "
                    f"overrides secondary {_fmt(G, other)}")
            return local
        return self.secondary.query(G, i, j)


def _fmt(G: Gallery, roots: tuple[Root, ...]) -> str:
    return ",".join(str(G.position(r)) for r in roots) or "-"


class FileTable(Blueprint):
    """Blueprint read from a line-oriented file.

    Explicit entries are keyed by (gallery type word, i, j); unspecified
    triples follow the default mode: `empty` (trivial), `strict` (error) or
    `rank2` (Moufang residue values, empty outside spherical pairs).
    """

    def __init__(self, cox: CoxeterSystem, entries: dict[tuple[Word, int, int], tuple[int, ...]],
                 default: str = "empty", name: str = "file"):
        super().__init__(cox, name)
        if default not in ("empty", "strict", "rank2"):
            raise BlueprintError(f"unknown default mode {default!r}")
        self.entries = dict(entries)
        self.default = default
        self._local = LocalRank2(cox, name=name + ":rank2") if default == "rank2" else None

    def _value(self, G: Gallery, i: int, j: int) -> tuple[Root, ...]:
        ks = self.entries.get((G.word, i, j))
        if ks is not None:
            return tuple(G.root(k) for k in ks)
        if self.default == "strict":
            raise BlueprintError(
                f"{self.name}: no entry for gallery {G.label()} pair ({i},{j}) (strict mode)")
        if self._local is not None:
            return _order_by_gallery(G, self._local.pair_value(G.root(i), G.root(j)))
        return ()


# ---------------------------------------------------------------------------
# file ingestion / serialization


def ingest(text: str, name: str = "file") -> FileTable:
    """Parse a blueprint file; raises ParseError with the offending line."""
    rank = None
    labels: dict[tuple[int, int], float] = {}
    directed: set[tuple[int, int]] = set()
    default = "empty"
    rels: list[tuple[int, Word, int, int, tuple[int, ...]]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "rank":
                rank = int(parts[1])
            elif kind == "m":
                i, j = int(parts[1]) - 1, int(parts[2]) - 1
                v = inf if parts[3] == "inf" else int(parts[3])
                labels[(i, j)] = v
            elif kind == "dir6":
                directed.add((int(parts[1]) - 1, int(parts[2]) - 1))
            elif kind == "default":
                default = parts[1]
            elif kind == "rel":
                word = tuple(int(x) - 1 for x in parts[1].split("."))
                i, j = int(parts[2]), int(parts[3])
                if parts[4] != ":":
                    raise ValueError("expected ':' after positions")
                ks = tuple(int(x) for x in parts[5:])
                rels.append((ln, word, i, j, ks))
            else:
                raise ValueError(f"unknown directive {kind!r}")
        except (IndexError, ValueError) as exc:
            raise ParseError(ln, str(exc)) from exc
    if rank is None:
        raise ParseError(0, "missing 'rank' directive")
    try:
        matrix = CoxeterMatrix.from_dict(rank, labels, frozenset(directed))
    except RgdError as exc:
        raise ParseError(0, str(exc)) from exc
    cox = CoxeterSystem(matrix)

    entries: dict[tuple[Word, int, int], tuple[int, ...]] = {}
    for ln, word, i, j, ks in rels:
        if any(not 0 <= x < rank for x in word):
            raise ParseError(ln, f"generator out of range in gallery {word}")
        if not cox.is_reduced(word):
            raise ParseError(ln, f"gallery word {'.'.join(str(x+1) for x in word)} is not reduced")
        G = Gallery(cox, word)
        if not (1 <= i < j <= len(word)):
            raise ParseError(ln, f"positions ({i},{j}) out of range")
        if any(not i < k < j for k in ks):
            raise ParseError(ln, f"relation value {ks} not strictly between {i} and {j}")
        if tuple(sorted(ks)) != ks or len(set(ks)) != len(ks):
            raise ParseError(ln, f"relation value {ks} not strictly increasing")
        allowed = {G.position(r) for r in open_interval(cox, G.root(i), G.root(j), G)}
        if not set(ks) <= allowed:
            raise ParseError(ln, f"relation value {ks} leaves the open interval "
                                 f"({i},{j}) = {sorted(allowed)}")
        entries[(word, i, j)] = ks
    return FileTable(cox, entries, default=default, name=name)


def ingest_path(path: str) -> FileTable:
    with open(path, "r", encoding="utf-8") as fh:
        return ingest(fh.read(), name=path)


def serialize(bp: Blueprint, r: int, gallery_cap: int = 10_000) -> str:
    """Render a blueprint as a file describing every triple up to radius r."""
    cox = bp.cox
    out = io.StringIO()
    out.write(f"# blueprint {bp.name} serialized to radius {r}\n")
    out.write(f"rank {cox.rank}\n")
    for i in range(cox.rank):
        for j in range(i + 1, cox.rank):
            m = cox.matrix.m(i, j)
            out.write(f"m {i + 1} {j + 1} {'inf' if m == inf else int(m)}\n")
    for (t, s) in sorted(cox.matrix.directed6):
        out.write(f"dir6 {t + 1} {s + 1}\n")
    out.write("default empty\n")
    for w in cox.ball(r):
        for G in min_gal(cox, w, gallery_cap):
            for i in range(1, len(G) + 1):
                for j in range(i + 1, len(G) + 1):
                    ks = bp.query_positions(G, i, j)
                    if ks:
                        out.write(f"rel {G.label()} {i} {j} : {' '.join(map(str, ks))}\n")
    return out.getvalue()


# ---------------------------------------------------------------------------
# validators


def validate_cb1(bp: Blueprint, r: int, gallery_cap: int = 10_000) -> Report:
    """Prefix coherence: a prefix gallery answers exactly like its extension."""
    report = Report(f"CB1({bp.name}, r={r})")
    cox = bp.cox
    for w in cox.ball(r):
        for G in min_gal(cox, w, gallery_cap):
            for m in range(1, len(G)):
                H = G.prefix(m)
                for i in range(1, m + 1):
                    for j in range(i, m + 1):
                        report.checks += 1
                        got_h = bp.query_positions(H, i, j)
                        got_g = bp.query_positions(G, i, j)
                        if got_h != got_g:
                            report.add(Violation(
                                axiom="CB1", w=_word_label(w), gallery=H.label(),
                                i=i, j=j,
                                expected=",".join(map(str, got_g)) or "-",
                                found=",".join(map(str, got_h)) or "-"))
    return report


def validate_cb2(bp: Blueprint, gallery_cap: int = 10_000) -> Report:
    """Rank-2 Moufang values on the galleries of each longest dihedral element.

    Labels 2, 3, 4 force the full open interval on the simple pair and the
    empty set elsewhere, on both galleries.  Label 6 constrains only the
    gallery starting at the directed edge's target; the mirror gallery is
    covered by CB1 and Weyl-invariance instead.
    """
    report = Report(f"CB2({bp.name})")
    cox = bp.cox
    for s in range(cox.rank):
        for t in range(s + 1, cox.rank):
            m = cox.matrix.m(s, t)
            if m == inf:
                continue
            m = int(m)
            w0 = cox.longest_element((s, t))
            for G in min_gal(cox, w0, gallery_cap):
                oriented_first = None
                if m == 6:
                    for (a, b) in cox.matrix.directed6:
                        if {a, b} == {s, t}:
                            oriented_first = b
                    if G.word[0] != oriented_first:
                        continue
                for i in range(1, m + 1):
                    for j in range(i + 1, m + 1):
                        report.checks += 1
                        got = bp.query_positions(G, i, j)
                        if m != 6:
                            want = tuple(range(i + 1, j)) if (i, j) == (1, m) else ()
                            if got != want:
                                report.add(Violation(
                                    axiom="CB2", w=_word_label(w0), s=str(s + 1),
                                    gallery=G.label(), i=i, j=j,
                                    expected=",".join(map(str, want)) or "-",
                                    found=",".join(map(str, got)) or "-"))
                        else:
                            want = RANK2_M_SETS[6].get((i, j), ())
                            if set(got) != set(want):
                                report.add(Violation(
                                    axiom="CB2", w=_word_label(w0), s=str(s + 1),
                                    gallery=G.label(), i=i, j=j,
                                    expected=",".join(map(str, want)) or "-",
                                    found=",".join(map(str, got)) or "-"))
    return report


def validate_weyl(bp: Blueprint, r: int, gallery_cap: int = 10_000) -> Report:
    """Weyl-invariance: M^{sG}_{s.alpha, s.beta} = s . M^G_{alpha, beta}
    for every gallery G in Min_s(w) and alpha <=_G beta away from alpha_s."""
    report = Report(f"Weyl({bp.name}, r={r})")
    cox = bp.cox

    def s_image(s: int, root: Root) -> Root:
        return Root(cox.reflect(s, root.vec))

    for w in cox.ball(r):
        for s in range(cox.rank):
            alpha_s = simple_root(cox, s)
            for G in min_gal_s(cox, w, s, gallery_cap):
                sG = shift(G, s)
                for i in range(1, len(G) + 1):
                    if G.root(i) == alpha_s:
                        continue
                    for j in range(i, len(G) + 1):
                        if G.root(j) == alpha_s:
                            continue
                        report.checks += 1
                        image = tuple(s_image(s, g) for g in bp.query(G, i, j))
                        shifted = bp.query(sG, sG.position(s_image(s, G.root(i))),
                                           sG.position(s_image(s, G.root(j))))
                        if image != shifted:
                            report.add(Violation(
                                axiom="Weyl", w=_word_label(w), s=str(s + 1),
                                gallery=G.label(), i=i, j=j,
                                expected=",".join(str(sG.position(x)) for x in image) or "-",
                                found=",".join(str(sG.position(x)) for x in shifted) or "-"))
    return report


def _word_label(w: Word) -> str:
    return ".".join(str(x + 1) for x in w) if w else "e"


# ---------------------------------------------------------------------------
# built-in registry


def builtin(name: str) -> Blueprint:
    """Built-in blueprints: rank2:m2|m3|m4|m6lr|m6rl and allempty:universalN."""
    try:
        family, variant = name.split(":", 1)
    except ValueError as exc:
        raise BlueprintError(f"bad builtin name {name!r}") from exc
    if family == "rank2":
        if variant == "m2":
            matrix = CoxeterMatrix.dihedral(2)
        elif variant == "m3":
            matrix = CoxeterMatrix.dihedral(3)
        elif variant == "m4":
            matrix = CoxeterMatrix.dihedral(4)
        elif variant == "m6lr":
            matrix = CoxeterMatrix.dihedral(6, direction=(1, 0))
        elif variant == "m6rl":
            matrix = CoxeterMatrix.dihedral(6, direction=(0, 1))
        else:
            raise BlueprintError(f"unknown rank2 variant {variant!r}")
        return Rank2Table(CoxeterSystem(matrix), name=name)
    if family == "allempty":
        if not variant.startswith("universal"):
            raise BlueprintError(f"unknown allempty variant {variant!r}")
        n = int(variant[len("universal"):])
        return AllEmpty(CoxeterSystem(CoxeterMatrix.universal(n)), name=name)
    raise BlueprintError(f"unknown builtin family {family!r}")
