"""Path algebras kQ/I with admissible relations, by bounded confluent rewriting.

A word is a tuple of arrow indices (left-to-right composition: the word
(a, b) means "a then b").  The ideal presented is <relations> + J^N where J
is the arrow ideal; the nilpotency bound N makes every basis enumeration
finite.  Basis elements are the irreducible words of length < N together
with the trivial paths, ordered by (length, word).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


class Quiver:
    def __init__(self, n_vertices: int, arrows: list[tuple[str, int, int]]):
        if n_vertices < 1:
            raise ValueError("quiver needs at least one vertex")
        self.n = n_vertices
        self.arrows = []
        seen = set()
        for name, s, t in arrows:
            if not (1 <= s <= n_vertices and 1 <= t <= n_vertices):
                raise ValueError(f"arrow {name}: endpoints out of range")
            if name in seen:
                raise ValueError(f"duplicate arrow name {name}")
            seen.add(name)
            self.arrows.append(Arrow(name, s, t))
        self.arrow_index = {a.name: i for i, a in enumerate(self.arrows)}

    def word_source(self, word: tuple[int, ...]) -> int:
        return self.arrows[word[0]].source

    def word_target(self, word: tuple[int, ...]) -> int:
        return self.arrows[word[-1]].target

    def composable(self, word: tuple[int, ...]) -> bool:
        return all(self.arrows[word[k]].target == self.arrows[word[k + 1]].source
                   for k in range(len(word) - 1))

    def opposite(self) -> "Quiver":
        return Quiver(self.n, [(a.name, a.target, a.source) for a in self.arrows])


def _word_key(w: tuple[int, ...]):
    return (len(w), w)


class _Rewriter:
    """Confluent rewriting for word combos, with the J^N cutoff built in."""

    def __init__(self, field: Field, nilpotency: int):
        self.field = field
        self.N = nilpotency
        self.rules: list[tuple[tuple[int, ...], dict]] = []

    def reduce(self, combo: dict) -> dict:
        F = self.field
        out: dict = {}
        stack = [(w, c) for w, c in combo.items()]
        while stack:
            w, c = stack.pop()
            if F.is_zero(c):
                continue
            if len(w) >= self.N:
                continue
            hit = None
            for L, R in self.rules:
                lw = len(L)
                for pos in range(len(w) - lw + 1):
                    if w[pos : pos + lw] == L:
                        hit = (L, R, pos)
                        break
                if hit:
                    break
            if hit is None:
                out[w] = F.add(out.get(w, F.zero), c)
                if F.is_zero(out[w]):
                    del out[w]
            else:
                L, R, pos = hit
                for rw, rc in R.items():
                    stack.append((w[:pos] + rw + w[pos + len(L):], F.mul(c, rc)))
        return out

    def add_rule_from(self, combo: dict) -> bool:
        combo = self.reduce(combo)
        if not combo:
            return False
        F = self.field
        L = max(combo, key=_word_key)
        lead = combo[L]
        R = {w: F.neg(F.div(c, lead)) for w, c in combo.items() if w != L}
        self.rules.append((L, R))
        return True

    def complete(self):
        """Critical-pair completion (bounded by the length cutoff)."""
        F = self.field
        changed = True
        while changed:
            changed = False
            n_rules = len(self.rules)
            for i in range(n_rules):
                for j in range(n_rules):
                    L1, R1 = self.rules[i]
                    L2, R2 = self.rules[j]
                    overlaps = []
                    # suffix of L1 equals prefix of L2
                    for k in range(1, min(len(L1), len(L2))):
                        if L1[-k:] == L2[:k]:
                            overlaps.append(("glue", k))
                    # L2 contained inside L1
                    if i != j and len(L2) < len(L1):
                        for pos in range(len(L1) - len(L2) + 1):
                            if L1[pos : pos + len(L2)] == L2:
                                overlaps.append(("contain", pos))
                    for kind, k in overlaps:
                        if kind == "glue":
                            tail = L2[k:]
                            one = {L1 + tail: F.one}
                            c1 = {}
                            for rw, rc in R1.items():
                                c1[rw + tail] = F.add(c1.get(rw + tail, F.zero), rc)
                            head = L1[: len(L1) - k]
                            c2 = {}
                            for rw, rc in R2.items():
                                c2[head + rw] = F.add(c2.get(head + rw, F.zero), rc)
                        else:
                            pos = k
                            c1 = dict(R1)
                            c2 = {}
                            for rw, rc in R2.items():
                                w = L1[:pos] + rw + L1[pos + len(L2):]
                                c2[w] = F.add(c2.get(w, F.zero), rc)
                        diff: dict = {}
                        for w, c in c1.items():
                            diff[w] = F.add(diff.get(w, F.zero), c)
                        for w, c in c2.items():
                            diff[w] = F.sub(diff.get(w, F.zero), c)
                        if self.add_rule_from(diff):
                            changed = True
            if changed:
                continue


class PathAlgebra:
    """Finite-dimensional quotient kQ/(I + J^N) with an explicit basis and
    multiplication table.

    Basis elements are (source_vertex, word) with word a tuple of arrow
    indices; trivial paths have the empty word.
    """

    def __init__(self, field: Field, quiver: Quiver, relations, nilpotency: int):
        if nilpotency < 2:
            raise ValueError("nilpotency bound must be at least 2")
        self.field = field
        self.quiver = quiver
        self.N = nilpotency
        self.relations = relations
        self._opposite: PathAlgebra | None = None

        rw = _Rewriter(field, nilpotency)
        for rel in relations:
            if not rel:
                continue
            ends = set()
            for coeff, word in rel:
                word = tuple(word)
                if len(word) < 2:
                    raise ValueError("non-admissible relation: path of length < 2")
                if not quiver.composable(word):
                    raise ValueError(f"relation word not composable: {word}")
                ends.add((quiver.word_source(word), quiver.word_target(word)))
            if len(ends) != 1:
                raise ValueError("relation mixes non-parallel paths")
            combo: dict = {}
            for coeff, word in rel:
                w = tuple(word)
                combo[w] = field.add(combo.get(w, field.zero), coeff)
            rw.add_rule_from(combo)
        rw.complete()
        self._ensure_length_cutoff_consistent(rw)
        self.rewriter = rw

        self.basis: list[tuple[int, tuple[int, ...]]] = [(v, ()) for v in range(1, quiver.n + 1)]
        words = [()]
        for _ in range(nilpotency - 1):
            words = [w + (ai,) for w in words for ai in range(len(quiver.arrows))
                     if not w or quiver.arrows[w[-1]].target == quiver.arrows[ai].source]
            for w in words:
                reduced = rw.reduce({w: field.one})
                if len(reduced) == 1 and w in reduced:
                    self.basis.append((quiver.word_source(w), w))
        self.basis.sort(key=lambda e: (len(e[1]), e[1], e[0]))
        self.basis_index = {e: k for k, e in enumerate(self.basis)}
        self.dim = len(self.basis)

        self._mul_table: dict[tuple[int, int], dict[int, object]] = {}

    def _ensure_length_cutoff_consistent(self, rw: _Rewriter):
        """Every composable word of length N must rewrite to something of
        length >= N or to 0 under the relation rules; otherwise the J^N
        truncation would disagree with the relation ideal and we add the
        residue as an extra rule."""
        F = self.field
        q = self.quiver
        changed = True
        guard = 0
        while changed:
            changed = False
            guard += 1
            if guard > 20:
                raise ValueError("relation/nilpotency completion did not stabilize")
            words = [()]
            for _ in range(self.N):
                words = [w + (ai,) for w in words for ai in range(len(q.arrows))
                         if not w or q.arrows[w[-1]].target == q.arrows[ai].source]
                if len(words) > 200000:
                    raise ValueError("nilpotency sweep too large; lower N or simplify relations")
            for w in words:
                residue = rw.reduce({w: F.one})
                if residue:
                    if rw.add_rule_from(residue):
                        changed = True
            if changed:
                rw.complete()

    # -- elements ---------------------------------------------------------

    def element_source(self, k: int) -> int:
        return self.basis[k][0]

    def element_target(self, k: int) -> int:
        src, word = self.basis[k]
        return src if not word else self.quiver.word_target(word)

    def trivial_path(self, v: int) -> int:
        return self.basis_index[(v, ())]

    def arrow_element(self, ai: int) -> int:
        a = self.quiver.arrows[ai]
        return self.basis_index[(a.source, (ai,))]

    def reduce_word(self, src: int, word: tuple[int, ...]) -> dict[int, object]:
        """Image of a word in the basis, as index -> coeff."""
        if not word:
            return {self.trivial_path(src): self.field.one}
        combo = self.rewriter.reduce({tuple(word): self.field.one})
        return {self.basis_index[(src, w)]: c for w, c in combo.items()}

    def mul_basis(self, i: int, j: int) -> dict[int, object]:
        """Product basis_i * basis_j in diagrammatic order (i then j)."""
        key = (i, j)
        cached = self._mul_table.get(key)
        if cached is not None:
            return cached
        si, wi = self.basis[i]
        sj, wj = self.basis[j]
        if self.element_target(i) != sj:
            out: dict[int, object] = {}
        else:
            out = self.reduce_word(si, wi + wj)
        self._mul_table[key] = out
        return out

    def mul(self, x: dict[int, object], y: dict[int, object]) -> dict[int, object]:
        F = self.field
        out: dict[int, object] = {}
        for i, ci in x.items():
            if F.is_zero(ci):
                continue
            for j, cj in y.items():
                c = F.mul(ci, cj)
                for k, ck in self.mul_basis(i, j).items():
                    out[k] = F.add(out.get(k, F.zero), F.mul(c, ck))
        return {k: c for k, c in out.items() if not F.is_zero(c)}

    # -- opposite ----------------------------------------------------------

    def opposite(self) -> "PathAlgebra":
        if self._opposite is None:
            rels = []
            for rel in self.relations:
                rels.append([(c, tuple(reversed(tuple(w)))) for c, w in rel])
            op = PathAlgebra(self.field, self.quiver.opposite(), rels, self.N)
            op._opposite = self
            self._opposite = op
        return self._opposite

    def __repr__(self):
        return f"PathAlgebra(n={self.quiver.n}, arrows={len(self.quiver.arrows)}, dim={self.dim})"


def build_algebra(field: Field, quiver: Quiver, relations, nilpotency: int) -> PathAlgebra:
    return PathAlgebra(field, quiver, relations, nilpotency)
