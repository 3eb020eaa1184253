"""The relative theory: F = F_{add G}, approximations, F-projective
resolutions, relative Ext, relative dimensions, I(F) and F-syzygies.

The generator G always contains every indecomposable projective among its
declared summands, which is the enough-projectives setting the whole
machinery runs on; F-exactness of 0 -> A -> B -> C -> 0 is surjectivity of
Hom(G, B) -> Hom(G, C).
"""

from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix, rank
from .quiver import PathAlgebra
from .rep import (
    DirectSum,
    ModuleMap,
    Representation,
    ShortExactSeq,
    cokernel,
    direct_sum,
    dtr,
    endo_indecomposability_check,
    hom_coordinates,
    hom_space,
    injective,
    is_isomorphic,
    kernel,
    projective,
    stack_maps_to_common_target,
    zero_representation,
)
from .reports import Dim, DimensionReport, dim_max


class TruncationError(Exception):
    """A quantity is undeterminable at the chosen cutoff."""


@dataclass
class SummandDecl:
    name: str
    module: Representation


class SubbifunctorF:
    """F = F_{add G} for a generator G declared by its indecomposable
    summands (pairwise non-isomorphic, projectives included)."""

    def __init__(self, algebra: PathAlgebra, summands: list[SummandDecl], validate: bool = True):
        self.algebra = algebra
        self.summands = list(summands)
        self.sum = direct_sum([s.module for s in summands], algebra)
        self.validation_notes: list[str] = []
        self._pair_homs: dict[tuple[int, int], list[ModuleMap]] = {}
        self._hom_from_cache: dict[int, list[list[ModuleMap]]] = {}
        if validate:
            self._validate()

    # -- declarations ------------------------------------------------------

    @property
    def generator(self) -> Representation:
        return self.sum.rep

    def _validate(self):
        n = self.algebra.quiver.n
        for i in range(1, n + 1):
            p = projective(self.algebra, i)
            if not any(is_isomorphic(p, s.module).isomorphic for s in self.summands):
                raise ValueError(f"projective({i}) is not among the declared summands of G")
        for a in range(len(self.summands)):
            for b in range(a + 1, len(self.summands)):
                r = is_isomorphic(self.summands[a].module, self.summands[b].module)
                if r.isomorphic:
                    raise ValueError(
                        f"declared summands {self.summands[a].name} and {self.summands[b].name} are isomorphic")
        for s in self.summands:
            if not endo_indecomposability_check(s.module):
                self.validation_notes.append(
                    f"summand {s.name}: endomorphism spot check found an idempotent or a"
                    " non-nilpotent non-invertible element; indecomposability is doubtful")

    def pair_hom(self, i: int, j: int) -> list[ModuleMap]:
        key = (i, j)
        if key not in self._pair_homs:
            self._pair_homs[key] = hom_space(self.summands[i].module, self.summands[j].module)
        return self._pair_homs[key]

    def summand_index_of_projective(self, v: int) -> int:
        p = projective(self.algebra, v)
        for k, s in enumerate(self.summands):
            if is_isomorphic(p, s.module).isomorphic:
                return k
        raise ValueError("projective not declared")

    def is_projective_summand(self, k: int) -> bool:
        m = self.summands[k].module
        for v in range(1, self.algebra.quiver.n + 1):
            if is_isomorphic(m, projective(self.algebra, v)).isomorphic:
                return True
        return False


# ---------------------------------------------------------------------------
# F-exactness


def hom_g_surjective(f: SubbifunctorF, g_map: ModuleMap) -> bool:
    """Is Hom(G, g_map) surjective onto Hom(G, target)?"""
    return hom_class_surjective(f.summands, g_map)


def is_f_exact(ses: ShortExactSeq, f: SubbifunctorF) -> bool:
    return hom_g_surjective(f, ses.g)


# ---------------------------------------------------------------------------
# approximations


@dataclass
class Approximation:
    """Minimal right add(G)-approximation f: G' -> X with its decomposition.

    pieces[k] = index into f.summands for each copy in the source sum;
    for X already in add(G) the map is the identity and pieces is None.
    """
    map: ModuleMap
    source_sum: DirectSum | None
    pieces: list[int] | None

    @property
    def is_identity(self) -> bool:
        return self.pieces is None


def hom_class_surjective(summands: list[SummandDecl], g_map: ModuleMap) -> bool:
    """Is Hom(C, g_map) surjective for every C among the given summands?"""
    F = g_map.source.algebra.field
    for s in summands:
        target_basis = hom_space(s.module, g_map.target)
        if not target_basis:
            continue
        source_basis = hom_space(s.module, g_map.source)
        if not source_basis:
            return False
        cols = [hom_coordinates(target_basis, phi.compose(g_map)) for phi in source_basis]
        m = Matrix(F, len(target_basis), len(cols),
                   [cols[c][r] for r in range(len(target_basis)) for c in range(len(cols))])
        if rank(m) < len(target_basis):
            return False
    return True


def minimal_right_approximation(x: Representation, summands: list[SummandDecl],
                                algebra: PathAlgebra) -> Approximation:
    """Minimal right add(⊕summands)-approximation, by greedy copy removal.

    Surjectivity of Hom(C, -) is tested blockwise: the composition blocks
    coords(h then u_c) are computed once, so each removal trial is a small
    rank check.
    """
    if x.is_zero():
        z = zero_representation(algebra)
        return Approximation(ModuleMap.zero(z, x), direct_sum([], algebra), [])
    F = algebra.field
    target_bases = [hom_space(s.module, x) for s in summands]
    maps: list[ModuleMap] = []
    pieces: list[int] = []
    for k in range(len(summands)):
        for phi in target_bases[k]:
            maps.append(phi)
            pieces.append(k)
    pair_cache: dict[tuple[int, int], list[ModuleMap]] = {}

    def pair(l: int, j: int) -> list[ModuleMap]:
        if (l, j) not in pair_cache:
            pair_cache[(l, j)] = hom_space(summands[l].module, summands[j].module)
        return pair_cache[(l, j)]

    # blocks[l][c]: coordinates in Hom(C_l, x) of {h then u_c : h in Hom(C_l, G_jc)}
    blocks: list[list[Matrix]] = []
    for l in range(len(summands)):
        tb = target_bases[l]
        row = []
        for c, u in enumerate(maps):
            homs = pair(l, pieces[c])
            cols = [hom_coordinates(tb, h.compose(u)) for h in homs] if tb else []
            row.append(Matrix(F, len(tb), len(cols),
                              [cols[cc][r] for r in range(len(tb)) for cc in range(len(cols))]))
        blocks.append(row)

    def surjective(subset: list[int]) -> bool:
        for l in range(len(summands)):
            need = len(target_bases[l])
            if need == 0:
                continue
            glued = None
            for c in subset:
                b = blocks[l][c]
                if b.cols == 0:
                    continue
                glued = b if glued is None else glued.hstack(b)
            if glued is None or rank(glued) < need:
                return False
        return True

    keep = list(range(len(maps)))
    if not surjective(keep):
        raise ValueError("tautological approximation failed")
    changed = True
    while changed:
        changed = False
        for i in list(keep):
            trial = [j for j in keep if j != i]
            if surjective(trial):
                keep = trial
                changed = True
    kept_maps = [maps[i] for i in keep]
    ds, glued = stack_maps_to_common_target(kept_maps, x, algebra)
    approx = Approximation(glued, ds, [pieces[i] for i in keep])
    if glued.is_isomorphism():
        return Approximation(ModuleMap.identity(x), None, None)
    return approx


def right_approximation(x: Representation, f: SubbifunctorF) -> Approximation:
    return minimal_right_approximation(x, f.summands, f.algebra)


def left_approximation(x: Representation, targets: list[SummandDecl],
                       algebra: PathAlgebra) -> tuple[ModuleMap, DirectSum, list[int]]:
    """Minimal left add(⊕targets)-approximation u: x -> I', blockwise."""
    F = algebra.field
    out_bases = [hom_space(x, t.module) for t in targets]
    maps: list[ModuleMap] = []
    pieces: list[int] = []
    for k in range(len(targets)):
        for phi in out_bases[k]:
            maps.append(phi)
            pieces.append(k)
    pair_cache: dict[tuple[int, int], list[ModuleMap]] = {}

    def pair(j: int, l: int) -> list[ModuleMap]:
        if (j, l) not in pair_cache:
            pair_cache[(j, l)] = hom_space(targets[j].module, targets[l].module)
        return pair_cache[(j, l)]

    # blocks[l][c]: coordinates in Hom(x, I_l) of {u_c then psi : psi in Hom(I_jc, I_l)}
    blocks: list[list[Matrix]] = []
    for l in range(len(targets)):
        tb = out_bases[l]
        row = []
        for c, u in enumerate(maps):
            homs = pair(pieces[c], l)
            cols = [hom_coordinates(tb, u.compose(psi)) for psi in homs] if tb else []
            row.append(Matrix(F, len(tb), len(cols),
                              [cols[cc][r] for r in range(len(tb)) for cc in range(len(cols))]))
        blocks.append(row)

    def is_left_approx(subset: list[int]) -> bool:
        for l in range(len(targets)):
            need = len(out_bases[l])
            if need == 0:
                continue
            glued = None
            for c in subset:
                b = blocks[l][c]
                if b.cols == 0:
                    continue
                glued = b if glued is None else glued.hstack(b)
            if glued is None or rank(glued) < need:
                return False
        return True

    def build(subset: list[int]) -> tuple[ModuleMap, DirectSum]:
        parts = [maps[i].target for i in subset]
        ds = direct_sum(parts, algebra)
        total = ModuleMap.zero(x, ds.rep)
        for pos, i in enumerate(subset):
            total = total + maps[i].compose(ds.injections[pos])
        return total, ds

    keep = list(range(len(maps)))
    if not is_left_approx(keep):
        raise ValueError("tautological left approximation failed")
    changed = True
    while changed:
        changed = False
        for i in list(keep):
            trial = [j for j in keep if j != i]
            if is_left_approx(trial):
                keep = trial
                changed = True
    u, ds = build(keep)
    return u, ds, [pieces[i] for i in keep]


# ---------------------------------------------------------------------------
# F-projective resolutions


@dataclass
class FResolution:
    """Minimal F-projective resolution P^{-m} -> ... -> P^0 -> X.

    modules[i] is P^{-i}; diffs[i]: P^{-i} -> P^{-i+1} for i >= 1;
    augmentation: P^0 -> X.  pieces[i] lists the G-summand index of each
    copy in P^{-i} (None marks an identity approximation of a module
    already in add G).
    """
    x: Representation
    modules: list[Representation]
    diffs: list[ModuleMap]
    augmentation: ModuleMap
    pieces: list[list[int] | None]
    minimal: bool
    truncated: bool

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def module_at(self, i: int) -> Representation:
        """P^{-i}, or a zero module beyond the resolution."""
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return zero_representation(self.x.algebra)


def f_resolution(x: Representation, f: SubbifunctorF, maxlen: int) -> FResolution:
    if maxlen < 0:
        raise ValueError("maxlen must be >= 0")
    modules: list[Representation] = []
    diffs: list[ModuleMap] = []
    pieces: list[list[int] | None] = []
    app = right_approximation(x, f)
    modules.append(app.map.source)
    pieces.append(app.pieces)
    augmentation = app.map
    truncated = False
    prev_map = app.map
    step = 0
    while True:
        ker, incl = kernel(prev_map)
        if ker.is_zero():
            break
        if step == maxlen:
            truncated = True
            break
        step += 1
        app = right_approximation(ker, f)
        modules.append(app.map.source)
        pieces.append(app.pieces)
        diffs.append(app.map.compose(incl))
        prev_map = app.map
    return FResolution(x=x, modules=modules, diffs=diffs, augmentation=augmentation,
                       pieces=pieces, minimal=True, truncated=truncated)


def resolution_hom_complex(res: FResolution, y: Representation) -> list[tuple[list[ModuleMap], Matrix]]:
    """For each i >= 0 the hom basis of Hom(P^{-i}, Y) and the matrix of
    Hom(P^{-i}, Y) -> Hom(P^{-i-1}, Y) (composition with the differential)."""
    F = res.x.algebra.field
    bases = [hom_space(p, y) for p in res.modules]
    out = []
    for i in range(len(res.modules)):
        bi = bases[i]
        if i + 1 < len(res.modules):
            bnext = bases[i + 1]
            d = res.diffs[i]
            cols = [hom_coordinates(bnext, d.compose(phi)) for phi in bi]
            m = Matrix(F, len(bnext), len(bi),
                       [cols[c][r] for r in range(len(bnext)) for c in range(len(bi))])
        else:
            m = Matrix(F, 0, len(bi), [])
        out.append((bi, m))
    return out


def ext_f(x: Representation, y: Representation, i: int, f: SubbifunctorF,
          resolution: FResolution | None = None) -> int:
    """dim Ext_F^i(x, y), from a minimal F-projective resolution of x."""
    if i < 0:
        raise ValueError("negative degree")
    res = resolution if resolution is not None else f_resolution(x, f, i + 1)
    if res.truncated and res.length < i + 1:
        raise TruncationError(f"resolution truncated before depth {i + 1}")
    layers = resolution_hom_complex(res, y)
    if i >= len(layers):
        return 0
    _, d_out = layers[i]
    dim_i = d_out.cols
    rank_out = rank(d_out)
    rank_in = rank(layers[i - 1][1]) if i >= 1 else 0
    return dim_i - rank_out - rank_in


# ---------------------------------------------------------------------------
# relative dimensions


CORPUS_ASSUMPTION = ("sup taken over the supplied corpus; exact only if the "
                     "declared indecomposable list is complete")


def pd_f(x: Representation, f: SubbifunctorF, cutoff: int,
         corpus: list[Representation] | None = None) -> DimensionReport:
    res = f_resolution(x, f, cutoff)
    if res.truncated:
        d = Dim(cutoff, censored=True)
    else:
        d = Dim(res.length)
    report = DimensionReport("pd_F", d, cutoff)
    if corpus is not None and not d.censored:
        for y in corpus:
            if ext_f(x, y, d.value + 1, f) != 0:
                raise AssertionError("vanishing cross-check failed: Ext^{pd+1} != 0")
        report.breakdown["lemma71_checked_degree"] = d.value + 1
    return report


def syzygy_f(x: Representation, f: SubbifunctorF) -> Representation:
    app = right_approximation(x, f)
    ker, _ = kernel(app.map)
    return ker


def relative_injectives(f: SubbifunctorF, corpus: list[Representation] | None = None):
    """Candidate I(F) = DTr(non-projective summands of G) ∪ {injectives},
    deduplicated up to isomorphism and validated against the corpus."""
    algebra = f.algebra
    candidates: list[SummandDecl] = []

    def add(name: str, m: Representation):
        if m.is_zero():
            return
        for c in candidates:
            if is_isomorphic(c.module, m).isomorphic:
                return
        candidates.append(SummandDecl(name, m))

    for v in range(1, algebra.quiver.n + 1):
        add(f"I{v}", injective(algebra, v))
    for k, s in enumerate(f.summands):
        if not f.is_projective_summand(k):
            add(f"DTr({s.name})", dtr(s.module))
    validated = True
    notes: list[str] = []
    if corpus is not None:
        for c in candidates:
            for x in corpus:
                if ext_f(x, c.module, 1, f) != 0:
                    validated = False
                    notes.append(f"{c.name} fails F-injectivity against a corpus module")
                    break
    return candidates, validated, notes


def cosyzygy_f(x: Representation, injectives: list[SummandDecl], algebra: PathAlgebra) -> Representation:
    u, _, _ = left_approximation(x, injectives, algebra)
    if u.is_isomorphism():
        return zero_representation(algebra)
    cok, _ = cokernel(u)
    return cok


def id_f(x: Representation, f: SubbifunctorF, injectives: list[SummandDecl],
         cutoff: int) -> DimensionReport:
    """Relative injective dimension, by minimal left I(F)-approximations."""
    algebra = f.algebra
    cur = x
    length = 0
    notes: list[str] = []
    steps = 0
    while not cur.is_zero():
        u, _, _ = left_approximation(cur, injectives, algebra)
        if u.is_isomorphism():
            break
        if not u.is_injective():
            notes.append("left approximation not injective: I(F) list rejected as"
                         " an enough-injectives class")
            return DimensionReport("id_F", Dim(cutoff, censored=True), cutoff, caveats=notes)
        if not hom_g_surjective(f, cokernel(u)[1]):
            notes.append("coresolution step is not F-exact: I(F) list invalid")
            return DimensionReport("id_F", Dim(cutoff, censored=True), cutoff, caveats=notes)
        cur, _ = cokernel(u)
        length += 1
        steps += 1
        if steps > cutoff:
            return DimensionReport("id_F", Dim(cutoff, censored=True), cutoff, caveats=notes)
    return DimensionReport("id_F", Dim(length if not x.is_zero() else 0), cutoff, caveats=notes)


def gldim_f(corpus: list[tuple[str, Representation]], f: SubbifunctorF, cutoff: int,
            complete: bool = False) -> DimensionReport:
    if not corpus:
        raise ValueError("empty corpus")
    breakdown = {}
    dims = []
    for name, x in corpus:
        r = pd_f(x, f, cutoff)
        breakdown[name] = r.dim
        dims.append(r.dim)
    report = DimensionReport("gldim_F", dim_max(dims), cutoff, breakdown=breakdown)
    if not complete:
        report.assumptions.append(CORPUS_ASSUMPTION)
    return report


def findim_f(corpus: list[tuple[str, Representation]], f: SubbifunctorF, cutoff: int,
             complete: bool = False) -> DimensionReport:
    if not corpus:
        raise ValueError("empty corpus")
    breakdown = {}
    finite = []
    for name, x in corpus:
        r = pd_f(x, f, cutoff)
        breakdown[name] = r.dim
        if not r.dim.censored:
            finite.append(r.dim)
    value = dim_max(finite) if finite else Dim(0)
    report = DimensionReport("fd_F", value, cutoff, breakdown=breakdown)
    report.assumptions.append("finitistic sup over corpus members of finite pd_F; "
                              "a certified lower bound of fd_F")
    if not complete:
        report.assumptions.append(CORPUS_ASSUMPTION)
    return report


def is_f_frobenius(f: SubbifunctorF, corpus: list[Representation] | None = None) -> bool:
    """P(F) = I(F) up to isomorphism."""
    injs, _, _ = relative_injectives(f, corpus)
    if len(injs) != len(f.summands):
        return False
    for c in injs:
        if not any(is_isomorphic(c.module, s.module).isomorphic for s in f.summands):
            return False
    return True
