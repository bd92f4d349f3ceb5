"""Homological elements, the homology g_x = Ker ad_x / Im ad_x, module
homology, defect data, and fingerprint-based identification."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .build import BuildResult
from .cartan import SymmetrizedForm, analyze_diagram, root_ip
from .fields import Field
from .linalg import Echelon, Matrix, mat_nullspace, mat_rank
from .superalgebra import (Element, Fingerprint, Superalgebra, el_add, el_from_dense,
                           el_neg, el_scale, el_to_dense)


@dataclass
class HomologicalElement:
    element: Element
    kind: str  # single-root / orthogonal-root-sum / random-odd / inhomogeneous-ad / explicit
    constituents: Optional[Tuple[Tuple[int, ...], ...]] = None
    description: str = ""


@dataclass
class DSResult:
    x: HomologicalElement
    rank_ad: int
    homology: Superalgebra
    fingerprint: Fingerprint
    label: Optional[str] = None
    module_ranks: Dict[str, int] = dc_field(default_factory=dict)

    @property
    def sdim_gx(self) -> Tuple[int, int]:
        return self.homology.sdim


@dataclass
class DefectReport:
    key: str
    g_max: int
    df: int
    max_orthogonal_sets: List[Tuple[Tuple[int, ...], ...]]
    ndf: int
    classes: List[DSResult]
    sweep_size: int
    seed: int
    samples: int


def is_homological(g: Superalgebra, x: Element) -> str:
    """'odd' (odd element, x^2 = 0), 'ad' ((ad_x)^2 = 0, p = 2 only), or 'no'."""
    f = g.field
    if not x:
        return "no"
    par = g.parity_of(x)
    if par == 1:
        if f.p == 2:
            sq = g.square(x)
            if not sq:
                return "odd"
            # (ad_x)^2 = ad_{s(x)}: ad-homological iff s(x) is central
            if all(not g.bracket(sq, {k: f.one}) for k in range(g.dim)):
                return "ad"
            return "no"
        if not g.bracket(x, x):
            return "odd"
        return "no"
    if f.p == 2:
        # mixed or even parity: test (ad_x)^2 = 0 column by column, sparsely
        for j in range(g.dim):
            w = g.bracket(x, g.bracket(x, {j: f.one}))
            if w:
                return "no"
        return "ad"
    return "no"


class DSError(RuntimeError):
    pass


def ds_homology(g: Superalgebra, x, check: bool = True) -> DSResult:
    """Ker ad_x / Im ad_x with the induced bracket (and squaring at p = 2)."""
    if isinstance(x, HomologicalElement):
        hx, el = x, x.element
    else:
        el = dict(x)
        hx = HomologicalElement(element=el, kind="explicit")
    f = g.field
    kind = is_homological(g, el)
    if kind == "no":
        if g.parity_of(el) == 1:
            sq = g.square(el) if f.p == 2 else g.bracket(el, el)
            raise DSError(f"element is not homological: square = {sq}")
        raise DSError("element is not homological (even or mixed parity, (ad)^2 != 0)")
    if hx.kind == "explicit":
        hx.kind = "inhomogeneous-ad" if (kind == "ad" and g.parity_of(el) is None) \
            else hx.kind

    n = g.dim
    ad_cols = [el_to_dense(f, g.bracket(el, {j: f.one}), n) for j in range(n)]
    adM = Matrix(f, [[ad_cols[j][m] for j in range(n)] for m in range(n)], ncols=n)
    # image echelon, frozen after construction (deterministic column order)
    im_ech = Echelon(f, n)
    for j in range(n):
        im_ech.add(ad_cols[j])
    rank = len(im_ech)
    for row in list(im_ech.rows):
        if any(not f.is_zero(c) for c in _apply_ad(g, el, row)):
            raise DSError("(ad_x)^2 != 0: image not contained in kernel")
    ker = mat_nullspace(adM)
    if len(ker) != n - rank:
        raise AssertionError("rank-nullity violated")
    # complement: kernel vectors reduced mod the image, then echelonized among
    # themselves; их pivots are disjoint from the image pivots by construction
    comp_ech = Echelon(f, n)
    for vec in ker:
        res, _ = im_ech.reduce(vec)
        comp_ech.add(res)
    comp_rows = [list(r) for r in comp_ech.rows]
    if len(comp_rows) != n - 2 * rank:
        raise AssertionError("dim g_x != dim g - 2 rank ad_x")

    parities = []
    for r in comp_rows:
        ps = {g.parities[k] for k in range(n) if not f.is_zero(r[k])}
        if len(ps) != 1:
            raise DSError("kernel complement is not parity-graded (inhomogeneous x "
                          "with non-graded homology)")
        parities.append(ps.pop())
    # weight bookkeeping survives only when ad_x is weight-homogeneous
    x_weight_homog = (g.weights is not None and
                      len({g.weights[k] for k in el}) == 1)
    weights = None
    if x_weight_homog:
        weights = []
        for r in comp_rows:
            ws = {g.weights[k] for k in range(n) if not f.is_zero(r[k])}
            weights.append(ws.pop() if len(ws) == 1 else None)

    def project(vec_el: Element) -> Element:
        """Coordinates of (vec mod Im) in the complement basis."""
        dense = el_to_dense(f, vec_el, n)
        w, _ = im_ech.reduce(dense)
        out: Element = {}
        for t, pc in enumerate(comp_ech.pivots):
            c = w[pc]
            if not f.is_zero(c):
                out[t] = c
                w = [f.sub(x, f.mul(c, y)) for x, y in zip(w, comp_ech.rows[t])]
        if any(not f.is_zero(x) for x in w):
            raise DSError("induced bracket leaves Ker ad_x (internal error)")
        return out

    m = len(comp_rows)
    brackets: Dict[Tuple[int, int], Element] = {}
    squares: Dict[int, Element] = {}
    comp_els = [el_from_dense(f, r) for r in comp_rows]
    for a in range(m):
        lo = a if (f.p != 2 and parities[a] == 1) else a + 1
        for b in range(lo, m):
            w = g.bracket(comp_els[a], comp_els[b])
            if w:
                pr = project(w)
                if pr:
                    brackets[(a, b)] = pr
    if f.p == 2:
        for a in range(m):
            if parities[a] == 1:
                w = g.square(comp_els[a])
                if w:
                    pr = project(w)
                    if pr:
                        squares[a] = pr
    hom = Superalgebra(f, [f"z{t+1}" for t in range(m)], parities, brackets,
                       squares or None, weights)
    if check:
        bad = hom.check_axioms()
        if bad:
            raise DSError(f"homology fails axioms: {bad[:3]}")
        if g.parity_of(el) == 1:
            # superdimension preservation holds for parity-homogeneous odd x
            gs = g.sdim
            hs = hom.sdim
            if (gs[0] - gs[1]) != (hs[0] - hs[1]):
                raise DSError("superdimension not preserved by DS homology")
    return DSResult(x=hx, rank_ad=rank, homology=hom, fingerprint=hom.fingerprint())


def _apply_ad(g: Superalgebra, el: Element, dense_vec: list) -> list:
    f = g.field
    out = g.bracket(el, el_from_dense(f, dense_vec))
    return el_to_dense(f, out, g.dim)


def adjoint_rank(g: Superalgebra, el: Element) -> int:
    f = g.field
    n = g.dim
    ad_cols = [el_to_dense(f, g.bracket(el, {j: f.one}), n) for j in range(n)]
    return mat_rank(Matrix(f, [[ad_cols[j][m] for j in range(n)] for m in range(n)],
                           ncols=n))


def module_rank(action_of, el: Element, dim_M: int, fld: Field) -> int:
    """Rank of rho_x on a module given a per-basis-index action map."""
    cols = None
    for k, c in el.items():
        mat = action_of(k)
        if cols is None:
            cols = [[fld.mul(c, mat[i][j]) for j in range(dim_M)] for i in range(dim_M)]
        else:
            for i in range(dim_M):
                row = mat[i]
                cols[i] = [fld.add(x, fld.mul(c, y)) for x, y in zip(cols[i], row)]
    if cols is None:
        return 0
    return mat_rank(Matrix(fld, cols, ncols=dim_M))


# ---------------------------------------------------------------------------
# candidates and defect
# ---------------------------------------------------------------------------


def single_root_candidates(b: BuildResult) -> List[HomologicalElement]:
    g = b.algebra
    f = g.field
    out = []
    nh = b.n + b.n_grading
    for t, (root, par) in enumerate(b.pos_roots):
        if par != 1:
            continue
        el = {nh + t: f.one}
        if is_homological(g, el) == "odd":
            out.append(HomologicalElement(el, "single-root", (root,), f"x{t+1}"))
    return out


def isotropic_odd_roots(b: BuildResult) -> List[Tuple[Tuple[int, ...], int]]:
    """Positive odd roots whose root vectors square to zero (ground-field
    isotropy; this is the underline rule of the tables)."""
    seen = {}
    for h in single_root_candidates(b):
        seen.setdefault(h.constituents[0], []).append(h)
    return sorted(seen.keys(), reverse=True)


def isotropic_orthogonal_sets(b: BuildResult, form: SymmetrizedForm) -> dict:
    """Maximal sets of QQ-linearly-independent, pairwise QQ-orthogonal
    isotropic roots; orthogonality uses integer lifts, never mod p."""
    roots = sorted(isotropic_odd_roots(b), reverse=True)
    K0 = form.field
    nr = len(roots)
    orth = [[False] * nr for _ in range(nr)]
    for i in range(nr):
        for j in range(i + 1, nr):
            orth[i][j] = orth[j][i] = K0.is_zero(root_ip(form, roots[i], roots[j]))

    def independent(idxs: Tuple[int, ...]) -> bool:
        from .fields import field_for
        QQ = field_for(0)
        rows = [[QQ.from_int(c) for c in roots[i]] for i in idxs]
        return mat_rank(Matrix(QQ, rows, ncols=b.n)) == len(idxs)

    maximal: List[Tuple[int, ...]] = []

    def extend(cur: Tuple[int, ...], cand: List[int]):
        if len(maximal) > 5000:
            return
        ext = [c for c in cand if all(orth[c][x] for x in cur)]
        ext = [c for c in ext if independent(cur + (c,))]
        if not ext:
            if cur and not any(set(cur) < set(mx) for mx in maximal):
                maximal.append(cur)
            return
        for t, c in enumerate(ext):
            extend(cur + (c,), ext[t + 1:])

    extend(tuple(), list(range(nr)))
    # deduplicate non-maximal leftovers
    maximal = [m for m in maximal if not any(set(m) < set(m2) for m2 in maximal if m2 != m)]
    df = max((len(m) for m in maximal), default=0)
    sets = sorted({tuple(roots[i] for i in m) for m in maximal})
    return {"isotropic_roots": roots, "max_sets": sets, "df": df}


def homological_candidates(b: BuildResult, form: Optional[SymmetrizedForm] = None,
                           seed: int = 0, samples: int = 200,
                           include_inhomogeneous: bool = False) -> List[HomologicalElement]:
    """Deterministic candidate sweep: single isotropic roots, sums over
    orthogonal isotropic sets, seeded random odd elements, and (p = 2,
    optional) inhomogeneous ad-homological sums of simple root vectors."""
    g = b.algebra
    f = g.field
    out: List[HomologicalElement] = []
    seen = set()

    def push(h: HomologicalElement):
        key = tuple(sorted((k, str(c)) for k, c in h.element.items()))
        if key not in seen:
            seen.add(key)
            out.append(h)

    singles = single_root_candidates(b)
    for h in singles:
        push(h)
    by_root = {}
    for h in singles:
        by_root.setdefault(h.constituents[0], h)
    if form is not None:
        iso = isotropic_orthogonal_sets(b, form)
        for mset in iso["max_sets"]:
            for size in range(2, len(mset) + 1):
                for sub in itertools.combinations(mset, size):
                    if not all(r in by_root for r in sub):
                        continue
                    el: Element = {}
                    for r in sub:
                        el = el_add(f, el, by_root[r].element)
                    if is_homological(g, el) == "odd":
                        desc = "+".join(by_root[r].description for r in sub)
                        push(HomologicalElement(el, "orthogonal-root-sum", sub, desc))
    # seeded random odd elements over the prime subfield
    rng = random.Random(seed)
    odd_idx = [i for i in range(g.dim) if g.parities[i] == 1]
    pool = list(range(g.field.p)) if g.field.p else list(range(-3, 4))
    for t in range(samples):
        el = {}
        for i in odd_idx:
            c = rng.choice(pool)
            if c:
                el[i] = f.from_int(c)
        if el and is_homological(g, el) == "odd":
            push(HomologicalElement(dict(el), "random-odd", None, f"rand{t}"))
    if include_inhomogeneous and f.p == 2:
        nh = b.n + b.n_grading
        simples = list(range(nh, nh + b.n))
        for size in range(2, b.n + 1):
            for sub in itertools.combinations(range(b.n), size):
                el = {simples[i]: f.one for i in sub}
                if g.parity_of(el) is None and is_homological(g, el) == "ad":
                    desc = "+".join(f"x{i+1}" for i in sub)
                    push(HomologicalElement(dict(el), "inhomogeneous-ad", None, desc))
    return out


def defect_report(b: BuildResult, form: SymmetrizedForm, seed: int = 0,
                  samples: int = 200, fingerprints_per_rank: Optional[int] = None,
                  include_inhomogeneous: bool = False) -> DefectReport:
    """g_max from the diagram, df from the orthogonal isotropic sets, ndf as
    the number of fingerprint classes over the candidate sweep."""
    g = b.algebra
    diagram = analyze_diagram(b.spec)
    iso = isotropic_orthogonal_sets(b, form)
    cands = homological_candidates(b, form, seed=seed, samples=samples,
                                   include_inhomogeneous=include_inhomogeneous)
    cands = [c for c in cands if c.kind != "inhomogeneous-ad"]
    if fingerprints_per_rank is None:
        fingerprints_per_rank = 3 if g.dim > 80 else 10**9
    by_rank: Dict[int, List[HomologicalElement]] = {}
    order: List[int] = []
    for c in cands:
        r = adjoint_rank(g, c.element)
        if r not in by_rank:
            order.append(r)
        by_rank.setdefault(r, []).append(c)
    classes: List[DSResult] = []
    for r in order:
        reps = by_rank[r][:fingerprints_per_rank]
        fps = []
        for c in reps:
            res = ds_homology(g, c)
            assert res.rank_ad == r
            if res.fingerprint not in [x.fingerprint for x in fps]:
                fps.append(res)
        classes.extend(fps)
    classes.sort(key=lambda rres: rres.rank_ad)
    return DefectReport(key=b.spec.key, g_max=diagram.g_max, df=iso["df"],
                        max_orthogonal_sets=iso["max_sets"], ndf=len(classes),
                        classes=classes, sweep_size=len(cands), seed=seed,
                        samples=samples)


def rank_equivalence_check(results: Sequence[DSResult]) -> dict:
    """Within one sweep: equal adjoint rank <=> equal fingerprint."""
    violations = []
    by_rank: Dict[int, List[DSResult]] = {}
    for r in results:
        by_rank.setdefault(r.rank_ad, []).append(r)
    fp_to_rank: Dict[Fingerprint, int] = {}
    for rank, rs in by_rank.items():
        fps = {r.fingerprint for r in rs}
        if len(fps) > 1:
            violations.append(f"rank {rank} splits into {len(fps)} fingerprint classes")
        for fp in fps:
            if fp in fp_to_rank and fp_to_rank[fp] != rank:
                violations.append(
                    f"fingerprint shared between ranks {fp_to_rank[fp]} and {rank}")
            fp_to_rank[fp] = rank
    module_table = {}
    for r in results:
        for name, mr in r.module_ranks.items():
            module_table.setdefault(name, {}).setdefault(r.rank_ad, set()).add(mr)
    return {"ok": not violations, "violations": violations, "module_ranks": module_table}


def identify(result: DSResult, references: Sequence[Tuple[str, Fingerprint]]) -> str:
    """Reference name on exact fingerprint match; K^{a|b} for abelian;
    otherwise a canonical structure descriptor."""
    fp = result.fingerprint
    names = [name for name, rfp in references if rfp == fp]
    if names:
        return " / ".join(sorted(set(names)))
    if fp.abelian:
        return f"K^{{{fp.sdim[0]}|{fp.sdim[1]}}}"
    return describe_fingerprint(fp)


def describe_fingerprint(fp: Fingerprint) -> str:
    parts = []
    if fp.solvable:
        parts.append("solvable")
    elif fp.nilpotent:
        parts.append("nilpotent")
    parts.append(f"dim c = {fp.center_sdim[0]}|{fp.center_sdim[1]}")
    ds = ", ".join(f"{a}|{b}" for a, b in fp.derived_sdims)
    parts.append(f"derived sdims [{ds}]")
    return "; ".join(parts)
