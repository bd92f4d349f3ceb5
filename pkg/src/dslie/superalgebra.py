"""Finite-dimensional Lie superalgebras over an exact field.

A Superalgebra stores a basis (label, parity, optional integer weight),
sparse structure constants, and -- in characteristic 2 -- the squaring
map on the odd part.  Storage convention:

  * brackets[(i, j)] with i < j holds [b_i, b_j]; the transpose follows
    from super-anticommutativity [u,v] = -(-1)^{p(u)p(v)}[v,u].
  * for p != 2, brackets[(i, i)] may be stored for odd b_i (it is [b_i, b_i]).
  * for p == 2 the bracket is symmetric, [b_i, b_i] = 0, and squares[i]
    holds s(b_i) for odd i; squares of general odd elements expand as
    s(sum c_i x_i) = sum c_i^2 s(x_i) + sum_{i<j} c_i c_j [x_i, x_j].

Elements are sparse dicts {basis index: scalar}.  Everything is
immutable by convention: operations return new values.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .fields import Field, PrimeField
from .linalg import Echelon, Matrix, mat_nullspace, mat_rank

Element = Dict[int, object]

FORMS_DIM_CUTOFF = 48  # invariant-form space solved only below this dimension


# ---------------------------------------------------------------------------
# sparse element helpers
# ---------------------------------------------------------------------------


def el_add(f: Field, u: Element, v: Element) -> Element:
    out = dict(u)
    for k, c in v.items():
        s = f.add(out.get(k, f.zero), c)
        if f.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def el_scale(f: Field, c, u: Element) -> Element:
    if f.is_zero(c):
        return {}
    return {k: f.mul(c, x) for k, x in u.items()}


def el_addmul(f: Field, u: Element, c, v: Element) -> Element:
    if f.is_zero(c):
        return dict(u)
    out = dict(u)
    for k, x in v.items():
        s = f.add(out.get(k, f.zero), f.mul(c, x))
        if f.is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def el_neg(f: Field, u: Element) -> Element:
    return {k: f.neg(x) for k, x in u.items()}


def el_from_dense(f: Field, vec: Sequence) -> Element:
    return {i: x for i, x in enumerate(vec) if not f.is_zero(x)}


def el_to_dense(f: Field, u: Element, n: int) -> list:
    out = [f.zero] * n
    for k, c in u.items():
        out[k] = c
    return out


@dataclass(frozen=True)
class Fingerprint:
    """Computable isomorphism-class proxy; equality is the matching criterion."""

    sdim: Tuple[int, int]
    derived_sdims: Tuple[Tuple[int, int], ...]
    center_sdim: Tuple[int, int]
    center_in_derived_sdim: Tuple[int, int]
    forms_dim: Optional[int]
    solvable: bool
    nilpotent: bool
    abelian: bool

    def __str__(self):
        der = ", ".join(f"{a}|{b}" for a, b in self.derived_sdims)
        flags = "".join([
            "s" if self.solvable else "-",
            "n" if self.nilpotent else "-",
            "a" if self.abelian else "-",
        ])
        fd = "?" if self.forms_dim is None else str(self.forms_dim)
        return (f"sdim {self.sdim[0]}|{self.sdim[1]}; derived [{der}]; "
                f"center {self.center_sdim[0]}|{self.center_sdim[1]}; "
                f"center∩derived {self.center_in_derived_sdim[0]}|{self.center_in_derived_sdim[1]}; "
                f"forms {fd}; flags {flags}")


class Superalgebra:
    def __init__(self, field: Field, labels: List[str], parities: List[int],
                 brackets: Dict[Tuple[int, int], Element],
                 squares: Optional[Dict[int, Element]] = None,
                 weights: Optional[List[Optional[Tuple[int, ...]]]] = None,
                 chevalley: Optional[dict] = None):
        self.field = field
        self.labels = list(labels)
        self.parities = list(parities)
        self.brackets = {k: dict(v) for k, v in brackets.items() if v}
        self.squares = {k: dict(v) for k, v in (squares or {}).items() if v} \
            if field.p == 2 else None
        self.weights = list(weights) if weights is not None else None
        self.chevalley = chevalley
        n = len(labels)
        if len(parities) != n:
            raise ValueError("parity vector length mismatch")
        for (i, j) in self.brackets:
            if not (0 <= i <= j < n):
                raise ValueError(f"bad bracket key {(i, j)}")
            if i == j and (field.p == 2 or parities[i] == 0):
                raise ValueError(f"diagonal bracket stored for key {(i, i)}")
        if field.p == 2:
            for i in (self.squares or {}):
                if parities[i] != 1:
                    raise ValueError(f"square stored for even basis element {i}")

    # -- basic data ---------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def sdim(self) -> Tuple[int, int]:
        ev = sum(1 for p in self.parities if p == 0)
        return ev, len(self.parities) - ev

    def parity_of(self, u: Element) -> Optional[int]:
        """0/1 when u is parity-homogeneous, None otherwise (0 for u = 0)."""
        ps = {self.parities[k] for k in u}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    # -- bracket and squaring ----------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Element:
        if i < j:
            return self.brackets.get((i, j), {})
        if i > j:
            v = self.brackets.get((j, i))
            if not v:
                return {}
            f = self.field
            if f.p == 2:
                return dict(v)
            sign = f.one if (self.parities[i] and self.parities[j]) else f.neg(f.one)
            return el_scale(f, sign, v)
        # i == j
        if self.field.p != 2 and self.parities[i] == 1:
            return self.brackets.get((i, i), {})
        return {}

    def bracket(self, u: Element, v: Element) -> Element:
        f = self.field
        out: Element = {}
        for i, a in u.items():
            for j, b in v.items():
                w = self.bracket_basis(i, j)
                if w:
                    out = el_addmul(f, out, f.mul(a, b), w)
        return out

    def square(self, u: Element) -> Element:
        """s(u) for p = 2; u must have no even component."""
        f = self.field
        if f.p != 2:
            raise ValueError("squaring map is defined only in characteristic 2")
        for k in u:
            if self.parities[k] == 0:
                raise ValueError(f"square of element with even component {self.labels[k]}")
        items = sorted(u.items())
        out: Element = {}
        for idx, (i, c) in enumerate(items):
            sq = (self.squares or {}).get(i)
            if sq:
                out = el_addmul(f, out, f.mul(c, c), sq)
            for (j, d) in items[idx + 1:]:
                w = self.brackets.get((i, j), {})
                if w:
                    out = el_addmul(f, out, f.mul(c, d), w)
        return out

    def ad_matrix(self, u: Element) -> Matrix:
        """Matrix of ad_u = [u, .] in the basis (column j = [u, b_j])."""
        f = self.field
        n = self.dim
        cols = []
        for j in range(n):
            cols.append(el_to_dense(f, self.bracket(u, {j: f.one}), n))
        rows = [[cols[j][m] for j in range(n)] for m in range(n)]
        return Matrix(f, rows, ncols=n)

    def ad_support(self, i: int) -> List[int]:
        out = []
        for j in range(self.dim):
            if self.bracket_basis(i, j):
                out.append(j)
        return out

    # -- axioms --------------------------------------------------------------

    def check_axioms(self, max_violations: int = 10) -> List[str]:
        """Exhaustive verification; returns violation descriptions (empty = pass)."""
        f = self.field
        n = self.dim
        bad: List[str] = []

        def note(msg):
            if len(bad) < max_violations:
                bad.append(msg)

        # parity and weight additivity of stored constants
        for (i, j), v in self.brackets.items():
            pij = (self.parities[i] + self.parities[j]) % 2
            for k in v:
                if self.parities[k] != pij:
                    note(f"parity of [{self.labels[i]},{self.labels[j]}] component {self.labels[k]}")
            if self.weights is not None:
                wi, wj = self.weights[i], self.weights[j]
                if wi is not None and wj is not None:
                    wij = tuple(a + b for a, b in zip(wi, wj))
                    for k in v:
                        if self.weights[k] is not None and self.weights[k] != wij:
                            note(f"weight of [{self.labels[i]},{self.labels[j]}]")
        if f.p == 2 and self.squares:
            for i, v in self.squares.items():
                for k in v:
                    if self.parities[k] != 0:
                        note(f"parity of s({self.labels[i]})")
                if self.weights is not None and self.weights[i] is not None:
                    w2 = tuple(2 * a for a in self.weights[i])
                    for k in v:
                        if self.weights[k] is not None and self.weights[k] != w2:
                            note(f"weight of s({self.labels[i]})")

        # super Jacobi: ad_{b_i} is a superderivation, checked on all pairs i <= j
        for i in range(n):
            supp_i = self.ad_support(i)
            for j in range(i, n):
                vij = self.bracket_basis(i, j)
                ks = set(supp_i) | set(self.ad_support(j))
                if vij:
                    ks |= set(range(n))
                sign = f.neg(f.one) if (self.parities[i] and self.parities[j] and f.p != 2) \
                    else f.one
                for k in sorted(ks):
                    lhs = self.bracket(vij, {k: f.one})
                    t1 = self.bracket({i: f.one}, self.bracket_basis(j, k))
                    t2 = self.bracket({j: f.one}, self.bracket_basis(i, k))
                    rhs = el_add(f, t1, el_scale(f, f.neg(sign), t2))
                    # identity: [[i,j],k] = [i,[j,k]] - (-1)^{p_i p_j} [j,[i,k]]
                    diff = el_add(f, lhs, el_neg(f, rhs))
                    if diff:
                        note(f"Jacobi failure at ({self.labels[i]},{self.labels[j]},{self.labels[k]})")
                        break
                if len(bad) >= max_violations:
                    return bad

        if f.p == 3:
            for i in range(n):
                if self.parities[i] == 1:
                    xx = self.bracket_basis(i, i)
                    if self.bracket({i: f.one}, xx):
                        note(f"[x,[x,x]] != 0 for odd {self.labels[i]}")

        if f.p == 2:
            for i in range(n):
                if self.parities[i] != 1:
                    continue
                si = (self.squares or {}).get(i, {})
                for k in range(n):
                    lhs = self.bracket(si, {k: f.one})
                    rhs = self.bracket({i: f.one}, self.bracket_basis(i, k))
                    if el_add(f, lhs, el_neg(f, rhs)):
                        note(f"[s(x),z] != [x,[x,z]] for x={self.labels[i]}, z={self.labels[k]}")
                        break
        return bad

    # -- subspaces ------------------------------------------------------------

    def _graded_echelons(self) -> Tuple[Echelon, Echelon]:
        return Echelon(self.field, self.dim), Echelon(self.field, self.dim)

    def _span_rows(self, rows: List[list]) -> "GradedSpan":
        sp = GradedSpan(self)
        for r in rows:
            sp.add_dense(r)
        return sp

    def derived_subalgebra_span(self, span: "GradedSpan") -> "GradedSpan":
        """Span of brackets (and squares at p = 2) of a graded subspace."""
        f = self.field
        out = GradedSpan(self)
        rows = span.all_rows()
        for a in range(len(rows)):
            ua = el_from_dense(f, rows[a])
            for b in range(a, len(rows)):
                out.add_element(self.bracket(ua, el_from_dense(f, rows[b])))
        if f.p == 2:
            for r in span.odd.rows:
                out.add_element(self.square(el_from_dense(f, r)))
        return out

    def center_rows(self) -> List[list]:
        """Kernel of the joint adjoint action, as dense vectors."""
        f = self.field
        n = self.dim
        if n == 0:
            return []
        if isinstance(f, PrimeField):
            p = f.p
            cols = []
            for i in range(n):
                block = np.zeros((n, n), dtype=np.int64)  # block[k, m] = C[i,k][m]
                for k in range(n):
                    for m, c in self.bracket_basis(i, k).items():
                        block[k, m] = c
                cols.append(block.reshape(-1))
            A = np.stack(cols, axis=1) % p
            M = Matrix(f, [[int(x) for x in row] for row in A], ncols=n)
        else:
            rows = []
            for k in range(n):
                for m in range(n):
                    row = [f.zero] * n
                    nz = False
                    for i in range(n):
                        c = self.bracket_basis(i, k).get(m)
                        if c is not None and not f.is_zero(c):
                            row[i] = c
                            nz = True
                    if nz:
                        rows.append(row)
            if not rows:
                return [el_to_dense(f, {i: f.one}, n) for i in range(n)]
            M = Matrix(f, rows, ncols=n)
        return mat_nullspace(M)

    # -- series, flags, fingerprint -------------------------------------------

    def structure_series(self, max_steps: int = 60) -> dict:
        f = self.field
        full = GradedSpan(self)
        for i in range(self.dim):
            full.add_element({i: f.one})
        derived: List[GradedSpan] = []
        cur = full
        sdims = []
        while True:
            nxt = self.derived_subalgebra_span(cur)
            sdims.append(nxt.sdim())
            derived.append(nxt)
            if nxt.dim() == cur.dim() or nxt.dim() == 0 or len(sdims) >= max_steps:
                break
            cur = nxt
        solvable = derived[-1].dim() == 0
        # lower central series for nilpotency
        lc = full
        nilpotent = False
        for _ in range(max_steps):
            nxt = GradedSpan(self)
            for r in lc.all_rows():
                u = el_from_dense(f, r)
                for i in range(self.dim):
                    nxt.add_element(self.bracket({i: f.one}, u))
            if f.p == 2:
                for r in lc.odd.rows:
                    nxt.add_element(self.square(el_from_dense(f, r)))
            if nxt.dim() == 0:
                nilpotent = True
                break
            if nxt.dim() == lc.dim():
                break
            lc = nxt
        center = self.center_rows()
        csd = self._sdim_of_rows(center)
        # center ∩ derived
        inter = self._intersect_rows(center, derived[0].all_rows())
        return {
            "derived_sdims": tuple(sdims),
            "derived_spans": derived,
            "center_rows": center,
            "center_sdim": csd,
            "center_in_derived_sdim": self._sdim_of_rows(inter),
            "solvable": solvable,
            "nilpotent": nilpotent,
            "abelian": sdims[0] == (0, 0),
        }

    def _sdim_of_rows(self, rows: List[list]) -> Tuple[int, int]:
        sp = GradedSpan(self)
        for r in rows:
            sp.add_dense(r)
        return sp.sdim()

    def _intersect_rows(self, rows_a: List[list], rows_b: List[list]) -> List[list]:
        """Basis of span(rows_a) ∩ span(rows_b) via the kernel trick."""
        f = self.field
        if not rows_a or not rows_b:
            return []
        cols = [list(r) for r in rows_a] + [list(r) for r in rows_b]
        M = Matrix(f, cols, ncols=self.dim).transpose()
        out = []
        for v in mat_nullspace(M):
            comb = [f.zero] * self.dim
            for idx in range(len(rows_a)):
                comb = [f.add(x, f.mul(v[idx], y)) for x, y in zip(comb, rows_a[idx])]
            if any(not f.is_zero(x) for x in comb):
                out.append(comb)
        return out

    def invariant_forms(self) -> dict:
        """Even supersymmetric invariant bilinear forms B([x,y],z) = B(x,[y,z])."""
        f = self.field
        n = self.dim
        pairs: List[Tuple[int, int]] = []
        pair_idx: Dict[Tuple[int, int], int] = {}
        for i in range(n):
            for j in range(i, n):
                if self.parities[i] != self.parities[j]:
                    continue  # even form: no even-odd pairing
                if i == j and self.parities[i] == 1 and f.p != 2:
                    continue  # B(x,x) = -B(x,x) forces 0
                pair_idx[(i, j)] = len(pairs)
                pairs.append((i, j))

        def b_coeff(row, i, j, c):
            # B_ji = (-1)^{p_i p_j} B_ij
            if i <= j:
                key, sgn = (i, j), f.one
            else:
                sgn = f.neg(f.one) if (self.parities[i] and self.parities[j] and f.p != 2) else f.one
                key = (j, i)
            k = pair_idx.get(key)
            if k is None:
                return
            row[k] = f.add(row.get(k, f.zero), f.mul(sgn, c))

        eq_rows: List[Dict[int, object]] = []
        for i in range(n):
            for j in range(n):
                vij = self.bracket_basis(i, j)
                for k in range(n):
                    vjk = self.bracket_basis(j, k)
                    if not vij and not vjk:
                        continue
                    row: Dict[int, object] = {}
                    for m, c in vij.items():
                        b_coeff(row, m, k, c)
                    for m, c in vjk.items():
                        b_coeff(row, i, m, f.neg(c))
                    row = {a: b for a, b in row.items() if not f.is_zero(b)}
                    if row:
                        eq_rows.append(row)
        if f.p == 2 and self.squares is not None:
            for i in range(n):
                if self.parities[i] != 1:
                    continue
                si = (self.squares or {}).get(i, {})
                for k in range(n):
                    vik = self.bracket({i: f.one}, self.bracket_basis(i, k))
                    row = {}
                    for m, c in si.items():
                        b_coeff(row, m, k, c)
                    for m, c in vik.items():
                        b_coeff(row, i, m, f.neg(c))
                    row = {a: b for a, b in row.items() if not f.is_zero(b)}
                    if row:
                        eq_rows.append(row)

        nvars = len(pairs)
        if not eq_rows:
            sols = [[f.one if t == s else f.zero for t in range(nvars)] for s in range(nvars)]
        else:
            dense = [el_to_dense(f, r, nvars) for r in eq_rows]
            sols = mat_nullspace(Matrix(f, dense, ncols=nvars))

        def to_matrix(sol):
            B = [[f.zero] * n for _ in range(n)]
            for idx, (i, j) in enumerate(pairs):
                c = sol[idx]
                if f.is_zero(c):
                    continue
                B[i][j] = c
                if i != j:
                    sgn = f.neg(f.one) if (self.parities[i] and self.parities[j] and f.p != 2) else f.one
                    B[j][i] = f.mul(sgn, c)
            return B

        mats = [to_matrix(s) for s in sols]
        nondeg = [mat_rank(Matrix(f, B, ncols=n)) == n for B in mats]
        if not any(nondeg) and len(mats) > 1:
            acc = [[f.zero] * n for _ in range(n)]
            for t, B in enumerate(mats):
                c = f.from_int(t + 1)
                acc = [[f.add(x, f.mul(c, y)) for x, y in zip(r1, r2)] for r1, r2 in zip(acc, B)]
            if mat_rank(Matrix(f, acc, ncols=n)) == n:
                nondeg.append(True)
        return {"dim": len(sols), "forms": mats, "nondegenerate": any(nondeg)}

    def fingerprint(self) -> Fingerprint:
        ss = self.structure_series()
        forms_dim = None
        if self.dim <= FORMS_DIM_CUTOFF:
            forms_dim = self.invariant_forms()["dim"]
        return Fingerprint(
            sdim=self.sdim,
            derived_sdims=ss["derived_sdims"],
            center_sdim=ss["center_sdim"],
            center_in_derived_sdim=ss["center_in_derived_sdim"],
            forms_dim=forms_dim,
            solvable=ss["solvable"],
            nilpotent=ss["nilpotent"],
            abelian=ss["abelian"],
        )

    # -- subquotients ---------------------------------------------------------

    def subalgebra_from_rows(self, rows: List[list], label_prefix: str = "s") -> "Superalgebra":
        """Induced structure on a bracket/square-closed graded subspace."""
        f = self.field
        sp = GradedSpan(self)
        for r in rows:
            sp.add_dense(r)
        basis_rows = sp.all_rows()
        pivots = sp.all_pivots()
        parities = [self.parities[p] for p in pivots]
        weights = None
        if self.weights is not None:
            weights = []
            for r in basis_rows:
                ws = {self.weights[k] for k in range(self.dim) if not f.is_zero(r[k])}
                weights.append(ws.pop() if len(ws) == 1 else None)

        def coords(vec_el: Element) -> Element:
            dense = el_to_dense(f, vec_el, self.dim)
            out: Element = {}
            for t, pv in enumerate(pivots):
                c = dense[pv]
                if not f.is_zero(c):
                    out[t] = c
                    dense = [f.sub(x, f.mul(c, y)) for x, y in zip(dense, basis_rows[t])]
            if any(not f.is_zero(x) for x in dense):
                raise ValueError("vector not in subalgebra span")
            return out

        m = len(basis_rows)
        brackets: Dict[Tuple[int, int], Element] = {}
        squares: Dict[int, Element] = {}
        for a in range(m):
            ua = el_from_dense(f, basis_rows[a])
            lo = a if (f.p != 2 and parities[a] == 1) else a + 1
            for b in range(lo, m):
                w = self.bracket(ua, el_from_dense(f, basis_rows[b]))
                if w:
                    brackets[(a, b)] = coords(w)
        if f.p == 2:
            for a in range(m):
                if parities[a] == 1:
                    w = self.square(el_from_dense(f, basis_rows[a]))
                    if w:
                        squares[a] = coords(w)
        # label each row by its pivot coordinate (rows are in RREF)
        labels = [self.labels[p] for p in pivots]
        chev = None
        if self.chevalley is not None:
            try:
                chev = {key: [coords(e) for e in els] for key, els in self.chevalley.items()}
            except ValueError:
                chev = None
        return Superalgebra(f, labels, parities, brackets, squares or None,
                            weights, chevalley=chev)

    def quotient_by_ideal(self, ideal_rows: List[list]) -> "Superalgebra":
        """Induced structure on a complement of an ideal (verified)."""
        f = self.field
        n = self.dim
        isp = GradedSpan(self)
        for r in ideal_rows:
            isp.add_dense(r)
        # ideal check
        for r in isp.all_rows():
            u = el_from_dense(f, r)
            for k in range(n):
                w = self.bracket(u, {k: f.one})
                if w and not isp.contains_element(w):
                    raise ValueError(f"not an ideal: bracket with {self.labels[k]} leaves the span")
        if f.p == 2:
            for r in isp.odd.rows:
                w = self.square(el_from_dense(f, r))
                if w and not isp.contains_element(w):
                    raise ValueError("not an ideal: squaring leaves the span")

        ech = Echelon(f, n, track=True)
        for t, r in enumerate(isp.all_rows()):
            ech.add(r, vid=("i", t))
        comp: List[int] = []
        for m in range(n):
            vec = el_to_dense(f, {m: f.one}, n)
            if ech.add(vec, vid=("c", m)) is not None:
                comp.append(m)

        def project(u: Element) -> Element:
            res, combo = ech.reduce(el_to_dense(f, u, n))
            if any(not f.is_zero(x) for x in res):
                raise AssertionError("projection failed")
            out: Element = {}
            for vid, c in combo.items():
                if vid[0] == "c":
                    out[comp.index(vid[1])] = c
            return {k: v for k, v in out.items() if not f.is_zero(v)}

        parities = [self.parities[m] for m in comp]
        weights = [self.weights[m] for m in comp] if self.weights is not None else None
        brackets: Dict[Tuple[int, int], Element] = {}
        squares: Dict[int, Element] = {}
        for a, ma in enumerate(comp):
            lo_same = a if (f.p != 2 and parities[a] == 1) else a + 1
            for b in range(lo_same, len(comp)):
                w = self.bracket_basis(ma, comp[b])
                if w:
                    pr = project(w)
                    if pr:
                        brackets[(a, b)] = pr
        if f.p == 2:
            for a, ma in enumerate(comp):
                if parities[a] == 1:
                    w = (self.squares or {}).get(ma, {})
                    if w:
                        pr = project(w)
                        if pr:
                            squares[a] = pr
        labels = [self.labels[m] for m in comp]
        chev = None
        if self.chevalley is not None:
            try:
                chev = {key: [project(e) for e in els] for key, els in self.chevalley.items()}
            except AssertionError:
                chev = None
        return Superalgebra(f, labels, parities, brackets, squares or None,
                            weights, chevalley=chev)

    def first_derived_mod_center(self) -> "Superalgebra":
        """The subquotient g^(1) / (center of g^(1))."""
        f = self.field
        full = GradedSpan(self)
        for i in range(self.dim):
            full.add_element({i: f.one})
        d1 = self.derived_subalgebra_span(full)
        sub = self.subalgebra_from_rows(d1.all_rows(), label_prefix="d")
        center = sub.center_rows()
        if not center:
            return sub
        return sub.quotient_by_ideal(center)

    def transform_basis(self, T: List[list]) -> "Superalgebra":
        """Pullback of the structure along an invertible parity-preserving map.

        New basis b'_a = sum_i T[i][a] b_i; T must be block diagonal with
        respect to parity.
        """
        f = self.field
        n = self.dim
        for i in range(n):
            for a in range(n):
                if not f.is_zero(T[i][a]) and self.parities[i] != self.parities[a]:
                    raise ValueError("basis change must preserve parity")
        cols = [el_from_dense(f, [T[i][a] for i in range(n)]) for a in range(n)]
        ech = Echelon(f, n, track=True)
        for a in range(n):
            if ech.add(el_to_dense(f, cols[a], n), vid=a) is None:
                raise ValueError("basis change not invertible")

        def coords(u: Element) -> Element:
            res, combo = ech.reduce(el_to_dense(f, u, n))
            if any(not f.is_zero(x) for x in res):
                raise AssertionError("coords failed")
            return {k: v for k, v in combo.items() if not f.is_zero(v)}

        brackets: Dict[Tuple[int, int], Element] = {}
        squares: Dict[int, Element] = {}
        for a in range(n):
            lo = a if (f.p != 2 and self.parities[a] == 1) else a + 1
            for b in range(lo, n):
                w = self.bracket(cols[a], cols[b])
                if w:
                    brackets[(a, b)] = coords(w)
        if f.p == 2:
            for a in range(n):
                if self.parities[a] == 1:
                    w = self.square(cols[a])
                    if w:
                        squares[a] = coords(w)
        return Superalgebra(f, [f"t{a}" for a in range(n)], list(self.parities),
                            brackets, squares or None, None)


class GradedSpan:
    """Parity-graded subspace, maintained as two echelons (even, odd)."""

    def __init__(self, g: Superalgebra):
        self.g = g
        self.even = Echelon(g.field, g.dim)
        self.odd = Echelon(g.field, g.dim)

    def add_element(self, u: Element):
        f = self.g.field
        ue = {k: c for k, c in u.items() if self.g.parities[k] == 0}
        uo = {k: c for k, c in u.items() if self.g.parities[k] == 1}
        if ue:
            self.even.add(el_to_dense(f, ue, self.g.dim))
        if uo:
            self.odd.add(el_to_dense(f, uo, self.g.dim))

    def add_dense(self, row: list):
        self.add_element(el_from_dense(self.g.field, row))

    def contains_element(self, u: Element) -> bool:
        f = self.g.field
        ue = {k: c for k, c in u.items() if self.g.parities[k] == 0}
        uo = {k: c for k, c in u.items() if self.g.parities[k] == 1}
        ok = True
        if ue:
            ok = ok and self.even.contains(el_to_dense(f, ue, self.g.dim))
        if uo:
            ok = ok and self.odd.contains(el_to_dense(f, uo, self.g.dim))
        return ok

    def dim(self) -> int:
        return len(self.even) + len(self.odd)

    def sdim(self) -> Tuple[int, int]:
        return len(self.even), len(self.odd)

    def all_rows(self) -> List[list]:
        rows = [list(r) for r in self.even.rows] + [list(r) for r in self.odd.rows]
        return rows

    def all_pivots(self) -> List[int]:
        return list(self.even.pivots) + list(self.odd.pivots)


def direct_sum(a: Superalgebra, b: Superalgebra) -> Superalgebra:
    """Block direct sum; both summands over one field."""
    if a.field != b.field:
        raise ValueError("direct sum requires a common field")
    f = a.field
    off = a.dim
    labels = [f"A.{x}" for x in a.labels] + [f"B.{x}" for x in b.labels]
    parities = a.parities + b.parities
    brackets = {k: dict(v) for k, v in a.brackets.items()}
    for (i, j), v in b.brackets.items():
        brackets[(i + off, j + off)] = {k + off: c for k, c in v.items()}
    squares = None
    if f.p == 2:
        squares = {i: dict(v) for i, v in (a.squares or {}).items()}
        for i, v in (b.squares or {}).items():
            squares[i + off] = {k + off: c for k, c in v.items()}
    return Superalgebra(f, labels, parities, brackets, squares, None)
