"""Irreducible highest-weight modules by the radical recursion.

The module is spanned by f-words applied to a highest-weight vector v
(e_i v = 0, h_i v = lambda_i v); a degree-d combination u is radical iff
all raisings e_j u vanish in the already-reduced degree-(d-1) space.
The construction only uses the Chevalley triple actions, so it serves
both g(A) and its first-derived subquotient (the latter requires the
weight to kill the central combinations of the h_i, which is checked).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .build import BuildError, BuildResult
from .linalg import Echelon, Matrix, mat_nullspace, mat_rank
from .superalgebra import Element, el_add, el_addmul, el_scale, el_to_dense


@dataclass
class ModuleRep:
    build: BuildResult
    lam: List[object]
    labels: List[str]
    parities: List[int]
    degrees: List[Tuple[int, ...]]  # lowering multidegree of each basis vector
    f_act: List[List[Element]]      # f_act[i][m] = f_i . basis_m
    e_act: List[List[Element]]      # e_act[j][m] = e_j . basis_m
    name: str = "M"

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def sdim(self) -> Tuple[int, int]:
        ev = sum(1 for p in self.parities if p == 0)
        return ev, len(self.parities) - ev

    def h_value(self, a: int, m: int):
        """Action eigenvalue of h_a on basis_m (weight of the vector)."""
        b = self.build
        fld = b.field
        t = self.degrees[m]
        acc = self.lam[a]
        spec = b.spec
        for j, tj in enumerate(t):
            if tj:
                acc = fld.sub(acc, fld.mul(fld.from_int(tj), spec.entry_scalar(fld, a, j)))
        return acc

    def action_matrix(self, global_idx: int) -> List[list]:
        """Matrix (rows) of the algebra basis element on the module."""
        b = self.build
        fld = b.field
        nh = b.n + b.n_grading
        dm = self.dim
        if global_idx < b.n:
            return _diag([self.h_value(global_idx, m) for m in range(dm)], fld)
        if global_idx < nh:
            # grading element d_t with lambda(d_t) = 0
            drow = _grading_rows(b)[global_idx - b.n]
            vals = []
            for m in range(dm):
                t = self.degrees[m]
                vals.append(fld.neg(fld.from_int(t[drow])))
            return _diag(vals, fld)
        npos = len(b.pos_roots)
        if global_idx < nh + npos:
            flat = b.pos_order[global_idx - nh]
            return self._word_matrix(b.pos_side.nodes[flat].word, positive=True)
        flat = b.neg_order[global_idx - nh - npos]
        return self._word_matrix(b.neg_side.nodes[flat].word, positive=False)

    def _gen_matrix(self, i: int, positive: bool) -> List[list]:
        fld = self.build.field
        acts = self.e_act[i] if positive else self.f_act[i]
        dm = self.dim
        rows = [[fld.zero] * dm for _ in range(dm)]
        for m in range(dm):
            for t, c in acts[m].items():
                rows[t][m] = c
        return rows

    def _word_matrix(self, word, positive: bool) -> List[list]:
        fld = self.build.field
        side = self.build.pos_side if positive else self.build.neg_side
        if word[0] == "g":
            return self._gen_matrix(word[1], positive)
        if word[0] == "sq":
            z = self._word_matrix(side.nodes[word[1]].word, positive)
            return _mat_mul(z, z, fld)
        _, i, parent = word
        a = self._gen_matrix(i, positive)
        bmat = self._word_matrix(side.nodes[parent].word, positive)
        ab = _mat_mul(a, bmat, fld)
        ba = _mat_mul(bmat, a, fld)
        pi = self.build.spec.parities[i]
        pb = side.nodes[parent].parity
        sgn = fld.neg(fld.one) if (fld.p != 2 and pi and pb) else fld.one
        return [[fld.sub(x, fld.mul(sgn, y)) for x, y in zip(r1, r2)]
                for r1, r2 in zip(ab, ba)]

    def element_matrix(self, el: Element) -> List[list]:
        fld = self.build.field
        dm = self.dim
        out = [[fld.zero] * dm for _ in range(dm)]
        for k, c in el.items():
            mk = self.action_matrix(k)
            out = [[fld.add(x, fld.mul(c, y)) for x, y in zip(r1, r2)]
                   for r1, r2 in zip(out, mk)]
        return out


def _diag(vals, fld) -> List[list]:
    n = len(vals)
    rows = [[fld.zero] * n for _ in range(n)]
    for i, v in enumerate(vals):
        rows[i][i] = v
    return rows


def _mat_mul(a: List[list], b: List[list], fld) -> List[list]:
    n = len(a)
    out = [[fld.zero] * n for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for k in range(n):
            c = ai[k]
            if fld.is_zero(c):
                continue
            bk = b[k]
            oi = out[i]
            for j in range(n):
                if not fld.is_zero(bk[j]):
                    oi[j] = fld.add(oi[j], fld.mul(c, bk[j]))
    return out


def _grading_rows(b: BuildResult) -> List[int]:
    fld = b.field
    n = b.n
    A = [[b.spec.entry_scalar(fld, i, j) for j in range(n)] for i in range(n)]
    ech = Echelon(fld, n)
    for i in range(n):
        ech.add(list(A[i]))
    rows = []
    for m in range(n):
        unit = [fld.zero] * n
        unit[m] = fld.one
        if ech.add(unit) is not None:
            rows.append(m)
    return rows


def central_h_combinations(b: BuildResult) -> List[list]:
    """Coefficient vectors u with sum u_i A_ij = 0 for all j (central h-combos)."""
    fld = b.field
    n = b.n
    At = Matrix(fld, [[b.spec.entry_scalar(fld, j, i) for j in range(n)]
                      for i in range(n)], ncols=n)
    return mat_nullspace(At)


def build_irreducible(b: BuildResult, lam: Sequence, degree_cap: int = 60,
                      dim_cap: int = 5000, hw_parity: int = 0,
                      require_center_zero: bool = False, name: str = "M") -> ModuleRep:
    """Irreducible highest-weight module over the Chevalley subalgebra of b."""
    fld = b.field
    n = b.n
    lam = [x if not isinstance(x, int) else fld.from_int(x) for x in lam]
    if len(lam) != n:
        raise ValueError("highest weight length mismatch")
    if require_center_zero:
        for combo in central_h_combinations(b):
            acc = fld.zero
            for u, l in zip(combo, lam):
                acc = fld.add(acc, fld.mul(u, l))
            if not fld.is_zero(acc):
                raise BuildError(
                    f"weight does not vanish on the central combination {combo}")
    spec = b.spec
    pars = spec.parities
    # node bookkeeping
    degrees: List[Tuple[int, ...]] = [tuple(0 for _ in range(n))]
    parities: List[int] = [hw_parity % 2]
    deg_basis: Dict[int, List[int]] = {0: [0]}
    e_act: List[Dict[int, Element]] = [dict() for _ in range(n)]  # per j: m -> element
    f_act: List[Dict[int, Element]] = [dict() for _ in range(n)]
    for j in range(n):
        e_act[j][0] = {}

    def h_val(a: int, t: Tuple[int, ...]):
        acc = lam[a]
        for j, tj in enumerate(t):
            if tj:
                acc = fld.sub(acc, fld.mul(fld.from_int(tj), spec.entry_scalar(fld, a, j)))
        return acc

    d = 1
    profile = [1]
    while True:
        prev = deg_basis.get(d - 1, [])
        if not prev:
            break
        if d > degree_cap or len(degrees) > dim_cap:
            raise BuildError(f"module cap exceeded; growth profile {profile}")
        cands = []
        for m in prev:
            for i in range(n):
                t = list(degrees[m])
                t[i] += 1
                cands.append((i, m, tuple(t)))
        by_deg: Dict[Tuple[int, ...], list] = {}
        for c in cands:
            by_deg.setdefault(c[2], []).append(c)
        new_idxs: List[int] = []
        for t in sorted(by_deg.keys(), reverse=True):
            group = by_deg[t]
            raises = []
            for (i, m, _t) in group:
                per_j: List[Element] = []
                for j in range(n):
                    # e_j . (f_i . m) = delta_ij h_i . m + (-1)^{p_j p_i} f_i . (e_j . m)
                    acc: Element = {}
                    if j == i:
                        c = h_val(i, degrees[m])
                        if not fld.is_zero(c):
                            acc = {m: c}
                    up = e_act[j].get(m, {})
                    if up:
                        moved: Element = {}
                        for mm, c in up.items():
                            moved = el_addmul(fld, moved, c, f_act[i].get(mm, {}))
                        sgn = fld.one
                        if fld.p != 2 and pars[j] and pars[i]:
                            sgn = fld.neg(fld.one)
                        acc = el_add(fld, acc, el_scale(fld, sgn, moved))
                    per_j.append(acc)
                raises.append(per_j)
            cols = sorted({(j, mm) for per in raises for j in range(n) for mm in per[j]})
            colpos = {c2: t2 for t2, c2 in enumerate(cols)}
            ech = Echelon(fld, len(cols), track=True)
            sel_flat: Dict[int, int] = {}
            for ci, (i, m, _t) in enumerate(group):
                dense = [fld.zero] * len(cols)
                for j in range(n):
                    for mm, c in raises[ci][j].items():
                        dense[colpos[(j, mm)]] = c
                piv = ech.add(dense, vid=ci)
                if piv is not None:
                    flat = len(degrees)
                    degrees.append(_t)
                    parities.append((parities[m] + pars[i]) % 2)
                    new_idxs.append(flat)
                    sel_flat[ci] = flat
                    f_act[i][m] = {flat: fld.one}
                    for j in range(n):
                        ej = e_act[j].setdefault(flat, {})
                        for mm, c in raises[ci][j].items():
                            ej[mm] = c
                else:
                    _res, combo = ech.reduce(dense)
                    f_act[i][m] = {sel_flat[vid]: c for vid, c in combo.items()}
        deg_basis[d] = new_idxs
        profile.append(len(new_idxs))
        d += 1

    dm = len(degrees)
    labels = [f"m{t+1}" for t in range(dm)]
    f_list = [[f_act[i].get(m, {}) for m in range(dm)] for i in range(n)]
    e_list = [[e_act[j].get(m, {}) for m in range(dm)] for j in range(n)]
    return ModuleRep(build=b, lam=lam, labels=labels, parities=parities,
                     degrees=degrees, f_act=f_list, e_act=e_list, name=name)


@dataclass
class ModuleHomology:
    rank: int
    sdim_mx: Tuple[int, int]
    basis_rows: List[list]


def module_homology(rep: ModuleRep, el: Element) -> ModuleHomology:
    """Ker rho_x / Im rho_x for a homological x (rho_x^2 = 0 is verified)."""
    fld = rep.build.field
    dm = rep.dim
    R = rep.element_matrix(el)
    R2 = _mat_mul(R, R, fld)
    if any(not fld.is_zero(R2[i][j]) for i in range(dm) for j in range(dm)):
        raise ValueError("rho_x squared is nonzero on the module")
    M = Matrix(fld, R, ncols=dm)
    rank = mat_rank(M)
    im = Echelon(fld, dm)
    for j in range(dm):
        im.add([R[i][j] for i in range(dm)])
    comp = Echelon(fld, dm)
    for vec in mat_nullspace(M):
        res, _ = im.reduce(vec)
        comp.add(res)
    ev = od = 0
    for r in comp.rows:
        ps = {rep.parities[k] for k in range(dm) if not fld.is_zero(r[k])}
        if ps == {0}:
            ev += 1
        elif ps == {1}:
            od += 1
        else:
            raise ValueError("module homology not parity-graded")
    return ModuleHomology(rank=rank, sdim_mx=(ev, od), basis_rows=[list(r) for r in comp.rows])
