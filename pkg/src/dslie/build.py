"""Construction of g(A) from a Cartan matrix by the radical recursion.

Start from the presentation [h_i,h_j] = 0, [h_i,e_j] = A_ij e_j,
[h_i,f_j] = -A_ij f_j, [e_i,f_j] = delta_ij h_i.  Each positive degree d
is spanned by [e_i, b] over the degree-(d-1) basis b (plus, for p = 2
and d even, formal squares s(z) of odd degree-(d/2) basis z); a
combination is radical iff all its lowerings by f_j vanish in the
already-reduced degree-(d-1) space, so the quotient basis falls out of
one deterministic elimination per root.  The negative side runs the same
recursion with e and f exchanged.  When A is singular over the ground
field, grading elements are adjoined to h so that weights separate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .cartan import CartanSpec
from .fields import Field
from .linalg import Echelon
from .superalgebra import Element, Superalgebra, el_add, el_addmul, el_neg, el_scale


class BuildError(RuntimeError):
    pass


@dataclass
class _Node:
    word: tuple  # ('g', i) | ('br', i, parent_flat) | ('sq', parent_flat)
    root: Tuple[int, ...]
    parity: int
    degree: int


class _Side:
    """One triangular half of g(A), built degree by degree."""

    def __init__(self, fld: Field, n: int, parities: List[int],
                 weight_of, cross_coeff, gen_weight, p2: bool, cap: int,
                 dim_cap: Optional[int] = None):
        self.f = fld
        self.n = n
        self.parities = parities
        self.weight_of = weight_of      # (i, root) -> scalar action of h_i
        self.cross_coeff = cross_coeff  # i -> coefficient of h_i in [Y_i, X_i]
        self.gen_weight = gen_weight    # i -> root tuple of X_i
        self.p2 = p2
        self.cap = cap
        self.dim_cap = dim_cap
        self.nodes: List[_Node] = []
        self.deg_basis: Dict[int, List[int]] = {}
        self.lower: Dict[int, List[Element]] = {}   # flat -> per-j element over flats (deg-1)
        self.raise_tab: Dict[Tuple[int, int], Element] = {}  # (i, flat) -> element (deg+1)
        self.sq_tab: Dict[int, Element] = {}        # flat -> element at doubled degree
        self._br_memo: Dict[Tuple[int, int], Element] = {}
        self.profile: List[int] = []

    # -- degree 1 -----------------------------------------------------------

    def init_degree_one(self):
        idxs = []
        for i in range(self.n):
            self.nodes.append(_Node(("g", i), self.gen_weight(i), self.parities[i], 1))
            idxs.append(i)
        self.deg_basis[1] = idxs

    # -- brackets of already-built elements -----------------------------------

    def bracket_flat(self, a: int, b: int) -> Element:
        """[node_a, node_b], both on this side, as an element over flats."""
        key = (a, b)
        if key in self._br_memo:
            return self._br_memo[key]
        f = self.f
        na = self.nodes[a]
        if na.degree == 1:
            out = self.raise_tab.get((na.word[1], b), {})
        else:
            if na.word[0] == "sq":
                # [s(z), w] = [z, [z, w]] (p = 2)
                z = na.word[1]
                out = self.bracket_elem(z, self.bracket_flat(z, b))
            else:
                i, aprime = na.word[1], na.word[2]
                t1 = self.raise_elem(i, self.bracket_flat(aprime, b))
                t2 = self.bracket_elem(aprime, self.raise_tab.get((i, b), {}))
                sgn = f.one
                if f.p != 2 and self.parities[i] and self.nodes[aprime].parity:
                    sgn = f.neg(f.one)
                out = el_add(f, t1, el_scale(f, f.neg(sgn), t2))
        self._br_memo[key] = out
        return out

    def bracket_elem(self, a: int, el: Element) -> Element:
        f = self.f
        out: Element = {}
        for b, c in el.items():
            out = el_addmul(f, out, c, self.bracket_flat(a, b))
        return out

    def raise_elem(self, i: int, el: Element) -> Element:
        f = self.f
        out: Element = {}
        for b, c in el.items():
            out = el_addmul(f, out, c, self.raise_tab.get((i, b), {}))
        return out

    # -- lowering data for candidates ----------------------------------------

    def _lower_of_basis(self, m: int, j: int) -> Tuple[Element, Element]:
        """[Y_j, node_m] split as (part over flats of deg-1, coefficient of h_j).

        For degree >= 2 the h-part is empty; for a generator X_k it is
        delta_jk * cross_coeff(k) * h_k.
        """
        node = self.nodes[m]
        if node.degree == 1:
            k = node.word[1]
            if j == k:
                return {}, {k: self.cross_coeff(k)}
            return {}, {}
        return self.lower[m][j], {}

    def _cand_lowering(self, kind: str, i: int, m: int) -> List[Element]:
        """Lowering vectors [Y_j, candidate] for j = 0..n-1, over deg-(d-1) flats."""
        f = self.f
        node = self.nodes[m]
        out: List[Element] = []
        if kind == "br":
            pi = self.parities[i]
            for j in range(self.n):
                acc: Element = {}
                if j == i:
                    c = f.mul(self.cross_coeff(i), self.weight_of(i, node.root))
                    if not f.is_zero(c):
                        acc = {m: c}
                flats, hpart = self._lower_of_basis(m, j)
                if flats:
                    t = self.raise_elem(i, flats)
                    sgn = f.one
                    if f.p != 2 and pi and self.parities[j]:
                        sgn = f.neg(f.one)
                    acc = el_add(f, acc, el_scale(f, sgn, t))
                for k, c in hpart.items():
                    # [X_i, h_k] = -w_k(eps_i) X_i  (same side)
                    w = self.weight_of(k, self.gen_weight(i))
                    coef = f.mul(c, f.neg(w))
                    sgn = f.one
                    if f.p != 2 and pi and self.parities[j]:
                        sgn = f.neg(f.one)
                    acc = el_addmul(f, acc, f.mul(sgn, coef), {i: f.one})
                out.append(acc)
        else:  # square candidate s(node_m); p = 2, signs trivial
            for j in range(self.n):
                flats, hpart = self._lower_of_basis(m, j)
                acc = self.bracket_elem(m, flats) if flats else {}
                for k, c in hpart.items():
                    w = self.weight_of(k, node.root)
                    acc = el_addmul(f, acc, f.mul(c, f.neg(w)), {m: f.one})
                out.append(acc)
        return out

    # -- main loop ------------------------------------------------------------

    def build(self):
        f = self.f
        self.init_degree_one()
        self.profile.append(self.n)
        d = 2
        while True:
            max_deg = max((dd for dd, lst in self.deg_basis.items() if lst), default=0)
            max_odd = max((dd for dd, lst in self.deg_basis.items()
                           if any(self.nodes[m].parity for m in lst)), default=0)
            limit = max(max_deg + 1, 2 * max_odd if self.p2 else 0)
            if d > limit:
                break
            # the cap bounds root height; at p = 2 squares of degree-h elements
            # still have to be scanned (and are then empty) up to degree 2h
            if d > self.cap and self.deg_basis.get(d - 1):
                raise BuildError(
                    f"degree cap {self.cap} exceeded; growth profile {self.profile}")
            cands: List[Tuple[str, int, int, Tuple[int, ...], int]] = []
            for m in self.deg_basis.get(d - 1, []):
                for i in range(self.n):
                    root = tuple(a + b for a, b in zip(self.nodes[m].root, self.gen_weight(i)))
                    par = (self.nodes[m].parity + self.parities[i]) % 2
                    cands.append(("br", i, m, root, par))
            if self.p2 and d % 2 == 0:
                for m in self.deg_basis.get(d // 2, []):
                    if self.nodes[m].parity == 1:
                        root = tuple(2 * a for a in self.nodes[m].root)
                        cands.append(("sq", -1, m, root, 0))
            if not cands:
                self.deg_basis[d] = []
                self.profile.append(0)
                d += 1
                continue
            by_root: Dict[Tuple[int, ...], list] = {}
            for c in cands:
                by_root.setdefault(c[3], []).append(c)
            new_idxs: List[int] = []
            for root in sorted(by_root.keys(), reverse=True):
                group = by_root[root]
                lows = [self._cand_lowering(k, i, m) for (k, i, m, _r, _p) in group]
                cols: List[Tuple[int, int]] = sorted(
                    {(j, fl) for lv in lows for j in range(self.n) for fl in lv[j]})
                colpos = {c: t for t, c in enumerate(cols)}
                ech = Echelon(f, len(cols), track=True)
                sel_flat: Dict[int, int] = {}  # candidate id -> flat index
                for ci, (kind, i, m, _r, par) in enumerate(group):
                    dense = [f.zero] * len(cols)
                    for j in range(self.n):
                        for fl, c in lows[ci][j].items():
                            dense[colpos[(j, fl)]] = c
                    piv = ech.add(dense, vid=ci)
                    if piv is not None:
                        flat = len(self.nodes)
                        word = ("br", i, m) if kind == "br" else ("sq", m)
                        self.nodes.append(_Node(word, root, par, d))
                        new_idxs.append(flat)
                        sel_flat[ci] = flat
                        self.lower[flat] = list(lows[ci])
                        if kind == "br":
                            self.raise_tab[(i, m)] = {flat: f.one}
                        else:
                            self.sq_tab[m] = {flat: f.one}
                    else:
                        # dependent: express over the selected candidates
                        _res, combo = ech.reduce(dense)
                        expansion: Element = {
                            sel_flat[vid]: c for vid, c in combo.items()}
                        if kind == "br":
                            self.raise_tab[(i, m)] = expansion
                        else:
                            self.sq_tab[m] = expansion
            if new_idxs and d > self.cap:
                raise BuildError(
                    f"degree cap {self.cap} exceeded at degree {d}; "
                    f"growth profile {self.profile}")
            self.deg_basis[d] = new_idxs
            self.profile.append(len(new_idxs))
            if self.dim_cap is not None and len(self.nodes) > self.dim_cap:
                raise BuildError(
                    f"dimension cap {self.dim_cap} exceeded; growth profile {self.profile}")
            d += 1


@dataclass
class BuildResult:
    spec: CartanSpec
    field: Field
    algebra: Superalgebra
    n: int
    n_grading: int
    pos_roots: List[Tuple[Tuple[int, ...], int]]  # (root, parity) per positive basis elt
    chevalley: Dict[str, List[int]]               # 'e','f','h' -> basis indices
    profile: List[int]
    pos_side: Optional["_Side"] = None            # word data for module actions
    neg_side: Optional["_Side"] = None
    pos_order: Optional[List[int]] = None
    neg_order: Optional[List[int]] = None

    @property
    def sdim(self) -> Tuple[int, int]:
        return self.algebra.sdim

    def positive_index(self, k: int) -> int:
        """Global basis index of the k-th positive root vector, 1-based (x_k)."""
        h = self.n + self.n_grading
        if not (1 <= k <= len(self.pos_roots)):
            raise ValueError(f"x{k} out of range (1..{len(self.pos_roots)})")
        return h + k - 1

    def index_of_root(self, root: Sequence[int]) -> List[int]:
        root = tuple(root)
        h = self.n + self.n_grading
        return [h + t for t, (r, _p) in enumerate(self.pos_roots) if r == root]

    def x_element(self, expr: str) -> Element:
        """Parse 'x1+x3+x5' into the sum of those positive root vectors."""
        f = self.field
        out: Element = {}
        for part in expr.replace(" ", "").split("+"):
            if not part.startswith("x"):
                raise ValueError(f"bad root-vector expression {expr!r}")
            k = int(part[1:])
            out = el_add(f, out, {self.positive_index(k): f.one})
        return out


def parse_sdim(s: str) -> Tuple[Tuple[int, int], Optional[Tuple[int, int]]]:
    """'12/10|14' -> ((12,14), (10,14)); '10|12' -> ((10,12), None)."""
    left, odd = s.split("|")
    odd = int(odd)
    if "/" in left:
        full, sub = left.split("/")
        return (int(full), odd), (int(sub), odd)
    return (int(left), odd), None


def build_g_of_A(spec: CartanSpec, degree_cap: int = 40,
                 check_expected: bool = True,
                 dim_cap: Optional[int] = None) -> BuildResult:
    fld = spec.field()
    n = spec.n
    if dim_cap is None and spec.expected_sdim:
        want, _ = parse_sdim(spec.expected_sdim)
        dim_cap = (want[0] + want[1]) // 2 + n + 8  # bound on one side's node count
    A = [[spec.entry_scalar(fld, i, j) for j in range(n)] for i in range(n)]

    # grading elements: unit rows completing the row space of A over the field
    row_ech = Echelon(fld, n)
    for i in range(n):
        row_ech.add(list(A[i]))
    d_rows: List[int] = []
    for m in range(n):
        unit = [fld.zero] * n
        unit[m] = fld.one
        if row_ech.add(unit) is not None:
            d_rows.append(m)
    k = len(d_rows)

    def weight_of(i: int, root: Tuple[int, ...]):
        acc = fld.zero
        row = A[i]
        for j, c in enumerate(root):
            if c and not fld.is_zero(row[j]):
                acc = fld.add(acc, fld.mul(fld.from_int(c), row[j]))
        return acc

    def gen_weight(i: int) -> Tuple[int, ...]:
        return tuple(1 if j == i else 0 for j in range(n))

    p2 = fld.p == 2
    minus_one = fld.neg(fld.one)

    def cross_pos(i: int):
        # [f_i, e_i] = -(-1)^{p_i} h_i
        if p2:
            return fld.one
        return fld.one if spec.parities[i] else minus_one

    def cross_neg(i: int):
        return fld.one  # [e_i, f_i] = h_i

    pos = _Side(fld, n, spec.parities, weight_of, cross_pos, gen_weight, p2,
                degree_cap, dim_cap)
    pos.build()
    neg = _Side(fld, n, spec.parities,
                lambda i, root: fld.neg(weight_of(i, root)),
                cross_neg, gen_weight, p2, degree_cap, dim_cap)
    neg.build()

    pos_order = sorted(range(len(pos.nodes)),
                       key=lambda m: (pos.nodes[m].degree,
                                      tuple(-c for c in pos.nodes[m].root), m))
    neg_order = sorted(range(len(neg.nodes)),
                       key=lambda m: (neg.nodes[m].degree,
                                      tuple(-c for c in neg.nodes[m].root), m))
    if [pos.nodes[m].root for m in pos_order] != [neg.nodes[m].root for m in neg_order]:
        raise BuildError(f"{spec.key}: positive/negative root sets differ")

    nh = n + k
    npos = len(pos_order)
    dim = nh + 2 * npos
    pos_global = {m: nh + t for t, m in enumerate(pos_order)}
    neg_global = {m: nh + npos + t for t, m in enumerate(neg_order)}

    labels = [f"h{i+1}" for i in range(n)] + [f"d{t+1}" for t in range(k)]
    parities = [0] * nh
    weights: List[Tuple[int, ...]] = [tuple(0 for _ in range(n))] * nh
    for m in pos_order:
        nd = pos.nodes[m]
        labels.append("x%d" % (pos_global[m] - nh + 1))
        parities.append(nd.parity)
        weights.append(nd.root)
    for m in neg_order:
        nd = neg.nodes[m]
        labels.append("y%d" % (neg_global[m] - nh - npos + 1))
        parities.append(nd.parity)
        weights.append(tuple(-c for c in nd.root))

    def h_weight(a: int, root: Tuple[int, ...]):
        if a < n:
            return weight_of(a, root)
        m = d_rows[a - n]
        return fld.from_int(root[m])

    def pos_el(el: Element) -> Element:
        return {pos_global[m]: c for m, c in el.items()}

    def neg_el(el: Element) -> Element:
        return {neg_global[m]: c for m, c in el.items()}

    memo_mixed: Dict[Tuple[int, int], Element] = {}

    def glob_bracket(a: int, b: int) -> Element:
        """[basis_a, basis_b] on global indices, any order."""
        pa, pb = parities[a], parities[b]
        if a == b and (p2 or pa == 0) and a >= nh:
            return {}
        if b < a:
            w = glob_bracket(b, a)
            if not w:
                return {}
            if p2:
                return w
            sgn = fld.one if (pa and pb) else minus_one
            return el_scale(fld, sgn, w)
        if a < nh:
            if b < nh:
                return {}
            c = h_weight(a, weights[b])
            return {} if fld.is_zero(c) else {b: c}
        # both are root vectors now
        if a < nh + npos and b < nh + npos:
            fa, fb = pos_order[a - nh], pos_order[b - nh]
            return pos_el(pos.bracket_flat(fa, fb))
        if a >= nh + npos and b >= nh + npos:
            fa, fb = neg_order[a - nh - npos], neg_order[b - nh - npos]
            return neg_el(neg.bracket_flat(fa, fb))
        # a positive, b negative
        return mixed(pos_order[a - nh], neg_order[b - nh - npos])

    def bracket_elem_glob(a: int, el: Element) -> Element:
        out: Element = {}
        for b, c in el.items():
            out = el_addmul(fld, out, c, glob_bracket(a, b))
        return out

    def mixed(mp: int, mn: int) -> Element:
        """[pos node mp, neg node mn] as a global element."""
        key = (mp, mn)
        if key in memo_mixed:
            return memo_mixed[key]
        np_, nn = pos.nodes[mp], neg.nodes[mn]
        if np_.degree == 1:
            i = np_.word[1]
            if nn.degree == 1:
                j = nn.word[1]
                out = {i: fld.one} if i == j else {}
            else:
                # nn = [f_j, b']; [e_i,[f_j,b']] = delta_ij [h_i, b'] + (-1)^{p_i p_j}[f_j, [e_i, b']]
                j, bprime = nn.word[1], nn.word[2]
                out = {}
                if i == j:
                    c = fld.neg(weight_of(i, neg.nodes[bprime].root))
                    if not fld.is_zero(c):
                        out = {neg_global[bprime]: c}
                inner = mixed(mp, bprime)
                if inner:
                    t = bracket_elem_glob(neg_global[mn_gen(j)], inner)
                    sgn = fld.one
                    if not p2 and spec.parities[i] and spec.parities[j]:
                        sgn = minus_one
                    out = el_add(fld, out, el_scale(fld, sgn, t))
        elif np_.word[0] == "sq":
            z = np_.word[1]
            out = bracket_elem_glob_left(z, mixed(z, mn))
        else:
            i, aprime = np_.word[1], np_.word[2]
            t1 = bracket_elem_glob(pos_global[mp_gen(i)], mixed(aprime, mn))
            t2 = bracket_elem_glob_left(aprime, mixed(mp_gen(i), mn))
            sgn = fld.one
            if not p2 and spec.parities[i] and pos.nodes[aprime].parity:
                sgn = minus_one
            out = el_add(fld, t1, el_scale(fld, fld.neg(sgn), t2))
        memo_mixed[key] = out
        return out

    _pos_gen = {pos.nodes[m].word[1]: m for m in pos.deg_basis[1]}
    _neg_gen = {neg.nodes[m].word[1]: m for m in neg.deg_basis[1]}

    def mp_gen(i: int) -> int:
        return _pos_gen[i]

    def mn_gen(j: int) -> int:
        return _neg_gen[j]

    def bracket_elem_glob_left(mp_flat: int, el: Element) -> Element:
        """[pos node, global element]."""
        a = pos_global[mp_flat]
        out: Element = {}
        for b, c in el.items():
            out = el_addmul(fld, out, c, glob_bracket(a, b))
        return out

    brackets: Dict[Tuple[int, int], Element] = {}
    squares: Dict[int, Element] = {}
    for a in range(dim):
        lo = a if (not p2 and parities[a] == 1) else a + 1
        for b in range(lo, dim):
            w = glob_bracket(a, b)
            if w:
                brackets[(a, b)] = w
    if p2:
        for m in pos_order:
            if pos.nodes[m].parity == 1:
                s = pos.sq_tab.get(m, {})
                if s:
                    squares[pos_global[m]] = pos_el(s)
        for m in neg_order:
            if neg.nodes[m].parity == 1:
                s = neg.sq_tab.get(m, {})
                if s:
                    squares[neg_global[m]] = neg_el(s)

    chevalley = {
        "e": [pos_global[mp_gen(i)] for i in range(n)],
        "f": [neg_global[mn_gen(i)] for i in range(n)],
        "h": list(range(n)),
    }
    alg = Superalgebra(fld, labels, parities, brackets, squares or None, weights,
                       chevalley={k2: [{i: fld.one} for i in v]
                                  for k2, v in chevalley.items()})
    pos_roots = [(pos.nodes[m].root, pos.nodes[m].parity) for m in pos_order]
    res = BuildResult(spec=spec, field=fld, algebra=alg, n=n, n_grading=k,
                      pos_roots=pos_roots, chevalley=chevalley, profile=pos.profile,
                      pos_side=pos, neg_side=neg, pos_order=pos_order,
                      neg_order=neg_order)

    if check_expected and spec.expected_sdim:
        want, _sub = parse_sdim(spec.expected_sdim)
        if res.sdim != want:
            raise BuildError(
                f"{spec.key}: built sdim {res.sdim[0]}|{res.sdim[1]} but catalog "
                f"expects {spec.expected_sdim}")
    # dim g_beta = dim g_{-beta} holds by the mirrored construction; assert anyway
    for root, _par in pos_roots:
        neg_count = sum(1 for m in neg_order if neg.nodes[m].root == root)
        pos_count = sum(1 for r, _ in pos_roots if r == root)
        if neg_count != pos_count:
            raise BuildError(f"{spec.key}: root multiplicity asymmetry at {root}")
    return res
