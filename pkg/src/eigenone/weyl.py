"""Weyl groups with labeled irreducible characters and parabolic induction.

Characters are labeled in the standard way: partitions for type A,
bipartitions for type B/C, unordered signed bipartitions for type D and
degree/b-invariant pairs phi{d,b} for the exceptional types.  Tables are
computed by the exact Dixon engine for every enumerable rank; E7 and E8
can also be served from shipped table files whose class lines carry
reduced words, which is what makes class fusion possible without
enumerating the big group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .cartan import CartanDatum, RootSystem, cartan_datum, subdatum
from .chartab import CharacterTable, ClassInfo, character_table
from .cyclotomic import Cyclotomic
from .groups import FiniteGroup, PermKind, row_order
from . import symchar


class MissingTableData(RuntimeError):
    pass


class InvalidAutomorphism(ValueError):
    pass


E8_ENUMERATION_CAP = 800_000_000


# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class WeylCharacterLabel:
    """Standard label of an irreducible Weyl-group character."""

    kind: str                 # "partition" | "bipartition" | "dpartition" | "phi"
    data: tuple
    prime: int = 0            # 0 none, 1 single prime, 2 double prime
    disambiguated_by_rule: bool = field(default=False, compare=False)

    def __str__(self) -> str:
        if self.kind == "partition":
            return f"zeta^{_pstr(self.data)}"
        if self.kind == "bipartition":
            a, b = self.data
            return f"zeta^({_pstr(a)},{_pstr(b)})"
        if self.kind == "dpartition":
            a, b, sign = self.data
            core = "{%s,%s}" % (_pstr(a), _pstr(b))
            return core + ("+" if sign > 0 else "-" if sign < 0 else "")
        d, b = self.data
        marks = "" if self.prime == 0 else "'" * self.prime
        return f"phi{marks}{{{d},{b}}}"

    def short(self) -> str:
        return str(self)


def _pstr(p: tuple) -> str:
    if not p:
        return "-"
    items: list[str] = []
    i = 0
    while i < len(p):
        j = i
        while j < len(p) and p[j] == p[i]:
            j += 1
        items.append(f"{p[i]}^{j - i}" if j - i > 1 else str(p[i]))
        i = j
    return "(" + ",".join(items) + ")"


def parse_label(text: str) -> WeylCharacterLabel:
    """Parse the string form produced by WeylCharacterLabel.__str__."""
    t = text.strip()
    if t.startswith("phi"):
        rest = t[3:]
        prime = 0
        while rest.startswith("'"):
            prime += 1
            rest = rest[1:]
        if not (rest.startswith("{") and rest.endswith("}")):
            raise ValueError(f"bad phi label {text!r}")
        d, b = rest[1:-1].split(",")
        return WeylCharacterLabel("phi", (int(d), int(b)), prime=prime)
    if t.startswith("zeta^"):
        body = t[len("zeta^"):]
        if not (body.startswith("(") and body.endswith(")")):
            raise ValueError(f"bad zeta label {text!r}")
        # bipartition bodies look like ((..),(..)) or ((..),-) etc.
        if len(body) > 1 and body[1] in "(-":
            a, b = _split_depth0(body[1:-1])
            return WeylCharacterLabel("bipartition", (_parse_part(a), _parse_part(b)))
        return WeylCharacterLabel("partition", _parse_part(body))
    if t.startswith("{"):
        sign = 0
        core = t
        if core.endswith("+"):
            sign, core = 1, core[:-1]
        elif core.endswith("-") and core.endswith("}-"):
            sign, core = -1, core[:-1]
        a, b = _split_depth0(core[1:-1])
        return WeylCharacterLabel("dpartition", (_parse_part(a), _parse_part(b), sign))
    raise ValueError(f"unrecognized label {text!r}")


def _split_depth0(body: str) -> list[str]:
    depth = 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            return [body[:i], body[i + 1:]]
    raise ValueError(f"no top-level comma in {body!r}")


def _parse_part(s: str) -> tuple[int, ...]:
    s = s.strip()
    if s == "-" or s == "()":
        return ()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    if not s:
        return ()
    out: list[int] = []
    for item in s.split(","):
        if "^" in item:
            v, m = item.split("^")
            out.extend([int(v)] * int(m))
        else:
            out.append(int(item))
    return tuple(sorted(out, reverse=True))


# ---------------------------------------------------------------------------
# integer matrix helpers


def _int_charpoly(M: np.ndarray) -> tuple[int, ...]:
    """Characteristic polynomial of an integer matrix, low degree first."""
    n = M.shape[0]
    A = [[int(x) for x in row] for row in M]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Ak = [row[:] for row in A]
    cs = []
    for k in range(1, n + 1):
        tr = sum(Ak[i][i] for i in range(n))
        if tr % k:
            raise ArithmeticError("charpoly trace division failed")
        ck = -tr // k
        cs.append(ck)
        if k < n:
            B = [[Ak[i][j] + (ck if i == j else 0) for j in range(n)] for i in range(n)]
            Ak = [[sum(A[i][t] * B[t][j] for t in range(n)) for j in range(n)]
                  for i in range(n)]
    for k, ck in enumerate(cs, start=1):
        coeffs[n - k] = ck
    return tuple(coeffs)


def _matrix_order(M: np.ndarray, cap: int = 1000) -> int:
    n = M.shape[0]
    ident = np.eye(n, dtype=np.int64)
    x = M.copy()
    o = 1
    while not np.array_equal(x, ident):
        x = x @ M
        o += 1
        if o > cap:
            raise ArithmeticError("matrix order runaway")
    return o


def _perm_cycle_type(perm: np.ndarray) -> tuple[int, ...]:
    n = len(perm)
    seen = bytearray(n)
    out = []
    for i in range(n):
        if seen[i]:
            continue
        l = 0
        j = i
        while not seen[j]:
            seen[j] = 1
            j = int(perm[j])
            l += 1
        out.append(l)
    return tuple(sorted(out, reverse=True))


def _root_cycle_data(rs: RootSystem, perm: np.ndarray) -> tuple:
    """Cycle type on the roots, refined by root length (long/short split)."""
    lengths = [rs.root_length_sq(i) for i in range(rs.n_roots)]
    by_len: dict[int, list[int]] = {}
    for i, l in enumerate(lengths):
        by_len.setdefault(l, []).append(i)
    if len(by_len) == 1:
        return _perm_cycle_type(perm)
    out = []
    for l in sorted(by_len):
        idx = by_len[l]
        pos = {r: k for k, r in enumerate(idx)}
        sub = np.array([pos[int(perm[r])] for r in idx], dtype=np.int64)
        out.append((l, _perm_cycle_type(sub)))
    return tuple(out)


def root_pairing_profile(rs: RootSystem, M: np.ndarray, order: int) -> tuple:
    """Multiset of per-root pairing vectors ((r, w r), ..., (r, w^{o-1} r)).

    A conjugation invariant much finer than the cycle type on roots: any
    u in W relabels the roots isometrically, so the multiset of pairing
    sequences is constant on conjugacy classes.
    """
    B = rs.basis.astype(np.int64)                      # roots in the simple basis
    sc = np.array(rs.datum.simple_coords, dtype=np.int64)
    gram = sc @ sc.T
    BG = B @ gram
    prof = np.empty((B.shape[0], max(order - 1, 0)), dtype=np.int64)
    img = B
    for k in range(1, order):
        img = img @ M.T
        prof[:, k - 1] = (BG * img).sum(axis=1)
    return tuple(sorted(map(tuple, prof.tolist())))


def _sign_from_perm(perm: np.ndarray, n_pos: int) -> int:
    return -1 if int((perm[:n_pos] >= n_pos).sum()) % 2 else 1


# ---------------------------------------------------------------------------
# labeled tables


@dataclass(frozen=True)
class ClassGeometry:
    """Reflection-representation data of one conjugacy class."""
    order: int
    size: int
    matrix: np.ndarray            # rank x rank, simple-root basis
    charpoly: tuple[int, ...]
    cycle_type: tuple            # on the roots, refined by root length
    word: Optional[tuple[int, ...]] = None


class LabeledWeylTable:
    """Character table of a Weyl group with standard labels and class
    geometry; may be backed by a live group or by a shipped file."""

    def __init__(self, datum: CartanDatum, rootsystem: RootSystem,
                 table: CharacterTable, labels: Sequence[WeylCharacterLabel],
                 geometry: Sequence[ClassGeometry], source: str,
                 weyl: Optional["WeylGroup"] = None):
        self.datum = datum
        self.rootsystem = rootsystem
        self.table = table
        self.labels = tuple(labels)
        self.geometry = tuple(geometry)
        self.source = source
        self.weyl = weyl
        self._bvals: Optional[tuple[int, ...]] = None
        self._fp_depth: Optional[int] = None
        self._fp_map: Optional[dict] = None

    # -- invariants -------------------------------------------------------
    def b_invariants(self) -> tuple[int, ...]:
        if self._bvals is None:
            self._bvals = _b_invariants(self)
        return self._bvals

    def label_index(self, label: WeylCharacterLabel | str) -> int:
        if isinstance(label, str):
            label = parse_label(label)
        for i, l in enumerate(self.labels):
            if l == label:
                return i
        raise KeyError(f"no character labeled {label}")

    def values_rational(self) -> np.ndarray:
        return np.array([[int(v.rational()) for v in row]
                         for row in self.table.rows], dtype=np.int64)

    # -- fingerprints for fusion -------------------------------------------
    def _fingerprint(self, M: np.ndarray, depth: int):
        rs = self.rootsystem
        perm = rs.matrix_root_perm(M)
        order = _matrix_order(M)
        fp = (order, _int_charpoly(M), _root_cycle_data(rs, perm))
        if depth == 0:
            return fp
        if depth == 1:
            extras = []
            for p in (2, 3, 5, 7):
                Mp = np.linalg.matrix_power(M, p)
                pe = rs.matrix_root_perm(Mp)
                extras.append((_int_charpoly(Mp), _root_cycle_data(rs, pe)))
            return (fp, tuple(extras))
        return (fp, root_pairing_profile(rs, M, order))

    def fingerprint_map(self) -> tuple[dict, int]:
        """Injective map fingerprint -> class index, with escalation depth."""
        if self._fp_map is not None:
            return self._fp_map, self._fp_depth
        for depth in (0, 1, 2):
            fps = {}
            ok = True
            for ci, g in enumerate(self.geometry):
                fp = self._fingerprint(g.matrix, depth)
                if fp in fps:
                    ok = False
                    break
                fps[fp] = ci
            if ok:
                self._fp_map, self._fp_depth = fps, depth
                return fps, depth
        raise ArithmeticError(
            f"class fingerprints of {self.datum.name} are not injective")

    def class_of_matrix(self, M: np.ndarray) -> int:
        fps, depth = self.fingerprint_map()
        fp = self._fingerprint(M, depth)
        if fp not in fps:
            raise KeyError("matrix does not match any class fingerprint")
        return fps[fp]

    # -- io -----------------------------------------------------------------
    def to_text(self) -> str:
        infos = []
        for ci, g in enumerate(self.geometry):
            infos.append(ClassInfo(label=f"c{ci}", size=g.size,
                                   element_order=g.order, word=g.word))
        tab = CharacterTable(infos, self.table.rows, self.table.order,
                             self.table.exponent, name=f"weyl_{self.datum.name.lower()}")
        lines = tab.to_text().splitlines()
        out = [lines[0]]
        out.append("labels " + " ".join(str(l).replace(" ", "") for l in self.labels))
        out.extend(lines[1:])
        return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# live Weyl groups


class WeylGroup:
    """Enumerated Weyl group acting on its root system."""

    def __init__(self, datum: CartanDatum, size_cap: int = 5_000_000):
        self.datum = datum
        self.rootsystem = RootSystem(datum)
        if datum.weyl_order() > size_cap:
            from .groups import SizeCapExceeded
            raise SizeCapExceeded(
                f"|W({datum.name})| = {datum.weyl_order()} exceeds cap {size_cap}; "
                "use the shipped table data instead")
        self.group = FiniteGroup(PermKind(self.rootsystem.n_roots),
                                 self.rootsystem.simple_perms,
                                 name=f"W({datum.name})")
        if self.group.order != datum.weyl_order():
            raise ArithmeticError("enumerated Weyl group has wrong order")

    @property
    def order(self) -> int:
        return self.group.order

    def n_positive_roots(self) -> int:
        return self.rootsystem.n_pos

    def simple_reflection(self, node: int) -> np.ndarray:
        """Root permutation of s_node (1-based node index)."""
        return np.asarray(self.group.generators[node - 1])

    def class_geometry(self) -> list[ClassGeometry]:
        out = []
        rs = self.rootsystem
        for c in self.group.conjugacy_classes():
            perm = np.asarray(c.rep, dtype=np.int64)
            M = rs.reflection_matrix(perm)
            out.append(ClassGeometry(order=c.element_order, size=c.size,
                                     matrix=M, charpoly=_int_charpoly(M),
                                     cycle_type=_root_cycle_data(rs, perm)))
        return out

    def sign_of_classes(self) -> list[int]:
        rs = self.rootsystem
        return [_sign_from_perm(np.asarray(c.rep, dtype=np.int64), rs.n_pos)
                for c in self.group.conjugacy_classes()]

    def parabolic_subgroup(self, nodes: Sequence[int]) -> FiniteGroup:
        """Subgroup generated by the simple reflections at `nodes` (1-based)."""
        gens = [self.group.generators[i - 1] for i in nodes]
        if not nodes:
            return self.group.subgroup([np.asarray(self.group.kind.identity_row())],
                                       name="W_empty")
        return self.group.subgroup(gens, name=f"W_I{tuple(nodes)}")


# ---------------------------------------------------------------------------
# table construction with labels


_table_cache: dict[str, LabeledWeylTable] = {}


def weyl_table(type_symbol: str, rank: int = 0,
               verify: bool = True) -> LabeledWeylTable:
    """Labeled character table of W(type), computed live via Dixon."""
    datum = cartan_datum(type_symbol, rank)
    key = datum.name
    if key in _table_cache:
        return _table_cache[key]
    W = WeylGroup(datum)
    table = character_table(W.group, verify=verify, name=f"weyl_{datum.name.lower()}")
    geometry = W.class_geometry()
    labels = _label_rows(datum, W, table, geometry)
    words = _words_for_group(W.group)
    geometry = [ClassGeometry(g.order, g.size, g.matrix, g.charpoly, g.cycle_type, w)
                for g, w in zip(geometry, words)]
    out = LabeledWeylTable(datum, W.rootsystem, table, labels, geometry,
                           source="computed", weyl=W)
    _table_cache[key] = out
    return out


def _label_rows(datum: CartanDatum, W: Optional[WeylGroup],
                table: CharacterTable,
                geometry: Sequence[ClassGeometry]) -> list[WeylCharacterLabel]:
    if not datum.is_irreducible():
        raise ValueError("labels only implemented for irreducible types")
    fam = datum.name[0]
    if fam == "A":
        return _label_type_a(datum, table, geometry)
    if fam in ("B", "C"):
        return _label_type_bc(datum, table, geometry)
    if fam == "D":
        return _label_type_d(datum, table, geometry)
    return _label_exceptional(datum, table, geometry)


def _label_type_a(datum, table, geometry) -> list[WeylCharacterLabel]:
    d = datum.rank + 1
    # classes <-> cycle types via the reflection charpoly
    type_of_class: list[symchar.Partition] = []
    for g in geometry:
        cand = [mu for mu in symchar.partitions(d)
                if _a_charpoly(mu) == g.charpoly]
        if len(cand) != 1:
            raise ArithmeticError("ambiguous cycle type in type A")
        type_of_class.append(cand[0])
    out: list[Optional[WeylCharacterLabel]] = [None] * table.n_classes
    val_rows = {tuple(int(v.rational()) for v in row): i
                for i, row in enumerate(table.rows)}
    for lam in symchar.partitions(d):
        vec = tuple(symchar.symmetric_character(lam, mu) for mu in type_of_class)
        out[val_rows[vec]] = WeylCharacterLabel("partition", lam)
    assert all(l is not None for l in out)
    return out  # type: ignore[return-value]


def _a_charpoly(mu: symchar.Partition) -> tuple[int, ...]:
    # charpoly on the (d-1)-dim reflection representation:
    # prod_i (x^{mu_i} - 1) / (x - 1)
    poly = [1]
    for part in mu:
        factor = [-1] + [0] * (part - 1) + [1]
        poly = _poly_mul(poly, factor)
    for _ in range(1):
        pass
    poly = _poly_exact_div(poly, [-1, 1])
    return tuple(poly)


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[k + len(den) - 1], den[-1])
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[k] = q
        for i, dc in enumerate(den):
            num[k + i] -= q * dc
    if any(num[: len(den) - 1]):
        raise ArithmeticError("nonzero remainder")
    return out


def _signed_type_of_matrix(datum: CartanDatum, M: np.ndarray) -> symchar.Bipartition:
    """Signed cycle type of a type-B/C/D element from its basis matrix."""
    A = np.array(datum.simple_coords, dtype=np.int64).T  # columns = simples
    img = A @ M          # columns = coords of images of simples
    d = A.shape[0]
    # solve Me @ A = img, i.e. A^T Me^T = img^T
    At = [[Fraction(int(A[j, i])) for j in range(d)] for i in range(d)]
    MeT = _frac_solve_right(At, [[Fraction(int(img[j, i])) for j in range(d)]
                                 for i in range(d)])
    Me = [[MeT[j][i] for j in range(d)] for i in range(d)]
    sigma = [-1] * d
    eps = [0] * d
    for j in range(d):
        col = [Me[i][j] for i in range(d)]
        nz = [i for i, v in enumerate(col) if v]
        if len(nz) != 1 or abs(col[nz[0]]) != 1:
            raise ArithmeticError("element is not a signed permutation")
        sigma[j] = nz[0]
        eps[j] = 1 if col[nz[0]] > 0 else -1
    pos, neg = [], []
    seen = [False] * d
    for s in range(d):
        if seen[s]:
            continue
        l, sign, j = 0, 1, s
        while not seen[j]:
            seen[j] = True
            sign *= eps[j]
            j = sigma[j]
            l += 1
        (pos if sign > 0 else neg).append(l)
    return (tuple(sorted(pos, reverse=True)), tuple(sorted(neg, reverse=True)))


def _frac_solve_right(A: list[list[Fraction]], B: list[list[Fraction]]):
    """Solve A X = B exactly (A square invertible)."""
    n = len(A)
    aug = [A[i][:] + B[i][:] for i in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def _label_type_bc(datum, table, geometry) -> list[WeylCharacterLabel]:
    d = datum.rank
    types = [_signed_type_of_matrix(datum, g.matrix) for g in geometry]
    out: list[Optional[WeylCharacterLabel]] = [None] * table.n_classes
    val_rows = {tuple(int(v.rational()) for v in row): i
                for i, row in enumerate(table.rows)}
    for lab in symchar.bipartitions(d):
        vec = tuple(symchar.hyperoctahedral_character(lab, t) for t in types)
        out[val_rows[vec]] = WeylCharacterLabel("bipartition", lab)
    assert all(l is not None for l in out)
    return out  # type: ignore[return-value]


def _label_type_d(datum, table, geometry) -> list[WeylCharacterLabel]:
    d = datum.rank
    types = [_signed_type_of_matrix(datum, g.matrix) for g in geometry]
    rows_int = [tuple(int(v.rational()) for v in row) for row in table.rows]
    val_rows = {r: i for i, r in enumerate(rows_int)}
    out: list[Optional[WeylCharacterLabel]] = [None] * table.n_classes
    seen_pairs = set()
    for alpha, beta in symchar.bipartitions(d):
        key = tuple(sorted((alpha, beta)))
        if key in seen_pairs:
            continue
        seen_pairs.add(key)
        vec = tuple(symchar.hyperoctahedral_character((alpha, beta), t) for t in types)
        if alpha != beta:
            i = val_rows[vec]
            a, b = sorted((alpha, beta), key=lambda p: (sum(p), p))
            out[i] = WeylCharacterLabel("dpartition", (a, b, 0))
        else:
            halves = [i for i, r in enumerate(rows_int)
                      if 2 * r[table.identity_class_index()] == vec[table.identity_class_index()]]
            pair = None
            for x in halves:
                for y in halves:
                    if x < y and all(rows_int[x][c] + rows_int[y][c] == vec[c]
                                     for c in range(len(vec))):
                        if pair is not None:
                            raise ArithmeticError("split pair is ambiguous")
                        pair = (x, y)
            if pair is None:
                raise ArithmeticError("no split pair found for equal bipartition")
            x, y = pair
            plus, minus = (x, y) if rows_int[x] > rows_int[y] else (y, x)
            out[plus] = WeylCharacterLabel("dpartition", (alpha, alpha, 1))
            out[minus] = WeylCharacterLabel("dpartition", (alpha, alpha, -1))
    assert all(l is not None for l in out)
    return out  # type: ignore[return-value]


def _label_exceptional(datum, table, geometry) -> list[WeylCharacterLabel]:
    stub = LabeledWeylTable(datum, RootSystem(datum), table,
                            [WeylCharacterLabel("phi", (0, 0))] * table.n_classes,
                            geometry, source="partial")
    bvals = _b_invariants(stub)
    pairs: dict[tuple[int, int], list[int]] = {}
    for i in range(table.n_classes):
        pairs.setdefault((table.degrees[i], bvals[i]), []).append(i)
    out: list[Optional[WeylCharacterLabel]] = [None] * table.n_classes
    for (deg, b), rows in sorted(pairs.items()):
        if len(rows) == 1:
            out[rows[0]] = WeylCharacterLabel("phi", (deg, b))
            continue
        if len(rows) > 2:
            raise ArithmeticError("more than two characters share (degree, b)")
        ordered = _disambiguate_phi_pair(datum, stub, rows)
        out[ordered[0]] = WeylCharacterLabel("phi", (deg, b), prime=1,
                                             disambiguated_by_rule=True)
        out[ordered[1]] = WeylCharacterLabel("phi", (deg, b), prime=2,
                                             disambiguated_by_rule=True)
    assert all(l is not None for l in out)
    return out  # type: ignore[return-value]


def _disambiguate_phi_pair(datum, stub: LabeledWeylTable,
                           rows: list[int]) -> list[int]:
    """Deterministic prime assignment for a (degree, b) collision.

    G2 follows the convention pinned by the induction table: the double
    prime goes to the character appearing in the induction of the trivial
    character from the long-root A1 parabolic.  Elsewhere the occurrence
    vector across maximal parabolics (node order) decides, lexicographically
    smaller vector first.
    """
    if datum.name == "G2":
        rs = stub.rootsystem
        long_nodes, _ = rs.long_short_nodes()
        mults = parabolic_induction_multiplicities(
            stub, [long_nodes[0] + 1], "trivial")
        a, b = rows
        if mults[a] == 1 and mults[b] == 0:
            return [b, a]
        if mults[b] == 1 and mults[a] == 0:
            return [a, b]
        raise ArithmeticError("G2 prime rule did not separate the pair")
    vecs = {i: [] for i in rows}
    for char in ("trivial", "sign"):
        for drop in range(1, datum.rank + 1):
            nodes = [k for k in range(1, datum.rank + 1) if k != drop]
            mults = parabolic_induction_multiplicities(stub, nodes, char)
            for i in rows:
                vecs[i].append(mults[i])
    if len({tuple(v) for v in vecs.values()}) == len(rows):
        return sorted(rows, key=lambda i: tuple(vecs[i]))
    # occurrence vectors tied: fall back to the canonical row order, which
    # is value-based and deterministic
    return sorted(rows)


# ---------------------------------------------------------------------------
# b-invariants via Molien series


def _b_invariants(tab: LabeledWeylTable) -> tuple[int, ...]:
    table = tab.table
    geometry = tab.geometry
    n_pos = tab.rootsystem.n_pos
    rank = tab.datum.rank
    rows = [[v.rational() for v in row] for row in table.rows]
    sizes = [g.size for g in geometry]
    # det(1 - t M) = reversed charpoly; h-series by linear recurrence
    # det(I - tM) = t^rank det((1/t)I - M): coefficient of t^k is cp[rank-k]
    rev = [[int(g.charpoly[rank - k]) for k in range(rank + 1)] for g in geometry]
    h = [[1] for _ in geometry]
    out = [0] * table.n_classes
    remaining = set(range(table.n_classes))
    k = 0
    while remaining and k <= n_pos:
        for i in list(remaining):
            tot = sum(sizes[c] * rows[i][c] * h[c][k] for c in range(len(geometry)))
            val = Fraction(tot, table.order)
            if val.denominator != 1 or val < 0:
                raise ArithmeticError("Molien inner product not a nonneg integer")
            if val > 0:
                out[i] = k
                remaining.discard(i)
        k += 1
        for c in range(len(geometry)):
            acc = 0
            for j in range(1, min(k, rank) + 1):
                acc -= rev[c][j] * h[c][k - j]
            h[c].append(acc)
    if remaining:
        raise ArithmeticError("some characters missing from all symmetric powers")
    return tuple(out)


# ---------------------------------------------------------------------------
# parabolic induction


def _sub_class_data(big: LabeledWeylTable, nodes: Sequence[int]):
    """Classes of the parabolic W_I: (size, sign, big class index) triples."""
    nodes = sorted(nodes)
    if not nodes:
        id_class = big.table.identity_class_index()
        return [(1, 1, id_class)], 1
    if big.weyl is not None:
        W = big.weyl
        sub = W.parabolic_subgroup(nodes)
        fusion = W.group.fuse_classes_from(sub)
        rs = W.rootsystem
        out = []
        for d, c in enumerate(sub.conjugacy_classes()):
            sgn = _sign_from_perm(np.asarray(c.rep, dtype=np.int64), rs.n_pos)
            out.append((c.size, sgn, fusion[d]))
        return out, sub.order
    # file-backed: enumerate the sub-Weyl abstractly, map words into the
    # big root system and fuse through class fingerprints
    sub_datum = subdatum(big.datum, [n - 1 for n in nodes])
    subsys = RootSystem(sub_datum)
    subgroup = FiniteGroup(PermKind(subsys.n_roots), subsys.simple_perms,
                           name=f"W({sub_datum.name})")
    words = _words_for_group(subgroup)
    out = []
    for d, c in enumerate(subgroup.conjugacy_classes()):
        word_local = words[d]
        word_big = tuple(nodes[letter - 1] for letter in word_local)
        M = big.rootsystem.word_matrix(word_big)
        ci = big.class_of_matrix(M)
        sgn = -1 if len(word_big) % 2 else 1
        out.append((c.size, sgn, ci))
    return out, subgroup.order


def _words_for_group(G: FiniteGroup) -> list[tuple[int, ...]]:
    n = G.order
    parent = np.full(n, -1, dtype=np.int64)
    letter = np.full(n, -1, dtype=np.int64)
    id_idx = G.identity_index()
    parent[id_idx] = id_idx
    frontier = np.array([id_idx], dtype=np.int64)
    while frontier.size:
        new = []
        for gi, g in enumerate(G.generators):
            nxt = G.lookup_rows(G.kind.batch_mul(G.element_rows[frontier], g))
            mask = parent[nxt] < 0
            tgt = nxt[mask]
            tgt, first = np.unique(tgt, return_index=True)
            src = frontier[mask][first]
            keep = parent[tgt] < 0
            tgt, src = tgt[keep], src[keep]
            parent[tgt] = src
            letter[tgt] = gi
            new.append(tgt)
        frontier = np.concatenate(new) if new else np.empty(0, dtype=np.int64)
    words = []
    for c in G.conjugacy_classes():
        i = G.index_of(np.asarray(c.rep))
        w: list[int] = []
        while i != id_idx:
            w.append(int(letter[i]) + 1)
            i = int(parent[i])
        words.append(tuple(reversed(w)))
    return words


def parabolic_induction_multiplicities(big: LabeledWeylTable,
                                       nodes: Sequence[int],
                                       character: str = "trivial") -> list[int]:
    """Multiplicity of each irreducible of W in Ind_{W_I}^W(1) or of the
    sign character of W_I; `nodes` lists 1-based simple nodes of I."""
    if character not in ("trivial", "sign"):
        raise ValueError("character must be 'trivial' or 'sign'")
    data, sub_order = _sub_class_data(big, nodes)
    table = big.table
    out = []
    for i in range(table.n_classes):
        acc = Fraction(0)
        for size, sgn, ci in data:
            v = table.rows[i][ci].rational()
            if character == "sign":
                v = v * sgn
            acc += size * v
        m = acc / sub_order
        if m.denominator != 1 or m < 0:
            raise ArithmeticError("induction multiplicity not a nonneg integer")
        out.append(int(m))
    index = table.order // sub_order
    if sum(m * d for m, d in zip(out, table.degrees)) != index:
        raise ArithmeticError("induced degree does not match the index")
    return out


def induction_decomposition(big: LabeledWeylTable, nodes: Sequence[int],
                            character: str = "trivial"):
    mults = parabolic_induction_multiplicities(big, nodes, character)
    return [(big.labels[i], m) for i, m in enumerate(mults) if m]


# ---------------------------------------------------------------------------
# diagram automorphisms


def diagram_automorphism(datum: CartanDatum, spec) -> tuple[int, ...]:
    """Node permutation (0-based tuple) from a name or explicit mapping."""
    r = datum.rank
    if isinstance(spec, (tuple, list)):
        perm = tuple(int(x) for x in spec)
    elif spec in ("id", "identity", None):
        perm = tuple(range(r))
    elif spec == "graph":
        if datum.name.startswith("A"):
            perm = tuple(r - 1 - i for i in range(r))
        elif datum.name == "E6":
            perm = (5, 1, 4, 3, 2, 0)
        elif datum.name.startswith("D"):
            perm = (1, 0) + tuple(range(2, r))
        else:
            raise InvalidAutomorphism(f"no graph automorphism preset for {datum.name}")
    elif spec == "triality":
        if datum.name != "D4":
            raise InvalidAutomorphism("triality needs type D4")
        perm = (1, 3, 2, 0)
    else:
        raise InvalidAutomorphism(f"unknown automorphism spec {spec!r}")
    for i in range(r):
        for j in range(r):
            if datum.cartan[perm[i]][perm[j]] != datum.cartan[i][j]:
                raise InvalidAutomorphism("permutation does not preserve the Cartan matrix")
    return perm


def diagram_root_permutation(rs: RootSystem, node_perm: Sequence[int]) -> np.ndarray:
    out = np.empty(rs.n_roots, dtype=np.int64)
    for i, v in enumerate(rs.roots):
        w = [0] * len(v)
        for k, c in enumerate(v):
            w[node_perm[k]] = c
        out[i] = rs.index[tuple(w)]
    return out


def diagram_character_permutation(tab: LabeledWeylTable,
                                  node_perm: Sequence[int]) -> list[int]:
    """Permutation of character rows induced by a diagram automorphism."""
    if tab.weyl is None:
        raise MissingTableData("needs a live Weyl group")
    W = tab.weyl
    G = W.group
    iota = diagram_root_permutation(W.rootsystem, node_perm)
    iota_inv = np.empty_like(iota)
    iota_inv[iota] = np.arange(len(iota))
    class_map = []
    for c in G.conjugacy_classes():
        conj = iota[np.asarray(c.rep, dtype=np.int64)][iota_inv]
        class_map.append(G.class_index_of_row(conj.astype(G.kind.dtype)))
    inv_map = [0] * len(class_map)
    for a, b in enumerate(class_map):
        inv_map[b] = a
    row_keys = {tuple(v.sort_key() for v in row): i
                for i, row in enumerate(tab.table.rows)}
    out = []
    for i, row in enumerate(tab.table.rows):
        moved = tuple(row[inv_map[c]].sort_key() for c in range(len(class_map)))
        out.append(row_keys[moved])
    return out


# ---------------------------------------------------------------------------
# shipped data


def load_weyl_table_text(text: str, expected_type: str) -> LabeledWeylTable:
    """Parse and validate a shipped Weyl table (class words required)."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    label_line = None
    body = []
    for ln in lines:
        if ln.startswith("labels "):
            label_line = ln
        else:
            body.append(ln)
    table = CharacterTable.from_text("\n".join(body))
    datum = cartan_datum(expected_type)
    if table.order != datum.weyl_order():
        raise ValueError("table order does not match the Weyl group order")
    rs = RootSystem(datum)
    geometry = []
    for c in table.classes:
        if c.word is None:
            raise ValueError("shipped tables must carry class words")
        M = rs.word_matrix(c.word)
        o = _matrix_order(M)
        if o != c.element_order:
            raise ValueError("class word order disagrees with declared order")
        perm = rs.matrix_root_perm(M)
        geometry.append(ClassGeometry(order=o, size=c.size, matrix=M,
                                      charpoly=_int_charpoly(M),
                                      cycle_type=_root_cycle_data(rs, perm),
                                      word=c.word))
    if sum(g.size for g in geometry) != table.order:
        raise ValueError("class sizes do not sum to the group order")
    table.check_degree_sum()
    table.check_column_orthogonality()
    if label_line is None:
        raise ValueError("shipped tables must carry a labels line")
    labels = [parse_label(tok) for tok in label_line.split()[1:]]
    if len(labels) != table.n_classes:
        raise ValueError("label count mismatch")
    out = LabeledWeylTable(datum, rs, table, labels, geometry, source="file")
    for i, lab in enumerate(labels):
        if lab.kind == "phi" and lab.data[0] != table.degrees[i]:
            raise ValueError("phi label degree disagrees with the table")
    bv = out.b_invariants()
    for i, lab in enumerate(labels):
        if lab.kind == "phi" and lab.data[1] != bv[i]:
            raise ValueError("phi label b-invariant disagrees with the table")
    out.fingerprint_map()
    return out


def load_shipped_table(name: str) -> LabeledWeylTable:
    """Load data/weyl_<name>.ct from the package data directory."""
    import os
    key = f"file:{name}"
    if key in _table_cache:
        return _table_cache[key]
    base = os.environ.get("EIGENONE_DATA")
    if base:
        path = os.path.join(base, f"weyl_{name.lower()}.ct")
    else:
        path = os.path.join(os.path.dirname(__file__), "data",
                            f"weyl_{name.lower()}.ct")
    if not os.path.exists(path):
        raise MissingTableData(
            f"missing table file {path}; set EIGENONE_DATA or regenerate "
            "with tools/make_weyl_table.py")
    with open(path, "r", encoding="utf-8") as fh:
        out = load_weyl_table_text(fh.read(), name.upper())
    _table_cache[key] = out
    return out
