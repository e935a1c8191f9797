"""Exact character tables of finite groups (Dixon-Schneider algorithm),
class functions, induction/restriction, Frobenius-Schur indicators and
eigenvalue-multiplicity extraction.

All arithmetic is exact: eigenvector computation happens over a prime
field F_ell with ell = 1 (mod exponent), and values are lifted to
cyclotomic integers through eigenvalue-multiplicity counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Optional, Sequence

import numpy as np

from .cyclotomic import Cyclotomic
from .groups import FiniteGroup, GroupMismatch, NotASubgroup, row_order


class NoSuitablePrime(RuntimeError):
    pass


class NotIrreducible(ValueError):
    pass


class NotACharacter(ValueError):
    pass


# ---------------------------------------------------------------------------
# table containers


@dataclass(frozen=True)
class ClassInfo:
    """Summary of one conjugacy class as stored in table files."""
    label: str
    size: int
    element_order: int
    word: Optional[tuple[int, ...]] = None


class CharacterTable:
    """Irreducible characters of a finite group, rows in canonical order."""

    def __init__(self, classes: Sequence[ClassInfo],
                 rows: Sequence[Sequence[Cyclotomic]],
                 order: int, exponent: int, name: str = "",
                 group: Optional[FiniteGroup] = None):
        self.classes = tuple(classes)
        self.rows = tuple(tuple(v for v in row) for row in rows)
        self.order = order
        self.exponent = exponent
        self.name = name
        self.group = group
        if len(self.rows) != len(self.classes):
            raise ValueError("character count must equal class count")
        self.degrees = tuple(row[self.identity_class_index()].integer()
                             for row in self.rows)

    # -- basic structure -------------------------------------------------
    def identity_class_index(self) -> int:
        for i, c in enumerate(self.classes):
            if c.element_order == 1:
                return i
        raise ValueError("no identity class present")

    @property
    def n_classes(self) -> int:
        return len(self.classes)

    def irreducible(self, i: int) -> "ClassFunction":
        return ClassFunction(self, self.rows[i])

    def irreducibles(self) -> list["ClassFunction"]:
        return [self.irreducible(i) for i in range(self.n_classes)]

    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    def centralizer_orders(self) -> tuple[int, ...]:
        return tuple(self.order // c.size for c in self.classes)

    def row_index(self, values: Sequence[Cyclotomic]) -> int:
        key = tuple(v.sort_key() for v in values)
        for i, row in enumerate(self.rows):
            if tuple(v.sort_key() for v in row) == key:
                return i
        raise ValueError("no irreducible row with these values")

    def conjugate_row_map(self) -> tuple[int, ...]:
        """Index of the complex-conjugate character per row."""
        lookup = {tuple(v.sort_key() for v in row): i
                  for i, row in enumerate(self.rows)}
        out = []
        for row in self.rows:
            key = tuple(v.conjugate().sort_key() for v in row)
            out.append(lookup[key])
        return tuple(out)

    def real_flags(self) -> tuple[bool, ...]:
        return tuple(all(v.is_real() for v in row) for row in self.rows)

    def trivial_index(self) -> int:
        one = Cyclotomic.one()
        for i, row in enumerate(self.rows):
            if all(v == one for v in row):
                return i
        raise ValueError("trivial character missing")

    # -- exact checks ------------------------------------------------------
    def check_row_orthogonality(self) -> None:
        for i in range(self.n_classes):
            a = self.irreducible(i)
            for j in range(i, self.n_classes):
                got = inner_product(a, self.irreducible(j))
                want = Cyclotomic.one() if i == j else Cyclotomic.zero()
                if got != want:
                    raise ArithmeticError(
                        f"row orthogonality fails at ({i},{j}): {got!r}")

    def check_column_orthogonality(self) -> None:
        ints = all(v.is_rational() for row in self.rows for v in row)
        if ints:
            m = np.array([[int(v.rational()) for v in row] for row in self.rows],
                         dtype=np.int64)
            gram = m.T @ m
            cents = np.diag(np.array(self.centralizer_orders(), dtype=np.int64))
            if not np.array_equal(gram, cents):
                raise ArithmeticError("column orthogonality fails")
            return
        for x in range(self.n_classes):
            for y in range(x, self.n_classes):
                s = Cyclotomic.zero()
                for row in self.rows:
                    s = s + row[x] * row[y].conjugate()
                want = (Cyclotomic.from_rational(self.order // self.classes[x].size)
                        if x == y else Cyclotomic.zero())
                if s != want:
                    raise ArithmeticError(
                        f"column orthogonality fails at ({x},{y})")

    def check_degree_sum(self) -> None:
        if sum(d * d for d in self.degrees) != self.order:
            raise ArithmeticError("sum of squared degrees != group order")

    # -- text format --------------------------------------------------------
    def to_text(self) -> str:
        lines = [f"group {self.name or 'g'} order {self.order} exponent {self.exponent}"]
        for c in self.classes:
            line = f"class {c.label} size {c.size} order {c.element_order}"
            if c.word is not None:
                w = ".".join(str(i) for i in c.word) if c.word else "e"
                line += f" word {w}"
            lines.append(line)
        for i, row in enumerate(self.rows):
            lines.append(f"chi {i} deg {self.degrees[i]}")
            lines.append(" ".join(v.token() for v in row))
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "CharacterTable":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        head = lines[0].split()
        if head[0] != "group":
            raise ValueError("table file must start with a group line")
        name = head[1]
        order = int(head[head.index("order") + 1])
        exponent = int(head[head.index("exponent") + 1])
        classes: list[ClassInfo] = []
        rows: list[tuple[Cyclotomic, ...]] = []
        i = 1
        while i < len(lines) and lines[i].startswith("class "):
            t = lines[i].split()
            label = t[1]
            size = int(t[t.index("size") + 1])
            eo = int(t[t.index("order") + 1])
            word: Optional[tuple[int, ...]] = None
            if "word" in t:
                w = t[t.index("word") + 1]
                word = () if w == "e" else tuple(int(x) for x in w.split("."))
            classes.append(ClassInfo(label, size, eo, word))
            i += 1
        declared: list[int] = []
        while i < len(lines):
            if not lines[i].startswith("chi "):
                raise ValueError(f"unexpected line in table file: {lines[i]!r}")
            declared.append(int(lines[i].split()[3]))
            i += 1
            vals = tuple(Cyclotomic.parse_token(tok) for tok in lines[i].split())
            if len(vals) != len(classes):
                raise ValueError("value count mismatch in table file")
            rows.append(vals)
            i += 1
        tab = CharacterTable(classes, rows, order, exponent, name=name)
        if list(tab.degrees) != declared:
            raise ValueError("declared degrees disagree with identity values")
        return tab


@dataclass(frozen=True)
class ClassFunction:
    """Class function bound to a character table's class list."""

    table: CharacterTable
    values: tuple[Cyclotomic, ...]

    def __post_init__(self):
        if len(self.values) != self.table.n_classes:
            raise ValueError("value count must equal class count")

    def __call__(self, ci: int) -> Cyclotomic:
        return self.values[ci]

    @property
    def degree(self) -> Cyclotomic:
        return self.values[self.table.identity_class_index()]

    def degree_int(self) -> int:
        return self.degree.integer()

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.values)

    def conjugate(self) -> "ClassFunction":
        return ClassFunction(self.table, tuple(v.conjugate() for v in self.values))

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        _same_table(self, other)
        return ClassFunction(self.table,
                             tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        _same_table(self, other)
        return ClassFunction(self.table,
                             tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, other) -> "ClassFunction":
        if isinstance(other, ClassFunction):
            _same_table(self, other)
            return ClassFunction(self.table,
                                 tuple(a * b for a, b in zip(self.values, other.values)))
        return ClassFunction(self.table, tuple(v * other for v in self.values))

    def sort_key(self):
        return tuple(v.sort_key() for v in self.values)


def _same_table(a: ClassFunction, b: ClassFunction) -> None:
    if a.table is not b.table:
        raise GroupMismatch("class functions live on different tables")


def inner_product(a: ClassFunction, b: ClassFunction) -> Cyclotomic:
    """(1/|G|) sum over classes of |C| a(C) conj(b(C))."""
    _same_table(a, b)
    t = a.table
    s = Cyclotomic.zero()
    for c, av, bv in zip(t.classes, a.values, b.values):
        s = s + (av * bv.conjugate()) * c.size
    return s / t.order


def decompose(chi: ClassFunction) -> list[tuple[int, int]]:
    """Multiplicities of the table's irreducibles inside chi."""
    t = chi.table
    out = []
    for i in range(t.n_classes):
        m = inner_product(chi, t.irreducible(i))
        q = m.rational()
        if q.denominator != 1 or q < 0:
            raise NotACharacter(f"non-integral multiplicity {q} at row {i}")
        if q:
            out.append((i, int(q)))
    return out


# ---------------------------------------------------------------------------
# modular linear algebra


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def dixon_prime(order: int, exponent: int, search_bound: int = 10**9) -> int:
    """Smallest prime l = 1 mod exponent with l > 2*ceil(sqrt(order))."""
    floor = 2 * (isqrt(order - 1) + 1)
    ell = exponent + 1
    while ell <= floor or not _is_prime(ell):
        ell += exponent
        if ell > search_bound:
            raise NoSuitablePrime(
                f"no prime = 1 mod {exponent} under {search_bound}")
    return ell


def _primitive_root(ell: int) -> int:
    fac = []
    m = ell - 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            fac.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        fac.append(m)
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // q, ell) != 1 for q in fac):
            return g
    raise RuntimeError("no primitive root found")


def _rref_mod(M: np.ndarray, ell: int) -> tuple[np.ndarray, list[int]]:
    A = M % ell
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if A[i, c]:
                piv = i
                break
        if piv is None:
            continue
        A[[r, piv]] = A[[piv, r]]
        A[r] = A[r] * pow(int(A[r, c]), ell - 2, ell) % ell
        mask = A[:, c].copy()
        mask[r] = 0
        A = (A - np.outer(mask, A[r])) % ell
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def _nullspace_mod(M: np.ndarray, ell: int) -> np.ndarray:
    """Columns form a basis of the right nullspace of M over F_ell."""
    n = M.shape[1]
    R, pivots = _rref_mod(M.astype(np.int64), ell)
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for k, fc in enumerate(free):
        basis[fc, k] = 1
        for r, pc in enumerate(pivots):
            basis[pc, k] = (-int(R[r, fc])) % ell
    return basis


def _solve_mod(B: np.ndarray, Y: np.ndarray, ell: int) -> np.ndarray:
    """Solve B @ X = Y for X (B with full column rank) over F_ell."""
    n, k = B.shape
    aug = np.concatenate([B, Y], axis=1).astype(np.int64) % ell
    R, pivots = _rref_mod(aug[:, :], ell)
    if len(pivots) != k or any(p >= k for p in pivots):
        raise ArithmeticError("basis matrix not of full column rank")
    X = R[:k, k:]
    if (R[k:, k:] % ell).any():
        raise ArithmeticError("inconsistent linear system in eigen split")
    return X % ell


def _charpoly_mod(M: np.ndarray, ell: int) -> list[int]:
    """Monic characteristic polynomial coefficients, low degree first."""
    n = M.shape[0]
    A = M % ell
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    Ak = A.copy()
    cs = []
    for k in range(1, n + 1):
        ck = (-int(np.trace(Ak) % ell) * pow(k, ell - 2, ell)) % ell
        cs.append(ck)
        if k < n:
            Ak = (A @ ((Ak + ck * np.eye(n, dtype=np.int64)) % ell)) % ell
    for k, ck in enumerate(cs, start=1):
        coeffs[n - k] = ck % ell
    return coeffs


def _poly_roots_mod(coeffs: list[int], ell: int) -> list[int]:
    xs = np.arange(ell, dtype=np.int64)
    acc = np.zeros(ell, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % ell
    return sorted(int(x) for x in np.nonzero(acc == 0)[0])


# ---------------------------------------------------------------------------
# Dixon-Schneider


def character_table(group: FiniteGroup, verify: bool = True,
                    name: str = "") -> CharacterTable:
    """Compute the exact table of irreducible characters of `group`."""
    classes = group.conjugacy_classes()
    r = len(classes)
    e = group.exponent
    ell = dixon_prime(group.order, e)
    z = pow(_primitive_root(ell), (ell - 1) // e, ell)
    id_class = next(i for i, c in enumerate(classes) if c.element_order == 1)

    # split the class algebra's common eigenvectors over F_ell
    spaces = [np.eye(r, dtype=np.int64)]
    class_order = sorted((c.size, c.index) for c in classes if c.index != id_class)
    for _, ci in class_order:
        if all(B.shape[1] == 1 for B in spaces):
            break
        A = group.class_matrix(ci) % ell
        nxt = []
        for B in spaces:
            if B.shape[1] == 1:
                nxt.append(B)
                continue
            C = _solve_mod(B, (A @ B) % ell, ell)
            for lam in _poly_roots_mod(_charpoly_mod(C, ell), ell):
                N = _nullspace_mod((C - lam * np.eye(C.shape[0], dtype=np.int64)) % ell,
                                   ell)
                if N.shape[1]:
                    nxt.append((B @ N) % ell)
        if sum(B.shape[1] for B in nxt) != r:
            raise ArithmeticError("eigen split lost dimensions")
        spaces = nxt
    if not all(B.shape[1] == 1 for B in spaces):
        raise ArithmeticError("class matrices failed to split all eigenspaces")

    sizes = np.array([c.size for c in classes], dtype=np.int64)
    inv_sizes = np.array([pow(int(s), ell - 2, ell) for s in sizes], dtype=np.int64)
    invclass = np.array([group.inverse_class(j) for j in range(r)], dtype=np.int64)
    powtabs = group.power_class_tables()

    cand_deg = np.arange(1, isqrt(group.order) + 1, dtype=np.int64)
    cand_sq = (cand_deg * cand_deg) % ell

    rows = []
    for B in spaces:
        w = B[:, 0] % ell
        w = w * pow(int(w[id_class]), ell - 2, ell) % ell
        s = int((w * w[invclass] % ell * inv_sizes % ell).sum() % ell)
        d2 = group.order % ell * pow(s, ell - 2, ell) % ell
        hits = cand_deg[cand_sq == d2]
        if hits.size != 1:
            raise ArithmeticError(f"degree not uniquely determined: {hits}")
        d = int(hits[0])
        # chi(g_j) mod ell, then lift through eigenvalue multiplicities
        vbar = d * w % ell * inv_sizes % ell
        values = []
        for j, c in enumerate(classes):
            o = c.element_order
            zo = pow(z, e // o, ell)
            zo_inv = pow(zo, ell - 2, ell)
            inv_o = pow(o, ell - 2, ell)
            terms: dict[int, Fraction] = {}
            for t in range(o):
                acc = 0
                zo_pow = pow(zo_inv, t, ell)
                zz = 1
                for s_ in range(o):
                    acc = (acc + int(vbar[powtabs[j][s_]]) * zz) % ell
                    zz = zz * zo_pow % ell
                m = acc * inv_o % ell
                if m:
                    if m > d:
                        raise ArithmeticError(
                            "eigenvalue multiplicity exceeds the degree")
                    terms[t] = Fraction(m)
            if sum(terms.values()) != d:
                raise ArithmeticError("eigenvalue multiplicities do not sum to degree")
            values.append(Cyclotomic.from_root_sum(o, terms))
        rows.append(values)

    rows.sort(key=lambda row: (row[id_class].integer(),
                               tuple(v.sort_key() for v in row)))
    infos = [ClassInfo(label=f"c{j}", size=c.size, element_order=c.element_order)
             for j, c in enumerate(classes)]
    table = CharacterTable(infos, rows, group.order, e,
                           name=name or group.name, group=group)
    table.check_degree_sum()
    if verify:
        table.check_row_orthogonality()
    return table


# ---------------------------------------------------------------------------
# operations on characters


def class_fusion(group: FiniteGroup, sub: FiniteGroup) -> list[int]:
    """Class index in `group` of each class of `sub` (sub must be contained)."""
    return group.fuse_classes_from(sub)


def induce(group_table: CharacterTable, sub_table: CharacterTable,
           psi: ClassFunction) -> ClassFunction:
    """Frobenius induction from a subgroup's table to the group's."""
    G, H = group_table.group, sub_table.group
    if G is None or H is None:
        raise NotASubgroup("induction needs group-bound tables")
    if psi.table is not sub_table:
        raise GroupMismatch("psi lives on a different table")
    fusion = class_fusion(G, H)
    acc = [Cyclotomic.zero() for _ in range(group_table.n_classes)]
    for d, val in enumerate(psi.values):
        c = fusion[d]
        acc[c] = acc[c] + val * sub_table.classes[d].size
    out = []
    for c, v in enumerate(acc):
        scale = Fraction(G.order, group_table.classes[c].size * H.order)
        out.append(v * scale)
    return ClassFunction(group_table, tuple(out))


def restrict(chi: ClassFunction, sub_table: CharacterTable) -> ClassFunction:
    """Restriction along the class fusion of a subgroup."""
    G, H = chi.table.group, sub_table.group
    if G is None or H is None:
        raise NotASubgroup("restriction needs group-bound tables")
    fusion = class_fusion(G, H)
    return ClassFunction(sub_table, tuple(chi.values[c] for c in fusion))


def frobenius_schur(chi: ClassFunction) -> int:
    """(1/|G|) sum chi(g^2); requires an irreducible character."""
    t = chi.table
    G = t.group
    if G is None:
        raise NotIrreducible("indicator needs a group-bound table")
    nrm = inner_product(chi, chi)
    if nrm != Cyclotomic.one():
        raise NotIrreducible("Frobenius-Schur indicator needs an irreducible")
    powtabs = G.power_class_tables()
    s = Cyclotomic.zero()
    for j, c in enumerate(t.classes):
        sq = powtabs[j][2 % c.element_order]
        s = s + chi.values[sq] * c.size
    v = (s / t.order).rational()
    if v.denominator != 1 or v not in (-1, 0, 1):
        raise NotACharacter(f"indicator value {v} out of range")
    return int(v)


def fixed_multiplicity(chi: ClassFunction, a_row, sign: int = 1) -> int:
    """Multiplicity of eigenvalue `sign` of the image of `a` in a module
    affording chi: (1/|a|) sum_t chi(a^t) sign^t."""
    t = chi.table
    G = t.group
    if G is None:
        raise NotACharacter("needs a group-bound table")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    a = np.asarray(a_row, dtype=G.kind.dtype)
    o = row_order(G.kind, G.kind.canon(a))
    if sign == -1 and o % 2:
        raise ValueError("sign -1 needs an element of even order")
    class_of = G.class_of()
    s = Cyclotomic.zero()
    x = G.kind.identity_row()
    for t_ in range(o):
        ci = int(class_of[G.index_of(x)])
        term = chi.values[ci]
        if sign == -1 and t_ % 2:
            term = -term
        s = s + term
        x = G.kind.mul(x, G.kind.canon(a))
    v = (s / o).rational()
    if v.denominator != 1 or v < 0:
        raise NotACharacter(f"non-integral eigenvalue multiplicity {v}")
    return int(v)


def real_odd_irreducibles(table: CharacterTable) -> list[int]:
    """Rows that are real-valued of odd degree (trivial included)."""
    out = []
    for i in range(table.n_classes):
        if table.degrees[i] % 2 == 1 and all(v.is_real() for v in table.rows[i]):
            out.append(i)
    return out


def regular_character(table: CharacterTable) -> ClassFunction:
    vals = [Cyclotomic.zero()] * table.n_classes
    vals[table.identity_class_index()] = Cyclotomic.from_rational(table.order)
    return ClassFunction(table, tuple(vals))


def permutation_character(group_table: CharacterTable,
                          sub: FiniteGroup) -> ClassFunction:
    """Character of the action of G on cosets of the subgroup `sub`."""
    G = group_table.group
    if G is None:
        raise NotASubgroup("needs a group-bound table")
    fusion = class_fusion(G, sub)
    counts = [0] * group_table.n_classes
    for d, c in enumerate(fusion):
        counts[c] += sub.conjugacy_classes()[d].size
    vals = []
    for c in range(group_table.n_classes):
        q = Fraction(G.order * counts[c],
                     group_table.classes[c].size * sub.order)
        if q.denominator != 1:
            raise ArithmeticError("permutation character must be integral")
        vals.append(Cyclotomic.from_rational(q))
    return ClassFunction(group_table, tuple(vals))
