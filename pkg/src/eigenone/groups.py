"""Concrete finite groups from permutation or prime-field matrix generators.

Elements are stored row-wise in numpy arrays; a group owns its sorted
element table, conjugacy classes and power maps.  All data is immutable
after construction and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import numpy as np

DEFAULT_SIZE_CAP = 10_000_000
_DICT_CAP = 600_000


class SizeCapExceeded(RuntimeError):
    pass


class NotAnAutomorphism(ValueError):
    pass


class ElementNotInGroup(ValueError):
    pass


class NotASubgroup(ValueError):
    pass


class GroupMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# element kinds


class PermKind:
    """Permutations of {0..n-1}; composition (p*q)(i) = p(q(i))."""

    def __init__(self, n: int):
        self.n = n
        self.row_len = n
        if n <= 256:
            self.dtype = np.uint8
        elif n <= 65536:
            self.dtype = np.uint16
        else:
            self.dtype = np.uint32
        self.name = f"perm:{n}"

    def identity_row(self) -> np.ndarray:
        return np.arange(self.n, dtype=self.dtype)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return a[b]

    def batch_mul(self, A: np.ndarray, b: np.ndarray) -> np.ndarray:
        return A[:, b]

    def batch_lmul(self, a: np.ndarray, B: np.ndarray) -> np.ndarray:
        return np.take(a, B)

    def pairwise_mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        return np.take_along_axis(A, B, axis=1)

    def inv(self, a: np.ndarray) -> np.ndarray:
        out = np.empty_like(a)
        out[a] = np.arange(self.n, dtype=a.dtype)
        return out

    def batch_inv(self, A: np.ndarray) -> np.ndarray:
        out = np.empty_like(A)
        rows = np.arange(A.shape[0])[:, None]
        out[rows, A] = np.arange(self.n, dtype=A.dtype)[None, :]
        return out

    def canon(self, a: np.ndarray) -> np.ndarray:
        return a

    def batch_canon(self, A: np.ndarray) -> np.ndarray:
        return A

    def validate(self, a: np.ndarray) -> None:
        if sorted(a.tolist()) != list(range(self.n)):
            raise ValueError(f"not a permutation of {self.n} points")

    def describe_row(self, a: np.ndarray) -> str:
        return _cycle_string(a.tolist())


class MatKind:
    """Invertible d x d matrices over F_p, optionally up to scalars."""

    def __init__(self, p: int, d: int, projective: bool = False):
        if p < 2 or p > 251:
            raise ValueError(f"prime field size {p} out of supported range")
        self.p = p
        self.d = d
        self.projective = projective
        self.row_len = d * d
        self.dtype = np.uint8
        self._inv_table = np.array([0] + [pow(v, p - 2, p) for v in range(1, p)],
                                   dtype=np.int64)
        self.name = f"{'projmatff' if projective else 'matff'}:{p}:{d}"

    def identity_row(self) -> np.ndarray:
        return np.eye(self.d, dtype=self.dtype).reshape(-1)

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        d = self.d
        m = (a.reshape(d, d).astype(np.int64) @ b.reshape(d, d).astype(np.int64)) % self.p
        return self.canon(m.reshape(-1).astype(self.dtype))

    def batch_mul(self, A: np.ndarray, b: np.ndarray) -> np.ndarray:
        d = self.d
        m = (A.reshape(-1, d, d).astype(np.int64) @ b.reshape(d, d).astype(np.int64)) % self.p
        return self.batch_canon(m.reshape(-1, d * d).astype(self.dtype))

    def batch_lmul(self, a: np.ndarray, B: np.ndarray) -> np.ndarray:
        d = self.d
        m = (a.reshape(d, d).astype(np.int64) @ B.reshape(-1, d, d).astype(np.int64)) % self.p
        return self.batch_canon(m.reshape(-1, d * d).astype(self.dtype))

    def pairwise_mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        d = self.d
        m = (A.reshape(-1, d, d).astype(np.int64) @ B.reshape(-1, d, d).astype(np.int64)) % self.p
        return self.batch_canon(m.reshape(-1, d * d).astype(self.dtype))

    def inv(self, a: np.ndarray) -> np.ndarray:
        m = _mat_inverse_mod(a.reshape(self.d, self.d).tolist(), self.p)
        return self.canon(np.array(m, dtype=self.dtype).reshape(-1))

    def batch_inv(self, A: np.ndarray) -> np.ndarray:
        return np.stack([self.inv(row) for row in A])

    def canon(self, a: np.ndarray) -> np.ndarray:
        if not self.projective:
            return a
        return self.batch_canon(a[None, :])[0]

    def batch_canon(self, A: np.ndarray) -> np.ndarray:
        if not self.projective:
            return A
        nz = A != 0
        first = np.argmax(nz, axis=1)
        vals = A[np.arange(A.shape[0]), first].astype(np.int64)
        scal = self._inv_table[vals]
        return ((A.astype(np.int64) * scal[:, None]) % self.p).astype(self.dtype)

    def validate(self, a: np.ndarray) -> None:
        if a.shape != (self.d * self.d,):
            raise ValueError("matrix entry count mismatch")
        if _mat_det_mod(a.reshape(self.d, self.d).tolist(), self.p) == 0:
            raise ValueError("matrix is singular")

    def describe_row(self, a: np.ndarray) -> str:
        return "[" + ";".join(",".join(str(int(x)) for x in row)
                              for row in a.reshape(self.d, self.d)) + "]"


def _cycle_string(p: list[int]) -> str:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) if out else "()"


def _mat_det_mod(m: list[list[int]], p: int) -> int:
    m = [row[:] for row in m]
    d = len(m)
    det = 1
    for c in range(d):
        piv = next((r for r in range(c, d) if m[r][c] % p), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c] % p
        inv = pow(m[c][c], p - 2, p)
        for r in range(c + 1, d):
            f = m[r][c] * inv % p
            if f:
                for k in range(c, d):
                    m[r][k] = (m[r][k] - f * m[c][k]) % p
    return det % p


def _mat_inverse_mod(m: list[list[int]], p: int) -> list[list[int]]:
    d = len(m)
    a = [[m[r][c] % p for c in range(d)] + [1 if r == c else 0 for c in range(d)]
         for r in range(d)]
    for c in range(d):
        piv = next((r for r in range(c, d) if a[r][c]), None)
        if piv is None:
            raise ValueError("matrix not invertible")
        a[c], a[piv] = a[piv], a[c]
        inv = pow(a[c][c], p - 2, p)
        a[c] = [x * inv % p for x in a[c]]
        for r in range(d):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[c])]
    return [row[d:] for row in a]


# ---------------------------------------------------------------------------
# row lookup structures


_HASH_SEED = 0x5EED1E55


def _hash_table(row_len: int) -> np.ndarray:
    rng = np.random.default_rng(_HASH_SEED)
    return rng.integers(0, 2**63, size=(row_len, 256), dtype=np.int64).view(np.uint64)


class _RowIndex:
    """Maps uint8 rows to their position in a fixed row table."""

    def __init__(self, rows: np.ndarray):
        self.rows = rows
        self.tbl = _hash_table(rows.shape[1])
        self.h = self._hash(rows)
        self.order = np.argsort(self.h, kind="stable")
        self.sorted_h = self.h[self.order]

    def _hash(self, rows: np.ndarray) -> np.ndarray:
        acc = np.zeros(rows.shape[0], dtype=np.uint64)
        for j in range(rows.shape[1]):
            acc += self.tbl[j][rows[:, j]]
        return acc

    def lookup(self, Q: np.ndarray) -> np.ndarray:
        hq = self._hash(Q)
        pos = np.searchsorted(self.sorted_h, hq)
        out = np.full(Q.shape[0], -1, dtype=np.int64)
        in_range = pos < len(self.sorted_h)
        cand = np.where(in_range, pos, 0)
        hit = in_range & (self.sorted_h[cand] == hq)
        idx = self.order[cand]
        ok = hit & (self.rows[idx] == Q).all(axis=1)
        out[ok] = idx[ok]
        # rare: hash duplicates, walk forward
        for qi in np.nonzero(hit & ~ok)[0]:
            p = pos[qi]
            while p < len(self.sorted_h) and self.sorted_h[p] == hq[qi]:
                j = self.order[p]
                if (self.rows[j] == Q[qi]).all():
                    out[qi] = j
                    break
                p += 1
        return out


class _DictIndex:
    def __init__(self, rows: np.ndarray):
        self.rows = rows
        self.map = {rows[i].tobytes(): i for i in range(rows.shape[0])}

    def lookup(self, Q: np.ndarray) -> np.ndarray:
        m = self.map
        return np.fromiter((m.get(Q[i].tobytes(), -1) for i in range(Q.shape[0])),
                           dtype=np.int64, count=Q.shape[0])


def _make_index(rows: np.ndarray):
    if rows.dtype == np.uint8 and rows.shape[0] > 50_000:
        return _RowIndex(rows)
    return _DictIndex(rows)


def _dedup_rows(rows: np.ndarray) -> np.ndarray:
    """Deduplicate rows, keeping first occurrences (order not preserved)."""
    return np.unique(rows, axis=0)


# ---------------------------------------------------------------------------
# closure


def _lex_order(rows: np.ndarray) -> np.ndarray:
    """Argsort of rows in lexicographic (entry-wise value) order."""
    be = rows.astype(rows.dtype.newbyteorder(">"), copy=False)
    raw = np.ascontiguousarray(be).view(np.uint8).reshape(rows.shape[0], -1)
    pad = (-raw.shape[1]) % 8
    if pad:
        raw = np.concatenate([raw, np.zeros((raw.shape[0], pad), dtype=np.uint8)],
                             axis=1)
    words = raw.view(">u8")
    return np.lexsort(tuple(words[:, j] for j in range(words.shape[1] - 1, -1, -1)))


def _close_generators(kind, gen_rows: list[np.ndarray], cap: int,
                      grades: Optional[list[int]] = None, grade_mod: int = 1):
    """BFS closure under right multiplication.

    Returns (rows, inv_rows, grade) in discovery order; rows deduplicated.
    Inverse rows and coset grades are propagated along the search.
    """
    id_row = kind.identity_row()
    gens = [kind.canon(np.asarray(g, dtype=kind.dtype)) for g in gen_rows]
    if not gens:
        return (id_row[None, :].copy(), id_row[None, :].copy(),
                np.zeros(1, dtype=np.int64))
    gen_invs = [kind.inv(g) for g in gens]
    use_hash = kind.dtype == np.uint8 and cap > 150_000
    if use_hash:
        return _close_hash(kind, gens, gen_invs, cap, grades, grade_mod)
    return _close_dict(kind, gens, gen_invs, cap, grades, grade_mod)


def _close_dict(kind, gens, gen_invs, cap, grades, grade_mod):
    id_row = kind.identity_row()
    blocks = [id_row[None, :].copy()]
    inv_blocks = [id_row[None, :].copy()]
    grade_blocks = [np.zeros(1, dtype=np.int64)]
    seen = {id_row.tobytes()}
    frontier, frontier_inv = blocks[0], inv_blocks[0]
    frontier_grade = grade_blocks[0]
    total = 1
    while frontier.shape[0]:
        cand_list, cand_inv_list, cand_grade_list = [], [], []
        for gi, (g, ginv) in enumerate(zip(gens, gen_invs)):
            cand_list.append(kind.batch_mul(frontier, g))
            cand_inv_list.append(kind.batch_lmul(ginv, frontier_inv))
            w = grades[gi] if grades else 0
            cand_grade_list.append((frontier_grade + w) % grade_mod)
        cand = np.concatenate(cand_list)
        keep = []
        for i in range(cand.shape[0]):
            key = cand[i].tobytes()
            if key not in seen:
                seen.add(key)
                keep.append(i)
        if not keep:
            break
        keep = np.asarray(keep, dtype=np.int64)
        total += keep.size
        if total > cap:
            raise SizeCapExceeded(
                f"group closure exceeded the size cap ({cap})")
        blocks.append(cand[keep])
        inv_blocks.append(np.concatenate(cand_inv_list)[keep])
        grade_blocks.append(np.concatenate(cand_grade_list)[keep])
        frontier = blocks[-1]
        frontier_inv = inv_blocks[-1]
        frontier_grade = grade_blocks[-1]
    return (np.concatenate(blocks), np.concatenate(inv_blocks),
            np.concatenate(grade_blocks))


def _close_hash(kind, gens, gen_invs, cap, grades, grade_mod):
    """Closure for large uint8-row groups, hash-indexed.

    Candidate-vs-known tests are exact (hash prefilter plus row check);
    dedup among same-level fresh candidates trusts the 64-bit tabulation
    hash, which callers guard with order assertions.  Permutation kinds
    compute inverses after the fact instead of propagating them.
    """
    tbl = _hash_table(kind.row_len)
    is_perm = isinstance(kind, PermKind)

    def hash_rows(rows):
        acc = np.zeros(rows.shape[0], dtype=np.uint64)
        for j in range(rows.shape[1]):
            acc += tbl[j][rows[:, j]]
        return acc

    id_row = kind.identity_row()
    size = 1024
    rows = np.empty((size, kind.row_len), dtype=kind.dtype)
    inv_rows = np.empty((size, kind.row_len), dtype=kind.dtype) if not is_perm else None
    grade = np.empty(size, dtype=np.int64)
    h = np.empty(size, dtype=np.uint64)
    rows[0] = id_row
    if not is_perm:
        inv_rows[0] = id_row
    grade[0] = 0
    h[0] = hash_rows(id_row[None, :])[0]
    n = 1
    order = np.array([0], dtype=np.int64)
    frontier_lo, frontier_hi = 0, 1

    def grow(extra):
        nonlocal size, rows, inv_rows, grade, h
        while n + extra > size:
            size = max(size * 2, n + extra)
            rows = np.resize(rows, (size, kind.row_len))
            if inv_rows is not None:
                inv_rows = np.resize(inv_rows, (size, kind.row_len))
            grade = np.resize(grade, size)
            h = np.resize(h, size)

    while frontier_hi > frontier_lo:
        level_added = 0
        sorted_h = h[:n][order]
        fl, fh = frontier_lo, frontier_hi
        for gi, (g, ginv) in enumerate(zip(gens, gen_invs)):
            cand = kind.batch_mul(rows[fl:fh], g)
            hq = hash_rows(cand)
            # membership against everything accepted so far (incl. this level)
            pos = np.searchsorted(sorted_h, hq)
            pos_c = np.clip(pos, 0, len(sorted_h) - 1)
            maybe_old = (pos < len(sorted_h)) & (sorted_h[pos_c] == hq)
            known = np.zeros(cand.shape[0], dtype=bool)
            check = np.nonzero(maybe_old)[0]
            if check.size:
                idx = order[pos_c[check]]
                same = (rows[idx] == cand[check]).all(axis=1)
                known[check[same]] = True
                for qi in check[~same].tolist():
                    p = pos[qi]
                    while p < len(sorted_h) and sorted_h[p] == hq[qi]:
                        if (rows[order[p]] == cand[qi]).all():
                            known[qi] = True
                            break
                        p += 1
            # also exclude rows accepted earlier in this same level pass
            if level_added:
                recent_h = h[n - level_added:n]
                rsort = np.sort(recent_h)
                pos2 = np.searchsorted(rsort, hq)
                pos2c = np.clip(pos2, 0, len(rsort) - 1)
                known |= (pos2 < len(rsort)) & (rsort[pos2c] == hq)
            fresh = np.nonzero(~known)[0]
            if fresh.size == 0:
                continue
            _, first = np.unique(hq[fresh], return_index=True)
            keep = fresh[np.sort(first)]
            if n + keep.size > cap:
                raise SizeCapExceeded(
                    f"group closure exceeded the size cap ({cap})")
            grow(keep.size)
            rows[n:n + keep.size] = cand[keep]
            h[n:n + keep.size] = hq[keep]
            w = grades[gi] if grades else 0
            grade[n:n + keep.size] = (grade[fl:fh][keep] + w) % grade_mod
            if not is_perm:
                inv_rows[n:n + keep.size] = kind.batch_lmul(ginv, inv_rows[fl:fh])[keep]
            n += keep.size
            level_added += keep.size
        order = np.argsort(h[:n], kind="stable")
        frontier_lo, frontier_hi = frontier_hi, n

    rows = rows[:n].copy()
    grade = grade[:n].copy()
    if is_perm:
        inv_out = np.empty_like(rows)
        chunk = 200_000
        cols = np.arange(kind.row_len, dtype=rows.dtype)
        for lo in range(0, n, chunk):
            blk = rows[lo:lo + chunk]
            inv_blk = np.empty_like(blk)
            r_idx = np.arange(blk.shape[0])[:, None]
            inv_blk[r_idx, blk] = cols[None, :]
            inv_out[lo:lo + chunk] = inv_blk
        return rows, inv_out, grade
    return rows, inv_rows[:n].copy(), grade


def row_order(kind, row: np.ndarray) -> int:
    id_row = kind.identity_row()
    x = row
    o = 1
    while not np.array_equal(x, id_row):
        x = kind.mul(x, row)
        o += 1
        if o > 10_000_000:
            raise RuntimeError("runaway element order")
    return o


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class ConjugacyClass:
    index: int
    rep: np.ndarray
    size: int
    element_order: int
    member_indices: np.ndarray
    power_map: dict[int, int] = field(default_factory=dict)

    def centralizer_order(self, group_order: int) -> int:
        return group_order // self.size


class FiniteGroup:
    """Enumerated finite group with conjugacy-class data."""

    def __init__(self, kind, generator_rows: Sequence, name: str = "",
                 size_cap: int = DEFAULT_SIZE_CAP,
                 _grades: Optional[list[int]] = None, _grade_mod: int = 1):
        self.kind = kind
        self.name = name or kind.name
        gens = [kind.canon(np.asarray(g, dtype=kind.dtype)) for g in generator_rows]
        for g in gens:
            kind.validate(g)
        self.generators = tuple(g.copy() for g in gens)
        rows, inv_rows, grade = _close_generators(kind, list(self.generators), size_cap,
                                                  _grades, _grade_mod)
        order_perm = _lex_order(rows)
        self.element_rows = np.ascontiguousarray(rows[order_perm])
        self.order = int(self.element_rows.shape[0])
        self._index = _make_index(self.element_rows)
        inv_sorted = inv_rows[order_perm]
        self.inv_index = self._index.lookup(inv_sorted)
        if (self.inv_index < 0).any():
            raise RuntimeError("closure inconsistency: inverse not found")
        self.grade = grade[order_perm] if _grade_mod > 1 else None
        self._classes: Optional[tuple[ConjugacyClass, ...]] = None
        self._class_of: Optional[np.ndarray] = None
        self._exponent: Optional[int] = None
        self._power_tables: Optional[list[list[int]]] = None

    # -- basic element access ------------------------------------------
    def identity_index(self) -> int:
        return self.index_of(self.kind.identity_row())

    def index_of(self, row: np.ndarray) -> int:
        row = self.kind.canon(np.asarray(row, dtype=self.kind.dtype))
        i = int(self._index.lookup(row[None, :])[0])
        if i < 0:
            raise ElementNotInGroup("element not in group")
        return i

    def lookup_rows(self, rows: np.ndarray) -> np.ndarray:
        return self._index.lookup(rows)

    def contains_row(self, row) -> bool:
        row = self.kind.canon(np.asarray(row, dtype=self.kind.dtype))
        return int(self._index.lookup(row[None, :])[0]) >= 0

    def element(self, i: int) -> tuple:
        return tuple(int(x) for x in self.element_rows[i])

    def mul(self, a, b):
        return self.kind.mul(np.asarray(a, dtype=self.kind.dtype),
                             np.asarray(b, dtype=self.kind.dtype))

    def inv(self, a):
        a = np.asarray(a, dtype=self.kind.dtype)
        return self.element_rows[self.inv_index[self.index_of(a)]]

    # -- conjugacy classes ----------------------------------------------
    def conjugacy_classes(self) -> tuple[ConjugacyClass, ...]:
        if self._classes is None:
            self._compute_classes()
        return self._classes

    def class_of(self) -> np.ndarray:
        if self._class_of is None:
            self._compute_classes()
        return self._class_of

    def _compute_classes(self) -> None:
        n = self.order
        kind = self.kind
        gens = list(self.generators)
        gen_invs = [self.element_rows[self.inv_index[self.index_of(g)]] for g in gens]
        visited = np.zeros(n, dtype=bool)
        raw: list[np.ndarray] = []
        for start in range(n):
            if visited[start]:
                continue
            members = [start]
            visited[start] = True
            frontier = self.element_rows[start][None, :]
            while frontier.shape[0]:
                new_idx = []
                for g, ginv in zip(gens, gen_invs):
                    conj = kind.batch_mul(kind.batch_lmul(ginv, frontier), g)
                    idx = self._index.lookup(conj)
                    if (idx < 0).any():
                        raise RuntimeError("conjugation left the element table")
                    fresh = idx[~visited[idx]]
                    if fresh.size:
                        fresh = np.unique(fresh)
                        fresh = fresh[~visited[fresh]]
                        visited[fresh] = True
                        new_idx.append(fresh)
                if new_idx:
                    ni = np.concatenate(new_idx)
                    members.append(ni)
                    frontier = self.element_rows[ni]
                else:
                    frontier = np.empty((0, kind.row_len), dtype=kind.dtype)
            members = np.concatenate([np.atleast_1d(np.asarray(m, dtype=np.int64))
                                      for m in members])
            raw.append(np.sort(members))
        infos = []
        for members in raw:
            rep = self.element_rows[members[0]]
            infos.append((row_order(kind, rep), members.size, rep.tobytes(), members))
        infos.sort(key=lambda t: (t[0], t[1], t[2]))
        classes = []
        class_of = np.empty(n, dtype=np.int32)
        for ci, (eo, size, _, members) in enumerate(infos):
            rep = self.element_rows[members[0]]
            classes.append(ConjugacyClass(index=ci, rep=rep, size=int(size),
                                          element_order=int(eo),
                                          member_indices=members))
            class_of[members] = ci
        if sum(c.size for c in classes) != n:
            raise RuntimeError("class sizes do not sum to the group order")
        self._classes = tuple(classes)
        self._class_of = class_of
        self._exponent = lcm(*[c.element_order for c in classes]) if classes else 1
        self._fill_power_maps()

    def _fill_power_maps(self) -> None:
        tables = self.power_class_tables()
        for c in self._classes:
            for p in _prime_factors(c.element_order):
                c.power_map[p] = tables[c.index][p % c.element_order]

    def power_class_tables(self) -> list[list[int]]:
        """For each class j, the class index of rep_j^t for 0 <= t < order."""
        if self._power_tables is not None:
            return self._power_tables
        kind = self.kind
        class_of = self.class_of()
        id_idx = self.identity_index()
        out = []
        for c in self._classes:
            tab = [int(class_of[id_idx])]
            x = c.rep
            for _ in range(1, c.element_order):
                tab.append(int(class_of[self.index_of(x)]))
                x = kind.mul(x, c.rep)
            out.append(tab)
        self._power_tables = out
        return out

    @property
    def exponent(self) -> int:
        if self._exponent is None:
            self._compute_classes()
        return self._exponent

    def class_index_of_row(self, row) -> int:
        return int(self.class_of()[self.index_of(row)])

    def centralizer_order(self, row) -> int:
        c = self.conjugacy_classes()[self.class_index_of_row(row)]
        return self.order // c.size

    def inverse_class(self, ci: int) -> int:
        rep = self.conjugacy_classes()[ci].rep
        inv = self.element_rows[self.inv_index[self.index_of(rep)]]
        return self.class_index_of_row(inv)

    def class_matrix(self, i: int) -> np.ndarray:
        """Structure-constant matrix A_i[j,k] = #{x in C_i : x^{-1} z_k in C_j}."""
        classes = self.conjugacy_classes()
        r = len(classes)
        members = classes[i].member_indices
        X_inv = self.element_rows[self.inv_index[members]]
        class_of = self.class_of()
        A = np.zeros((r, r), dtype=np.int64)
        for k, ck in enumerate(classes):
            Y = self.kind.batch_mul(X_inv, ck.rep)
            idx = self._index.lookup(Y)
            if (idx < 0).any():
                raise RuntimeError("product left the element table")
            A[:, k] = np.bincount(class_of[idx], minlength=r)
        return A

    # -- subgroups -------------------------------------------------------
    def subgroup(self, generator_rows: Sequence, name: str = "") -> "FiniteGroup":
        sub = FiniteGroup(self.kind, generator_rows, name=name, size_cap=self.order)
        if (self.lookup_rows(sub.element_rows) < 0).any():
            raise NotASubgroup("generated subgroup is not contained in the group")
        return sub

    def fuse_classes_from(self, sub: "FiniteGroup") -> list[int]:
        """For each class of `sub`, the index of the containing class of self."""
        idx = self.lookup_rows(np.stack([c.rep for c in sub.conjugacy_classes()]))
        if (idx < 0).any():
            raise NotASubgroup("subgroup element missing from the group")
        return [int(self.class_of()[i]) for i in idx]

    def derived_subgroup_order(self) -> int:
        """Order of the commutator subgroup (brute force over all pairs)."""
        E = self.element_rows
        seen: dict[bytes, np.ndarray] = {}
        for i in range(self.order):
            a = E[i]
            ab = self.kind.batch_lmul(a, E)
            ba = self.kind.batch_mul(E, a)
            ba_inv = E[self.inv_index[self.lookup_rows(ba)]]
            comm = self.kind.pairwise_mul(ab, ba_inv)
            for row in comm:
                seen.setdefault(row.tobytes(), row)
        gens = list(seen.values())
        return FiniteGroup(self.kind, gens, size_cap=self.order).order if gens else 1

    # -- quotients ---------------------------------------------------------
    def quotient_by(self, kernel_indices: np.ndarray) -> tuple["FiniteGroup", np.ndarray]:
        """Quotient by a normal subgroup given by element indices.

        Returns the quotient as a permutation group on the cosets together
        with the coset id of every element of self.
        """
        n = self.order
        kset = np.zeros(n, dtype=bool)
        kset[kernel_indices] = True
        coset_of = np.full(n, -1, dtype=np.int64)
        reps = []
        for i in range(n):
            if coset_of[i] >= 0:
                continue
            cid = len(reps)
            reps.append(i)
            left = self.kind.batch_lmul(self.element_rows[i],
                                        self.element_rows[kernel_indices])
            idx = self._index.lookup(left)
            if (coset_of[idx] >= 0).any() and not (coset_of[idx] == cid).all():
                raise ValueError("kernel is not a subgroup")
            coset_of[idx] = cid
        m = len(reps)
        gen_perms = []
        rep_rows = self.element_rows[np.asarray(reps)]
        for g in self.generators:
            moved = self.kind.batch_lmul(g, rep_rows)
            gen_perms.append(coset_of[self._index.lookup(moved)].astype(np.int64))
        q = FiniteGroup(PermKind(m), gen_perms, name=f"{self.name}/N", size_cap=m)
        return q, coset_of


def _prime_factors(n: int) -> list[int]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            out.append(p)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out.append(m)
    return out


# ---------------------------------------------------------------------------
# automorphisms and semidirect extensions


class GroupAutomorphism:
    """Automorphism given by generator images, verified on the element list."""

    def __init__(self, group: FiniteGroup, generator_images: Sequence, name: str = ""):
        self.group = group
        kind = group.kind
        imgs = [kind.canon(np.asarray(g, dtype=kind.dtype)) for g in generator_images]
        if len(imgs) != len(group.generators):
            raise NotAnAutomorphism("one image per generator required")
        self.generator_images = tuple(imgs)
        self.name = name
        self.index_map = self._extend_and_verify()
        self.order = self._map_order()

    def _extend_and_verify(self) -> np.ndarray:
        G = self.group
        kind = G.kind
        n = G.order
        img_rows = np.full((n, kind.row_len), 0, dtype=kind.dtype)
        done = np.zeros(n, dtype=bool)
        id_idx = G.identity_index()
        img_rows[id_idx] = kind.identity_row()
        done[id_idx] = True
        frontier = np.array([id_idx], dtype=np.int64)
        while frontier.size:
            new = []
            for g, gimg in zip(G.generators, self.generator_images):
                prod = kind.batch_mul(G.element_rows[frontier], g)
                idx = G.lookup_rows(prod)
                mask = ~done[idx]
                if not mask.any():
                    continue
                tgt = idx[mask]
                tgt, first = np.unique(tgt, return_index=True)
                src = frontier[mask][first]
                img_rows[tgt] = kind.batch_mul(img_rows[src], gimg)
                done[tgt] = True
                new.append(tgt)
            frontier = np.concatenate(new) if new else np.empty(0, dtype=np.int64)
        if not done.all():
            raise NotAnAutomorphism("generators do not generate the group")
        idx_map = G.lookup_rows(img_rows)
        if (idx_map < 0).any():
            raise NotAnAutomorphism("image leaves the group")
        if np.unique(idx_map).size != n:
            raise NotAnAutomorphism("generator images do not define a bijection")
        # homomorphism check: phi(x g) = phi(x) phi(g) for all x, generators g
        for g, gimg in zip(G.generators, self.generator_images):
            xg = G.lookup_rows(kind.batch_mul(G.element_rows, g))
            lhs = idx_map[xg]
            rhs = G.lookup_rows(kind.batch_mul(G.element_rows[idx_map], gimg))
            if not np.array_equal(lhs, rhs):
                raise NotAnAutomorphism("generator images are not multiplicative")
        return idx_map

    def _map_order(self) -> int:
        base = np.arange(self.group.order)
        cur = self.index_map
        o = 1
        while not np.array_equal(cur, base):
            cur = self.index_map[cur]
            o += 1
            if o > self.group.order:
                raise NotAnAutomorphism("map order exceeds group order")
        return o

    def apply_row(self, row) -> np.ndarray:
        G = self.group
        return G.element_rows[self.index_map[G.index_of(row)]]

    def apply_class(self, ci: int) -> int:
        G = self.group
        rep = G.conjugacy_classes()[ci].rep
        return G.class_index_of_row(self.apply_row(rep))

    def is_inner(self) -> bool:
        G = self.group
        for i in range(G.order):
            c = G.element_rows[i]
            cinv = G.element_rows[G.inv_index[i]]
            conj = G.lookup_rows(G.kind.batch_mul(
                G.kind.batch_lmul(c, G.element_rows), cinv))
            if np.array_equal(conj, self.index_map):
                return True
        return False

    @staticmethod
    def identity(group: FiniteGroup) -> "GroupAutomorphism":
        return GroupAutomorphism(group, list(group.generators), name="id")


@dataclass(frozen=True)
class SemidirectExtension:
    """G extended by a cyclic group of automorphisms, as permutations of G."""

    base: FiniteGroup
    automorphism: GroupAutomorphism
    group: FiniteGroup
    embed_index: np.ndarray      # index of lambda_g in the extension, per g-index
    nu_hat_index: int
    m: int

    @property
    def coset_grade(self) -> np.ndarray:
        return self.group.grade

    def coset_class_indices(self, k: int = 1) -> list[int]:
        """Classes of the extension meeting the coset G * nu_hat^k."""
        S = self.group
        out = []
        for c in S.conjugacy_classes():
            if int(S.grade[S.index_of(c.rep)]) == k % self.m:
                out.append(c.index)
        return out


def build_semidirect(group: FiniteGroup, auto: GroupAutomorphism,
                     size_cap: int = DEFAULT_SIZE_CAP) -> SemidirectExtension:
    """Split extension of `group` by the cyclic group generated by `auto`.

    Realized on |G| points: G embeds via left translations, the coset
    generator acts as the automorphism map.
    """
    if auto.group is not group:
        raise GroupMismatch("automorphism belongs to a different group")
    G = group
    m = auto.order
    if G.order * m > size_cap:
        raise SizeCapExceeded(f"|G|*m = {G.order * m} exceeds the size cap {size_cap}")
    kind = PermKind(G.order)
    gen_perms: list[np.ndarray] = []
    grades: list[int] = []
    for g in G.generators:
        left = G.lookup_rows(G.kind.batch_lmul(g, G.element_rows))
        gen_perms.append(left.astype(np.int64))
        grades.append(0)
    gen_perms.append(auto.index_map.astype(np.int64))
    grades.append(1)
    S = FiniteGroup(kind, gen_perms, name=f"{G.name}:{m}",
                    size_cap=size_cap, _grades=grades, _grade_mod=m if m > 1 else 2)
    if S.order != G.order * m:
        raise RuntimeError(
            f"extension has order {S.order}, expected {G.order * m}")
    embed = np.empty(G.order, dtype=np.int64)
    for i in range(G.order):
        left = G.lookup_rows(G.kind.batch_lmul(G.element_rows[i], G.element_rows))
        embed[i] = S.index_of(left.astype(np.int64))
    nu_hat = S.index_of(auto.index_map.astype(np.int64))
    # embedded copy must be normal: conjugating generators stays inside
    emb_set = np.zeros(S.order, dtype=bool)
    emb_set[embed] = True
    for s in S.generators:
        sidx = S.index_of(s)
        sinv = S.element_rows[S.inv_index[sidx]]
        for g in gen_perms[:-1]:
            conj = S.kind.mul(S.kind.mul(sinv, np.asarray(g, dtype=S.kind.dtype)), s)
            if not emb_set[S.index_of(conj)]:
                raise RuntimeError("embedded base group is not normal")
    return SemidirectExtension(base=G, automorphism=auto, group=S,
                               embed_index=embed, nu_hat_index=nu_hat, m=m)
