"""Cartan data and root systems for the finite crystallographic types.

Node numbering follows the conventions used throughout this package:
type A chains are numbered 1..d-1 left to right; E6/E7/E8 use the
standard numbering with node 2 hanging off the branch node; D has its
two fork legs numbered 1 and 2, the branch node 3 and the tail 3..d.
Root coordinates are kept as scaled integers (twice the usual values)
so that all arithmetic stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

WEYL_ORDER_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: list(range(2, 2 * n - 1, 2)) + [n],
    "G2": lambda n: [2, 6],
    "F4": lambda n: [2, 6, 8, 12],
    "E6": lambda n: [2, 5, 6, 8, 9, 12],
    "E7": lambda n: [2, 6, 8, 10, 12, 14, 18],
    "E8": lambda n: [2, 8, 12, 14, 18, 20, 24, 30],
}


class NotFiniteType(ValueError):
    pass


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix with fixed node numbering and coordinates."""

    name: str
    rank: int
    cartan: tuple[tuple[int, ...], ...]          # cartan[i][j] = <a_i, a_j^vee>
    simple_coords: tuple[tuple[int, ...], ...]   # scaled (x2) orthogonal coords
    components: tuple[tuple[str, tuple[int, ...]], ...]  # (type, node indices 0-based)

    def weyl_order(self) -> int:
        out = 1
        for typ, nodes in self.components:
            fam = typ if typ in WEYL_ORDER_DEGREES else typ[0]
            for d in WEYL_ORDER_DEGREES[fam](len(nodes)):
                out *= d
        return out

    def n_roots(self) -> int:
        counts = {"A": lambda n: n * (n + 1), "B": lambda n: 2 * n * n,
                  "C": lambda n: 2 * n * n, "D": lambda n: 2 * n * (n - 1),
                  "G2": lambda n: 12, "F4": lambda n: 48,
                  "E6": lambda n: 72, "E7": lambda n: 126, "E8": lambda n: 240}
        out = 0
        for typ, nodes in self.components:
            fam = typ if typ in counts else typ[0]
            out += counts[fam](len(nodes))
        return out

    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def type_string(self) -> str:
        parts = sorted((t for t, _ in self.components),
                       key=lambda t: (-_type_rank(t), t))
        return "x".join(parts)


def _type_rank(t: str) -> int:
    if t in ("G2", "F4", "E6", "E7", "E8"):
        return int(t[1])
    return int(t[1:].rstrip("~"))


def _chain_cartan(n: int) -> list[list[int]]:
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        c[i][i + 1] = c[i + 1][i] = -1
    return c


def cartan_datum(type_symbol: str, rank: int = 0) -> CartanDatum:
    """Cartan datum for one irreducible type, e.g. ('A', 4) or ('E6',)."""
    t = type_symbol.upper()
    if t in ("G2", "F4", "E6", "E7", "E8"):
        rank = int(t[1])
    elif t[0] in "ABCD" and len(t) > 1:
        rank = int(t[1:])
        t = t[0]
    if rank < 1:
        raise NotFiniteType(f"bad rank {rank} for type {type_symbol}")

    if t == "A":
        coords = [[0] * (rank + 1) for _ in range(rank)]
        for i in range(rank):
            coords[i][i], coords[i][i + 1] = 2, -2
        name = f"A{rank}"
    elif t in ("B", "C"):
        if rank < 2:
            raise NotFiniteType("types B and C need rank >= 2")
        coords = [[0] * rank for _ in range(rank)]
        for i in range(rank - 1):
            coords[i][i], coords[i][i + 1] = 2, -2
        # node d carries e_d (short) in type B, 2 e_d (long) in type C
        coords[rank - 1][rank - 1] = 2 if t == "B" else 4
        name = f"{t}{rank}"
    elif t == "D":
        if rank < 3:
            raise NotFiniteType("type D needs rank >= 3")
        coords = [[0] * rank for _ in range(rank)]
        # node 1 = e_{d-1} - e_d, node 2 = e_{d-1} + e_d,
        # node k = e_{d-k+1} - e_{d-k+2} for k >= 3
        coords[0][rank - 2], coords[0][rank - 1] = 2, -2
        coords[1][rank - 2], coords[1][rank - 1] = 2, 2
        for k in range(2, rank):
            coords[k][rank - k - 1], coords[k][rank - k] = 2, -2
        name = f"D{rank}"
    elif t == "G2":
        # node 1 long, node 2 short (the long-root parabolic is node 1)
        coords = [[-4, 2, 2], [2, -2, 0]]
        name = "G2"
    elif t == "F4":
        coords = [[0, 2, -2, 0], [0, 0, 2, -2], [0, 0, 0, 2], [1, -1, -1, -1]]
        name = "F4"
    elif t in ("E6", "E7", "E8"):
        rank = int(t[1])
        e8 = [
            [1, -1, -1, -1, -1, -1, -1, 1],
            [2, 2, 0, 0, 0, 0, 0, 0],
            [-2, 2, 0, 0, 0, 0, 0, 0],
            [0, -2, 2, 0, 0, 0, 0, 0],
            [0, 0, -2, 2, 0, 0, 0, 0],
            [0, 0, 0, -2, 2, 0, 0, 0],
            [0, 0, 0, 0, -2, 2, 0, 0],
            [0, 0, 0, 0, 0, -2, 2, 0],
        ]
        coords = [row[:] for row in e8[:rank]]
        name = t
    else:
        raise NotFiniteType(f"unknown type {type_symbol!r}")
    cart = _cartan_from_coords(coords)
    return CartanDatum(name=name, rank=rank,
                       cartan=tuple(tuple(r) for r in cart),
                       simple_coords=tuple(tuple(r) for r in coords),
                       components=((name, tuple(range(rank))),))


def _cartan_from_coords(coords: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(coords)
    cart = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            num = 2 * sum(a * b for a, b in zip(coords[i], coords[j]))
            den = sum(b * b for b in coords[j])
            if num % den:
                raise NotFiniteType("non-crystallographic coordinates")
            cart[i][j] = num // den
    return cart


def _connected_components(cart: Sequence[Sequence[int]]) -> list[list[int]]:
    n = len(cart)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        stack = [s]
        while stack:
            i = stack.pop()
            for j in range(n):
                if not seen[j] and cart[i][j] != 0:
                    seen[j] = True
                    comp.append(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _classify_component(cart, norms, nodes: list[int]) -> str:
    """Identify the type of one connected sub-diagram."""
    k = len(nodes)
    if k == 1:
        return "A1"
    sub = [[cart[i][j] for j in nodes] for i in nodes]
    prods = {}
    for a in range(k):
        for b in range(a + 1, k):
            if sub[a][b]:
                prods[(a, b)] = sub[a][b] * sub[b][a]
    if any(p == 3 for p in prods.values()):
        if k != 2:
            raise NotFiniteType("triple bond outside G2")
        return "G2"
    if any(p == 2 for p in prods.values()):
        (a, b), = [e for e, p in prods.items() if p == 2]
        deg = [sum(1 for bb in range(k) if bb != aa and sub[aa][bb]) for aa in range(k)]
        if k == 2:
            return "B2"
        if deg[a] == 2 and deg[b] == 2 and k == 4:
            return "F4"
        ns = [norms[i] for i in nodes]
        n_short = sum(1 for v in ns if v == min(ns))
        if n_short == 1:
            return f"B{k}"
        if n_short == k - 1:
            return f"C{k}"
        raise NotFiniteType("unrecognized doubly-laced diagram")
    deg = [sum(1 for b in range(k) if b != a and sub[a][b]) for a in range(k)]
    forks = [a for a in range(k) if deg[a] == 3]
    if not forks:
        return f"A{k}"
    if len(forks) > 1 or max(deg) > 3:
        raise NotFiniteType("diagram is not of finite type")
    f = forks[0]
    legs = []
    for nb in [a for a in range(k) if a != f and sub[f][a]]:
        length, prev, cur = 1, f, nb
        while True:
            nxt = [a for a in range(k) if a not in (prev,) and a != cur and sub[cur][a]]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        legs.append(length)
    legs.sort()
    if legs[0] == 1 and legs[1] == 1:
        return f"D{k}"
    if legs == [1, 2, 2]:
        return "E6"
    if legs == [1, 2, 3]:
        return "E7"
    if legs == [1, 2, 4]:
        return "E8"
    raise NotFiniteType(f"diagram with legs {legs} is not of finite type")


def subdatum(datum: CartanDatum, nodes: Sequence[int]) -> CartanDatum:
    """Cartan datum spanned by a subset of simple nodes (0-based indices)."""
    nodes = list(nodes)
    cart = [[datum.cartan[i][j] for j in nodes] for i in nodes]
    coords = [datum.simple_coords[i] for i in nodes]
    norms = [sum(x * x for x in c) for c in datum.simple_coords]
    comps = _connected_components(cart)
    parts = []
    for comp in comps:
        typ = _classify_component(datum.cartan, norms, [nodes[c] for c in comp])
        parts.append((typ, tuple(comp)))
    parts.sort(key=lambda p: (-_type_rank(p[0]), p[0], p[1]))
    name = "x".join(p[0] for p in parts)
    return CartanDatum(name=name, rank=len(nodes),
                       cartan=tuple(tuple(r) for r in cart),
                       simple_coords=tuple(tuple(r) for r in coords),
                       components=tuple(parts))


class RootSystem:
    """All roots of a Cartan datum, with the simple-reflection action."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        r = datum.rank
        cart = np.array(datum.cartan, dtype=np.int64)
        roots: list[tuple[int, ...]] = []
        index: dict[tuple[int, ...], int] = {}
        for i in range(r):
            v = tuple(1 if j == i else 0 for j in range(r))
            index[v] = len(roots)
            roots.append(v)
        frontier = list(roots)
        while frontier:
            nxt = []
            for v in frontier:
                for j in range(r):
                    pair = sum(v[i] * cart[i][j] for i in range(r))
                    w = list(v)
                    w[j] -= pair
                    w = tuple(w)
                    if w not in index:
                        index[w] = len(roots)
                        roots.append(w)
                        nxt.append(w)
                    wn = tuple(-x for x in w)
                    if wn not in index:
                        index[wn] = len(roots)
                        roots.append(wn)
                        nxt.append(wn)
            frontier = nxt
        if len(roots) != datum.n_roots():
            raise NotFiniteType(
                f"root closure found {len(roots)} roots, expected {datum.n_roots()}")
        # canonical order: positives (coefficient-sum > 0) sorted, then negatives
        pos = sorted(v for v in roots if sum(v) > 0)
        self.roots = pos + [tuple(-x for x in v) for v in pos]
        self.index = {v: i for i, v in enumerate(self.roots)}
        self.n_pos = len(pos)
        self.basis = np.array(self.roots, dtype=np.int64)
        amb = len(datum.simple_coords[0])
        sc = np.array(datum.simple_coords, dtype=np.int64)
        self.coords = self.basis @ sc
        self.cartan = cart
        perms = []
        for j in range(r):
            p = np.empty(len(self.roots), dtype=np.int64)
            for i, v in enumerate(self.roots):
                pair = int(sum(v[k] * cart[k][j] for k in range(r)))
                w = list(v)
                w[j] -= pair
                p[i] = self.index[tuple(w)]
            perms.append(p)
        self.simple_perms = perms

    @property
    def n_roots(self) -> int:
        return len(self.roots)

    def highest_root_index(self) -> int:
        if not self.datum.is_irreducible():
            raise ValueError("highest root needs an irreducible datum")
        sums = self.basis.sum(axis=1)
        best = int(np.argmax(sums))
        if (sums == sums[best]).sum() != 1:
            raise ArithmeticError("highest root is not unique")
        return best

    def root_length_sq(self, i: int) -> int:
        c = self.coords[i]
        return int((c * c).sum())

    def long_short_nodes(self) -> tuple[list[int], list[int]]:
        """Simple nodes carrying long resp. short roots (0-based)."""
        lens = [self.root_length_sq(self.index[tuple(
            1 if j == k else 0 for j in range(self.datum.rank))])
            for k in range(self.datum.rank)]
        mx = max(lens)
        long = [k for k, l in enumerate(lens) if l == mx]
        short = [k for k, l in enumerate(lens) if l < mx]
        return long, short

    def simple_indices(self) -> list[int]:
        r = self.datum.rank
        return [self.index[tuple(1 if k == j else 0 for k in range(r))]
                for j in range(r)]

    def reflection_matrix(self, perm: np.ndarray) -> np.ndarray:
        """Matrix of a root permutation in the simple-root basis (columns
        are the images of the simple roots)."""
        r = self.datum.rank
        si = self.simple_indices()
        m = np.empty((r, r), dtype=np.int64)
        for j in range(r):
            m[:, j] = self.basis[int(perm[si[j]])]
        return m

    def word_matrix(self, word: Sequence[int]) -> np.ndarray:
        """Matrix (simple-root basis) of a product of simple reflections.

        The word lists 1-based node indices, applied left to right as a
        product s_{w1} s_{w2} ... acting on column vectors.
        """
        r = self.datum.rank
        m = np.eye(r, dtype=np.int64)
        for letter in word:
            j = letter - 1
            s = np.eye(r, dtype=np.int64)
            s[j, :] -= self.cartan[:, j]
            m = m @ s
        return m

    def matrix_root_perm(self, m: np.ndarray) -> np.ndarray:
        """Permutation of the roots induced by a basis matrix."""
        imgs = self.basis @ m.T
        out = np.empty(len(self.roots), dtype=np.int64)
        for i in range(len(self.roots)):
            out[i] = self.index[tuple(int(x) for x in imgs[i])]
        return out
