"""Group specification mini-language and named presets.

Grammar:
    perm:n:[(c,c,..)(..);(..)...]   permutation generators as cycle products
    matff:p:d:[a,b,..;a,b,..]       matrix generators, row-major entries
    projmatff:p:d:[...]             same, modulo scalars
    a5 | s5 | s4 | s3 | q8          small named groups
    psl2:q | psl3:q | psu3:q        projective groups (q a prime power)
    elemab:p:k                      elementary abelian p^k
"""

from __future__ import annotations

import re
from functools import lru_cache

import numpy as np

from .groups import FiniteGroup, MatKind, PermKind


class UnknownGroupSpec(ValueError):
    pass


# ---------------------------------------------------------------------------
# tiny finite fields (for the non-prime-field presets)


@lru_cache(maxsize=None)
def _gf(q: int):
    """Field of order q as (p, k, add-table, mul-table, elements as tuples)."""
    fac = _factor(q)
    if len(fac) != 1:
        raise UnknownGroupSpec(f"{q} is not a prime power")
    p, k = fac[0]
    if k == 1:
        add = [[(a + b) % p for b in range(p)] for a in range(p)]
        mul = [[(a * b) % p for b in range(p)] for a in range(p)]
        return p, 1, add, mul
    poly = _irreducible_poly(p, k)
    els = list(range(q))

    def to_vec(x):
        out = []
        for _ in range(k):
            out.append(x % p)
            x //= p
        return out

    def from_vec(v):
        x = 0
        for c in reversed(v):
            x = x * p + c
        return x

    def mul_one(a, b):
        va, vb = to_vec(a), to_vec(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(va):
            for j, y in enumerate(vb):
                prod[i + j] = (prod[i + j] + x * y) % p
        for top in range(2 * k - 2, k - 1, -1):
            c = prod[top]
            if c:
                prod[top] = 0
                for i in range(k):
                    prod[top - k + i] = (prod[top - k + i] - c * poly[i]) % p
        return from_vec(prod[:k])

    add = [[from_vec([(x + y) % p for x, y in zip(to_vec(a), to_vec(b))])
            for b in els] for a in els]
    mul = [[mul_one(a, b) for b in els] for a in els]
    return p, k, add, mul


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1
    if m > 1:
        out.append((m, 1))
    return out


def _irreducible_poly(p: int, k: int) -> list[int]:
    """Monic irreducible polynomial of degree k over F_p (coeffs of x^0..x^{k-1})."""
    for mask in range(p ** k):
        coeffs = []
        x = mask
        for _ in range(k):
            coeffs.append(x % p)
            x //= p
        if _is_irreducible(coeffs + [1], p):
            return coeffs
    raise RuntimeError("no irreducible polynomial found")


def _is_irreducible(poly: list[int], p: int) -> bool:
    k = len(poly) - 1
    if k <= 3:
        # degree <= 3: irreducible iff no roots (and nonzero constant)
        if poly[0] == 0:
            return False
        for x in range(p):
            acc = 0
            for c in reversed(poly):
                acc = (acc * x + c) % p
            if acc == 0:
                return False
        return True
    # generic check via gcd(x^{p^i} - x, poly)
    for i in range(1, k):
        if k % i == 0 and i < k:
            xp = _poly_powmod([0, 1], p ** i, poly, p)
            if _poly_gcd(_poly_sub(xp, [0, 1], p), poly, p) != [1]:
                if i < k:
                    pass
        # fall through; full check below
    xp = _poly_powmod([0, 1], p ** k, poly, p)
    if _poly_sub(xp, [0, 1], p):
        return False
    for i in [d for d in range(1, k) if k % d == 0]:
        xp = _poly_powmod([0, 1], p ** i, poly, p)
        g = _poly_gcd(_poly_sub(xp, [0, 1], p), poly, p)
        if len(g) - 1 > 0:
            return False
    return True


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    return _poly_trim([( (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                       for i in range(n)])


def _poly_mulmod(a, b, mod, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    k = len(mod) - 1
    for top in range(len(out) - 1, k - 1, -1):
        c = out[top]
        if c:
            out[top] = 0
            for i in range(k):
                out[top - k + i] = (out[top - k + i] - c * mod[i]) % p
    return _poly_trim(out[:k])


def _poly_powmod(a, e, mod, p):
    out = [1]
    base = a[:]
    while e:
        if e & 1:
            out = _poly_mulmod(out, base, mod, p)
        base = _poly_mulmod(base, base, mod, p)
        e >>= 1
    return out


def _poly_gcd(a, b, p):
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        inv = pow(b[-1], p - 2, p)
        r = a[:]
        while len(r) >= len(b) and _poly_trim(r):
            if len(r) < len(b):
                break
            f = r[-1] * inv % p
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] = (r[shift + i] - f * c) % p
            r = _poly_trim(r)
            if not r:
                break
        a, b = b, r
    a = _poly_trim(a)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [c * inv % p for c in a]
    return a if a else []


class GF:
    """Arithmetic helper for F_q with elements 0..q-1 (0 is zero, 1 is one)."""

    def __init__(self, q: int):
        self.q = q
        self.p, self.k, self._add, self._mul = _gf(q)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self.neg(b)]

    def neg(self, a):
        return next(b for b in range(self.q) if self._add[a][b] == 0)

    def mul(self, a, b):
        return self._mul[a][b]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError
        return next(b for b in range(self.q) if self._mul[a][b] == 1)

    def pow(self, a, e):
        out = 1
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def generator(self):
        for g in range(2, self.q):
            seen = set()
            x = 1
            for _ in range(self.q - 1):
                x = self.mul(x, g)
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        raise RuntimeError("no multiplicative generator")

    def frobenius(self, a):
        return self.pow(a, self.p)


# ---------------------------------------------------------------------------
# constructions


def _psl2_prime(q: int) -> FiniteGroup:
    kind = MatKind(q, 2, projective=True)
    g1 = np.array([1, 1, 0, 1], dtype=np.uint8)
    g2 = np.array([0, q - 1, 1, 0], dtype=np.uint8)
    return FiniteGroup(kind, [g1, g2], name=f"psl2:{q}")


def psl2_points(q: int) -> FiniteGroup:
    """PSL2(q) acting on the q+1 points of the projective line."""
    F = GF(q)
    pts = list(range(q)) + [q]          # q stands for infinity
    g = F.generator()

    def perm(fn):
        return [fn(x) for x in pts]

    trans = perm(lambda x: q if x == q else F.add(x, 1))
    if q % 2 == 0:
        scale = perm(lambda x: q if x == q else F.mul(g, x))
        invmap = perm(lambda x: 0 if x == q else (q if x == 0 else F.inv(x)))
        gens = [trans, scale, invmap]
    else:
        g2 = F.mul(g, g)
        scale = perm(lambda x: q if x == q else F.mul(g2, x))
        invneg = perm(lambda x: 0 if x == q else (q if x == 0 else F.neg(F.inv(x))))
        gens = [trans, scale, invneg]
    return FiniteGroup(PermKind(q + 1), gens, name=f"psl2:{q}")


def frobenius_on(G: FiniteGroup, q: int):
    """Field automorphism x -> x^p of a psl2_points(q) group, by conjugation
    with the frobenius permutation of the projective line."""
    from .groups import GroupAutomorphism
    F = GF(q)
    sq = [q if x == q else F.frobenius(x) for x in list(range(q)) + [q]]
    sq_inv = [sq.index(i) for i in range(q + 1)]
    imgs = []
    for gen in G.generators:
        gl = list(gen)
        imgs.append(np.array([sq[gl[sq_inv[i]]] for i in range(q + 1)],
                             dtype=G.kind.dtype))
    return GroupAutomorphism(G, imgs, name="frobenius")


def psl2_frobenius(q: int):
    """The standard psl2:q points group together with its field automorphism."""
    G = psl2_points(q)
    return G, frobenius_on(G, q)


def psl3(q: int) -> FiniteGroup:
    fac = _factor(q)
    if len(fac) != 1 or fac[0][1] != 1:
        raise UnknownGroupSpec("psl3 preset needs a prime q here")
    kind = MatKind(q, 3, projective=True)
    g1 = np.array([1, 1, 0, 0, 1, 0, 0, 0, 1], dtype=np.uint8)
    # companion-style generator of SL3(q)
    g2 = np.array([0, 0, 1, 1, 0, 0, 0, 1, 0], dtype=np.uint8)
    g3 = np.array([0, q - 1, 0, 1, q - 1, 0, 0, 0, 1], dtype=np.uint8)
    return FiniteGroup(kind, [g1, g2, g3], name=f"psl3:{q}",
                       size_cap=30_000_000)


def psu3(q: int) -> FiniteGroup:
    """PSU3(q) for prime q, as permutations of SU3(q)-cosets is overkill;
    realized on the q^3+1 isotropic points of the hermitian form."""
    F = GF(q * q)

    def conj(x):
        return F.pow(x, q)

    # hermitian form x1 conj(x3) + x2 conj(x2) + x3 conj(x1) (antidiagonal)
    def h(v, w):
        t1 = F.mul(v[0], conj(w[2]))
        t2 = F.mul(v[1], conj(w[1]))
        t3 = F.mul(v[2], conj(w[0]))
        return F.add(F.add(t1, t2), t3)

    # isotropic projective points
    pts = []
    seen = set()
    for x1 in range(q * q):
        for x2 in range(q * q):
            for x3 in range(q * q):
                v = (x1, x2, x3)
                if v == (0, 0, 0) or h(v, v) != 0:
                    continue
                first = next(c for c in v if c)
                inv = F.inv(first)
                vn = tuple(F.mul(inv, c) for c in v)
                if vn not in seen:
                    seen.add(vn)
                    pts.append(vn)
    pts.sort()
    if len(pts) != q ** 3 + 1:
        raise RuntimeError(f"expected {q**3+1} isotropic points, got {len(pts)}")
    idx = {v: i for i, v in enumerate(pts)}

    def act(mat):
        out = []
        for v in pts:
            w = tuple(
                F.add(F.add(F.mul(mat[i][0], v[0]), F.mul(mat[i][1], v[1])),
                      F.mul(mat[i][2], v[2]))
            for i in range(3))
            first = next(c for c in w if c)
            inv = F.inv(first)
            out.append(idx[tuple(F.mul(inv, c) for c in w)])
        return out

    def is_unitary(mat):
        cols = [tuple(mat[i][j] for i in range(3)) for j in range(3)]
        want = [[0, 0, 1], [0, 1, 0], [1, 0, 0]]
        for a in range(3):
            for b in range(3):
                if h(cols[a], cols[b]) != want[a][b]:
                    return False
        return True

    gens = []
    # all unitary unipotent upper triangulars u(a,b,c); together with the
    # antidiagonal Weyl element they generate SU3(q)
    for a in range(q * q):
        for b in range(q * q):
            for c in range(q * q):
                mat = [[1, a, b], [0, 1, c], [0, 0, 1]]
                if (a, b, c) != (0, 0, 0) and is_unitary(mat):
                    gens.append(act(mat))
    w = [[0, 0, 1], [0, q - 1 if q % 2 else 1, 0], [1, 0, 0]]
    # adjust the middle sign so that w is unitary
    for mid in range(1, q * q):
        cand = [[0, 0, 1], [0, mid, 0], [1, 0, 0]]
        if is_unitary(cand):
            w = cand
            break
    gens.append(act(w))
    # torus diag(t, s, u) unitary: u = conj(t)^{-1}, s conj(s) = 1
    t = F.generator()
    u = F.inv(conj(t))
    for s in range(1, q * q):
        if F.mul(s, conj(s)) == 1:
            mat = [[t, 0, 0], [0, s, 0], [0, 0, u]]
            if is_unitary(mat):
                gens.append(act(mat))
                break
    G = FiniteGroup(PermKind(q ** 3 + 1), gens, name=f"psu3:{q}")
    return G


def elemab(p: int, k: int) -> FiniteGroup:
    gens = []
    n = p * k
    for block in range(k):
        perm = list(range(n))
        for i in range(p):
            perm[block * p + i] = block * p + (i + 1) % p
        gens.append(perm)
    return FiniteGroup(PermKind(n), gens, name=f"elemab:{p}:{k}")


_CYCLES_RE = re.compile(r"\(([^()]*)\)")


def _parse_perm(n: int, text: str) -> list[int]:
    perm = list(range(n))
    for cyc in _CYCLES_RE.findall(text):
        pts = [int(x) for x in re.split(r"[,\s]+", cyc.strip()) if x != ""]
        for i, a in enumerate(pts):
            perm[a] = pts[(i + 1) % len(pts)]
    return perm


def automorphism_from_spec(G: FiniteGroup, spec: str):
    """Automorphism presets: identity, frobenius, diag:<entries>, perm-conj:[...],
    or imgs:[gen;gen;...] giving explicit generator images."""
    from .groups import GroupAutomorphism, MatKind
    s = spec.strip()
    low = s.lower()
    if low in ("identity", "id", "inner"):
        return GroupAutomorphism.identity(G)
    if low == "frobenius":
        m = re.fullmatch(r"psl2:(\d+)", G.name)
        if not m or not isinstance(G.kind, PermKind):
            raise UnknownGroupSpec("frobenius preset needs a psl2:q points group")
        return frobenius_on(G, int(m.group(1)))
    if low.startswith("diag:"):
        if not isinstance(G.kind, MatKind):
            raise UnknownGroupSpec("diag automorphisms need a matrix group")
        entries = [int(x) % G.kind.p for x in low[len("diag:"):].split(",")]
        d = G.kind.d
        if len(entries) != d:
            raise UnknownGroupSpec(f"need {d} diagonal entries")
        D = np.zeros((d, d), dtype=np.int64)
        for i, e in enumerate(entries):
            D[i, i] = e
        from .groups import _mat_inverse_mod
        Dinv = np.array(_mat_inverse_mod(D.tolist(), G.kind.p), dtype=np.int64)
        imgs = []
        for g in G.generators:
            m_ = np.asarray(g).reshape(d, d).astype(np.int64)
            img = (D @ m_ @ Dinv) % G.kind.p
            imgs.append(G.kind.canon(img.reshape(-1).astype(np.uint8)))
        return GroupAutomorphism(G, imgs, name=s)
    if low.startswith("imgs:[") and s.endswith("]"):
        body = s[len("imgs:["):-1]
        imgs = []
        for part in body.split(";"):
            part = part.strip()
            if isinstance(G.kind, PermKind):
                imgs.append(np.array(_parse_perm(G.kind.n, part), dtype=G.kind.dtype))
            else:
                entries = [int(x) % G.kind.p for x in re.split(r"[,\s]+", part) if x]
                imgs.append(np.array(entries, dtype=np.uint8))
        return GroupAutomorphism(G, imgs, name="imgs")
    raise UnknownGroupSpec(f"unrecognized automorphism spec {spec!r}")


def group_from_spec(spec: str, size_cap: int = 10_000_000) -> FiniteGroup:
    """Build a FiniteGroup from the mini-language."""
    s = spec.strip()
    low = s.lower()
    if low == "a5":
        return FiniteGroup(PermKind(5), [[1, 2, 3, 4, 0], [1, 2, 0, 3, 4]], name="a5")
    if low == "s5":
        return FiniteGroup(PermKind(5), [[1, 2, 3, 4, 0], [1, 0, 2, 3, 4]], name="s5")
    if low == "s4":
        return FiniteGroup(PermKind(4), [[1, 2, 3, 0], [1, 0, 2, 3]], name="s4")
    if low == "s3":
        return FiniteGroup(PermKind(3), [[1, 2, 0], [1, 0, 2]], name="s3")
    if low == "q8":
        kind = MatKind(3, 2)
        return FiniteGroup(kind, [np.array([0, 2, 1, 0], dtype=np.uint8),
                                  np.array([1, 1, 1, 2], dtype=np.uint8)], name="q8")
    m = re.fullmatch(r"c:(\d+)", low)
    if m:
        n = int(m.group(1))
        return FiniteGroup(PermKind(n), [[(i + 1) % n for i in range(n)]],
                           name=f"c:{n}")
    m = re.fullmatch(r"psl2:(\d+)", low)
    if m:
        q = int(m.group(1))
        fac = _factor(q)
        if len(fac) != 1:
            raise UnknownGroupSpec(f"psl2:{q}: not a prime power")
        if fac[0][1] == 1 and q > 3:
            return _psl2_prime(q)
        return psl2_points(q)
    m = re.fullmatch(r"psl3:(\d+)", low)
    if m:
        return psl3(int(m.group(1)))
    m = re.fullmatch(r"psu3:(\d+)", low)
    if m:
        return psu3(int(m.group(1)))
    m = re.fullmatch(r"elemab:(\d+):(\d+)", low)
    if m:
        return elemab(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"perm:(\d+):\[(.*)\]", s)
    if m:
        n = int(m.group(1))
        gens = [_parse_perm(n, part) for part in m.group(2).split(";") if part.strip()]
        return FiniteGroup(PermKind(n), gens, name=spec, size_cap=size_cap)
    m = re.fullmatch(r"(projmatff|matff):(\d+):(\d+):\[(.*)\]", s)
    if m:
        proj = m.group(1) == "projmatff"
        p, d = int(m.group(2)), int(m.group(3))
        kind = MatKind(p, d, projective=proj)
        gens = []
        for part in m.group(4).split(";"):
            if not part.strip():
                continue
            entries = [int(x) % p for x in re.split(r"[,\s]+", part.strip()) if x != ""]
            if len(entries) != d * d:
                raise UnknownGroupSpec(f"matrix needs {d*d} entries, got {len(entries)}")
            gens.append(np.array(entries, dtype=np.uint8))
        return FiniteGroup(kind, gens, name=spec, size_cap=size_cap)
    raise UnknownGroupSpec(f"unrecognized group spec {spec!r}")
