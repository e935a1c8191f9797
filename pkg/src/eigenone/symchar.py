"""Combinatorial character values for the Coxeter groups of types A and B.

Type A values use the Murnaghan-Nakayama rule on partitions; the
hyperoctahedral groups use the wreath-product version on bipartitions.
Everything returns plain integers.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial


Partition = tuple[int, ...]
Bipartition = tuple[Partition, Partition]


def partitions(n: int, _max: int | None = None) -> list[Partition]:
    """Partitions of n in descending lexicographic order."""
    if n == 0:
        return [()]
    if _max is None:
        _max = n
    out: list[Partition] = []
    for head in range(min(n, _max), 0, -1):
        for rest in partitions(n - head, head):
            out.append((head,) + rest)
    return out


def conjugate_partition(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def hook_degree(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam."""
    n = sum(lam)
    if n == 0:
        return 1
    conj = conjugate_partition(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return factorial(n) // prod


def _strip_removals(lam: Partition, k: int) -> list[tuple[Partition, int]]:
    """All ways to remove a length-k border strip: (new shape, height)."""
    if k == 0:
        return [(lam, 0)]
    L = len(lam)
    beta = [lam[i] + (L - 1 - i) for i in range(L)]
    bset = set(beta)
    out = []
    for i, b in enumerate(beta):
        if b >= k and (b - k) not in bset:
            height = sum(1 for c in beta if b - k < c < b)
            nb = sorted(beta, reverse=True)
            nb.remove(b)
            nb.append(b - k)
            nb.sort(reverse=True)
            shape = tuple(x - (L - 1 - j) for j, x in enumerate(nb))
            shape = tuple(x for x in shape if x > 0)
            out.append((shape, height))
    return out


@lru_cache(maxsize=None)
def symmetric_character(lam: Partition, mu: Partition) -> int:
    """chi^lam evaluated at the class of cycle type mu in S_n."""
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{lam}| != |{mu}|")
    if not lam:
        return 1
    k, rest = mu[0], tuple(mu[1:])
    total = 0
    for shape, height in _strip_removals(lam, k):
        total += (-1) ** height * symmetric_character(shape, rest)
    return total


def cycle_type_centralizer(mu: Partition) -> int:
    z = 1
    mult: dict[int, int] = {}
    for part in mu:
        mult[part] = mult.get(part, 0) + 1
    for k, m in mult.items():
        z *= k ** m * factorial(m)
    return z


def symmetric_class_size(mu: Partition) -> int:
    return factorial(sum(mu)) // cycle_type_centralizer(mu)


# ---------------------------------------------------------------------------
# hyperoctahedral groups W(B_d) = C2 wr S_d


def bipartitions(d: int) -> list[Bipartition]:
    out = []
    for a in range(d, -1, -1):
        for alpha in partitions(a):
            for beta in partitions(d - a):
                out.append((alpha, beta))
    return out


def signed_class_types(d: int) -> list[Bipartition]:
    """Classes of W(B_d): (positive cycle type, negative cycle type)."""
    return bipartitions(d)


def signed_class_centralizer(cls: Bipartition) -> int:
    z = 1
    for part in cls:
        mult: dict[int, int] = {}
        for k in part:
            mult[k] = mult.get(k, 0) + 1
        for k, m in mult.items():
            z *= (2 * k) ** m * factorial(m)
    return z


def hyperoctahedral_order(d: int) -> int:
    return 2 ** d * factorial(d)


def signed_class_size(d: int, cls: Bipartition) -> int:
    return hyperoctahedral_order(d) // signed_class_centralizer(cls)


@lru_cache(maxsize=None)
def hyperoctahedral_character(label: Bipartition, cls: Bipartition) -> int:
    """chi^{(alpha,beta)} of W(B_d) at the class (pos cycles, neg cycles).

    The first label component transforms trivially under the sign factors,
    the second by the product of signs; so ((d), ()) is the trivial
    character and ((), (1^d)) the character of the sign-flip product.
    """
    alpha, beta = label
    pos, neg = cls
    if sum(alpha) + sum(beta) != sum(pos) + sum(neg):
        raise ValueError("size mismatch between label and class")
    if not pos and not neg:
        return 1
    if pos:
        k, rest, eps = pos[0], (pos[1:], neg), 1
    else:
        k, rest, eps = neg[0], (pos, neg[1:]), -1
    total = 0
    for shape, height in _strip_removals(alpha, k):
        total += (-1) ** height * hyperoctahedral_character((shape, beta), rest)
    for shape, height in _strip_removals(beta, k):
        total += eps * (-1) ** height * hyperoctahedral_character((alpha, shape), rest)
    return total


def bipartition_degree(label: Bipartition) -> int:
    alpha, beta = label
    a, b = sum(alpha), sum(beta)
    return (factorial(a + b) // (factorial(a) * factorial(b))
            * hook_degree(alpha) * hook_degree(beta))


# ---------------------------------------------------------------------------
# inductions used by the verification suites


def mult_trivial_from_transposition_B(label: Bipartition) -> int:
    """<Ind_{S2}^{W(B_d)}(1), chi^label> for S2 generated by a plain
    transposition (the reflection at the far end from the double bond)."""
    d = sum(label[0]) + sum(label[1])
    if d < 2:
        raise ValueError("need d >= 2")
    chi1 = bipartition_degree(label)
    chit = hyperoctahedral_character(label, ((2,) + (1,) * (d - 2), ()))
    if (chi1 + chit) % 2:
        raise ArithmeticError("multiplicity is not an integer")
    return (chi1 + chit) // 2


def mult_signsign_from_s2s2(lam: Partition) -> int:
    """<Ind_{S2 x S2}^{S_d}(sign x sign), chi^lam>."""
    d = sum(lam)
    if d < 4:
        raise ValueError("need d >= 4")
    v1 = hook_degree(lam)
    vt = symmetric_character(lam, (2,) + (1,) * (d - 2))
    vtt = symmetric_character(lam, (2, 2) + (1,) * (d - 4))
    num = v1 - 2 * vt + vtt
    if num % 4:
        raise ArithmeticError("multiplicity is not an integer")
    return num // 4


def symmetric_table(d: int) -> tuple[list[Partition], list[list[int]]]:
    """Classes (cycle types) and full character value matrix of S_d."""
    cls = partitions(d)
    labels = partitions(d)
    rows = [[symmetric_character(lam, mu) for mu in cls] for lam in labels]
    return cls, rows


def hyperoctahedral_table(d: int) -> tuple[list[Bipartition], list[Bipartition],
                                           list[list[int]]]:
    """Classes, labels and value matrix of W(B_d)."""
    cls = signed_class_types(d)
    labels = bipartitions(d)
    rows = [[hyperoctahedral_character(lab, c) for c in cls] for lab in labels]
    return cls, labels, rows
