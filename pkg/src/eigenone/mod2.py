"""Weyl-group orbits on the character lattice mod 2 of adjoint groups.

For adjoint types the lattice X(T)/2X(T) has the simple roots as a basis,
so vectors are bitmasks of length rank; the simple reflections act by
s_j : v -> v + <v, a_j^vee> a_j reduced mod 2, and a diagram automorphism
acts by permuting basis bits.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Optional, Sequence

from .cartan import CartanDatum, RootSystem, cartan_datum
from .weyl import diagram_automorphism


@dataclass(frozen=True)
class Mod2Orbit:
    size: int
    representative: tuple[int, ...]
    has_stable_element: Optional[bool]
    stable_witness: Optional[tuple[int, ...]]
    contains_highest_root_image: bool


@dataclass(frozen=True)
class OrbitReport:
    type_name: str
    rank: int
    automorphism: Optional[tuple[int, ...]]
    orbits: tuple[Mod2Orbit, ...]

    def orbit_sizes(self) -> list[int]:
        return [o.size for o in self.orbits]

    def to_jsonable(self) -> dict:
        return {
            "type": self.type_name,
            "rank": self.rank,
            "automorphism": list(self.automorphism) if self.automorphism else None,
            "orbits": [
                {
                    "size": o.size,
                    "representative": list(o.representative),
                    "has_stable_element": o.has_stable_element,
                    "stable_witness": (list(o.stable_witness)
                                       if o.stable_witness is not None else None),
                    "contains_highest_root_image": o.contains_highest_root_image,
                }
                for o in self.orbits
            ],
        }


def _bit(v: int, j: int) -> int:
    return (v >> j) & 1


def weyl_orbits_mod2(datum: CartanDatum | str, iota=None) -> OrbitReport:
    """Orbits of W on X(T)/2X(T) for the adjoint group of the given type."""
    if isinstance(datum, str):
        datum = cartan_datum(datum)
    r = datum.rank
    cart = datum.cartan
    node_perm = None
    if iota is not None:
        node_perm = diagram_automorphism(datum, iota)

    def reflect(v: int, j: int) -> int:
        pairing = sum(_bit(v, i) * cart[i][j] for i in range(r)) % 2
        return v ^ (pairing << j)

    def apply_iota(v: int) -> int:
        out = 0
        for i in range(r):
            if _bit(v, i):
                out |= 1 << node_perm[i]
        return out

    rs = RootSystem(datum)
    hr = rs.roots[rs.highest_root_index()] if datum.is_irreducible() else None
    hr_mask = sum((c % 2) << i for i, c in enumerate(hr)) if hr is not None else None

    seen = [False] * (1 << r)
    orbits: list[Mod2Orbit] = []
    for start in range(1 << r):
        if seen[start]:
            continue
        members = [start]
        seen[start] = True
        stack = [start]
        while stack:
            v = stack.pop()
            for j in range(r):
                w = reflect(v, j)
                if not seen[w]:
                    seen[w] = True
                    members.append(w)
                    stack.append(w)
        has_stable = None
        witness = None
        if node_perm is not None:
            stable = [v for v in members if apply_iota(v) == v]
            has_stable = bool(stable)
            if stable:
                witness = min(stable)
        orbits.append(Mod2Orbit(
            size=len(members),
            representative=tuple(_bit(min(members), i) for i in range(r)),
            has_stable_element=has_stable,
            stable_witness=(tuple(_bit(witness, i) for i in range(r))
                            if witness is not None else None),
            contains_highest_root_image=(hr_mask in members
                                         if hr_mask is not None else False),
        ))
    orbits.sort(key=lambda o: (o.size, o.representative))
    total = sum(o.size for o in orbits)
    if total != 1 << r:
        raise ArithmeticError("orbit sizes do not sum to 2^rank")
    return OrbitReport(type_name=datum.name, rank=r,
                       automorphism=tuple(node_perm) if node_perm else None,
                       orbits=tuple(orbits))


# ---------------------------------------------------------------------------
# type A order-2 torus character combinatorics


@dataclass(frozen=True)
class SubsetOrbit:
    k: int                       # orbit of subsets with |I| in {k, d-k}
    size: int
    has_stable_representative: bool
    stable_witness: Optional[tuple[int, ...]]


@dataclass(frozen=True)
class TypeAOrbitReport:
    d: int
    orbits: tuple[SubsetOrbit, ...]

    def to_jsonable(self) -> dict:
        return {"d": self.d,
                "orbits": [{"k": o.k, "size": o.size,
                            "has_stable_representative": o.has_stable_representative,
                            "stable_witness": (list(o.stable_witness)
                                               if o.stable_witness else None)}
                           for o in self.orbits]}


def typeA_order2_char_orbits(d: int) -> TypeAOrbitReport:
    """Orbits of subsets I of {1..d} modulo complement, with the reversal
    action I -> {d+1-i}; two subsets are equivalent iff |I| = |J| or
    |I| = d - |J|, and an orbit has a reversal-stable representative iff
    d is odd, or d and |I| are both even."""
    if d < 2:
        raise ValueError("need d >= 2")
    orbits = []
    for k in range(d // 2 + 1):
        members = []
        for mask in range(1 << d):
            pc = bin(mask).count("1")
            if pc == k or pc == d - k:
                members.append(mask)
        stable = []
        for mask in members:
            rev = 0
            for i in range(d):
                if (mask >> i) & 1:
                    rev |= 1 << (d - 1 - i)
            comp = ((1 << d) - 1) ^ rev
            if rev == mask or comp == mask:
                stable.append(mask)
        witness = None
        if stable:
            w = min(stable)
            witness = tuple(i + 1 for i in range(d) if (w >> i) & 1)
        orbits.append(SubsetOrbit(k=k, size=len(members),
                                  has_stable_representative=bool(stable),
                                  stable_witness=witness))
    return TypeAOrbitReport(d=d, orbits=tuple(orbits))


def typeA_stability_criterion(d: int, k: int) -> bool:
    """The stability rule: d odd, or d and k both even."""
    return d % 2 == 1 or (d % 2 == 0 and k % 2 == 0)
