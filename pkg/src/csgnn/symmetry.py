"""Orbits of (set, index) pairs and quadruples under simultaneous node
relabeling.

A relabeling acts on a super-node S (a subset of node ids) elementwise and on
plain indices directly, so the orbit of a pair (S, i) is determined by |S| and
whether i lies in S, and the orbit of a quadruple (S1, i1, S2, i2) by six
conditions: whether i1 = i2, the sizes |S1|, |S2|, |S1 ∩ S2|, and the four
membership bits of i1/i2 in S1/S2. Orbit codes are dense integers assigned by
lexicographic enumeration of the realizable condition tuples for a given node
count n; codes are recomputed per n and are not stable across different n.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractError

IGN3_BLOCK_PARAMS = 203  # reference constant: ordered-triple scheme on the same block


@dataclass(frozen=True, order=True)
class PairOrbit:
    k: int
    member: bool


@dataclass(frozen=True, order=True)
class QuadOrbit:
    i_equal: bool
    k1: int
    k2: int
    k_cap: int
    i1_in_s1: bool
    i2_in_s2: bool
    i1_in_s2: bool
    i2_in_s1: bool


def classify_pair(s, i: int, n: int) -> PairOrbit:
    s = frozenset(s)
    if not s:
        raise ContractError("super-node must be non-empty")
    if not s <= frozenset(range(n)) or not 0 <= i < n:
        raise ContractError("ids out of range")
    return PairOrbit(len(s), i in s)


def classify_quad(s1, i1: int, s2, i2: int, n: int) -> QuadOrbit:
    s1 = frozenset(s1)
    s2 = frozenset(s2)
    if not s1 or not s2:
        raise ContractError("super-nodes must be non-empty")
    universe = frozenset(range(n))
    if not (s1 <= universe and s2 <= universe and 0 <= i1 < n and 0 <= i2 < n):
        raise ContractError("ids out of range")
    return QuadOrbit(
        i_equal=i1 == i2,
        k1=len(s1),
        k2=len(s2),
        k_cap=len(s1 & s2),
        i1_in_s1=i1 in s1,
        i2_in_s2=i2 in s2,
        i1_in_s2=i1 in s2,
        i2_in_s1=i2 in s1,
    )


def _region(in_s1: bool, in_s2: bool) -> int:
    # 0: S1∩S2, 1: S1 only, 2: S2 only, 3: outside both
    if in_s1 and in_s2:
        return 0
    if in_s1:
        return 1
    if in_s2:
        return 2
    return 3


def is_realizable_quad(orbit: QuadOrbit, n: int) -> bool:
    """True iff some concrete (S1, i1, S2, i2) over [n] has these conditions.

    Checked constructively: the four regions S1∩S2, S1\\S2, S2\\S1 and the
    complement must have room for the index placements."""
    k1, k2, kc = orbit.k1, orbit.k2, orbit.k_cap
    if not (1 <= k1 <= n and 1 <= k2 <= n):
        return False
    if kc < 0 or kc > min(k1, k2) or k1 + k2 - kc > n:
        return False
    sizes = [kc, k1 - kc, k2 - kc, n - (k1 + k2 - kc)]
    r1 = _region(orbit.i1_in_s1, orbit.i1_in_s2)
    r2 = _region(orbit.i2_in_s1, orbit.i2_in_s2)
    if orbit.i_equal:
        return r1 == r2 and sizes[r1] >= 1
    if r1 == r2:
        return sizes[r1] >= 2
    return sizes[r1] >= 1 and sizes[r2] >= 1


@lru_cache(maxsize=None)
def pair_orbits(n: int) -> tuple:
    """All realizable pair orbits for n, in canonical order."""
    out = []
    for k in range(1, n + 1):
        out.append(PairOrbit(k, True))
        if k < n:  # i outside S impossible when S = [n]
            out.append(PairOrbit(k, False))
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def quad_orbits(n: int) -> tuple:
    """All realizable quadruple orbits for n, in canonical order."""
    out = []
    bools = (False, True)
    for k1 in range(1, n + 1):
        for k2 in range(1, n + 1):
            for kc in range(max(0, k1 + k2 - n), min(k1, k2) + 1):
                for i_equal in bools:
                    for m1 in bools:
                        for m2 in bools:
                            for d1 in bools:
                                for d2 in bools:
                                    orb = QuadOrbit(i_equal, k1, k2, kc, m1, m2, d1, d2)
                                    if is_realizable_quad(orb, n):
                                        out.append(orb)
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _pair_code_table(n: int) -> dict:
    return {orb: idx for idx, orb in enumerate(pair_orbits(n))}


@lru_cache(maxsize=None)
def _quad_code_table(n: int) -> dict:
    return {orb: idx for idx, orb in enumerate(quad_orbits(n))}


def pair_orbit_code(orbit: PairOrbit, n: int) -> int:
    return _pair_code_table(n)[orbit]


def quad_orbit_code(orbit: QuadOrbit, n: int) -> int:
    try:
        return _quad_code_table(n)[orbit]
    except KeyError:
        raise ContractError(f"orbit {orbit} not realizable for n={n}") from None


def num_quad_orbits(n: int) -> int:
    return len(quad_orbits(n))


def _subsets(n: int, max_size: int):
    for k in range(1, max_size + 1):
        for s in itertools.combinations(range(n), k):
            yield frozenset(s)


def _apply_pair(perm, elem):
    s, i = elem
    return (frozenset(perm[x] for x in s), perm[i])


_BRUTE_FORCE_BUDGET = 20_000_000


def brute_force_orbits(n: int, mode: str, max_set_size: int | None = None) -> list:
    """Orbit partition of the (S, i) pair space (mode="pair") or its square
    (mode="quad") computed by direct group action, no condition tuples.

    Applies every one of the n! relabelings when that stays within budget;
    otherwise walks the closure of two group generators (a transposition and
    the full cycle), which yields the same partition. Returns a list of
    frozensets of index tuples.
    """
    if n > 7:
        raise ContractError("brute-force orbit enumeration refuses n > 7")
    if mode not in ("pair", "quad"):
        raise ContractError(f"unknown mode: {mode!r}")
    if max_set_size is None:
        max_set_size = n if mode == "pair" else min(3, n)
    pair_space = [(s, i) for s in _subsets(n, max_set_size) for i in range(n)]
    if mode == "pair":
        space = pair_space
    else:
        space = [(a, b) for a in pair_space for b in pair_space]
    index_of = {elem: j for j, elem in enumerate(space)}

    parent = list(range(len(space)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    def apply(perm, elem):
        if mode == "pair":
            return _apply_pair(perm, elem)
        return (_apply_pair(perm, elem[0]), _apply_pair(perm, elem[1]))

    import math

    if math.factorial(n) * len(space) <= _BRUTE_FORCE_BUDGET:
        perms = itertools.permutations(range(n))
    else:
        swap = list(range(n))
        swap[0], swap[1] = 1, 0
        cycle = [(i + 1) % n for i in range(n)]
        perms = [tuple(swap), tuple(cycle)]
    for perm in perms:
        for j, elem in enumerate(space):
            union(j, index_of[apply(perm, elem)])

    groups = {}
    for j, elem in enumerate(space):
        groups.setdefault(find(j), []).append(elem)
    return [frozenset(members) for members in groups.values()]


def basis_tensor(orbit, n: int) -> np.ndarray:
    """0/1 indicator of the orbit over the index space with subsets encoded as
    bitmasks (row 0 = empty set stays zero). Pair orbits give a (2^n, n)
    tensor, quadruple orbits a (2^n, n, 2^n, n) tensor."""
    if n > 7:
        raise ContractError("basis tensors materialized only for n <= 7")
    masks = [(mask, frozenset(i for i in range(n) if mask >> i & 1)) for mask in range(1, 1 << n)]
    if isinstance(orbit, PairOrbit):
        out = np.zeros((1 << n, n), dtype=np.int8)
        for mask, s in masks:
            if len(s) != orbit.k:
                continue
            for i in range(n):
                if classify_pair(s, i, n) == orbit:
                    out[mask, i] = 1
        return out
    if isinstance(orbit, QuadOrbit):
        out = np.zeros((1 << n, n, 1 << n, n), dtype=np.int8)
        for m1, s1 in masks:
            if len(s1) != orbit.k1:
                continue
            for m2, s2 in masks:
                if len(s2) != orbit.k2 or len(s1 & s2) != orbit.k_cap:
                    continue
                for i1 in range(n):
                    for i2 in range(n):
                        if classify_quad(s1, i1, s2, i2, n) == orbit:
                            out[m1, i1, m2, i2] = 1
        return out
    raise ContractError(f"not an orbit: {orbit!r}")


def quad_block_orbit_count(n: int, block_size: int) -> int:
    """Distinct quadruple orbits with |S1| = |S2| = block_size."""
    seen = set()
    for s1 in itertools.combinations(range(n), block_size):
        for s2 in itertools.combinations(range(n), block_size):
            for i1 in range(n):
                for i2 in range(n):
                    seen.add(classify_quad(s1, i1, s2, i2, n))
    return len(seen)


def pair_block_orbit_count(n: int, block_size: int) -> int:
    """Distinct pair orbits with |S| = block_size."""
    seen = set()
    for s in itertools.combinations(range(n), block_size):
        for i in range(n):
            seen.add(classify_pair(s, i, n))
    return len(seen)


def param_count_comparison(n: int, block_size: int = 2) -> tuple:
    """(orbit parameters in the size-`block_size` weight block, parameters the
    ordered-triple reference scheme spends on the same block)."""
    return quad_block_orbit_count(n, block_size), IGN3_BLOCK_PARAMS
