"""Random configuration-space specs for the property checks.

A spec pairs a source (n-1 points, group G, module M) with a target
(n points, group H, module M') and an equivariant coefficient map, so both
∂∂ = 0 and the commutation of the stabilisation map can be checked.
Large complexes are checked in an initial window of degrees, chosen so
that the total number of cells stays under a budget; ∂∂ = 0 is always
checked through degree 2 at least.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from monostab.fn import ConfigSpec, FNComplex, StabilisationMap
from monostab.fn.cells import cells_by_degree
from monostab.linalg import GF, QQ, ZZ, IntMatrix
from monostab.rep import (
    SubgroupSpec,
    fiber_module,
    permutation_module,
    sign_module,
    trivial_module,
    unit_insertion,
)

RINGS = [ZZ, QQ, GF(2), GF(3)]
CELL_BUDGET = 6000


def random_subgroup(rng: random.Random, n: int) -> SubgroupSpec:
    kind = rng.choice(["full", "trivial", "young", "cyclic"])
    if kind == "full" or n < 2:
        return SubgroupSpec.symmetric(n)
    if kind == "trivial":
        return SubgroupSpec.trivial(n)
    if kind == "young":
        cut = rng.randint(1, n - 1)
        return SubgroupSpec.young([cut, n - cut])
    perm = list(range(n))
    rng.shuffle(perm)
    return SubgroupSpec.generated_by(n, [tuple(perm)])


def inside(rng: random.Random, K: SubgroupSpec) -> SubgroupSpec:
    """K itself, the trivial group, or a cyclic subgroup of K."""
    choice = rng.choice(["same", "trivial", "cyclic"])
    if choice == "same" or K.order == 1:
        return K
    if choice == "trivial":
        return SubgroupSpec.trivial(K.n)
    return SubgroupSpec.generated_by(K.n, [rng.choice(K.elements)])


@dataclass
class StabilisationCase:
    src: ConfigSpec
    dst: ConfigSpec
    phi: IntMatrix
    top: int

    def describe(self) -> str:
        return (
            f"n={self.src.n}->{self.dst.n} d={self.dst.d} ring={self.dst.ring.name} "
            f"|G|={self.src.group.order} |H|={self.dst.group.order} "
            f"module={self.dst.module.name} degrees<={self.top}"
        )

    def check(self) -> None:
        A = FNComplex(self.src, self.top + 1)
        B = FNComplex(self.dst, self.top + 1)
        A.check_dd()
        B.check_dd()
        StabilisationMap(A, B, self.phi).check(range(1, self.top + 2))


def degree_window(n: int, d: int, orbit_count: int, dim: int) -> int:
    top = max(n - 1, 0) * (d - 1)
    cells = cells_by_degree(n, d)
    total = 0
    p = 0
    while p < top:
        total += len(cells[p + 1]) * orbit_count * dim
        if total > CELL_BUDGET and p >= 2:
            break
        p += 1
    return p


def random_stabilisation_pair(rng: random.Random, n_max: int = 6) -> StabilisationCase:
    n = rng.randint(1, n_max)
    d = rng.choice([2, 3])
    ring = rng.choice(RINGS)
    kind = rng.choice(["trivial", "sign", "permutation", "fibre"])
    if kind == "fibre":
        r = rng.randint(0, min(2, n - 1))
        lam = tuple(rng.choice([2, 3]) for _ in range(r))
        q = rng.randint(0, 2)
        tabs = {1: (1, 1), 2: (1, 1), 3: (1, 0, 1)}
        MA = fiber_module(lam, 1, n - 1 - r, tabs, (1,), q, ring)
        MB = fiber_module(lam, 1, n - r, tabs, (1,), q, ring)
        src = ConfigSpec(n - 1, d, MA.group, MA, ring)
        dst = ConfigSpec(n, d, MB.group, MB, ring)
        phi = unit_insertion(MA, MB)
    else:
        H = random_subgroup(rng, n)
        G = inside(rng, H.point_stabilizer())
        if kind == "trivial":
            MA, MB = trivial_module(G, ring), trivial_module(H, ring)
            phi = IntMatrix.identity(1)
        elif kind == "sign":
            MA, MB = sign_module(G, ring), sign_module(H, ring)
            phi = IntMatrix.identity(1)
        else:
            MA, MB = permutation_module(n - 1, ring, G), permutation_module(n, ring, H)
            phi = IntMatrix(n, n - 1, {(i, i): 1 for i in range(n - 1)})
        src = ConfigSpec(n - 1, d, G, MA, ring)
        dst = ConfigSpec(n, d, H, MB, ring)
    orbits = len(dst.group.orbit_reps())
    top = degree_window(n, d, orbits, max(dst.module.dim, 1))
    return StabilisationCase(src, dst, phi, top)
