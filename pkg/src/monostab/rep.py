"""Representations of subgroups of the symmetric group.

Permutations are tuples ``g`` of 0-based images, ``g[i]`` being the image of
``i``; composition ``compose(a, b)`` is ``a ∘ b``.  Groups act on label
tuples by ``g·(t_1, ..., t_n) = (g(t_1), ..., g(t_n))``.

The fibre modules are Künneth products of graded pieces where a permutation
moves the class in slot ``j`` to slot ``g(j)`` with the Koszul sign of the
reordering.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from math import factorial, prod
from typing import Callable, Iterable, Mapping, Sequence

from .linalg import QQ, IntMatrix, Ring, rank

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(a[i] for i in b)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, gi in enumerate(g):
        out[gi] = i
    return tuple(out)


def transposition(n: int, i: int, j: int) -> Perm:
    g = list(range(n))
    g[i], g[j] = g[j], g[i]
    return tuple(g)


def sign(g: Perm) -> int:
    seen = [False] * len(g)
    s = 1
    for i in range(len(g)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = g[j]
                length += 1
            if length % 2 == 0:
                s = -s
    return s


def act_on_labels(g: Perm, labels: Sequence[int]) -> tuple[int, ...]:
    return tuple(g[t] for t in labels)


def is_permutation(g: Sequence[int], n: int) -> bool:
    return len(g) == n and sorted(g) == list(range(n))


def from_one_based(images: Sequence[int]) -> Perm:
    return tuple(i - 1 for i in images)


def to_one_based(g: Perm) -> tuple[int, ...]:
    return tuple(i + 1 for i in g)


def from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> Perm:
    """Build a permutation from 1-based cycles, e.g. ``[(1, 2, 3)]``."""
    g = list(range(n))
    for cyc in cycles:
        cyc = list(cyc)
        if len(set(cyc)) != len(cyc) or any(not 1 <= a <= n for a in cyc):
            raise ValueError(f"bad cycle {tuple(cyc)!r} on {n} points")
        if not cyc:
            continue
        for a, b in zip(cyc, cyc[1:] + [cyc[0]]):
            g[a - 1] = b - 1
    if not is_permutation(g, n):
        raise ValueError(f"cycles {cycles!r} do not define a permutation of {n} points")
    return tuple(g)


@dataclass(frozen=True)
class SubgroupSpec:
    """A subgroup of Σ_n given by generators.

    When ``colors`` is set the group is the full stabiliser of that coloring
    of the labels (a Young subgroup), which allows fast orbit computations.
    """

    n: int
    generators: tuple[Perm, ...]
    colors: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        for g in self.generators:
            if not is_permutation(g, self.n):
                raise ValueError(f"{g!r} is not a permutation of {self.n} points")
        if self.colors is not None:
            if len(self.colors) != self.n:
                raise ValueError("coloring must have one entry per label")
            for g in self.generators:
                if any(self.colors[g[i]] != self.colors[i] for i in range(self.n)):
                    raise ValueError("generator does not preserve the coloring")

    # constructors

    @classmethod
    def stabilizer(cls, colors: Sequence[int]) -> "SubgroupSpec":
        colors = tuple(colors)
        n = len(colors)
        gens = []
        last: dict[int, int] = {}
        for i, c in enumerate(colors):
            if c in last:
                gens.append(transposition(n, last[c], i))
            last[c] = i
        return cls(n, tuple(gens), colors)

    @classmethod
    def symmetric(cls, n: int) -> "SubgroupSpec":
        return cls.stabilizer((0,) * n)

    @classmethod
    def trivial(cls, n: int) -> "SubgroupSpec":
        return cls.stabilizer(tuple(range(n)))

    @classmethod
    def young(cls, sizes: Sequence[int]) -> "SubgroupSpec":
        """Σ_{a_1} × Σ_{a_2} × ... acting on consecutive blocks."""
        colors = [b for b, s in enumerate(sizes) for _ in range(s)]
        return cls.stabilizer(colors)

    @classmethod
    def generated_by(cls, n: int, generators: Iterable[Sequence[int]]) -> "SubgroupSpec":
        return cls(n, tuple(tuple(g) for g in generators))

    # group data

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        if self.colors is not None:
            return tuple(sorted(self._color_elements()))
        e = identity(self.n)
        seen = {e}
        queue = deque([e])
        while queue:
            h = queue.popleft()
            for s in self.generators:
                k = compose(s, h)
                if k not in seen:
                    seen.add(k)
                    queue.append(k)
        return tuple(sorted(seen))

    def _color_elements(self) -> Iterable[Perm]:
        classes = self._classes()
        for choice in itertools.product(*(itertools.permutations(c) for c in classes)):
            g = list(range(self.n))
            for cls_, img in zip(classes, choice):
                for a, b in zip(cls_, img):
                    g[a] = b
            yield tuple(g)

    def _classes(self) -> list[list[int]]:
        by: dict[int, list[int]] = {}
        for i, c in enumerate(self.colors or ()):
            by.setdefault(c, []).append(i)
        return [by[c] for c in sorted(by)]

    @cached_property
    def order(self) -> int:
        if self.colors is not None:
            return prod(factorial(len(c)) for c in self._classes())
        return len(self.elements)

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements)

    def contains(self, g: Perm) -> bool:
        if len(g) != self.n:
            return False
        if self.colors is not None:
            return all(self.colors[g[i]] == self.colors[i] for i in range(self.n))
        return g in self._element_set

    def is_subgroup_of(self, other: "SubgroupSpec") -> bool:
        return self.n == other.n and all(other.contains(g) for g in self.generators)

    def point_stabilizer(self) -> "SubgroupSpec":
        """Elements fixing the last label, as a subgroup of Σ_{n-1}."""
        if self.n == 0:
            raise ValueError("empty group has no last label")
        if self.colors is not None:
            return SubgroupSpec.stabilizer(self.colors[:-1])
        last = self.n - 1
        gens = [g[:-1] for g in self.elements if g[last] == last]
        return SubgroupSpec.generated_by(last, gens)

    def extend(self) -> "SubgroupSpec":
        """The same group acting on ``n + 1`` labels, fixing the new one."""
        gens = tuple(g + (self.n,) for g in self.generators)
        if self.colors is not None:
            new = max(self.colors, default=-1) + 1
            return SubgroupSpec(self.n + 1, gens, self.colors + (new,))
        return SubgroupSpec(self.n + 1, gens)

    def left_coset_reps(self, sub: "SubgroupSpec") -> list[Perm]:
        """Representatives ``k`` of the cosets ``k·sub`` of ``sub`` in ``self``."""
        if not sub.is_subgroup_of(self):
            raise ValueError("not a subgroup")
        if sub.order == self.order:
            return [identity(self.n)]
        covered: set[Perm] = set()
        reps = []
        for k in self.elements:
            if k in covered:
                continue
            reps.append(k)
            for g in sub.elements:
                covered.add(compose(k, g))
        return reps

    # orbits on label tuples

    @cached_property
    def _orbit_table(self) -> dict:
        table: dict[tuple, tuple[tuple, Perm]] = {}
        for t in itertools.permutations(range(self.n)):
            if t in table:
                continue
            for g in self.elements:
                table[act_on_labels(g, t)] = (t, g)
        return table

    def orbit_rep(self, labels: Sequence[int]) -> tuple[tuple[int, ...], Perm]:
        """Return ``(rep, g)`` with ``labels = g·rep`` and ``rep`` canonical in its orbit."""
        labels = tuple(labels)
        if self.colors is None:
            return self._orbit_table[labels]
        colors = self.colors
        pools: dict[int, list[int]] = {}
        for i, c in enumerate(colors):
            pools.setdefault(c, []).append(i)
        nxt = {c: 0 for c in pools}
        rep = []
        for t in labels:
            c = colors[t]
            rep.append(pools[c][nxt[c]])
            nxt[c] += 1
        g = [0] * self.n
        for r, t in zip(rep, labels):
            g[r] = t
        return tuple(rep), tuple(g)

    def orbit_reps(self) -> list[tuple[int, ...]]:
        if self.colors is None:
            return sorted({rep for rep, _ in self._orbit_table.values()})
        out = []
        for cols in sorted(set(itertools.permutations(self.colors))):
            rep, _ = self.orbit_rep(self._fill(cols))
            out.append(rep)
        return out

    def _fill(self, color_seq: Sequence[int]) -> tuple[int, ...]:
        pools: dict[int, list[int]] = {}
        for i, c in enumerate(self.colors or ()):
            pools.setdefault(c, []).append(i)
        nxt = {c: 0 for c in pools}
        out = []
        for c in color_seq:
            out.append(pools[c][nxt[c]])
            nxt[c] += 1
        return tuple(out)

    def describe(self) -> str:
        if self.colors is not None:
            sizes = [len(c) for c in self._classes()]
            if len(sizes) == 1:
                return f"S_{self.n}"
            if all(s == 1 for s in sizes):
                return f"trivial subgroup of S_{self.n}"
            return " x ".join(f"S_{s}" for s in sizes)
        return f"subgroup of S_{self.n} of order {self.order}"


SignedAction = tuple[tuple[int, ...], tuple[int, ...]]


class SigmaModule:
    """A finite-dimensional representation of a subgroup G ≤ Σ_n.

    Either ``generator_matrices`` (one per generator of the group) or a
    ``signed_action`` callable is supplied.  The latter describes modules
    where each group element sends basis vectors to signed basis vectors;
    it returns ``(targets, signs)`` with ``g·e_i = signs[i]·e_{targets[i]}``.
    """

    def __init__(
        self,
        group: SubgroupSpec,
        ring: Ring,
        dim: int,
        generator_matrices: Sequence[IntMatrix] | None = None,
        signed_action: Callable[[Perm], SignedAction] | None = None,
        name: str = "",
    ) -> None:
        if (generator_matrices is None) == (signed_action is None):
            raise ValueError("give exactly one of generator_matrices or signed_action")
        if generator_matrices is not None:
            generator_matrices = tuple(m.reduce(ring) for m in generator_matrices)
            if len(generator_matrices) != len(group.generators):
                raise ValueError("one matrix per generator required")
            for m in generator_matrices:
                if m.shape != (dim, dim):
                    raise ValueError("action matrix has the wrong shape")
        self.group = group
        self.ring = ring
        self.dim = dim
        self.name = name
        self._gens = generator_matrices
        self._signed = signed_action
        self._signed_cache: dict[Perm, SignedAction] = {}
        self._matrix_cache: dict[Perm, IntMatrix] = {}

    def __repr__(self) -> str:
        label = self.name or "module"
        return f"<SigmaModule {label} dim={self.dim} over {self.ring.name} for {self.group.describe()}>"

    @property
    def is_signed_permutation(self) -> bool:
        return self._signed is not None

    def signed(self, g: Perm) -> SignedAction:
        if self._signed is None:
            raise TypeError("module has no signed-permutation action")
        out = self._signed_cache.get(g)
        if out is None:
            out = self._signed(g)
            self._signed_cache[g] = out
        return out

    def matrix_of(self, g: Perm) -> IntMatrix:
        """Matrix of ``g`` acting on column vectors."""
        m = self._matrix_cache.get(g)
        if m is not None:
            return m
        if self._signed is not None:
            targets, signs = self.signed(g)
            m = IntMatrix(self.dim, self.dim, {(t, i): s for i, (t, s) in enumerate(zip(targets, signs))})
            m = m.reduce(self.ring)
            self._matrix_cache[g] = m
            return m
        if not self.group.contains(g):
            raise ValueError(f"{g!r} is not in the group")
        self._fill_matrices()
        return self._matrix_cache[g]

    def _fill_matrices(self) -> None:
        e = identity(self.group.n)
        cache = self._matrix_cache
        cache.setdefault(e, IntMatrix.identity(self.dim).reduce(self.ring))
        queue = deque(cache.keys())
        while queue:
            h = queue.popleft()
            for s, ms in zip(self.group.generators, self._gens):
                k = compose(s, h)
                if k not in cache:
                    cache[k] = (ms @ cache[h]).reduce(self.ring)
                    queue.append(k)

    def generator_matrices(self) -> tuple[IntMatrix, ...]:
        if self._gens is not None:
            return self._gens
        return tuple(self.matrix_of(g) for g in self.group.generators)

    def verify_action(self, words: Iterable[Sequence[int]]) -> bool:
        """Check that products of generators act by products of their matrices.

        Each word is a sequence of generator indices.
        """
        gens = self.group.generators
        mats = self.generator_matrices()
        for word in words:
            g = identity(self.group.n)
            m = IntMatrix.identity(self.dim)
            for idx in word:
                g = compose(gens[idx], g)
                m = (mats[idx] @ m).reduce(self.ring)
            if m != self.matrix_of(g):
                return False
        return True


@dataclass(frozen=True)
class GradedBettiTable:
    """Betti numbers ``b_0, ..., b_top`` of a path-connected space."""

    betti: tuple[int, ...]

    def __post_init__(self) -> None:
        b = tuple(int(x) for x in self.betti)
        object.__setattr__(self, "betti", b)
        if not b or b[0] != 1:
            raise ValueError(f"betti table {b} must start with b_0 = 1 (path-connected space)")
        if any(x < 0 for x in b):
            raise ValueError("betti numbers must be nonnegative")

    @classmethod
    def of(cls, values: Iterable[int]) -> "GradedBettiTable":
        return cls(tuple(values))

    @property
    def top(self) -> int:
        top = 0
        for i, b in enumerate(self.betti):
            if b:
                top = i
        return top

    @property
    def total(self) -> int:
        return sum(self.betti)

    def classes(self) -> list[int]:
        """Degrees of the basis classes, in basis order; class 0 is the unit."""
        return [deg for deg, b in enumerate(self.betti) for _ in range(b)]

    def __getitem__(self, i: int) -> int:
        return self.betti[i] if 0 <= i < len(self.betti) else 0


def _as_table(t) -> GradedBettiTable:
    return t if isinstance(t, GradedBettiTable) else GradedBettiTable(tuple(t))


class KunnethModule(SigmaModule):
    """Degree-q part of H_*(X_1 × ... × X_N × Y) with Σ-action on the X slots.

    Basis vectors are tuples of class indices (one per slot, then Y), listed
    in lexicographic order.  Slots permuted by the group must carry equal
    tables; this is checked.
    """

    def __init__(
        self,
        slot_tables: Sequence[GradedBettiTable],
        y: GradedBettiTable,
        q: int,
        group: SubgroupSpec,
        ring: Ring,
        name: str = "",
    ) -> None:
        if q < 0:
            raise ValueError("q must be nonnegative")
        slot_tables = tuple(_as_table(t) for t in slot_tables)
        y = _as_table(y)
        if group.n != len(slot_tables):
            raise ValueError("group must act on the slots")
        for g in group.generators:
            for i in range(group.n):
                if slot_tables[g[i]] != slot_tables[i]:
                    raise ValueError("group permutes slots carrying different tables")
        self.slot_tables = slot_tables
        self.y = y
        self.q = q
        degs = [t.classes() for t in slot_tables] + [y.classes()]
        self._degs = degs
        basis = []
        # enumerate with a degree budget, lexicographic in class indices
        def rec(k: int, remaining: int, acc: list[int]) -> None:
            if k == len(degs):
                if remaining == 0:
                    basis.append(tuple(acc))
                return
            for idx, dg in enumerate(degs[k]):
                if dg <= remaining:
                    acc.append(idx)
                    rec(k + 1, remaining - dg, acc)
                    acc.pop()

        rec(0, q, [])
        self.basis = basis
        self.index = {b: i for i, b in enumerate(basis)}
        super().__init__(group, ring, len(basis), signed_action=self._act, name=name)

    def degree_of(self, slot: int, cls: int) -> int:
        return self._degs[slot][cls]

    def _act(self, g: Perm) -> SignedAction:
        N = self.group.n
        degs = self._degs
        targets = []
        signs = []
        for b in self.basis:
            new = [0] * (N + 1)
            for j in range(N):
                new[g[j]] = b[j]
            new[N] = b[N]
            s = 0
            odd = [j for j in range(N) if degs[j][b[j]] % 2]
            for a_i in range(len(odd)):
                for b_i in range(a_i + 1, len(odd)):
                    if g[odd[a_i]] > g[odd[b_i]]:
                        s ^= 1
            targets.append(self.index[tuple(new)])
            signs.append(-1 if s else 1)
        return tuple(targets), tuple(signs)


def permutation_module(n: int, ring: Ring, group: SubgroupSpec | None = None) -> SigmaModule:
    group = group or SubgroupSpec.symmetric(n)

    def act(g: Perm) -> SignedAction:
        return tuple(g), (1,) * n

    return SigmaModule(group, ring, n, signed_action=act, name=f"permutation module K^{n}")


def trivial_module(group: SubgroupSpec, ring: Ring, dim: int = 1) -> SigmaModule:
    def act(g: Perm) -> SignedAction:
        return tuple(range(dim)), (1,) * dim

    return SigmaModule(group, ring, dim, signed_action=act, name="trivial")


def sign_module(group: SubgroupSpec, ring: Ring) -> SigmaModule:
    def act(g: Perm) -> SignedAction:
        return (0,), (sign(g),)

    return SigmaModule(group, ring, 1, signed_action=act, name="sign")


def graded_power_module(z, n: int, q: int, field: Ring) -> KunnethModule:
    """H_q(Z^n) with Σ_n permuting the factors (Koszul signs)."""
    z = _as_table(z)
    return KunnethModule(
        [z] * n, GradedBettiTable((1,)), q, SubgroupSpec.symmetric(n), field, name=f"H_{q}(Z^{n})"
    )


def fiber_colors(lambda_weights: Sequence[int], n: int) -> tuple[int, ...]:
    """Coloring whose stabiliser is Σ_λ × Σ_n: λ slots by weight, new slots by 0."""
    return tuple(lambda_weights) + (0,) * n


def fiber_module(
    lambda_weights: Sequence[int],
    c: int,
    n: int,
    betti_per_charge: Mapping[int, object],
    y,
    q: int,
    field: Ring,
) -> KunnethModule:
    """H_q(Z_{k_1} × ... × Z_{k_r} × Z_c^n × Y) as a (Σ_λ × Σ_n)-module."""
    lam = tuple(lambda_weights)
    missing = sorted({k for k in lam + ((c,) if n else ()) if k not in betti_per_charge})
    if missing:
        raise ValueError(f"no Betti table for charge(s) {missing}")
    tables = [_as_table(betti_per_charge[k]) for k in lam] + [_as_table(betti_per_charge[c])] * n
    group = SubgroupSpec.stabilizer(fiber_colors(lam, n))
    return KunnethModule(tables, _as_table(y), q, group, field, name=f"H_{q} fibre")


def unit_insertion(src: KunnethModule, dst: KunnethModule) -> IntMatrix:
    """Insert the unit class into the one new slot (placed after the old slots)."""
    N = src.group.n
    if dst.group.n != N + 1 or dst.q != src.q:
        raise ValueError("target must have exactly one more slot in the same degree")
    entries = {}
    for i, b in enumerate(src.basis):
        new = b[:N] + (0,) + b[N:]
        entries[(dst.index[new], i)] = 1
    return IntMatrix(dst.dim, src.dim, entries)


def reynolds_sum(M: SigmaModule) -> IntMatrix:
    """Σ_{g ∈ G} M(g); the averaging projector up to the factor 1/|G|."""
    acc: dict = {}
    for g in M.group.elements:
        if M.is_signed_permutation:
            targets, signs = M.signed(g)
            for i, (t, s) in enumerate(zip(targets, signs)):
                acc[(t, i)] = acc.get((t, i), 0) + s
        else:
            for k, v in M.matrix_of(g).entries.items():
                acc[k] = acc.get(k, 0) + v
    return IntMatrix(M.dim, M.dim, {k: v for k, v in acc.items() if v})


def invariants(M: SigmaModule) -> int:
    """Dimension of the fixed subspace, via the rank of the Reynolds projector."""
    char = M.ring.characteristic
    if char and M.group.order % char == 0:
        raise ValueError(
            f"characteristic {char} divides |G| = {M.group.order}; averaging is unavailable,"
            " use the orbit complex instead"
        )
    ring = QQ if M.ring.kind == "Z" else M.ring
    return rank(reynolds_sum(M), ring)
