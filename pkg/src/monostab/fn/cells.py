"""Fox-Neuwirth cells of ordered configuration spaces of R^d.

A cell is a pair ``(tau, w)``: ``tau`` lists the point labels in
lexicographic order of their coordinates and ``w[i]`` is the number of
leading coordinates shared by the i-th and (i+1)-th point.  Its dimension
is ``n*d - sum(w)``.

Grouping consecutive points by shared prefixes gives a rooted tree.  A node
at level ``l`` is a maximal run of points with all separators ``>= l``; its
children split the run at separators equal to ``l``, and its parameters are
the coordinate-``l`` values of its children.  Cells are oriented by listing
parameters depth first (a node's own values, then each child subtree), so
relabelling points preserves orientation.

Faces are the codimension-one degenerations in the one-point
compactification: two adjacent children of a node collide, and the
grandchildren of the merged pair interleave in every possible way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

Depths = tuple[int, ...]


@dataclass(frozen=True)
class FNCell:
    tau: tuple[int, ...]
    w: Depths
    d: int

    def __post_init__(self) -> None:
        n = len(self.tau)
        if sorted(self.tau) != list(range(n)):
            raise ValueError("tau must be a permutation of the labels")
        if len(self.w) != max(n - 1, 0):
            raise ValueError("need n - 1 depths")
        if any(not 0 <= x < self.d for x in self.w):
            raise ValueError("depths lie in 0..d-1")

    @property
    def n(self) -> int:
        return len(self.tau)

    @property
    def dimension(self) -> int:
        return self.n * self.d - sum(self.w)


@dataclass
class _Node:
    level: int
    lo: int
    hi: int  # inclusive range of positions
    children: list["_Node"]
    offset: int = 0  # index of this node's first parameter in depth-first order
    size: int = 0  # parameters in the subtree


def _build(w: Depths, d: int, lo: int, hi: int, level: int) -> _Node:
    if level == d:
        return _Node(level, lo, hi, [])
    cuts = [i for i in range(lo, hi) if w[i] == level]
    bounds = [lo] + [c + 1 for c in cuts]
    ends = cuts + [hi]
    kids = [_build(w, d, a, b, level + 1) for a, b in zip(bounds, ends)]
    return _Node(level, lo, hi, kids)


def _number(node: _Node, start: int) -> int:
    node.offset = start
    pos = start + len(node.children)
    for ch in node.children:
        pos = _number(ch, pos)
    node.size = pos - start
    return pos


def cell_tree(w: Depths, d: int, n: int) -> _Node:
    root = _build(w, d, 0, n - 1, 0)
    _number(root, 0)
    return root


def _walk(node: _Node):
    yield node
    for ch in node.children:
        yield from _walk(ch)


@lru_cache(maxsize=None)
def faces(w: Depths, d: int) -> tuple[tuple[Depths, tuple[int, ...], int], ...]:
    """Faces of every cell with depth vector ``w``.

    Returns triples ``(w2, pi, eps)``: the cell ``(tau, w)`` has the face
    ``(tau∘pi, w2)`` (that is ``tau2[k] = tau[pi[k]]``) with incidence sign
    ``eps``.  Only ``w`` matters, so the result is shared by all labellings.
    """
    n = len(w) + 1
    if n < 2:
        return ()
    root = cell_tree(w, d, n)
    out = []
    for P in _walk(root):
        m = P.level
        if m > d - 2 or len(P.children) < 2:
            continue
        for t in range(len(P.children) - 1):
            A, B = P.children[t], P.children[t + 1]
            alphas, betas = A.children, B.children
            p, q = len(alphas), len(betas)
            S_A = sum(a.size for a in alphas)
            base = -1 if (P.offset + t + 1) % 2 == 0 else 1  # -(-1)^{pos(v_B)-1}
            if (q * S_A) % 2:
                base = -base
            for apos in itertools.combinations(range(p + q), p):
                aset = set(apos)
                order = []
                ai = bi = 0
                for k in range(p + q):
                    if k in aset:
                        order.append(("a", ai))
                        ai += 1
                    else:
                        order.append(("b", bi))
                        bi += 1
                # inverted pairs: beta_j placed before alpha_i
                sgn = base
                seen_b: list[int] = []
                for kind, idx in order:
                    if kind == "b":
                        seen_b.append(idx)
                    else:
                        for j in seen_b:
                            # one transposition of values, Koszul sign of subtrees
                            if (1 + alphas[idx].size * betas[j].size) % 2:
                                sgn = -sgn
                blocks = [alphas[i] if k == "a" else betas[i] for k, i in order]
                pi = list(range(A.lo))
                w2 = list(w)
                for bi_, node in enumerate(blocks):
                    pi.extend(range(node.lo, node.hi + 1))
                    start = len(pi) - (node.hi - node.lo + 1)
                    for k in range(node.hi - node.lo):
                        w2[start + k] = w[node.lo + k]
                    if bi_ < len(blocks) - 1:
                        w2[len(pi) - 1] = m + 1
                pi.extend(range(B.hi + 1, n))
                out.append((tuple(w2), tuple(pi), sgn))
    return tuple(out)


def depth_vectors(n: int, d: int, total: int | None = None, max_total: int | None = None):
    """All depth vectors of length n-1 (optionally with fixed or bounded sum), in lex order."""
    k = max(n - 1, 0)
    for w in itertools.product(range(d), repeat=k):
        s = sum(w)
        if total is not None and s != total:
            continue
        if max_total is not None and s > max_total:
            continue
        yield w


def cells_by_degree(n: int, d: int, max_degree: int | None = None) -> dict[int, list[Depths]]:
    """Depth vectors grouped by ``sum(w)``, the homological degree after duality."""
    top = max(n - 1, 0) * (d - 1)
    if max_degree is not None:
        top = min(top, max_degree)
    out: dict[int, list[Depths]] = {p: [] for p in range(top + 1)}
    for w in depth_vectors(n, d, max_total=top):
        out[sum(w)].append(w)
    return out
