"""The Bass-Serre tree of a free product, with exact integer distances.

Factors sit on a line (factor 0 - factor 1 - ...); vertices are cosets
g*A_f represented canonically (the representative's last syllable, if any,
lies outside factor f).  Vertices g*A_f and h*A_f' are adjacent when the
factors are line-neighbours and the cosets intersect.  For two factors this
is the familiar bipartite tree where the two identity cosets are adjacent.

Distances come from the double-coset reduction of the relative word: strip
a leading syllable in the source factor and a trailing syllable in the
target factor, then sum the line gaps along the factor sequence.  Everything
is exact; a BFS on truncated balls is only used as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded
from .groups import CyclicFactor, FiniteFactor, NormalForm, nf_from_str, nf_to_str

RADIUS_BUDGET = 24


class TreeVertex:
    """The coset rep*A_factor with canonical representative."""

    __slots__ = ("rep", "factor", "_hash")

    def __init__(self, rep, factor):
        syl = rep.syllables
        if syl and syl[-1][0] == factor:
            rep = NormalForm(rep.group, syl[:-1])
        self.rep = rep
        self.factor = factor
        self._hash = hash((rep.syllables, factor))

    def __eq__(self, other):
        return (
            isinstance(other, TreeVertex)
            and self.factor == other.factor
            and self.rep == other.rep
        )

    def __hash__(self):
        return self._hash

    @property
    def group(self):
        return self.rep.group

    def __repr__(self):
        return vertex_to_str(self)


@dataclass(frozen=True)
class TreePath:
    vertices: tuple

    @property
    def length(self):
        return len(self.vertices) - 1

    def reversed(self):
        return TreePath(tuple(reversed(self.vertices)))


def basepoint(pres):
    """The pinned basepoint: the identity coset of factor 0."""
    return TreeVertex(pres.identity(), 0)


def act(g, v):
    """The isometric action of a group element on a vertex."""
    return TreeVertex(g * v.rep, v.factor)


def _reduced_syllables(u, v):
    """Double-coset reduction of the relative word between two vertices."""
    w = u.rep.inverse() * v.rep
    syl = w.syllables
    if syl and syl[0][0] == u.factor:
        syl = syl[1:]
    if syl and syl[-1][0] == v.factor:
        syl = syl[:-1]
    return syl


def distance(u, v):
    """Exact tree distance between two vertices."""
    syl = _reduced_syllables(u, v)
    if not syl:
        return abs(u.factor - v.factor)
    d = abs(u.factor - syl[0][0]) + abs(syl[-1][0] - v.factor)
    for t in range(len(syl) - 1):
        d += abs(syl[t][0] - syl[t + 1][0])
    return d


def geodesic(u, v):
    """The unique geodesic path from u to v."""
    w = u.rep.inverse() * v.rep
    syl = w.syllables
    if syl and syl[-1][0] == v.factor:
        syl = syl[:-1]
    verts = [u]
    cur = u.rep
    f_prev = u.factor

    def line_moves(f_to):
        nonlocal f_prev
        step = 1 if f_to > f_prev else -1
        for h in range(f_prev + step, f_to + step, step):
            verts.append(TreeVertex(cur, h))
        f_prev = f_to

    pres = u.group
    for fi, x in syl:
        if fi != f_prev:
            line_moves(fi)
        cur = cur * NormalForm(pres, ((fi, x),))
    if v.factor != f_prev:
        line_moves(v.factor)
    return TreePath(tuple(verts))


def neighbors(v, exponent_cap=None):
    """All tree-neighbours of v (exponent_cap bounds infinite-cyclic syllables)."""
    pres = v.group
    f = v.factor
    fac = pres.factors[f]
    if isinstance(fac, FiniteFactor):
        ks = [None] + [k for k in range(fac.order) if k != fac.identity]
    else:
        if exponent_cap is None:
            raise BudgetExceeded(
                "vertex has infinitely many neighbours; pass exponent_cap"
            )
        ks = [None] + [k for k in range(-exponent_cap, exponent_cap + 1) if k != 0]
    out = []
    for fprime in (f - 1, f + 1):
        if not (0 <= fprime < len(pres.factors)):
            continue
        for k in ks:
            rep = v.rep if k is None else v.rep * NormalForm(pres, ((f, k),))
            out.append(TreeVertex(rep, fprime))
    return out


def bfs_distances(center, radius, exponent_cap=None, radius_budget=RADIUS_BUDGET):
    """BFS distance map on the truncated ball (test oracle substrate)."""
    if radius > radius_budget:
        raise BudgetExceeded(f"radius {radius} exceeds budget {radius_budget}")
    dist = {center: 0}
    frontier = [center]
    for d in range(1, radius + 1):
        nxt = []
        for u in frontier:
            for w in neighbors(u, exponent_cap=exponent_cap):
                if w not in dist:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def truncated_ball(center, radius, exponent_cap=None, radius_budget=RADIUS_BUDGET):
    """Exactly the vertices within the radius (capped for cyclic factors)."""
    return set(bfs_distances(center, radius, exponent_cap, radius_budget))


def vertex_to_str(v):
    return f"{nf_to_str(v.rep)}|{v.group.factors[v.factor].name}"


def vertex_from_str(pres, s):
    rep_s, _, fname = s.rpartition("|")
    return TreeVertex(nf_from_str(pres, rep_s), pres.factor_index(fname))
