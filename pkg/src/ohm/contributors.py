"""Contributor enumeration and contributor signs.

A contributor picks, for every vertex v, one directed length-1 walk image
starting at v (an adjacency into another vertex, a loop, or a backstep that
folds back along a single incidence) such that the chosen heads form a
permutation of the vertex set.

A reduced contributor additionally records a pairing of removed tail→head
maps.  The removed maps are virtual: they never need to exist in the
hypergraph, only the surviving images do.  The contributor sign is

    csgn(c) = (−1)^(ec_check + nc + bs)

where ec_check counts even-length cycles of the rebuilt permutation
(surviving images plus the removed pairing), nc counts surviving non-backstep
components whose walk sign is negative, and bs counts surviving backsteps.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

from .errors import CapExceededError
from .hypergraph import Incidence, OrientedHypergraph

DEFAULT_CAP = 10_000_000

# Ryser's permanent is used to predict enumeration sizes; beyond this many
# surviving vertices the prediction falls back to capped counting.
_PERMANENT_LIMIT = 14


@dataclass(frozen=True, slots=True)
class P1Image:
    """One directed length-1 walk image: tail, head, and its two incidences.

    Backsteps repeat a single incidence (inc_in is inc_out, tail equals
    head).  Loops use two distinct incidences of one edge at the same
    vertex and count as adjacencies.  The walk sign asgn is −1 times the
    product of the two incidence signs, so every backstep has asgn −1.
    """

    tail: int
    head: int
    inc_in: Incidence
    inc_out: Incidence
    edge: int = field(init=False)
    asgn: int = field(init=False)

    def __post_init__(self):
        if self.inc_in.edge != self.inc_out.edge:
            raise ValueError("walk image incidences lie in different edges")
        if self.inc_in.vertex != self.tail or self.inc_out.vertex != self.head:
            raise ValueError("walk image incidences do not match tail/head")
        if self.inc_in.id == self.inc_out.id and self.tail != self.head:
            raise ValueError("backstep must start and end at the same vertex")
        object.__setattr__(self, "edge", self.inc_in.edge)
        object.__setattr__(self, "asgn", -self.inc_in.sign * self.inc_out.sign)

    @property
    def is_backstep(self) -> bool:
        return self.inc_in.id == self.inc_out.id

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head and not self.is_backstep

    @property
    def kind(self) -> str:
        return "backstep" if self.is_backstep else "adjacency"


@dataclass(frozen=True)
class Contributor:
    """One walk image per vertex; the heads form a permutation."""

    images: tuple[P1Image, ...]

    def __post_init__(self):
        n = len(self.images)
        for v, img in enumerate(self.images):
            if img.tail != v:
                raise ValueError(f"image at position {v} has tail {img.tail}")
        if sorted(img.head for img in self.images) != list(range(n)):
            raise ValueError("heads do not form a permutation")

    @property
    def permutation(self) -> tuple[int, ...]:
        return tuple(img.head for img in self.images)

    def as_reduced(self) -> "ReducedContributor":
        return ReducedContributor(self.images, ())


@dataclass(frozen=True)
class ReducedContributor:
    """Surviving walk images plus the removed (u, w) pairing, in order."""

    images: tuple[P1Image, ...]
    pairing: tuple[tuple[int, int], ...]

    def __post_init__(self):
        tails = [img.tail for img in self.images]
        heads = [img.head for img in self.images]
        if tails != sorted(tails):
            raise ValueError("surviving images must be sorted by tail")
        removed_tails = [u for u, _ in self.pairing]
        removed_heads = [w for _, w in self.pairing]
        if len(set(tails)) != len(tails) or len(set(heads)) != len(heads):
            raise ValueError("duplicate surviving tail or head")
        if len(set(removed_tails)) != len(removed_tails):
            raise ValueError("duplicate removed tail")
        if len(set(removed_heads)) != len(removed_heads):
            raise ValueError("duplicate removed head")
        if set(tails) & set(removed_tails) or set(heads) & set(removed_heads):
            raise ValueError("surviving images overlap the removed pairing")
        if set(tails) | set(removed_tails) != set(heads) | set(removed_heads):
            raise ValueError("rebuilt map is not a permutation")

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({img.tail for img in self.images} | {u for u, _ in self.pairing}))

    def rebuilt_permutation(self) -> dict[int, int]:
        perm = {img.tail: img.head for img in self.images}
        perm.update(dict(self.pairing))
        return perm


@dataclass(frozen=True)
class ContributorStats:
    """Counters feeding csgn.

    ec_check counts even cycles of the rebuilt permutation.  The remaining
    counters look only at surviving images: ec/oc split components by the
    parity of their image count (a backstep component is odd), pc/nc split
    non-backstep components by walk sign, bs counts backsteps.
    """

    ec_check: int
    ec: int
    oc: int
    pc: int
    nc: int
    bs: int


class _Tables(NamedTuple):
    images: tuple[tuple[tuple[P1Image, ...], ...], ...]
    signs: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    counts: tuple[tuple[int, ...], ...]


@lru_cache(maxsize=32)
def _tables(graph: OrientedHypergraph) -> _Tables:
    n = graph.n_vertices
    cells: list[list[list[P1Image]]] = [[[] for _ in range(n)] for _ in range(n)]
    for inc in graph.incidences:
        cells[inc.vertex][inc.vertex].append(P1Image(inc.vertex, inc.vertex, inc, inc))
    for e in range(graph.n_edges):
        incs = graph.edge_incidences(e)
        for i in incs:
            for j in incs:
                if i.id != j.id:
                    cells[i.vertex][j.vertex].append(P1Image(i.vertex, j.vertex, i, j))
    images = tuple(
        tuple(tuple(sorted(cell, key=lambda im: (im.inc_in.id, im.inc_out.id))) for cell in row)
        for row in cells
    )
    signs = tuple(
        tuple(tuple((im.asgn, im.edge) for im in cell) for cell in row) for row in images
    )
    counts = tuple(tuple(len(cell) for cell in row) for row in images)
    return _Tables(images, signs, counts)


def weak_adjacencies(graph: OrientedHypergraph, v: int, w: int) -> tuple[P1Image, ...]:
    """All length-1 walk images from v to w, in incidence-id order.

    For v == w this is every backstep at v plus every loop at v.
    """
    n = graph.n_vertices
    if not 0 <= v < n or not 0 <= w < n:
        raise ValueError(f"vertex index out of range: ({v}, {w})")
    return _tables(graph).images[v][w]


def _permanent(rows: Sequence[Sequence[int]]) -> int:
    n = len(rows)
    if n == 0:
        return 1
    total = 0
    for mask in range(1, 1 << n):
        bits = [j for j in range(n) if mask >> j & 1]
        prod = 1
        for row in rows:
            s = 0
            for j in bits:
                s += row[j]
            prod *= s
            if prod == 0:
                break
        if prod:
            total += -prod if (n - len(bits)) % 2 else prod
    return total


def _counted_assignments(rows: Sequence[Sequence[int]], limit: int) -> int:
    """Sum of products over distinct-column assignments, stopping past limit."""
    n = len(rows)
    used = [False] * n
    total = 0

    def rec(i: int, prod: int) -> bool:
        nonlocal total
        if i == n:
            total += prod
            return total > limit
        for j in range(n):
            if used[j] or not rows[i][j]:
                continue
            used[j] = True
            stop = rec(i + 1, prod * rows[i][j])
            used[j] = False
            if stop:
                return True
        return False

    rec(0, 1)
    return total


def _predicted(rows: Sequence[Sequence[int]], cap: int) -> int:
    if len(rows) <= _PERMANENT_LIMIT:
        return _permanent(rows)
    return _counted_assignments(rows, cap)


def _check_cap(predicted: int, cap: int) -> None:
    if predicted > cap:
        raise CapExceededError(predicted, cap)


def _validate_pair_lists(
    graph: OrientedHypergraph, u: Sequence[int | str], w: Sequence[int | str]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    ui = graph.vertex_indices(u)
    wi = graph.vertex_indices(w)
    if len(ui) != len(wi):
        raise ValueError(f"pair lists have different lengths: {len(ui)} vs {len(wi)}")
    if len(set(ui)) != len(ui):
        raise ValueError("duplicate vertex in removed-tail list")
    if len(set(wi)) != len(wi):
        raise ValueError("duplicate vertex in removed-head list")
    return ui, wi


def _iter_head_assignments(
    counts: Sequence[Sequence[int]],
    tails: Sequence[int],
    targets: Sequence[int],
) -> Iterator[tuple[int, ...]]:
    """Bijections tails→targets with a nonzero image count at every slot.

    Assignments come out in lexicographic order of the head tuple, so the
    unreduced case walks permutations in lex order.
    """
    n = len(tails)
    if n == 0:
        yield ()
        return
    used = [False] * len(targets)
    acc: list[int] = []

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(acc)
            return
        row = counts[tails[i]]
        for j, h in enumerate(targets):
            if used[j] or not row[h]:
                continue
            used[j] = True
            acc.append(h)
            yield from rec(i + 1)
            acc.pop()
            used[j] = False

    yield from rec(0)


def _even_cycle_count(perm: dict[int, int]) -> int:
    seen: set[int] = set()
    even = 0
    for start in perm:
        if start in seen:
            continue
        length = 0
        cur = start
        while cur not in seen:
            seen.add(cur)
            cur = perm[cur]
            length += 1
        if length % 2 == 0:
            even += 1
    return even


def predicted_contributor_count(graph: OrientedHypergraph, cap: int = DEFAULT_CAP) -> int:
    return _predicted(_tables(graph).counts, cap)


def enumerate_contributors(
    graph: OrientedHypergraph, cap: int = DEFAULT_CAP
) -> tuple[Contributor, ...]:
    """All contributors, grouped by permutation in lexicographic order."""
    tables = _tables(graph)
    _check_cap(_predicted(tables.counts, cap), cap)
    everything = tuple(range(graph.n_vertices))
    out = []
    for heads in _iter_head_assignments(tables.counts, everything, everything):
        lists = [tables.images[v][h] for v, h in zip(everything, heads)]
        for combo in itertools.product(*lists):
            out.append(Contributor(combo))
    return tuple(out)


def _distinct_edges(images: Sequence[P1Image]) -> bool:
    edges = [img.edge for img in images]
    return len(set(edges)) == len(edges)


def iter_reduced_contributors(
    graph: OrientedHypergraph,
    u: Sequence[int | str],
    w: Sequence[int | str],
    edge_monic_only: bool = False,
    cap: int = DEFAULT_CAP,
) -> Iterator[ReducedContributor]:
    ui, wi = _validate_pair_lists(graph, u, w)
    tables = _tables(graph)
    n = graph.n_vertices
    tails = sorted(set(range(n)) - set(ui))
    targets = sorted(set(range(n)) - set(wi))
    sub = [[tables.counts[v][h] for h in targets] for v in tails]
    _check_cap(_predicted(sub, cap), cap)
    pairing = tuple(zip(ui, wi))
    for heads in _iter_head_assignments(tables.counts, tails, targets):
        lists = [tables.images[v][h] for v, h in zip(tails, heads)]
        for combo in itertools.product(*lists):
            if edge_monic_only and not _distinct_edges(combo):
                continue
            yield ReducedContributor(combo, pairing)


def enumerate_reduced_contributors(
    graph: OrientedHypergraph,
    u: Sequence[int | str],
    w: Sequence[int | str],
    edge_monic_only: bool = False,
    cap: int = DEFAULT_CAP,
) -> tuple[ReducedContributor, ...]:
    """Reduced contributors for the removed pairing u→w, surviving part in G.

    With edge_monic_only, only selections whose surviving images use
    pairwise-distinct edges are kept.
    """
    return tuple(iter_reduced_contributors(graph, u, w, edge_monic_only, cap))


def sum_reduced_csgn(
    graph: OrientedHypergraph,
    u: Sequence[int | str],
    w: Sequence[int | str],
    edge_monic_only: bool = True,
    cap: int = DEFAULT_CAP,
) -> int:
    """Sum of csgn over the reduced contributors of one pairing.

    csgn factors as (−1)^(even cycles of the rebuilt permutation) times the
    product of the surviving images' walk signs, which lets the sum run over
    bare (sign, edge) pairs without building contributor objects.
    """
    ui, wi = _validate_pair_lists(graph, u, w)
    tables = _tables(graph)
    n = graph.n_vertices
    tails = sorted(set(range(n)) - set(ui))
    targets = sorted(set(range(n)) - set(wi))
    sub = [[tables.counts[v][h] for h in targets] for v in tails]
    _check_cap(_predicted(sub, cap), cap)
    pairing = dict(zip(ui, wi))
    total = 0
    for heads in _iter_head_assignments(tables.counts, tails, targets):
        perm = dict(zip(tails, heads))
        perm.update(pairing)
        base = -1 if _even_cycle_count(perm) % 2 else 1
        lists = [tables.signs[v][h] for v, h in zip(tails, heads)]
        total += base * _signed_product_sum(lists, edge_monic_only)
    return total


def _signed_product_sum(
    lists: Sequence[tuple[tuple[int, int], ...]], edge_monic: bool
) -> int:
    n = len(lists)
    total = 0

    def rec(i: int, prod: int, used: int) -> None:
        nonlocal total
        if i == n:
            total += prod
            return
        for asgn, edge in lists[i]:
            if edge_monic:
                bit = 1 << edge
                if used & bit:
                    continue
                rec(i + 1, prod * asgn, used | bit)
            else:
                rec(i + 1, prod * asgn, used)

    rec(0, 1, 0)
    return total


def surviving_components(
    rc: ReducedContributor | Contributor,
) -> tuple[tuple[P1Image, ...], ...]:
    """Connected components of the surviving images, each in walk order.

    Closed components start at their smallest vertex; open chains start at
    their unique source.  Components are listed by smallest contained tail.
    """
    images = rc.images
    by_tail = {img.tail: img for img in images}
    heads = {img.head for img in images}
    comps: list[tuple[P1Image, ...]] = []
    visited: set[int] = set()
    for img in images:
        if img.tail in visited or img.tail in heads:
            continue
        chain = [img]
        visited.add(img.tail)
        cur = img
        while cur.head in by_tail and cur.head not in visited:
            cur = by_tail[cur.head]
            chain.append(cur)
            visited.add(cur.tail)
        comps.append(tuple(chain))
    for img in images:
        if img.tail in visited:
            continue
        chain = [img]
        visited.add(img.tail)
        cur = img
        while cur.head != chain[0].tail:
            cur = by_tail[cur.head]
            chain.append(cur)
            visited.add(cur.tail)
        comps.append(tuple(chain))
    return tuple(sorted(comps, key=lambda c: min(im.tail for im in c)))


def _as_reduced(c: Contributor | ReducedContributor) -> ReducedContributor:
    return c if isinstance(c, ReducedContributor) else c.as_reduced()


def contributor_stats(c: Contributor | ReducedContributor) -> ContributorStats:
    rc = _as_reduced(c)
    ec_check = _even_cycle_count(rc.rebuilt_permutation())
    ec = oc = pc = nc = bs = 0
    for comp in surviving_components(rc):
        if len(comp) % 2 == 0:
            ec += 1
        else:
            oc += 1
        if len(comp) == 1 and comp[0].is_backstep:
            bs += 1
            continue
        sign = 1
        for img in comp:
            sign *= img.asgn
        if sign > 0:
            pc += 1
        else:
            nc += 1
    return ContributorStats(ec_check, ec, oc, pc, nc, bs)


def csgn(c: Contributor | ReducedContributor) -> int:
    stats = contributor_stats(c)
    return -1 if (stats.ec_check + stats.nc + stats.bs) % 2 else 1
