"""Oriented hypergraphs and their incidence-level linear algebra.

An oriented hypergraph is a set of vertices, a set of edges, and a list of
signed incidences between them.  Several incidences may join the same vertex
and edge ("multiple arrows"), which is exactly what lets any integer matrix
be realized: the (v, e) entry of the incidence matrix is the sum of the signs
of the incidences between v and e.

The Laplacian is L = H Hᵀ.  It splits as D − A where D counts incidences per
vertex (with multiplicity) and A = D − L is the signed adjacency part.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import WalkError
from .matrices import IntegerMatrix


@dataclass(frozen=True, slots=True)
class Incidence:
    """One signed arrow between a vertex and an edge.

    The id is the position of the incidence in its hypergraph's list; all
    enumerations iterate in id order so results are reproducible.
    """

    id: int
    vertex: int
    edge: int
    sign: int


@dataclass(frozen=True)
class OrientedHypergraph:
    vertex_labels: tuple[str, ...]
    edge_labels: tuple[str, ...]
    incidences: tuple[Incidence, ...]

    def __post_init__(self):
        if len(set(self.vertex_labels)) != len(self.vertex_labels):
            raise ValueError("duplicate vertex labels")
        if len(set(self.edge_labels)) != len(self.edge_labels):
            raise ValueError("duplicate edge labels")
        for pos, inc in enumerate(self.incidences):
            if inc.id != pos:
                raise ValueError(f"incidence id {inc.id} does not match position {pos}")
            if not 0 <= inc.vertex < len(self.vertex_labels):
                raise ValueError(f"incidence {pos} references unknown vertex {inc.vertex}")
            if not 0 <= inc.edge < len(self.edge_labels):
                raise ValueError(f"incidence {pos} references unknown edge {inc.edge}")
            if inc.sign not in (1, -1):
                raise ValueError(f"incidence {pos} has sign {inc.sign}, expected +1 or -1")

    @classmethod
    def build(
        cls,
        vertex_labels: Sequence[str],
        edge_labels: Sequence[str],
        incidences: Iterable[tuple[int, int, int]],
    ) -> "OrientedHypergraph":
        """Construct from (vertex, edge, sign) triples; ids follow list order."""
        return cls(
            tuple(vertex_labels),
            tuple(edge_labels),
            tuple(Incidence(i, v, e, s) for i, (v, e, s) in enumerate(incidences)),
        )

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_labels)

    @property
    def n_edges(self) -> int:
        return len(self.edge_labels)

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.vertex_labels)}

    @cached_property
    def _edge_index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.edge_labels)}

    def vertex_index(self, label: str) -> int:
        try:
            return self._vertex_index[label]
        except KeyError:
            raise ValueError(f"unknown vertex label {label!r}") from None

    def edge_index(self, label: str) -> int:
        try:
            return self._edge_index[label]
        except KeyError:
            raise ValueError(f"unknown edge label {label!r}") from None

    def vertex_indices(self, items: Sequence[int | str]) -> tuple[int, ...]:
        """Normalize a mixed list of vertex indices and labels to indices."""
        out = []
        for item in items:
            if isinstance(item, str):
                out.append(self.vertex_index(item))
            else:
                if not 0 <= item < self.n_vertices:
                    raise ValueError(f"vertex index {item} out of range")
                out.append(int(item))
        return tuple(out)

    @cached_property
    def _at_vertex(self) -> tuple[tuple[Incidence, ...], ...]:
        buckets: list[list[Incidence]] = [[] for _ in range(self.n_vertices)]
        for inc in self.incidences:
            buckets[inc.vertex].append(inc)
        return tuple(tuple(b) for b in buckets)

    @cached_property
    def _at_edge(self) -> tuple[tuple[Incidence, ...], ...]:
        buckets: list[list[Incidence]] = [[] for _ in range(self.n_edges)]
        for inc in self.incidences:
            buckets[inc.edge].append(inc)
        return tuple(tuple(b) for b in buckets)

    def incidences_at(self, vertex: int) -> tuple[Incidence, ...]:
        return self._at_vertex[vertex]

    def edge_incidences(self, edge: int) -> tuple[Incidence, ...]:
        return self._at_edge[edge]

    def degree(self, vertex: int) -> int:
        return len(self._at_vertex[vertex])


class LaplacianParts(NamedTuple):
    laplacian: IntegerMatrix
    degree: IntegerMatrix
    adjacency: IntegerMatrix


_LABEL_SPLIT = re.compile(r"^(.*?)(\d+)$")


def label_sort_key(label: str) -> tuple[str, int, int]:
    """Order labels with numeric suffixes numerically: v2 before v10."""
    m = _LABEL_SPLIT.match(label)
    if m:
        return (m.group(1), 0, int(m.group(2)))
    return (label, 1, 0)


def from_integer_matrix(
    matrix: IntegerMatrix,
    vertex_labels: Sequence[str] | None = None,
    edge_labels: Sequence[str] | None = None,
) -> OrientedHypergraph:
    """Realize an integer matrix as an oriented hypergraph.

    Entry k at (v, e) becomes |k| parallel incidences of sign sgn(k); zero
    entries contribute nothing, so the incidence matrix round-trips exactly.
    """
    if vertex_labels is None:
        vertex_labels = [f"v{i + 1}" for i in range(matrix.rows)]
    if edge_labels is None:
        edge_labels = [f"e{j + 1}" for j in range(matrix.cols)]
    if len(vertex_labels) != matrix.rows or len(edge_labels) != matrix.cols:
        raise ValueError("label count does not match matrix shape")
    triples = []
    for v in range(matrix.rows):
        for e in range(matrix.cols):
            k = matrix[v][e]
            sign = 1 if k > 0 else -1
            triples.extend((v, e, sign) for _ in range(abs(k)))
    return OrientedHypergraph.build(vertex_labels, edge_labels, triples)


def incidence_matrix(graph: OrientedHypergraph) -> IntegerMatrix:
    rows = [[0] * graph.n_edges for _ in range(graph.n_vertices)]
    for inc in graph.incidences:
        rows[inc.vertex][inc.edge] += inc.sign
    return IntegerMatrix.from_rows(rows)


def incidence_dual(graph: OrientedHypergraph) -> OrientedHypergraph:
    """Swap the vertex and edge roles of every incidence; signs are kept."""
    return OrientedHypergraph.build(
        graph.edge_labels,
        graph.vertex_labels,
        ((inc.edge, inc.vertex, inc.sign) for inc in graph.incidences),
    )


def laplacian(graph: OrientedHypergraph) -> IntegerMatrix:
    h = incidence_matrix(graph)
    return h @ h.transpose()


def laplacian_parts(graph: OrientedHypergraph) -> LaplacianParts:
    """L = H Hᵀ together with its degree and adjacency parts (L = D − A)."""
    lap = laplacian(graph)
    n = graph.n_vertices
    deg = IntegerMatrix.from_rows(
        [[graph.degree(i) if i == j else 0 for j in range(n)] for i in range(n)]
    )
    return LaplacianParts(lap, deg, deg - lap)


def asgn_of_walk(
    graph: OrientedHypergraph, walk: Sequence[Incidence | int]
) -> int:
    """Adjacency sign of a walk given as its incidence sequence.

    The sequence alternates edge-sharing and vertex-sharing consecutive
    pairs, starting from a vertex: incidences 1,2 lie in a common edge,
    incidences 2,3 meet at a common vertex, and so on.  A backstep repeats
    one incidence, which satisfies both sharing conditions.  The value is
    (−1)^floor(n/2) times the product of the incidence signs.
    """
    incs: list[Incidence] = []
    for item in walk:
        if isinstance(item, Incidence):
            if not (0 <= item.id < len(graph.incidences)) or graph.incidences[item.id] != item:
                raise WalkError(f"incidence {item} does not belong to this hypergraph")
            incs.append(item)
        else:
            if not 0 <= item < len(graph.incidences):
                raise WalkError(f"incidence id {item} out of range")
            incs.append(graph.incidences[item])
    for k in range(len(incs) - 1):
        a, b = incs[k], incs[k + 1]
        if k % 2 == 0:
            if a.edge != b.edge:
                raise WalkError(
                    f"incidences {a.id} and {b.id} do not share an edge"
                )
        else:
            if a.vertex != b.vertex:
                raise WalkError(
                    f"incidences {a.id} and {b.id} do not share a vertex"
                )
    sign = 1
    for inc in incs:
        sign *= inc.sign
    return sign if (len(incs) // 2) % 2 == 0 else -sign
