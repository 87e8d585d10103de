"""Subgraphs-with-boundary (Omega, B) induced by finite connected vertex sets.

The boundary B is the set of exterior neighbors of Omega; the edge set E'
consists of all edges with at least one endpoint in Omega. Interior vertices
are indexed before boundary vertices, each block sorted lexicographically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import groups
from .cayley import generate_ball, neighbors
from .groups import GroupElement, GroupSpec


class DisconnectedOmegaError(ValueError):
    """Omega is not connected in the word metric."""

    def __init__(self, rep_a: GroupElement, rep_b: GroupElement):
        self.rep_a = rep_a
        self.rep_b = rep_b
        super().__init__(
            f"omega is disconnected: {rep_a} and {rep_b} lie in different components"
        )


class FamilyKind(str, Enum):
    BALL = "ball"
    BOX = "box"
    PUNCTURED_BALL = "punctured_ball"
    BALL_MINUS_BALL = "annulus"


@dataclass(frozen=True)
class ShapeFamily:
    """A parametrized family of interior vertex sets.

    For BALL_MINUS_BALL the inner radius is param // 2 unless ``inner`` is set.
    """

    kind: FamilyKind
    inner: int | None = None


@dataclass
class SubgraphWithBoundary:
    spec: GroupSpec
    interior: list[GroupElement]
    boundary: list[GroupElement]
    edges: list[tuple[int, int]]
    interior_degrees: list[int]
    boundary_degrees: list[int]

    @property
    def n_interior(self) -> int:
        return len(self.interior)

    @property
    def n_boundary(self) -> int:
        return len(self.boundary)

    @property
    def n_closure(self) -> int:
        return len(self.interior) + len(self.boundary)

    def vertex(self, vid: int) -> GroupElement:
        if vid < self.n_interior:
            return self.interior[vid]
        return self.boundary[vid - self.n_interior]

    def is_boundary(self, vid: int) -> bool:
        return vid >= self.n_interior

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n_closure)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return [sorted(a) for a in adj]

    def to_text(self) -> str:
        """One line per vertex `id,role,coords...`, then one per edge `u,v`."""
        lines = []
        for vid in range(self.n_closure):
            role = "B" if self.is_boundary(vid) else "I"
            coords = ",".join(str(c) for c in self.vertex(vid))
            lines.append(f"{vid},{role},{coords}")
        for u, v in self.edges:
            lines.append(f"{u},{v}")
        return "\n".join(lines) + "\n"


def check_connected(spec: GroupSpec, omega: set[GroupElement]) -> None:
    start = min(omega)
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in neighbors(spec, x):
            if y in omega and y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(omega):
        missing = min(omega - seen)
        raise DisconnectedOmegaError(start, missing)


def induce(spec: GroupSpec, omega: set[GroupElement]) -> SubgraphWithBoundary:
    """Build (Omega, B, E') from a finite connected interior set, querying the
    infinite graph through group arithmetic."""
    if not omega:
        raise ValueError("omega is empty")
    omega = {tuple(x) for x in omega}
    for x in omega:
        groups._check_element(spec, x)
    check_connected(spec, omega)

    boundary_set: set[GroupElement] = set()
    nbr_map: dict[GroupElement, list[GroupElement]] = {}
    for x in omega:
        nbrs = neighbors(spec, x)
        nbr_map[x] = nbrs
        for y in nbrs:
            if y not in omega:
                boundary_set.add(y)

    interior = sorted(omega)
    boundary = sorted(boundary_set)
    ids = {v: i for i, v in enumerate(interior)}
    ids.update({v: len(interior) + i for i, v in enumerate(boundary)})

    edges: list[tuple[int, int]] = []
    for x in interior:
        u = ids[x]
        for y in nbr_map[x]:
            v = ids[y]
            if y in omega and v <= u:
                continue  # interior-interior edge counted once
            edges.append((u, v) if u < v else (v, u))
    edges.sort()

    degrees = [0] * (len(interior) + len(boundary))
    for u, v in edges:
        degrees[u] += 1
        degrees[v] += 1

    return SubgraphWithBoundary(
        spec=spec,
        interior=interior,
        boundary=boundary,
        edges=edges,
        interior_degrees=degrees[: len(interior)],
        boundary_degrees=degrees[len(interior) :],
    )


def isoperimetric_ratio(sub: SubgraphWithBoundary, d: int) -> float:
    """|closure|^((d-1)/d) / |B|, the quantity that is uniformly bounded on a
    polynomial-growth Cayley graph of order d."""
    return sub.n_closure ** ((d - 1) / d) / sub.n_boundary


def instantiate_family(
    spec: GroupSpec, family: ShapeFamily, param: int
) -> set[GroupElement]:
    """The interior vertex set Omega of the named shape at parameter `param`."""
    if family.kind in (FamilyKind.BALL, FamilyKind.PUNCTURED_BALL, FamilyKind.BALL_MINUS_BALL):
        ball = generate_ball(spec, param)
        verts = set(ball.vertices)
        if family.kind == FamilyKind.PUNCTURED_BALL:
            if param < 2:
                raise ValueError("punctured ball needs radius >= 2")
            verts.discard(groups.identity(spec))
        elif family.kind == FamilyKind.BALL_MINUS_BALL:
            inner = family.inner if family.inner is not None else param // 2
            if inner >= param:
                raise ValueError("inner radius must be smaller than outer")
            dist = dict(zip(ball.vertices, ball.dist_from_e))
            verts = {v for v in verts if dist[v] > inner}
        return verts
    if family.kind == FamilyKind.BOX:
        # axis-aligned box of coordinates in [-param, param]^dim
        from itertools import product as iproduct

        dim = spec.dimension
        return {tuple(c) for c in iproduct(range(-param, param + 1), repeat=dim)}
    raise ValueError(f"unknown family kind {family.kind}")


def parse_family(name: str) -> ShapeFamily:
    try:
        return ShapeFamily(FamilyKind(name))
    except ValueError:
        valid = ", ".join(k.value for k in FamilyKind)
        raise ValueError(f"unknown family {name!r} (valid: {valid})") from None


def parse_omega_file(text: str) -> set[GroupElement]:
    """Parse an Omega description: one vertex per line, comma-separated integer
    coordinates. Lines in the full `id,role,coords...` serialization format are
    accepted too; roles are recomputed and edge lines ignored."""
    lines = [
        ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")
    ]
    fields_per_line = [ln.split(",") for ln in lines]
    full_format = any(len(f) >= 3 and f[1] in ("I", "B") for f in fields_per_line)
    omega: set[GroupElement] = set()
    for fields in fields_per_line:
        if full_format:
            if len(fields) >= 3 and fields[1] == "I":
                omega.add(tuple(int(c) for c in fields[2:]))
            continue  # boundary vertices and edge lines are ignored
        omega.add(tuple(int(c) for c in fields))
    return omega
