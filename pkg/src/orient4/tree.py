"""Diameter-4 trees with vertex multiplicities.

A tree of diameter 4 has a unique center; its neighbours are `branches`
(1-based indices), and each branch may carry leaf children.  A `TreeSpec`
attaches a multiplicity to the center, to every branch, and to every leaf;
the multiplied graph replaces each vertex by that many independent copies,
with copies adjacent exactly when the originals were.

Vertex naming in the multiplied graph follows the copy convention
(copy, role): center copies `c.x`, branch copies `b<i>.y`, and leaf copies
`l<i>.<alpha>.z`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import UsageError


# ============================================================================
# Specs
# ============================================================================

@dataclass(frozen=True)
class BranchSpec:
    multiplicity: int
    leaf_multiplicities: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "leaf_multiplicities",
                           tuple(self.leaf_multiplicities))

    @property
    def leaf_count(self) -> int:
        return len(self.leaf_multiplicities)


@dataclass(frozen=True)
class TreeSpec:
    center_multiplicity: int
    branches: tuple

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))

    @property
    def s(self) -> int:
        return self.center_multiplicity

    @property
    def deg_c(self) -> int:
        return len(self.branches)

    def branch(self, i: int) -> BranchSpec:
        """1-based branch access."""
        return self.branches[i - 1]


@dataclass(frozen=True)
class NeighborPartition:
    """Branch indices split by multiplicity class; `e` holds leaf branches."""

    a2: frozenset
    a3: frozenset
    a4plus: frozenset
    e: frozenset
    deg_c: int

    @property
    def internal(self) -> frozenset:
        return self.a2 | self.a3 | self.a4plus

    def counts(self):
        return len(self.a2), len(self.a3), len(self.a4plus), len(self.e)


@dataclass(frozen=True)
class VertexId:
    """One copy of a tree vertex: role 'c' (center), 'b' (branch) or 'l' (leaf)."""

    role: str
    copy: int
    i: int = 0      # branch index for roles 'b' and 'l'
    alpha: int = 0  # leaf index within the branch, role 'l' only

    def __post_init__(self):
        if self.role not in ("c", "b", "l"):
            raise UsageError(f"unknown role {self.role!r}")

    def __str__(self):
        if self.role == "c":
            return f"c.{self.copy}"
        if self.role == "b":
            return f"b{self.i}.{self.copy}"
        return f"l{self.i}.{self.alpha}.{self.copy}"

    @staticmethod
    def parse(text: str) -> "VertexId":
        try:
            head, _, copy = text.rpartition(".")
            copy = int(copy)
            if head == "c":
                return VertexId("c", copy)
            if head.startswith("b"):
                return VertexId("b", copy, int(head[1:]))
            if head.startswith("l"):
                i, alpha = head[1:].split(".")
                return VertexId("l", copy, int(i), int(alpha))
        except (ValueError, IndexError):
            pass
        raise UsageError(f"cannot parse vertex id {text!r}")


def center(x: int) -> VertexId:
    return VertexId("c", x)


def branch_copy(i: int, x: int) -> VertexId:
    return VertexId("b", x, i)


def leaf_copy(i: int, alpha: int, x: int) -> VertexId:
    return VertexId("l", x, i, alpha)


# ============================================================================
# Operations
# ============================================================================

def validate(spec: TreeSpec) -> list:
    """Diagnostics for a spec; empty list means the spec is a valid
    multiplicity assignment for a diameter-4 tree."""
    diags = []
    if spec.center_multiplicity < 2:
        diags.append(f"multiplicity < 2: center has {spec.center_multiplicity}")
    for i, b in enumerate(spec.branches, start=1):
        if b.multiplicity < 2:
            diags.append(f"multiplicity < 2: branch {i} has {b.multiplicity}")
        for alpha, lm in enumerate(b.leaf_multiplicities, start=1):
            if lm < 2:
                diags.append(f"multiplicity < 2: leaf {alpha} of branch {i} has {lm}")
    leafy = sum(1 for b in spec.branches if b.leaf_count > 0)
    if leafy < 2:
        diags.append(f"diameter < 4: only {leafy} branch(es) carry leaves, need 2")
    return diags


def require_valid(spec: TreeSpec) -> None:
    diags = validate(spec)
    if diags:
        raise UsageError("; ".join(diags))


def partition(spec: TreeSpec) -> NeighborPartition:
    """Split branch indices into multiplicity classes; leaf branches go to e."""
    require_valid(spec)
    a2, a3, a4, e = set(), set(), set(), set()
    for i, b in enumerate(spec.branches, start=1):
        if b.leaf_count == 0:
            e.add(i)
        elif b.multiplicity == 2:
            a2.add(i)
        elif b.multiplicity == 3:
            a3.add(i)
        else:
            a4.add(i)
    return NeighborPartition(frozenset(a2), frozenset(a3), frozenset(a4),
                             frozenset(e), spec.deg_c)


def multiplied_vertices(spec: TreeSpec) -> list:
    """All vertices of the multiplied graph in canonical order."""
    out = [center(x) for x in range(1, spec.s + 1)]
    for i, b in enumerate(spec.branches, start=1):
        out.extend(branch_copy(i, x) for x in range(1, b.multiplicity + 1))
    for i, b in enumerate(spec.branches, start=1):
        for alpha, lm in enumerate(b.leaf_multiplicities, start=1):
            out.extend(leaf_copy(i, alpha, x) for x in range(1, lm + 1))
    return out


def multiplied_edges(spec: TreeSpec) -> list:
    """Each undirected edge of the multiplied graph once, in canonical order:
    center-branch blocks by branch index then copies, then branch-leaf blocks."""
    require_valid(spec)
    out = []
    for i, b in enumerate(spec.branches, start=1):
        for x in range(1, spec.s + 1):
            for y in range(1, b.multiplicity + 1):
                out.append((center(x), branch_copy(i, y)))
    for i, b in enumerate(spec.branches, start=1):
        for alpha, lm in enumerate(b.leaf_multiplicities, start=1):
            for y in range(1, b.multiplicity + 1):
                for z in range(1, lm + 1):
                    out.append((branch_copy(i, y), leaf_copy(i, alpha, z)))
    return out


def edge_count(spec: TreeSpec) -> int:
    total = 0
    for b in spec.branches:
        total += spec.s * b.multiplicity
        total += b.multiplicity * sum(b.leaf_multiplicities)
    return total


# ============================================================================
# JSON input format
# ============================================================================

def spec_from_dict(doc: dict) -> TreeSpec:
    try:
        branches = tuple(
            BranchSpec(int(b["multiplicity"]),
                       tuple(int(x) for x in b.get("leaf_multiplicities", ())))
            for b in doc["branches"])
        return TreeSpec(int(doc["center_multiplicity"]), branches)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed tree document: {exc}") from exc


def spec_to_dict(spec: TreeSpec) -> dict:
    return {
        "center_multiplicity": spec.center_multiplicity,
        "branches": [
            {"multiplicity": b.multiplicity,
             "leaf_multiplicities": list(b.leaf_multiplicities)}
            for b in spec.branches],
    }


def load_spec(path) -> TreeSpec:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise UsageError(f"not valid JSON: {exc}") from exc
    return spec_from_dict(doc)
