"""Oriented graded posets: the carrier structure for diagram shapes.

An element has a dimension and a list of signed covers (the elements one
dimension below that it is attached to, each marked as input ``-`` or
output ``+``).  Everything else in the library is computed from this data:
closures, boundaries, the oriented Hasse graph, duals, and the regularity
checks that qualify a poset as a directed complex.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

MINUS = "-"
PLUS = "+"
SIGNS = (MINUS, PLUS)


def flip(sign: str) -> str:
    """Negate a sign; an involution."""
    if sign == PLUS:
        return MINUS
    if sign == MINUS:
        return PLUS
    raise ValueError(f"not a sign: {sign!r}")


class StructureError(ValueError):
    """The element table is not a well-formed oriented graded poset.

    Distinct from regularity failure: a structurally broken input cannot
    even be loaded, while a structurally sound one may merely fail
    `validate_complex`.
    """


class Complex:
    """A finite oriented graded poset.

    ``elements`` maps an opaque string id to ``(dim, covers)`` where
    ``covers`` is an iterable of ``(target_id, sign)`` pairs.  Construction
    checks the structural invariants:

    * every cover target exists and has dimension exactly one less;
    * an element of dimension >= 1 covers at least one element, an element
      of dimension 0 covers none;
    * no element covers the same target twice (no parallel Hasse edges).

    Instances are immutable after construction and safe to share.
    """

    __slots__ = ("name", "_dim", "_covers", "_cofaces", "_ids", "_by_dim", "_top_dim")

    def __init__(self, name: str, elements: Mapping[str, tuple[int, Iterable[tuple[str, str]]]]):
        self.name = name
        dims: dict[str, int] = {}
        covers: dict[str, tuple[tuple[str, str], ...]] = {}
        for eid in sorted(elements):
            dim, cov = elements[eid]
            if dim < 0:
                raise StructureError(f"{name}: element {eid!r} has negative dimension")
            dims[eid] = dim
            covers[eid] = tuple(cov)
        cofaces: dict[str, list[tuple[str, str]]] = {eid: [] for eid in dims}
        for eid, cov in covers.items():
            seen: set[str] = set()
            for tgt, sign in cov:
                if sign not in SIGNS:
                    raise StructureError(f"{name}: element {eid!r} has invalid sign {sign!r}")
                if tgt not in dims:
                    raise StructureError(f"{name}: element {eid!r} covers missing element {tgt!r}")
                if tgt in seen:
                    raise StructureError(f"{name}: element {eid!r} covers {tgt!r} twice")
                seen.add(tgt)
                if dims[tgt] != dims[eid] - 1:
                    raise StructureError(
                        f"{name}: grading broken on {eid!r} -> {tgt!r} "
                        f"(dims {dims[eid]} -> {dims[tgt]})"
                    )
                cofaces[tgt].append((eid, sign))
            if dims[eid] >= 1 and not cov:
                raise StructureError(f"{name}: element {eid!r} of dimension {dims[eid]} covers nothing")
        self._dim = dims
        self._covers = covers
        self._cofaces = {eid: tuple(sorted(cf)) for eid, cf in cofaces.items()}
        self._ids = tuple(sorted(dims))
        by_dim: dict[int, list[str]] = {}
        for eid in self._ids:
            by_dim.setdefault(dims[eid], []).append(eid)
        self._by_dim = {d: tuple(v) for d, v in by_dim.items()}
        self._top_dim = max(by_dim) if by_dim else -1

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self._ids)

    def __contains__(self, eid: str) -> bool:
        return eid in self._dim

    def __iter__(self) -> Iterator[str]:
        return iter(self._ids)

    def __repr__(self) -> str:
        return f"Complex({self.name!r}, {len(self)} elements, dim {self.dim})"

    @property
    def dim(self) -> int:
        return self._top_dim

    def elements(self) -> tuple[str, ...]:
        return self._ids

    def dim_of(self, eid: str) -> int:
        return self._dim[eid]

    def covers(self, eid: str) -> tuple[tuple[str, str], ...]:
        """Signed covers of ``eid`` (one dimension down)."""
        return self._covers[eid]

    def cofaces(self, eid: str) -> tuple[tuple[str, str], ...]:
        """Signed elements covering ``eid`` (one dimension up)."""
        return self._cofaces[eid]

    def by_dim(self, n: int) -> tuple[str, ...]:
        return self._by_dim.get(n, ())

    def dim_of_subset(self, members: Iterable[str]) -> int:
        """Greatest element dimension in ``members``, -1 when empty."""
        return max((self._dim[x] for x in members), default=-1)

    # -- subsets ----------------------------------------------------------

    def closure(self, members: Iterable[str]) -> frozenset[str]:
        """Smallest downward-closed superset of ``members``."""
        out: set[str] = set()
        stack = list(members)
        for eid in stack:
            if eid not in self._dim:
                raise KeyError(f"{self.name}: unknown element {eid!r}")
        while stack:
            x = stack.pop()
            if x in out:
                continue
            out.add(x)
            stack.extend(t for t, _ in self._covers[x])
        return frozenset(out)

    def is_closed(self, members: frozenset[str]) -> bool:
        return all(t in members for x in members for t, _ in self._covers[x])

    def maximal(self, members: frozenset[str]) -> frozenset[str]:
        """Elements of ``members`` not covered by any other member."""
        return frozenset(
            x for x in members if not any(y in members for y, _ in self._cofaces[x])
        )

    def source_set(self, members: frozenset[str], n: int, sign: str) -> frozenset[str]:
        """n-dimensional members all of whose covering members carry ``sign``.

        Members of dimension n with no covering member at all are included.
        """
        out = []
        for x in members:
            if self._dim[x] != n:
                continue
            if all(s == sign for y, s in self._cofaces[x] if y in members):
                out.append(x)
        return frozenset(out)

    def boundary(self, members: frozenset[str], n: int | None = None, sign: str | None = None) -> frozenset[str]:
        """The input (``-``) or output (``+``) n-boundary of a closed subset.

        With ``sign`` omitted, the union over both signs; with ``n`` omitted,
        ``dim(members) - 1``.
        """
        if n is None:
            n = self.dim_of_subset(members) - 1
        if sign is None:
            return self.boundary(members, n, MINUS) | self.boundary(members, n, PLUS)
        if n < 0:
            return frozenset()
        high = [x for x in members if self._dim[x] > n]
        swallowed = members - self.closure(high)
        return self.closure(self.source_set(members, n, sign)) | swallowed

    def whole(self) -> frozenset[str]:
        return frozenset(self._ids)

    # -- derived structures -------------------------------------------------

    def oriented_hasse(self, members: frozenset[str] | None = None) -> dict[str, tuple[str, ...]]:
        """Hasse diagram with the input-labelled edges reversed.

        Edge ``y -> x`` for each output cover, ``x -> y`` for each input
        cover.  Returned as a sorted adjacency map over ``members`` (the
        whole complex by default).
        """
        if members is None:
            members = self.whole()
        adj: dict[str, list[str]] = {x: [] for x in sorted(members)}
        for y in members:
            for x, sign in self._covers[y]:
                if x not in members:
                    continue
                if sign == PLUS:
                    adj[y].append(x)
                else:
                    adj[x].append(y)
        return {v: tuple(sorted(ws)) for v, ws in adj.items()}

    def restrict(self, members: frozenset[str], name: str | None = None) -> "Complex":
        """The induced sub-poset on a closed subset, as a standalone complex."""
        if not self.is_closed(members):
            raise ValueError(f"{self.name}: cannot restrict to a non-closed subset")
        table = {
            x: (self._dim[x], [(t, s) for t, s in self._covers[x]])
            for x in members
        }
        return Complex(name or f"{self.name}|{len(members)}", table)

    def dual(self, dims: Iterable[int] | None = None, name: str | None = None) -> "Complex":
        """Reverse orientations; a cover of ``y`` flips iff ``dim(y)`` is selected.

        With ``dims`` omitted every cover flips.  Applying the same ``dims``
        twice gives back an identical encoding.
        """
        selected = None if dims is None else frozenset(dims)
        table = {}
        for x in self._ids:
            cov = [
                (t, flip(s) if selected is None or self._dim[x] in selected else s)
                for t, s in self._covers[x]
            ]
            table[x] = (self._dim[x], cov)
        return Complex(name or f"{self.name}^op", table)

    def relabel(self, mapping: Mapping[str, str], name: str | None = None) -> "Complex":
        """Rename elements; ``mapping`` must be injective on the element set."""
        new_ids = {x: mapping.get(x, x) for x in self._ids}
        if len(set(new_ids.values())) != len(new_ids):
            raise ValueError("relabelling is not injective")
        table = {
            new_ids[x]: (self._dim[x], [(new_ids[t], s) for t, s in self._covers[x]])
            for x in self._ids
        }
        return Complex(name or self.name, table)


# -- validation -------------------------------------------------------------

PASS = "PASS"
FAIL = "FAIL"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ElementReport:
    element: str
    dim: int
    spherical: bool
    input_molecule: str
    output_molecule: str
    globular: bool | None  # None below dimension 2

    @property
    def ok(self) -> bool:
        return (
            self.spherical
            and self.input_molecule != FAIL
            and self.output_molecule != FAIL
            and self.globular is not False
        )


@dataclass(frozen=True)
class ValidationReport:
    complex_name: str
    checks: tuple[ElementReport, ...]
    passed: bool
    unknowns: int = 0

    def failures(self) -> tuple[ElementReport, ...]:
        return tuple(c for c in self.checks if not c.ok)


def spherical_boundary(cx: Complex, members: frozenset[str]) -> bool:
    """Whether the two k-boundaries only meet in the (k-1)-boundary, all k."""
    n = cx.dim_of_subset(members)
    for k in range(n):
        inner = cx.boundary(members, k - 1) if k > 0 else frozenset()
        if cx.boundary(members, k, PLUS) & cx.boundary(members, k, MINUS) != inner:
            return False
    return True


def globular(cx: Complex, x: str) -> bool:
    cl = cx.closure([x])
    n = cx.dim_of(x)
    for a in SIGNS:
        want = cx.boundary(cl, n - 2, a)
        for b in SIGNS:
            if cx.boundary(cx.boundary(cl, n - 1, b), n - 2, a) != want:
                return False
    return True


def validate_complex(cx: Complex) -> ValidationReport:
    """Check every element's cell-shaped-ness: spherical closure, molecule
    boundaries and globularity.

    Molecule recognition is complete up to 3-dimensional boundaries; higher
    boundaries report UNKNOWN rather than FAIL.  Overall PASS iff nothing
    reports FAIL or a broken invariant.
    """
    from . import molecules  # recogniser lives one level up

    checks = []
    unknowns = 0
    for x in cx.elements():
        n = cx.dim_of(x)
        if n < 1:
            continue
        cl = cx.closure([x])
        sph = spherical_boundary(cx, cl)
        statuses = {}
        for a in SIGNS:
            bd = cx.boundary(cl, n - 1, a)
            res = molecules.recognize(cx, bd)
            if res is molecules.UNKNOWN:
                statuses[a] = UNKNOWN
                unknowns += 1
            elif res is None:
                statuses[a] = FAIL
            else:
                statuses[a] = PASS
        glob = globular(cx, x) if n >= 2 else None
        checks.append(
            ElementReport(x, n, sph, statuses[MINUS], statuses[PLUS], glob)
        )
    passed = all(c.ok for c in checks)
    return ValidationReport(cx.name, tuple(checks), passed, unknowns)
