"""Molecules: composable diagram shapes inside oriented graded posets.

A molecule handle pairs a closed subset with a certificate: either the
subset has a greatest element (an atom) or it splits as two molecules glued
along a matching k-boundary.  Constructors (`globe`, `paste`, `cell_to`,
`compos`, `substitute`) build certificates as they go; `recognize` rebuilds
one from a bare closed subset by exhaustive split search, which is complete
up to dimension 3.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .ogp import Complex, MINUS, PLUS, SIGNS, spherical_boundary


class PastingError(ValueError):
    """A gluing operation's boundary matching failed."""


class SubstitutionError(ValueError):
    """A substitution could not be verified to produce a molecule."""


class _Unknown:
    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "UNKNOWN"

    def __bool__(self) -> bool:
        return False


#: Returned by `recognize` when the search is exhausted above dimension 3,
#: where a failed search does not certify a non-molecule.
UNKNOWN = _Unknown()


@dataclass(frozen=True)
class Atom:
    top: str


@dataclass(frozen=True)
class Pasting:
    k: int
    left: "Molecule"
    right: "Molecule"


@dataclass(frozen=True, eq=False)
class Molecule:
    """A certified molecule: a closed subset of an ambient complex.

    ``left_map`` / ``right_map`` record element origins for handles produced
    by gluing constructors (old id -> id in the new ambient complex).
    """

    complex: Complex
    members: frozenset[str]
    certificate: Atom | Pasting
    left_map: Mapping[str, str] | None = None
    right_map: Mapping[str, str] | None = None

    @property
    def dim(self) -> int:
        return self.complex.dim_of_subset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        kind = "atom" if isinstance(self.certificate, Atom) else f"pasting@{self.certificate.k}"
        return f"Molecule({self.complex.name!r}, {len(self)} elements, dim {self.dim}, {kind})"

    def boundary(self, n: int | None = None, sign: str | None = None) -> frozenset[str]:
        return self.complex.boundary(self.members, n, sign)

    def as_complex(self, name: str | None = None) -> Complex:
        return self.complex.restrict(self.members, name)

    def atoms(self) -> tuple[str, ...]:
        """Ids of the maximal elements (the cells pasted together)."""
        return tuple(sorted(self.complex.maximal(self.members)))


def spherical(u: Molecule | tuple[Complex, frozenset[str]]) -> bool:
    if isinstance(u, Molecule):
        return spherical_boundary(u.complex, u.members)
    cx, members = u
    return spherical_boundary(cx, members)


# -- basic shapes -------------------------------------------------------------


def globe(n: int) -> Complex:
    """The n-globe: one top cell, a pair of cells in every lower dimension."""
    if n < 0:
        raise ValueError("globe dimension must be >= 0")
    table: dict[str, tuple[int, list[tuple[str, str]]]] = {}
    for k in range(n):
        below = [] if k == 0 else [(f"{k-1}-", MINUS), (f"{k-1}+", PLUS)]
        table[f"{k}-"] = (k, list(below))
        table[f"{k}+"] = (k, list(below))
    top_below = [] if n == 0 else [(f"{n-1}-", MINUS), (f"{n-1}+", PLUS)]
    table[str(n)] = (n, top_below)
    return Complex(f"O{n}", table)


def whole(cx: Complex) -> Molecule:
    """Handle for the full complex, recognising the certificate on the fly."""
    res = recognize(cx, cx.whole())
    if res is None or res is UNKNOWN:
        raise ValueError(f"{cx.name} is not (recognisably) a molecule")
    return res


def atom_handle(cx: Complex, top: str) -> Molecule:
    return Molecule(cx, cx.closure([top]), Atom(top))


def globe_molecule(n: int) -> Molecule:
    cx = globe(n)
    return atom_handle(cx, str(n))


def interval_chain(n: int) -> Molecule:
    """The 1-molecule with n arrows pasted end to end."""
    if n < 1:
        raise ValueError("interval chains need at least one arrow")
    u = globe_molecule(1)
    for _ in range(n - 1):
        u = paste(u, globe_molecule(1), 0)
    return u


def u_cell(n: int, m: int) -> Molecule:
    """The 2-atom with n input wires and m output wires."""
    return cell_to(interval_chain(n), interval_chain(m))


# -- isomorphism --------------------------------------------------------------


def _fingerprints(cx: Complex, members: frozenset[str]) -> dict[str, tuple]:
    """Iteratively refined structural invariants, used to prune iso search."""
    fp = {x: (cx.dim_of(x),) for x in members}
    for _ in range(len(members).bit_length() + 2):
        nxt = {}
        for x in members:
            down = sorted((s, fp[t]) for t, s in cx.covers(x) if t in members)
            up = sorted((s, fp[y]) for y, s in cx.cofaces(x) if y in members)
            nxt[x] = (fp[x], tuple(down), tuple(up))
        # re-encode to keep the tuples from growing without bound
        codes = {v: i for i, v in enumerate(sorted(set(nxt.values())))}
        new_fp = {x: (cx.dim_of(x), codes[nxt[x]]) for x in members}
        if new_fp == fp:
            break
        fp = new_fp
    return fp


def _iso_search(
    acx: Complex, a: frozenset[str], bcx: Complex, b: frozenset[str], want_all: bool
) -> list[dict[str, str]]:
    if len(a) != len(b):
        return []
    fpa = _fingerprints(acx, a)
    fpb = _fingerprints(bcx, b)
    if sorted(fpa.values()) != sorted(fpb.values()):
        return []
    by_fp: dict[tuple, list[str]] = {}
    for y in sorted(b):
        by_fp.setdefault(fpb[y], []).append(y)
    # match from the top dimension down so covers of matched elements are
    # constrained early
    order = sorted(a, key=lambda x: (-acx.dim_of(x), x))
    found: list[dict[str, str]] = []

    def compatible(x: str, y: str, fwd: dict[str, str]) -> bool:
        xcov = {(t, s) for t, s in acx.covers(x) if t in a}
        ycov = {(t, s) for t, s in bcx.covers(y) if t in b}
        if len(xcov) != len(ycov):
            return False
        for t, s in xcov:
            if t in fwd:
                if (fwd[t], s) not in ycov:
                    return False
        # signed cover multiset by fingerprint must agree
        xm = sorted((s, fpa[t]) for t, s in xcov)
        ym = sorted((s, fpb[t]) for t, s in ycov)
        return xm == ym

    def extend(i: int, fwd: dict[str, str], used: set[str]) -> bool:
        if i == len(order):
            found.append(dict(fwd))
            return not want_all
        x = order[i]
        for y in by_fp.get(fpa[x], ()):
            if y in used or not compatible(x, y, fwd):
                continue
            fwd[x] = y
            used.add(y)
            if extend(i + 1, fwd, used):
                return True
            del fwd[x]
            used.discard(y)
        return False

    extend(0, {}, set())
    # the search matches covers downward only; verify signed covers fully
    good = []
    for iso in found:
        ok = all(
            {(iso[t], s) for t, s in acx.covers(x) if t in a}
            == {(t, s) for t, s in bcx.covers(iso[x]) if t in b}
            for x in a
        )
        if ok:
            good.append(iso)
    return good


def unique_iso(
    u: Molecule | tuple[Complex, frozenset[str]],
    v: Molecule | tuple[Complex, frozenset[str]],
) -> dict[str, str] | None:
    """The isomorphism between two molecules, if one exists.

    Molecules of regular complexes are isomorphic in at most one way; a
    second distinct isomorphism found by the search is reported as an
    internal consistency error.
    """
    acx, a = (u.complex, u.members) if isinstance(u, Molecule) else u
    bcx, b = (v.complex, v.members) if isinstance(v, Molecule) else v
    isos = _iso_search(acx, a, bcx, b, want_all=True)
    if not isos:
        return None
    if len(isos) > 1:
        raise RuntimeError(
            f"molecule isomorphism is not unique between {acx.name} and {bcx.name}; "
            "inputs are not regular molecules"
        )
    return isos[0]


# -- gluing constructors -------------------------------------------------------


def _prefix_table(cx: Complex, members: frozenset[str], prefix: str) -> dict:
    return {
        f"{prefix}{x}": (cx.dim_of(x), [(f"{prefix}{t}", s) for t, s in cx.covers(x) if t in members])
        for x in members
    }


def paste(u1: Molecule, u2: Molecule, k: int, name: str | None = None) -> Molecule:
    """Glue two molecules along the output/input k-boundary isomorphism.

    Element count of the result is ``len(u1) + len(u2) - len(boundary)``.
    Ids are namespaced ``left/`` and ``right/``; matched boundary elements
    keep their left id.  Origin maps record where every element went.
    """
    if k < 0:
        raise PastingError("pasting dimension must be >= 0")
    b1 = u1.boundary(k, PLUS)
    b2 = u2.boundary(k, MINUS)
    iso = unique_iso((u1.complex, b1), (u2.complex, b2))
    if iso is None:
        d1 = sorted(u1.complex.dim_of(x) for x in b1)
        d2 = sorted(u2.complex.dim_of(x) for x in b2)
        stratum = next(
            (n for n in range(max(len(d1), len(d2))) if n >= len(d1) or n >= len(d2) or d1[n] != d2[n]),
            None,
        )
        raise PastingError(
            f"cannot paste {u1.complex.name} and {u2.complex.name} at {k}: "
            f"boundaries not isomorphic (first mismatch in stratum {stratum}, "
            f"sizes {len(b1)} vs {len(b2)})"
        )
    into = {y: f"left/{x}" for x, y in iso.items()}  # u2 boundary id -> new id
    left_map = {x: f"left/{x}" for x in u1.members}
    right_map = {
        y: into.get(y, f"right/{y}") for y in u2.members
    }
    table = _prefix_table(u1.complex, u1.members, "left/")
    for y in u2.members:
        if y in into:
            continue
        table[right_map[y]] = (
            u2.complex.dim_of(y),
            [(right_map[t], s) for t, s in u2.complex.covers(y) if t in u2.members],
        )
    cx = Complex(name or f"({u1.complex.name}#{k}{u2.complex.name})", table)
    left = _remap(u1, left_map, cx)
    right = _remap(u2, right_map, cx)
    return Molecule(cx, cx.whole(), Pasting(k, left, right), left_map, right_map)


def _remap(u: Molecule, mapping: Mapping[str, str], cx: Complex) -> Molecule:
    members = frozenset(mapping[x] for x in u.members)
    cert = u.certificate
    if isinstance(cert, Atom):
        new_cert: Atom | Pasting = Atom(mapping[cert.top])
    else:
        new_cert = Pasting(cert.k, _remap(cert.left, mapping, cx), _remap(cert.right, mapping, cx))
    return Molecule(cx, members, new_cert)


def cell_to(u: Molecule, v: Molecule, name: str | None = None, top: str = "top") -> Molecule:
    """Adjoin a greatest element over two boundary-matched spherical molecules.

    The result is an atom one dimension up whose input boundary is a copy of
    ``u`` and output boundary a copy of ``v``.
    """
    n = u.dim
    if v.dim != n:
        raise PastingError("cell_to requires molecules of equal dimension")
    if not spherical(u) or not spherical(v):
        raise PastingError("cell_to requires spherical boundaries")
    iso: dict[str, str] = {}
    for sign in SIGNS:
        bu = u.boundary(n - 1, sign)
        bv = v.boundary(n - 1, sign)
        part = unique_iso((u.complex, bu), (v.complex, bv))
        if part is None:
            raise PastingError(
                f"cell_to: {sign}-boundaries of {u.complex.name} and {v.complex.name} differ"
            )
        for x, y in part.items():
            if iso.get(x, y) != y:
                raise RuntimeError("boundary isomorphisms disagree on the shared sphere")
            iso[x] = y
    into = {y: f"left/{x}" for x, y in iso.items()}
    left_map = {x: f"left/{x}" for x in u.members}
    right_map = {y: into.get(y, f"right/{y}") for y in v.members}
    table = _prefix_table(u.complex, u.members, "left/")
    for y in v.members:
        if y in into:
            continue
        table[right_map[y]] = (
            v.complex.dim_of(y),
            [(right_map[t], s) for t, s in v.complex.covers(y) if t in v.members],
        )
    top_cov = [(left_map[x], MINUS) for x in sorted(u.members) if u.complex.dim_of(x) == n]
    top_cov += [
        (right_map[y], PLUS)
        for y in sorted(v.members)
        if v.complex.dim_of(y) == n and y not in into
    ]
    if not top_cov:
        raise PastingError("cell_to would create a cell with no faces")
    table[top] = (n + 1, top_cov)
    cx = Complex(name or f"({u.complex.name}=>{v.complex.name})", table)
    # sanity: the new top's boundaries are the two halves
    cl = cx.whole()
    if cx.boundary(cl, n, MINUS) != frozenset(left_map.values()):
        raise RuntimeError("cell_to: input boundary does not reproduce the source")
    if cx.boundary(cl, n, PLUS) != frozenset(right_map[y] for y in v.members):
        raise RuntimeError("cell_to: output boundary does not reproduce the target")
    return Molecule(cx, cl, Atom(top), left_map, right_map)


def compos(u: Molecule, name: str | None = None) -> Molecule:
    """The atom with the same boundary as a spherical molecule."""
    if not spherical(u):
        raise PastingError(f"{u.complex.name}: composite cell needs a spherical boundary")
    n = u.dim
    if n == 0:
        return u
    lo = recognize(u.complex, u.boundary(n - 1, MINUS))
    hi = recognize(u.complex, u.boundary(n - 1, PLUS))
    if lo is None or lo is UNKNOWN or hi is None or hi is UNKNOWN:
        raise PastingError(f"{u.complex.name}: boundary of composite not recognised as a molecule")
    return cell_to(lo, hi, name=name)


def substitute(u: Molecule, v_members: frozenset[str], w: Molecule, name: str | None = None) -> Molecule:
    """Replace a spherical submolecule of ``u`` by a boundary-matched molecule.

    The replacement is verified after the fact: the glued poset must load,
    recognise as a molecule, and keep boundaries isomorphic to ``u``'s.
    Failure of any check means ``v_members`` was not substitutable.
    """
    cx = u.complex
    if not v_members <= u.members:
        raise SubstitutionError("substitution site is not inside the molecule")
    if not cx.is_closed(v_members):
        raise SubstitutionError("substitution site is not closed")
    v = recognize(cx, v_members)
    if v is None or v is UNKNOWN:
        raise SubstitutionError("substitution site is not a molecule")
    n = u.dim
    k = v.dim
    if w.dim != k or k > n:
        raise SubstitutionError("site and replacement must share their top dimension")
    if not spherical(v) or not spherical(w):
        raise SubstitutionError("substitution requires spherical boundaries")
    iso: dict[str, str] = {}  # boundary of w -> boundary of v
    for sign in SIGNS:
        part = unique_iso(
            (w.complex, w.boundary(k - 1, sign)), (cx, cx.boundary(v_members, k - 1, sign))
        )
        if part is None:
            raise SubstitutionError(f"{sign}-boundaries of site and replacement differ")
        for x, y in part.items():
            if iso.get(x, y) != y:
                raise RuntimeError("substitution boundary isomorphisms disagree")
            iso[x] = y
    v_boundary = cx.boundary(v_members, k - 1, MINUS) | cx.boundary(v_members, k - 1, PLUS)
    interior = v_members - v_boundary
    if any(t in interior for x in u.members - v_members for t, _ in cx.covers(x)):
        # the interior is attached from outside; only a full isomorphic
        # replacement (an identity substitution) can be glued in
        full = unique_iso((w.complex, w.members), (cx, v_members))
        if full is None:
            raise SubstitutionError(
                "context is attached to the interior of the site and the "
                "replacement is not an isomorphic copy"
            )
        iso = full
        interior = frozenset()
        v_boundary = v_members
    kept = (u.members - v_members) | v_boundary
    left_map = {x: f"left/{x}" for x in kept}
    right_map = {y: f"left/{iso[y]}" if y in iso else f"right/{y}" for y in w.members}
    table = {}
    try:
        for x in kept:
            table[left_map[x]] = (
                cx.dim_of(x),
                [(left_map[t], s) for t, s in cx.covers(x) if t in kept],
            )
        for y in w.members:
            if y in iso:
                continue
            table[right_map[y]] = (
                w.complex.dim_of(y),
                [(right_map[t], s) for t, s in w.complex.covers(y) if t in w.members],
            )
        out = Complex(name or f"{cx.name}[sub]", table)
    except SubstitutionError:
        raise
    except ValueError as exc:
        raise SubstitutionError(f"substitution produced a broken poset: {exc}") from exc
    res = recognize(out, out.whole())
    if res is None:
        raise SubstitutionError("substitution result is not a molecule (site was not a submolecule)")
    if res is UNKNOWN:
        raise SubstitutionError("substitution result not recognised (dimension above 3)")
    for sign in SIGNS:
        old = cx.boundary(u.members, n - 1, sign)
        new = out.boundary(out.whole(), n - 1, sign)
        if unique_iso((cx, old), (out, new)) is None:
            raise SubstitutionError("substitution changed the outer boundary")
    return Molecule(out, out.whole(), res.certificate, left_map, right_map)


# -- recognition ---------------------------------------------------------------


def _lex_kahn(adj: dict[str, tuple[str, ...]]) -> list[str] | None:
    """Topological order with lexicographically-least ready vertex, or None."""
    import heapq

    indeg = {v: 0 for v in adj}
    for v, ws in adj.items():
        for w in ws:
            indeg[w] += 1
    ready = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    out = []
    while ready:
        v = heapq.heappop(ready)
        out.append(v)
        for w in adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)
    if len(out) != len(adj):
        return None
    return out


def _maxd_adj(cx: Complex, members: frozenset[str], n: int) -> dict[str, tuple[str, ...]]:
    from .orders import maxd

    g = maxd(cx, members, n)
    return g.adjacency


def recognize(cx: Complex, members: frozenset[str], _memo: dict | None = None):
    """Reconstruct a molecule certificate for a closed subset.

    Returns a handle, ``None`` when the subset is certainly not a molecule,
    or ``UNKNOWN`` when the search is exhausted above dimension 3 (where
    failure is inconclusive).  Complete for subsets of dimension <= 3 in a
    complex whose cells are themselves well-formed.
    """
    from .orders import frame_dimension

    if _memo is None:
        _memo = {}
    if members in _memo:
        return _memo[members]
    if not members:
        return None
    if not cx.is_closed(members):
        raise ValueError("recognition expects a closed subset")
    maximal = cx.maximal(members)
    if len(maximal) == 1:
        res = Molecule(cx, members, Atom(next(iter(maximal))))
        _memo[members] = res
        return res
    n = cx.dim_of_subset(members)
    inconclusive = n >= 4
    frd = frame_dimension(cx, members)
    _memo[members] = None  # cut cycles while searching
    for k in range(max(frd, 0), n):
        adj = _maxd_adj(cx, members, k)
        order = _lex_kahn(adj)
        if order is None:
            continue
        highs = [x for x in order if x in maximal and cx.dim_of(x) > k]
        if len(highs) < 2:
            continue
        bplus = cx.boundary(members, k, PLUS)
        bminus = cx.boundary(members, k, MINUS)
        for i in range(1, len(highs)):
            for u1_members, u2_members in _split_candidates(cx, members, highs, i, k, bminus, bplus):
                if not u1_members or not u2_members:
                    continue
                if u1_members == members or u2_members == members:
                    continue
                if u1_members | u2_members != members:
                    continue
                shared = u1_members & u2_members
                if cx.boundary(u1_members, k, PLUS) != shared:
                    continue
                if cx.boundary(u2_members, k, MINUS) != shared:
                    continue
                left = recognize(cx, u1_members, _memo)
                if left is None or left is UNKNOWN:
                    inconclusive = inconclusive or left is UNKNOWN
                    continue
                right = recognize(cx, u2_members, _memo)
                if right is None or right is UNKNOWN:
                    inconclusive = inconclusive or right is UNKNOWN
                    continue
                res = Molecule(cx, members, Pasting(k, left, right))
                _memo[members] = res
                return res
    res = UNKNOWN if inconclusive else None
    _memo[members] = res
    return res


def _split_candidates(cx, members, highs, i, k, bminus, bplus):
    suffix = cx.closure(highs[i:]) | bplus
    yield cx.closure(members - (suffix - cx.boundary(suffix, k, MINUS))), suffix
    prefix = cx.closure(highs[:i]) | bminus
    yield prefix, cx.closure(members - (prefix - cx.boundary(prefix, k, PLUS)))


def enumerate_molecules(cx: Complex, max_count: int = 10_000) -> tuple[list[Molecule], bool]:
    """All molecules inside a complex: atom closures closed under pasting.

    Deduplicated by element set; results sorted by (size, ids).  Returns the
    list and a flag marking whether the budget truncated the enumeration.
    """
    pool: dict[frozenset[str], Molecule] = {}
    by_bminus: dict[tuple[int, frozenset[str]], list[frozenset[str]]] = {}
    by_bplus: dict[tuple[int, frozenset[str]], list[frozenset[str]]] = {}
    top = cx.dim

    def boundaries(m: frozenset[str]):
        for k in range(top):
            yield k, cx.boundary(m, k, MINUS), cx.boundary(m, k, PLUS)

    work: list[frozenset[str]] = []
    truncated = False

    def add(members: frozenset[str], mol: Molecule) -> None:
        nonlocal truncated
        if members in pool:
            return
        if len(pool) >= max_count:
            truncated = True
            return
        pool[members] = mol
        work.append(members)
        for k, bm, bp in boundaries(members):
            by_bminus.setdefault((k, bm), []).append(members)
            by_bplus.setdefault((k, bp), []).append(members)

    for x in cx.elements():
        add(cx.closure([x]), Molecule(cx, cx.closure([x]), Atom(x)))
    while work and not truncated:
        m = work.pop()
        mol = pool[m]
        for k, bm, bp in boundaries(m):
            for other in list(by_bminus.get((k, bp), ())):
                if other & m == bp:
                    joined = other | m
                    if joined != m and joined != other:
                        add(joined, Molecule(cx, joined, Pasting(k, mol, pool[other])))
            for other in list(by_bplus.get((k, bm), ())):
                if other & m == bm:
                    joined = other | m
                    if joined != m and joined != other:
                        add(joined, Molecule(cx, joined, Pasting(k, pool[other], mol)))
    out = sorted(pool.values(), key=lambda h: (len(h.members), tuple(sorted(h.members))))
    return out, truncated


def certificate_ok(u: Molecule) -> bool:
    """Recursively verify a handle's certificate against its subset.

    An atom certificate must name a greatest element; a pasting certificate's
    halves must cover the subset and meet exactly in the matched boundary.
    """
    cx = u.complex
    cert = u.certificate
    if isinstance(cert, Atom):
        return cert.top in u.members and cx.closure([cert.top]) == u.members
    left, right = cert.left, cert.right
    if left.members | right.members != u.members:
        return False
    shared = left.members & right.members
    if cx.boundary(left.members, cert.k, PLUS) != shared:
        return False
    if cx.boundary(right.members, cert.k, MINUS) != shared:
        return False
    return certificate_ok(left) and certificate_ok(right)


def certificate_json(u: Molecule) -> dict:
    """Serialize a certificate tree (atoms and pasting nodes)."""
    cert = u.certificate
    if isinstance(cert, Atom):
        return {"atom": cert.top}
    return {
        "paste": {
            "k": cert.k,
            "left": certificate_json(cert.left),
            "right": certificate_json(cert.right),
        }
    }
