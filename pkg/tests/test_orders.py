import pytest

from pastekit import (
    KOrder,
    MINUS,
    PLUS,
    UNKNOWN,
    check_sim_substitution,
    compos,
    frame_acyclic,
    frame_dimension,
    frame_decomposition,
    globe,
    globe_molecule,
    interval_chain,
    k_order,
    maxd,
    normal_1_order,
    paste,
    recognize,
    slice_decomposition,
    substitute,
    totally_loop_free,
    u_cell,
)
from pastekit.fixtures import frob, power

from conftest import random_2_molecule, random_molecule


def test_maxd_interval_is_a_path():
    i2 = interval_chain(2)
    g = maxd(i2.complex, i2.members, 0)
    assert len(g.high) == 2
    # exactly one vertex has a wire on either side: the shared midpoint
    mids = [
        v
        for v in g.low
        if g.adjacency[v] and any(v in g.adjacency[w] for w in g.high)
    ]
    assert len(mids) == 1
    (incoming,) = [w for w in g.high if mids[0] in g.adjacency[w]]
    (outgoing,) = g.adjacency[mids[0]]
    assert incoming != outgoing


def test_maxd_single_high_vertex():
    o2 = globe(2)
    g = maxd(o2, o2.whole(), 1)
    assert g.high == ("2",)
    assert all("2" not in g.adjacency[v] or o2.dim_of(v) <= 1 for v in g.adjacency)


def test_frame_dimension_examples():
    o1 = globe_molecule(1)
    assert frame_dimension(o1.complex, o1.members) == -1
    i2 = interval_chain(2)
    assert frame_dimension(i2.complex, i2.members) == 0
    q = paste(u_cell(2, 1), u_cell(1, 2), 1)
    assert frame_dimension(q.complex, q.members) == 1


def test_frame_acyclic_low_dimensions(rng):
    for _ in range(8):
        u = random_molecule(rng, max_elements=25)
        rep = frame_acyclic(u.complex)
        assert rep.ok


def test_k_order_exists_at_codimension_one(rng):
    for _ in range(10):
        u = random_molecule(rng, max_elements=30)
        if u.dim == 0:
            continue
        assert k_order(u, u.dim - 1) is not None


def test_k_order_globe():
    assert k_order(globe_molecule(2), 0).sequence == ("2",)


def test_k_order_frob_is_deterministic():
    F = frob()
    seq = k_order(F.molecule, 2).sequence
    assert seq == (F["phi"], F["psi"])


def test_frame_decomposition_two_factor():
    q = paste(u_cell(2, 1), u_cell(1, 2), 1)
    order = k_order(q, 1)
    factors = frame_decomposition(q, 1, order)
    assert len(factors) == 2
    rebuilt = frozenset().union(*[f.members for f in factors])
    assert rebuilt == q.members


def test_frame_decomposition_single_atom():
    u = u_cell(2, 1)
    factors = frame_decomposition(u, 1, k_order(u, 1))
    assert len(factors) == 1 and factors[0].members == u.members


def test_frame_decomposition_frob():
    F = frob()
    cx = F.molecule.complex
    v1, v2 = frame_decomposition(F.molecule, 2, k_order(F.molecule, 2))
    assert v1.members == cx.closure([F["phi"]]) | cx.boundary(
        cx.closure([F["psi"]]), 2, MINUS
    )
    assert v2.members == cx.closure([F["psi"]]) | cx.boundary(
        cx.closure([F["phi"]]), 2, PLUS
    )


def test_frame_decomposition_rebuilds_under_any_k(rng):
    for _ in range(10):
        u = random_molecule(rng, max_elements=30)
        if len(u.complex.maximal(u.members)) < 2:
            continue
        frd = frame_dimension(u.complex, u.members)
        for k in range(max(frd, 0), u.dim):
            order = k_order(u, k)
            if order is None:
                continue
            factors = frame_decomposition(u, k, order)
            assert frozenset().union(*[f.members for f in factors]) == u.members
            for f, x in zip(factors, order.sequence):
                assert x in f.members


def test_totally_loop_free_examples():
    i = interval_chain(1)
    rep = totally_loop_free(i.complex, i.members)
    assert rep.acyclic and rep.total
    # globes chain their hemispheres: the order stays total in any dimension
    o3 = globe(3)
    rep = totally_loop_free(o3)
    assert rep.acyclic and rep.total
    assert rep.order == ("0-", "1-", "2-", "3", "2+", "1+", "0+")
    q = paste(u_cell(2, 1), u_cell(1, 2), 1)
    rep = totally_loop_free(q.complex, q.members)
    assert rep.acyclic and rep.total


def test_loop_freeness_fails_in_dimension_three():
    # two independent rewrites let a descending wire re-enter an earlier
    # frame through a shared vertex: the oriented Hasse graph loops
    F = frob()
    rep = totally_loop_free(F.molecule.complex, F.molecule.members)
    assert not rep.acyclic and rep.cycle is not None


def test_acyclic_but_partial_reachability():
    from pastekit import Complex

    cx = Complex(
        "pair",
        {
            "a0": (0, []),
            "a1": (0, []),
            "b0": (0, []),
            "b1": (0, []),
            "e": (1, [("a0", MINUS), ("a1", PLUS)]),
            "f": (1, [("b0", MINUS), ("b1", PLUS)]),
        },
    )
    rep = totally_loop_free(cx)
    assert rep.acyclic and not rep.total and rep.order is None


def test_two_molecule_precedence_total(rng):
    for _ in range(15):
        u = random_2_molecule(rng, max_elements=30)
        rep = totally_loop_free(u.complex, u.members)
        assert rep.acyclic and rep.total


def test_maxd_path_implies_precedence(rng):
    for _ in range(10):
        u = random_2_molecule(rng, max_elements=30)
        rep = totally_loop_free(u.complex, u.members)
        maximal = u.complex.maximal(u.members)
        for k in (0, 1):
            g = maxd(u.complex, u.members, k)
            for x in g.high:
                for y in g.reachable(x):
                    if y in maximal and y != x:
                        assert rep.preceq(x, y)


def test_normal_1_order_atom():
    assert normal_1_order(u_cell(2, 1)).sequence == ("top",)


def test_normal_1_order_theta_with_hubs():
    # two hub cells with two cells on each arc between them; the canonical
    # order runs bottom hub, left arc upward, right arc upward, top hub
    o1 = globe_molecule(1)
    layer = lambda m, left: (
        paste(m, o1, 0) if left else paste(o1, m, 0)
    )
    u = paste(u_cell(1, 2), layer(u_cell(1, 1), True), 1)
    c2 = u.right_map["left/top"]
    u2 = paste(u, layer(u_cell(1, 1), True), 1)
    c3 = u2.right_map["left/top"]
    u3 = paste(u2, layer(u_cell(1, 1), False), 1)
    c4 = u3.right_map["right/top"]
    u4 = paste(u3, layer(u_cell(1, 1), False), 1)
    c5 = u4.right_map["right/top"]
    full = paste(u4, u_cell(2, 1), 1)
    assert full.right_map is not None and full.left_map is not None
    c6 = full.right_map["top"]
    hub1 = full.left_map["left/left/left/left/top"]
    seq = normal_1_order(full).sequence
    order = [hub1] + [
        full.left_map[p]
        for p in (
            u4.left_map[u3.left_map[u2.left_map[c2]]],
            u4.left_map[u3.left_map[c3]],
            u4.left_map[c4],
            c5,
        )
    ] + [c6]
    assert list(seq) == order


def test_normal_1_order_frob_input():
    F = frob()
    cx = F.molecule.complex
    bd = recognize(cx, cx.boundary(F.molecule.members, 2, MINUS))
    assert normal_1_order(bd).sequence == (F["x"], F["z"], F["w"], F["y"])


def test_slice_decomposition_one_molecule():
    i2 = interval_chain(2)
    lo, hi = slice_decomposition(i2, i2)
    assert lo.members == hi.members == i2.members


def test_slice_decomposition_atom_cuts():
    u = u_cell(2, 1)
    cx = u.complex
    lo_cut = recognize(cx, cx.boundary(u.members, 1, MINUS))
    lo, hi = slice_decomposition(u, lo_cut)
    assert lo.members == lo_cut.members and hi.members == u.members
    hi_cut = recognize(cx, cx.boundary(u.members, 1, PLUS))
    lo, hi = slice_decomposition(u, hi_cut)
    assert lo.members == u.members and hi.members == hi_cut.members


def test_slice_decomposition_unique(rng):
    # oracle: enumerate every bipartition of the 2-cells and keep those that
    # satisfy the slice conditions; there must be exactly one
    from itertools import combinations

    for _ in range(5):
        u = random_2_molecule(rng, max_elements=22)
        cx = u.complex
        cut = recognize(cx, cx.boundary(u.members, 1, MINUS))
        lo, hi = slice_decomposition(u, cut)
        cells = sorted(x for x in u.members if cx.dim_of(x) == 2)
        solutions = []
        for r in range(len(cells) + 1):
            for group in combinations(cells, r):
                below = cx.closure(group) | cut.members
                above = cx.closure(set(cells) - set(group)) | cut.members
                if (
                    below | above == u.members
                    and below & above == cut.members
                    and cx.boundary(below, 1, PLUS) == cut.members
                    and cx.boundary(above, 1, MINUS) == cut.members
                ):
                    solutions.append((below, above))
        assert solutions == [(lo.members, hi.members)]


def test_slice_decomposition_rejects_nonspanning():
    u = paste(u_cell(2, 1), u_cell(1, 1), 0)
    cx = u.complex
    wire = next(x for x in u.boundary(1, MINUS) if cx.dim_of(x) == 1)
    cut = recognize(cx, cx.closure([wire]))
    with pytest.raises(ValueError):
        slice_decomposition(u, cut)


def test_sim_substitution_disjoint_atoms():
    u = paste(u_cell(1, 1), u_cell(1, 1), 0)
    cx = u.complex
    cells = [x for x in u.members if cx.dim_of(x) == 2]
    v = cx.closure([cells[0]])
    w = cx.closure([cells[1]])
    assert check_sim_substitution(u, v, w)


def test_sim_substitution_same_atom():
    u = u_cell(2, 1)
    v = u.complex.closure(["top"])
    assert check_sim_substitution(u, v, v)


def test_sim_substitution_power_counterexample():
    P = power()
    u = P.molecule
    cx = u.complex
    v = cx.closure([P["lam"], P["tau"]])
    w = cx.closure([P["rho"], P["beta"]])
    report = check_sim_substitution(u, v, w)
    assert not report
    assert report.blocked_path is not None
    vm = recognize(cx, v)
    collapsed = substitute(u, v, compos(vm))
    assert collapsed.left_map is not None and collapsed.right_map is not None
    hole = collapsed.right_map["top"]
    expected = tuple(
        collapsed.left_map.get(P[n], hole) if n != "<V>" else hole
        for n in ("rho", "y", "<V>", "x", "beta")
    )
    assert report.blocked_path == expected


def test_sim_substitution_hypothesis_violations():
    u = paste(u_cell(2, 1), u_cell(1, 2), 1)
    cells = sorted(x for x in u.members if u.complex.dim_of(x) == 2)
    overlapping = u.members  # the whole thing against one cell: interiors meet
    with pytest.raises(ValueError):
        check_sim_substitution(u, overlapping, u.complex.closure([cells[0]]))


def test_frame_decomposition_designates_uniquely(rng):
    for _ in range(8):
        u = random_molecule(rng, max_elements=30)
        if len(u.complex.maximal(u.members)) < 2 or u.dim == 0:
            continue
        order = k_order(u, u.dim - 1)
        assert order is not None
        factors = frame_decomposition(u, u.dim - 1, order)
        for i, f in enumerate(factors):
            inside = [x for x in order.sequence if x in f.members]
            assert inside == [order.sequence[i]]


def test_sim_substitution_always_succeeds_in_dimension_two(rng):
    from pastekit import enumerate_molecules, spherical

    checked = 0
    while checked < 6:
        u = random_2_molecule(rng, max_elements=24)
        cx = u.complex
        pool, _ = enumerate_molecules(cx, 300)
        twos = [
            m
            for m in pool
            if cx.dim_of_subset(m.members) == 2 and spherical(m)
        ]
        pairs = [
            (v, w)
            for v in twos
            for w in twos
            if v.members != w.members
            and (v.members & w.members)
            <= (cx.boundary(v.members, None) | cx.boundary(w.members, None))
        ]
        if not pairs:
            continue
        rng.shuffle(pairs)
        for v, w in pairs[:3]:
            assert check_sim_substitution(u, v.members, w.members)
        checked += 1
