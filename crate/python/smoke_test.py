"""Smoke test for the zzprop Python module.

Build with `maturin develop -m crates/zzprop-py/Cargo.toml`, or build the
cdylib with cargo and put it on the path as `zzprop.so`.
"""

import zzprop


def main():
    c4 = zzprop.RotMap.cycle(4)
    assert [round(x, 9) for x in c4.eigenvalues()] == [1.0, 0.0, 0.0, -1.0]
    assert c4.square().degree == 4

    h = zzprop.RotMap.cycle(16)
    fam = zzprop.iterated_family(h, 2)
    assert [g.n for g in fam] == [16, 256]

    model = zzprop.ZigzagModel(1)
    assert model.n == 17
    assert all(ok for _, ok, _ in model.validate())
    assert model.underlying_graph().degree == 21

    a = zzprop.Structure.parse("structure 3\nrel A 2\ntuple A 0 1\ntuple A 2 0\n")
    g = zzprop.reduce(a, 9)
    assert all(g.degree(v) == 3 for v in range(g.n))
    assert zzprop.decode(g, a, 9) == a

    tau = zzprop.Ball.around(zzprop.Graph.path(3), 1, 1)
    triangles = zzprop.Graph.cycle(3).disjoint_union(zzprop.Graph.cycle(3))
    accept, queries, _ = zzprop.test_freeness(triangles, tau, 0.1, seed=7)
    assert accept and queries > 0
    accept, _, _ = zzprop.test_freeness(zzprop.Graph.cycle(6), tau, 0.1, seed=7)
    assert not accept

    f = zzprop.MarkedGraph(zzprop.Graph(3, [(0, 1)]), ["full"] * 3)
    family = zzprop.MarkedFamily([f])
    assert family.is_free(zzprop.Graph(4, [(0, 1), (2, 3)]))
    assert not family.is_free(zzprop.Graph(5, [(1, 2), (3, 4)]))
    assert family.covers([0], zzprop.Graph(5, [(1, 2), (3, 4)]))
    assert zzprop.MarkedFamily.parse(family.to_text()).to_text() == family.to_text()

    real = zzprop.k_realisations(zzprop.Ball.around(zzprop.Graph.path(2), 0, 1), 2, 1)
    assert len(real) == 2

    d = zzprop.sampling_distance(
        zzprop.Structure.from_graph(zzprop.Graph.cycle(6)),
        zzprop.Structure.from_graph(triangles),
        1,
    )
    assert d == 1.0
    print("ok")


if __name__ == "__main__":
    main()
