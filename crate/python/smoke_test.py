"""Smoke test for the polydom extension module.

Build and stage the module first:

    cargo build -p polydom-py --release --features extension-module
    cp target/release/libpolydom_py.so python/polydom.so
    python3 python/smoke_test.py
"""

import polydom


def main():
    g = polydom.generate("An", 5)
    assert (g.vertex_count(), g.edge_count()) == (15, 35), g
    assert g.edge_list().splitlines()[0] == "# family=An n=5"
    assert g.degree("b0") == 6

    labels, claimed, source = polydom.certificate("Sn", "strd", 9)
    s9 = polydom.generate("Sn", 9)
    assert polydom.validate(s9, labels, "strd") == []
    assert polydom.weight(labels) == claimed == 9, source

    bad = {v: -1 for v in g.vertices()}
    assert len(polydom.validate(g, bad, "srd")) == 30

    gamma, witness = polydom.solve(polydom.generate("Tn", 5), "srd", method="bruteforce")
    assert gamma == 5 and polydom.weight(witness) == 5
    gamma, _ = polydom.solve(polydom.generate("Rn", 9), "srd")
    assert gamma == 6
    assert polydom.theorem_bounds("Rn", "srd", 8) == (6, 6, True)

    try:
        polydom.generate("An", 3)
    except ValueError:
        pass
    else:
        raise AssertionError("n=3 accepted")
    print("python smoke test ok")


if __name__ == "__main__":
    main()
