"""Smoke test for the godan_py extension module.

Build it first, e.g. `maturin develop -m crates/py/Cargo.toml --release`.
"""

import json

import godan_py


def main() -> None:
    g = godan_py.GodanGraph(4)
    assert (g.n, g.order) == (4, 24)
    assert len(g.edges()) == 48
    assert all(len(g.neighbors(v)) == 4 for v in g.vertices())

    s = ["1234", "2341", "3412", "4123"]
    trees = g.build_idsts(s)
    assert len(trees) == 3 and trees.is_valid()
    ok, checks = g.verify_idst(trees.trees, s)
    assert ok and all(passed for _, passed, _ in checks)
    record = json.loads(trees.to_json())
    assert record["S"] == s and len(record["trees"]) == 3

    # A duplicated tree must be rejected.
    bad = [trees.trees[0], trees.trees[0], trees.trees[2]]
    ok, _ = g.verify_idst(bad, s)
    assert not ok

    try:
        g.build_idsts(["1234", "1234", "3412", "4123"])
    except ValueError:
        pass
    else:
        raise AssertionError("repeated terminal accepted")

    assert godan_py.kappa_k(3, 4)[0] == 2
    assert godan_py.kappa_k(4, 4, graph="an")[0] == 2
    assert godan_py.structural(4)[0]

    csv, summary = godan_py.sweep(5, sample=200, seed=7)
    assert csv == godan_py.sweep(5, sample=200, seed=7)[0]
    summary = json.loads(summary)
    assert summary["failures"] == 0 and summary["min_trees"] == summary["max_trees"] == 4

    for cid, title, passed, detail in godan_py.acceptance([1, 7, 9]):
        print(f"criterion {cid}: {'pass' if passed else 'FAIL'} {title}: {detail}")
        assert passed
    print("smoke test passed")


if __name__ == "__main__":
    main()
