"""Smoke test for the rnacount extension module. Run after `maturin develop`."""

import json
from fractions import Fraction

import rnacount


def main():
    s = rnacount.SecondaryStructure("((.))")
    assert (s.n, s.b, s.k) == (5, 2, 1)
    assert s.stats()["partial_stacks"] == [3]

    t = rnacount.chen_forward(s)
    assert str(t) == "()()()"
    assert rnacount.chen_inverse(t) == s
    assert rnacount.sw_inverse(rnacount.sw_forward(s)) == s

    assert len(rnacount.enumerate_structures(2, 3)) == rnacount.narayana(2, 3) == 20
    assert len(rnacount.enumerate_plane_trees(4)) == 14

    assert rnacount.count_by_num_helices(3, 4, 3) == 93
    assert rnacount.count_by_num_helices(3, 3, 2, sigma=2) == 5
    cells = {(s_, b, k): c for s_, b, k, c in rnacount.helix_table(1)}
    assert cells[(5, 4, 5)] == 375

    total = sum(
        rnacount.helix_distribution_probability(4, 2, 2, 1, d)
        for d in ["1:1,4:1", "2:1,3:1"]
    )
    assert total == Fraction(1), total
    assert isinstance(rnacount.expected_partial_stacks(2, 3), Fraction)

    tree = {"label": "E1", "children": [{"label": "O1", "children": [{"label": "E2"}]}]}
    forest = rnacount.forest_encode(json.dumps(tree))
    back = json.loads(rnacount.forest_decode(forest))
    assert back["label"] == "E1" and back["children"][0]["children"][0]["label"] == "E2"

    try:
        rnacount.SecondaryStructure("(()")
    except ValueError:
        pass
    else:
        raise AssertionError("malformed input accepted")

    for suite, passed, failed, example in rnacount.run_verify(["tables", "series"], 8):
        assert failed == 0, (suite, example)
        assert passed > 0

    print("smoke test passed")


if __name__ == "__main__":
    main()
