"""Smoke test for the ssr_matrices extension module.

Build and install first, e.g.

    pip install maturin
    maturin develop -m crates/py/Cargo.toml --release

then run ``python python/smoke_test.py``.
"""

from fractions import Fraction

import ssr_matrices as ssr


def main():
    a = ssr.ssr_construction(2, 2, "+-")
    assert a.entries() == [["1", "1"], ["2", "1"]], a
    assert ssr.ssr_construction(1, 4, "-").entries() == [["-1"] * 4]

    b, trace = ssr.ssr_construction(4, 5, "+-+-", trace=True)
    assert b.shape == (4, 5)
    report = ssr.verify(b, oracle=True)
    assert report.accepted and report.pattern == "+-+-", report
    assert all(Fraction(y) > 0 for c in trace["y_choices"] for y in c["y"])

    remark = ssr.Matrix([[10, 1, 3, 6], [1, 1, 2, 1], [1, 2, 3, 1]])
    rejected = ssr.verify(remark)
    assert not rejected
    assert rejected.witness == ([1, 2], [2, 3], "-1", "+"), rejected.witness
    assert ssr.column_relation(remark, 4) == ["1/2", "-1/2", "1/2"]

    tall = ssr.ssr_construction(3, 2, "+-")
    wider = ssr.extend(tall, "right", new_sign="-")
    assert ssr.verify(wider, oracle=True).pattern == "+-+"
    try:
        ssr.extend(tall, "right")
    except ssr.SsrError:
        pass
    else:
        raise AssertionError("missing new_sign was accepted")

    inserted = ssr.insert(ssr.Matrix([["2", "1"], ["1", "1"]]), "col", 1)
    assert inserted.entries() == [["2", "3", "1"], ["1", "2", "1"]]

    p2 = ssr.ssr_p_construction(4, 4, 2, "+-")
    grown = ssr.insert(p2, "row", 2, order=2)
    assert grown.shape == (5, 4)
    assert ssr.verify(grown, order=2, oracle=True).pattern == "+-"

    m = ssr.Matrix([[Fraction(1, 2), "3/4"], [1, 2]])
    assert m.to_fractions()[0] == [Fraction(1, 2), Fraction(3, 4)]
    assert m.minor([1, 2], [1, 2]) == "1/4"
    try:
        ssr.Matrix([[0.5]])
    except ssr.SsrError:
        pass
    else:
        raise AssertionError("float entry was accepted")

    try:
        ssr.ssr_construction(3, 3, "+-")
    except ssr.SsrError as e:
        assert str(e) == "The length of the sign pattern is not correct!"
    else:
        raise AssertionError("bad pattern length was accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
