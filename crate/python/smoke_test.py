"""Smoke test for the Python bindings.

Build the extension first:

    cargo build --release -p carlitz-py --features extension-module
    cp target/release/libcarlitz.so python/carlitz.so

then run `python3 python/smoke_test.py`.
"""

import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import carlitz  # noqa: E402


def main():
    f3 = carlitz.Field(3)
    assert f3.r == 3
    cc = carlitz.CarlitzNumbers(f3)
    assert str(cc.cauchy(2)) == "1 / (T^3 + 2*T)"
    assert str(cc.cauchy(8)) == "1 / (T^12 + 2*T^10 + 2*T^4 + T^2)"
    assert str(cc.bernoulli(8)) == "1 / (T^6 + T^4 + T^2 + 1)"
    assert str(cc.stirling(4, 2, first=False)) == "2"

    x = f3.ratfunc("(T + 1) / (T^2 + 2)")
    assert x / x == f3.ratfunc("1")
    assert (x - x).is_zero()
    try:
        x / (x - x)
    except ZeroDivisionError:
        pass
    else:
        raise AssertionError("division by zero went through")

    rows = cc.table("CC", 4)
    assert [n for n, _, _ in rows] == [0, 1, 2, 3, 4]

    f4 = carlitz.Field(2, 2)
    assert f4.r == 4
    assert str(carlitz.CarlitzNumbers(f4).cauchy(0)) == "1"

    assert carlitz.cauchy_classical(4) == Fraction(-19, 30)
    assert carlitz.cauchy_order_classical(8, 3) == Fraction(329, 30)
    assert carlitz.stirling_classical(4, 2) == 11

    reports = carlitz.verify(fields=[(3, 1)], max_n=8, prec=17, classical=False)
    failed = [r["identity_id"] for r in reports if r["failures"]]
    assert not failed, failed

    try:
        carlitz.Field(4)
    except ValueError:
        pass
    else:
        raise AssertionError("Field(4) accepted")

    print("python smoke test passed: %d identity reports" % len(reports))


if __name__ == "__main__":
    main()
