#!/usr/bin/env python3
"""Smoke test for the sqw_py extension module.

Builds the cdylib with cargo, loads it directly, and exercises the main types and
operations with exact assertions (all values cross the boundary as fraction strings).

Run from anywhere:  python3 python/smoke_test.py
"""

import pathlib
import shutil
import subprocess
import sys
from fractions import Fraction
from itertools import permutations

ROOT = pathlib.Path(__file__).resolve().parents[1]


def build_and_load():
    subprocess.run(
        ["cargo", "build", "-p", "sqw-py", "--release", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    so = ROOT / "target" / "release" / "libsqw_py.so"
    dest = pathlib.Path(__file__).parent / "sqw_py.so"
    shutil.copy2(so, dest)
    sys.path.insert(0, str(dest.parent))


def eval_m_basis(pairs, xs):
    """Evaluate a list of (shape, coeff) monomial-symmetric terms at rational xs."""
    xs = [Fraction(x) for x in xs]
    total = Fraction(0)
    for shape, coeff in pairs:
        expo = list(shape) + [0] * (len(xs) - len(shape))
        orbit = set(permutations(expo))
        m_val = Fraction(0)
        for perm in orbit:
            term = Fraction(1)
            for x, e in zip(xs, perm):
                term *= x**e
            m_val += term
        total += Fraction(coeff) * m_val
    return total


def main():
    build_and_load()
    import sqw_py

    # Interpolation grid: geometric rows c + a_i q^j with c=1, q=2, a=(3,5).
    g = sqw_py.Grid.q_type("1", "2", ["3", "5"], 4)
    assert g.n == 2 and g.depth == 4
    assert g.value(1, 0) == "4" and g.value(2, 1) == "11"
    # F_(1) = x1 + x2 - (4 + 6) = m[1] - 10.
    assert g.solve([1]) == [([], "-10"), ([1], "1")]
    # Hook value F_(1)(grid point of (1)) = grid(1;1) - grid(1;0) = 7 - 4 = 3.
    assert g.hook([1]) == "3"
    # The Pieri residual vanishes on a perfect grid.
    assert g.pieri_residual(1) == []
    assert g.nondegenerate()
    # JSON round trip.
    g2 = sqw_py.Grid.from_json(g.to_json())
    assert g2.value(2, 3) == g.value(2, 3)

    # Classification recovers the generators of a rank-3 table, and rejects a
    # perturbed one.
    g3 = sqw_py.Grid.q_type("1", "2", ["3", "5", "7"], 4)
    assert '"type":"q-type"' in g3.classify().replace(" ", "")
    g3.set_value(3, 2, "999")
    assert '"type":"not-perfect"' in g3.classify().replace(" ", "")

    # Elementary-type family: top component of F^el_(1,1) is e_2 = m[1,1], and
    # F^el_(2) has top coefficient 1/2 (the monomial normalization constant).
    c, d = ["1", "4", "9", "16", "25"], "1/3"
    p11 = dict()
    for shape, coeff in sqw_py.f_el_polynomial([1, 1], [], 2, c, d):
        p11[tuple(shape)] = coeff
    assert p11[(1, 1)] == "1"
    p2 = dict()
    for shape, coeff in sqw_py.f_el_polynomial([2], [], 2, c, d):
        p2[tuple(shape)] = coeff
    assert p2[(2,)] == "1/2"

    # Point evaluation agrees with evaluating the symbolic polynomial.
    a, b, q = ["2", "3", "5", "7", "11"], ["13", "17", "19", "23", "29"], "1/2"
    xs = ["4/3", "-5/2"]
    poly = sqw_py.f_polynomial([2, 1], [1], 2, a, b, q)
    direct = Fraction(sqw_py.f_value([2, 1], [1], xs, a, b, q))
    assert eval_m_basis(poly, xs) == direct
    tilde_poly = sqw_py.f_tilde_polynomial([2, 1], [], 2, a, q)
    tilde_direct = Fraction(sqw_py.f_tilde_value([2, 1], [], xs, a, q))
    assert eval_m_basis(tilde_poly, xs) == tilde_direct

    # Diagonal values are nonzero.
    assert Fraction(sqw_py.diagonal_value_tilde([2, 1], a, q, 2)) != 0
    assert Fraction(sqw_py.diagonal_value_el([2, 1], c, d, 2)) != 0

    # Identity checkers.
    assert sqw_py.verify_cauchy([1], [1], 1, 1, 6, 7)
    index, name, ok, detail = sqw_py.run_criterion(2, 1)
    assert index == 2 and ok, (name, detail)

    print("smoke test passed")


if __name__ == "__main__":
    main()
