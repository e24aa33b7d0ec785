#!/usr/bin/env python3
"""Generate the shipped preset setup files from defining matrices.

Structure constants are computed from matrix commutators with exact sympy
rationals, checked against the Jacobi identity, and written as JSON with
rationals encoded as "p/q" strings.

    python3 scripts/gen_presets.py crates/core/presets
"""
import itertools
import json
import sys
from pathlib import Path

import sympy as sp

I = sp.I


def q(x):
    x = sp.nsimplify(x)
    assert x.is_rational, x
    x = sp.Rational(x)
    return str(x.p) if x.q == 1 else f"{x.p}/{x.q}"


def unit(n, i, j):
    m = sp.zeros(n, n)
    m[i, j] = 1
    return m


def flatten_real(m):
    """Real coordinates of a complex matrix (real parts then imaginary parts)."""
    out = []
    for z in m:
        z = sp.expand(z)
        out.append(sp.re(z))
        out.append(sp.im(z))
    return out


def coordinates(basis_mats, target):
    rows = [flatten_real(b) for b in basis_mats]
    a = sp.Matrix(rows).T
    b = sp.Matrix(flatten_real(target))
    sol, params = a.gauss_jordan_solve(b)
    assert params.shape[0] == 0
    return [sp.nsimplify(v) for v in sol]


def structure(names, mats):
    n = len(names)
    table = {}
    for i in range(n):
        for j in range(i + 1, n):
            c = mats[i] * mats[j] - mats[j] * mats[i]
            table[(i, j)] = coordinates(mats, c)
    return table


def bracket_vec(table, n, x, y):
    out = [sp.Integer(0)] * n
    for i in range(n):
        for j in range(n):
            if i == j or x[i] == 0 or y[j] == 0:
                continue
            if i < j:
                v, s = table[(i, j)], 1
            else:
                v, s = table[(j, i)], -1
            for k in range(n):
                out[k] += s * x[i] * y[j] * v[k]
    return out


def check_jacobi(table, n):
    e = [[sp.Integer(int(i == k)) for k in range(n)] for i in range(n)]
    for i, j, k in itertools.combinations(range(n), 3):
        t1 = bracket_vec(table, n, bracket_vec(table, n, e[i], e[j]), e[k])
        t2 = bracket_vec(table, n, bracket_vec(table, n, e[j], e[k]), e[i])
        t3 = bracket_vec(table, n, bracket_vec(table, n, e[k], e[i]), e[j])
        assert all(sp.simplify(a + b + c) == 0 for a, b, c in zip(t1, t2, t3)), (i, j, k)


def ad_matrix(names, mats, g):
    """Matrix of X -> g X g^{-1} in the basis, columns are images."""
    gi = g.inv()
    cols = [coordinates(mats, g * m * gi) for m in mats]
    n = len(names)
    return [[q(cols[j][i]) for j in range(n)] for i in range(n)]


def vec(d):
    return {k: q(v) for k, v in d.items() if v != 0}


def emit(path, name, description, reference, names, mats, subspaces, chi, reps):
    table = structure(names, mats)
    check_jacobi(table, len(names))
    brackets = []
    for (i, j), v in sorted(table.items()):
        value = {names[k]: q(c) for k, c in enumerate(v) if c != 0}
        if value:
            brackets.append({"left": names[i], "right": names[j], "value": value})
    doc = {
        "name": name,
        "description": description,
        "reference": reference,
        "basis": names,
        "brackets": brackets,
        "subspaces": subspaces,
        "chi": chi,
        "component_reps": reps,
    }
    (path / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")


def space(names, vectors):
    return {"names": names, "vectors": [vec(v) for v in vectors]}


def identity_rep(n, label):
    return {"label": label, "matrix": [[q(int(i == j)) for j in range(n)] for i in range(n)]}


def main(out):
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)

    # sl(2, R)
    H = sp.Matrix([[1, 0], [0, -1]])
    E = unit(2, 0, 1)
    F = unit(2, 1, 0)
    sl2 = (["H", "E", "F"], [H, E, F])
    minus_i = ad_matrix(*sl2, -sp.eye(2))

    emit(out, "sl2r_horocycle",
         "Horocycle space G/MN of SL(2,R); M = {+I, -I}, so h = m0 + n0 = span{E}.",
         "invariant algebra expected: S(a), a = span{H}",
         *sl2,
         {
             "h": space(["E"], [{"E": 1}]),
             "m": space(["H", "K"], [{"H": 1}, {"E": 1, "F": -1}]),
             "a": space(["H"], [{"H": 1}]),
             "k0": space(["K"], [{"E": 1, "F": -1}]),
             "n0": space(["E"], [{"E": 1}]),
         },
         ["0"],
         [{"label": "Ad(-I)", "matrix": minus_i}])

    emit(out, "sl2r_GN",
         "G/N for SL(2,R); h = n0 = span{E}, complement k0 + a.",
         "invariant algebra expected: S(m0 + a) = S(a) since m0 = 0",
         *sl2,
         {
             "h": space(["E"], [{"E": 1}]),
             "m": space(["K", "H"], [{"E": 1, "F": -1}, {"H": 1}]),
             "a": space(["H"], [{"H": 1}]),
             "k0": space(["K"], [{"E": 1, "F": -1}]),
         },
         ["0"],
         [])

    emit(out, "sl2r_hyperbolic",
         "Hyperbolic plane SL(2,R)/SO(2); h = k0 = span{E-F}, m = p0 = span{H, E+F}.",
         "reductive; invariant algebra generated by H^2 + P^2",
         *sl2,
         {
             "h": space(["K"], [{"E": 1, "F": -1}]),
             "m": space(["H", "P"], [{"H": 1}, {"E": 1, "F": 1}]),
         },
         ["0"],
         [])

    # so(3): X, Y, Z rotation generators with [X,Y]=Z cyclic
    X = sp.Matrix([[0, 0, 0], [0, 0, -1], [0, 1, 0]])
    Y = sp.Matrix([[0, 0, 1], [0, 0, 0], [-1, 0, 0]])
    Z = sp.Matrix([[0, -1, 0], [1, 0, 0], [0, 0, 0]])
    emit(out, "so3_sphere",
         "Two-sphere SO(3)/SO(2); h = span{Z}, m = span{X, Y}.",
         "reductive; invariant algebra generated by X^2 + Y^2",
         ["X", "Y", "Z"], [X, Y, Z],
         {
             "h": space(["Z"], [{"Z": 1}]),
             "m": space(["X", "Y"], [{"X": 1}, {"Y": 1}]),
         },
         ["0"],
         [])

    # Heisenberg: strictly upper triangular 3x3
    emit(out, "heisenberg",
         "Heisenberg algebra [X,Y] = Z; h = span{X}, m = span{Y, Z}.",
         "invariant algebra expected: S(span{Z})",
         ["X", "Y", "Z"], [unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)],
         {
             "h": space(["X"], [{"X": 1}]),
             "m": space(["Y", "Z"], [{"Y": 1}, {"Z": 1}]),
         },
         ["0"],
         [])

    # sl(2, C) viewed as a real Lie algebra
    names = ["H", "Hi", "E", "Ei", "F", "Fi"]
    mats = [H, I * H, E, I * E, F, I * F]
    emit(out, "sl2c_real_GN",
         "G/N for SL(2,C) as a real group; h = n = span{E, Ei}, m = u + ia.",
         "invariant algebra expected: S(span{H, Hi})",
         names, mats,
         {
             "h": space(["E", "Ei"], [{"E": 1}, {"Ei": 1}]),
             "m": space(["Hi", "K", "L", "H"],
                        [{"Hi": 1}, {"E": 1, "F": -1}, {"Ei": 1, "Fi": 1}, {"H": 1}]),
             "u": space(["Hi", "K", "L"],
                        [{"Hi": 1}, {"E": 1, "F": -1}, {"Ei": 1, "Fi": 1}]),
             "ia": space(["H"], [{"H": 1}]),
             "n": space(["E", "Ei"], [{"E": 1}, {"Ei": 1}]),
         },
         ["0", "0"],
         [])

    # sl(3, R)
    e = lambda i, j: unit(3, i, j)
    names = ["H1", "H2", "E12", "E13", "E23", "F21", "F31", "F32"]
    mats = [e(0, 0) - e(1, 1), e(1, 1) - e(2, 2), e(0, 1), e(0, 2), e(1, 2),
            e(1, 0), e(2, 0), e(2, 1)]
    reps = []
    for d in [(1, -1, -1), (-1, 1, -1), (-1, -1, 1)]:
        reps.append({"label": f"Ad(diag{d})".replace(" ", ""),
                     "matrix": ad_matrix(names, mats, sp.diag(*d))})
    emit(out, "sl3r_horocycle",
         "Horocycle space G/MN of SL(3,R); M is the finite group of diagonal sign "
         "matrices, so h = n0 (strictly upper triangular) and m = k0 + a.",
         "invariant algebra expected: S(a), a = span{H1, H2}",
         names, mats,
         {
             "h": space(["E12", "E13", "E23"], [{"E12": 1}, {"E13": 1}, {"E23": 1}]),
             "m": space(["K12", "K13", "K23", "H1", "H2"],
                        [{"E12": 1, "F21": -1}, {"E13": 1, "F31": -1}, {"E23": 1, "F32": -1},
                         {"H1": 1}, {"H2": 1}]),
             "a": space(["H1", "H2"], [{"H1": 1}, {"H2": 1}]),
             "k0": space(["K12", "K13", "K23"],
                         [{"E12": 1, "F21": -1}, {"E13": 1, "F31": -1}, {"E23": 1, "F32": -1}]),
             "n0": space(["E12", "E13", "E23"], [{"E12": 1}, {"E13": 1}, {"E23": 1}]),
         },
         ["0", "0", "0"],
         reps)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/presets")
