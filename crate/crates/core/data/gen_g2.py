"""Regenerate g2.json: structure equations of the compact real form of g2.

Uses the 7-dimensional representation with Chevalley generators
E1 = E12 + sqrt2 E34 + sqrt2 E45 + E67, E2 = E23 + E56, F = E^T.
Positive root vectors X3..X6 are nested brackets rescaled so [X, X^T] is the
coroot. The compact basis is A_i = i H_i, B_a = X_a - X_a^T, C_a = i(X_a + X_a^T).
Root vector signs were chosen to match the printed differentials as closely
as possible.
"""
import json
import sympy as sp


def E(i, j):
    m = sp.zeros(7)
    m[i - 1, j - 1] = 1
    return m


def br(a, b):
    return sp.simplify(a * b - b * a)


r2 = sp.sqrt(2)
E1 = E(1, 2) + r2 * E(3, 4) + r2 * E(4, 5) + E(6, 7)
E2 = E(2, 3) + E(5, 6)
H1, H2 = br(E1, E1.T), br(E2, E2.T)
coroot = {3: H1 + 3 * H2, 4: 2 * H1 + 3 * H2, 5: H1 + H2, 6: H1 + 2 * H2}


def normalise(m, h):
    k = br(m, m.T)
    i = next(k for k in range(7) if h[k, k] != 0)
    x = sp.simplify(sp.sqrt(h[i, i] / k[i, i]) * m)
    assert br(x, x.T) == h
    return x


X = {1: E1, 2: E2}
X[3] = normalise(br(X[1], X[2]), coroot[3])
X[4] = normalise(br(X[1], X[3]), coroot[4])
X[5] = normalise(br(X[1], X[4]), coroot[5])
X[6] = normalise(br(X[5], X[2]), coroot[6])
SIGNS = {1: 1, 2: 1, 3: 1, 4: 1, 5: -1, 6: -1}
X = {a: SIGNS[a] * X[a] for a in X}

names = ["a1", "a2"] + [f"b{a}" for a in range(1, 7)] + [f"c{a}" for a in range(1, 7)]
basis = [sp.I * H1, sp.I * H2]
basis += [X[a] - X[a].T for a in range(1, 7)]
basis += [sp.I * (X[a] + X[a].T) for a in range(1, 7)]


def real_coords(m):
    return [sp.re(z) for z in m] + [sp.im(z) for z in m]


M = sp.Matrix([real_coords(b) for b in basis]).T
n = len(basis)
diff = [[] for _ in range(n)]
for i in range(n):
    for j in range(i + 1, n):
        v = sp.Matrix(real_coords(br(basis[i], basis[j])))
        sol = sp.simplify(M.solve_least_squares(v))
        assert sp.simplify(M * sol - v) == sp.zeros(98, 1)
        for k in range(n):
            c = sp.nsimplify(sol[k])
            if c != 0:
                assert c.is_rational
                # de^k = -sum c^k_ij e^i e^j
                diff[k].append({"i": i + 1, "j": j + 1, "coeff": str(-c)})

out = {
    "dim": n,
    "field": {"kind": "rational"},
    "basis_names": names,
    "diff": diff,
    "provenance": {
        "construction": "compact real form of g2 from the 7-dimensional representation",
        "generators": "E1 = E12 + sqrt2 E34 + sqrt2 E45 + E67, E2 = E23 + E56",
        "root_vectors": "X3=[X1,X2], X4=[X1,X3], X5=[X1,X4], X6=[X5,X2], rescaled so [X,X^T] is the coroot",
        "signs": {f"X{a}": s for a, s in SIGNS.items()},
        "basis": "A_i = i H_i, B_a = X_a - X_a^T, C_a = i(X_a + X_a^T)",
        "convention": "de^k = -sum c^k_ij e^i e^j with [e_i,e_j] = sum c^k_ij e_k",
        "generator": "gen_g2.py (sympy)",
    },
}
with open(__file__.replace("gen_g2.py", "g2.json"), "w") as f:
    json.dump(out, f, indent=1)
