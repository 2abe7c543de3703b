"""Independent reference values for the test suite.

Run from the repository root:  python3 tests/oracles/make_fixtures.py
Writes tests/fixtures/reference.json.
"""
import json
import os

import numpy as np
import sympy as sp

S2 = np.sqrt(2.0)


def hadamard_series(horizon):
    # Dense evolution of delta_0 (x) e1 on [-horizon, horizon].
    size = 2 * horizon + 1
    w = np.zeros((size, 2), dtype=complex)
    w[horizon, 0] = 1.0
    p = [1.0]
    for _ in range(horizon):
        nxt = np.zeros_like(w)
        # C(-1) = [[1,1],[0,0]]/sqrt2 moves to x-1, C(+1) = [[0,0],[1,-1]]/sqrt2 to x+1.
        nxt[:-1, 0] = (w[1:, 0] + w[1:, 1]) / S2
        nxt[1:, 1] = (w[:-1, 0] - w[:-1, 1]) / S2
        w = nxt
        p.append(float(np.sum(np.abs(w[horizon]) ** 2)))
    return p


def grover_prediction(phi, m):
    # R_omega from the Lagrange formula with the analytic band eigenvalues
    # e^{+-ik}, cos k = -(cos t1 + cos t2)/2.
    g = np.full((4, 4), 0.5) - np.eye(4)
    jn = np.full((4, 4), 0.25)
    acc = {1.0: np.zeros(4, dtype=complex), -1.0: np.zeros(4, dtype=complex)}
    for a in range(m):
        for b in range(m):
            t1, t2 = 2 * np.pi * a / m, 2 * np.pi * b / m
            z1, z2 = np.exp(1j * t1), np.exp(1j * t2)
            u = np.diag([1 / z1, z1, 1 / z2, z2]) @ g
            c = -(np.cos(t1) + np.cos(t2)) / 2
            if abs(abs(c) - 1) < 1e-14:
                # Band merges into the flat value s, which then has rank 3.
                s = 1.0 if c > 0 else -1.0
                r = {s: np.eye(4) - jn, -s: jn}
            else:
                lam = np.exp(1j * np.arccos(c))
                others = {1.0: [-1.0, lam, np.conj(lam)], -1.0: [1.0, lam, np.conj(lam)]}
                r = {}
                for om, oth in others.items():
                    mat = np.eye(4, dtype=complex)
                    for mu in oth:
                        mat = mat @ (u - mu * np.eye(4)) / (om - mu)
                    r[om] = mat
            for om in acc:
                acc[om] += r[om] @ phi
    return float(sum(np.sum(np.abs(v / m**2) ** 2) for v in acc.values()))


def grover_peel():
    z1, z2, zeta = sp.symbols("z1 z2 zeta")
    g = sp.ones(4, 4) / 2 - sp.eye(4)
    u = sp.diag(1 / z1, z1, 1 / z2, z2) * g
    chi = sp.factor(sp.together((zeta * sp.eye(4) - u).det()))
    num, _ = sp.fraction(chi)
    factors = sp.factor_list(sp.expand(num), zeta)[1]
    mult = {1: 0, -1: 0}
    rest = 0
    for f, e in factors:
        if sp.simplify(f - (zeta - 1)) == 0:
            mult[1] += e
        elif sp.simplify(f - (zeta + 1)) == 0:
            mult[-1] += e
        elif sp.degree(f, zeta) > 0:
            rest += e * sp.degree(f, zeta)
    return mult, rest


def main():
    rng = np.random.default_rng(20240601)
    out = {}

    p = hadamard_series(2048)
    out["hadamard_pbar_2048"] = float(np.mean(p[1:2049]))
    out["hadamard_sup_200_400"] = float(max(p[200:401]))
    out["hadamard_p_0_16"] = p[:17]

    phis = []
    for _ in range(3):
        v = rng.normal(size=4) + 1j * rng.normal(size=4)
        v /= np.linalg.norm(v)
        phis.append(v)
    out["grover_phi"] = [[[float(c.real), float(c.imag)] for c in v] for v in phis]
    out["grover_predicted_grid"] = 512
    out["grover_predicted"] = [grover_prediction(v, 512) for v in phis]

    mult, rest = grover_peel()
    out["grover_peel"] = {"plus_one": mult[1], "minus_one": mult[-1], "quotient_degree": int(rest)}

    path = os.path.join(os.path.dirname(__file__), "..", "fixtures", "reference.json")
    with open(path, "w") as fh:
        json.dump(out, fh, indent=1)
        fh.write("\n")


if __name__ == "__main__":
    main()
