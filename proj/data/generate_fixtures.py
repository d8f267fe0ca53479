#!/usr/bin/env python3
# Copyright 2026 The CSVQE Authors
# SPDX-License-Identifier: Apache-2.0
"""Generate the FCIDUMP fixtures and reference values used by the test suite.

Restricted Hartree-Fock over contracted Cartesian Gaussians using
McMurchie-Davidson integral recursions, MO-basis transformation, FCIDUMP
export, and independent dense-FCI / MP2 reference energies.  The FCI
reference here is built by explicit second-quantized operator application
on occupation bitstrings, so it shares no code path with the C++ library.

Requires numpy only.  Output: *.fcidump files plus manifest.json.
"""

import json
import math
import os
import sys

import numpy as np

ANGSTROM_TO_BOHR = 1.0 / 0.52917721092

# Exponents and contraction coefficients (for normalized primitives),
# standard published values.
STO3G_H_S = [(3.42525091, 0.15432897),
             (0.62391373, 0.53532814),
             (0.16885540, 0.44463454)]
STO3G_LI_1S = [(16.1195750, 0.15432897),
               (2.9362007, 0.53532814),
               (0.7946505, 0.44463454)]
STO3G_LI_2SP = [0.6362897, 0.1478601, 0.0480887]
STO3G_LI_2S_C = [-0.09996723, 0.39951283, 0.70011547]
STO3G_LI_2P_C = [0.15591627, 0.60768372, 0.39195739]
G631_H_S1 = [(18.7311370, 0.03349460),
             (2.8253937, 0.23472695),
             (0.6401217, 0.81375733)]
G631_H_S2 = [(0.1612778, 1.0)]


def double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def primitive_norm(alpha, lmn):
    l, m, n = lmn
    L = l + m + n
    num = (2.0 * alpha / math.pi) ** 0.75 * (4.0 * alpha) ** (L / 2.0)
    den = math.sqrt(double_factorial(2 * l - 1) *
                    double_factorial(2 * m - 1) *
                    double_factorial(2 * n - 1))
    return num / den


class Cgto:
    """One contracted Cartesian Gaussian basis function."""

    def __init__(self, center, lmn, prims):
        self.center = np.asarray(center, dtype=float)
        self.lmn = lmn
        self.exps = [a for a, _ in prims]
        self.coefs = [c * primitive_norm(a, lmn) for a, c in prims]
        self._normalize()

    def _normalize(self):
        s = 0.0
        for ai, ci in zip(self.exps, self.coefs):
            for aj, cj in zip(self.exps, self.coefs):
                s += ci * cj * overlap_prim(ai, self.lmn, self.center,
                                            aj, self.lmn, self.center)
        self.coefs = [c / math.sqrt(s) for c in self.coefs]


def hermite_e(i, j, t, q_x, a, b):
    """Hermite expansion coefficient E_t^{ij} for a Gaussian product."""
    p = a + b
    q = a * b / p
    if t < 0 or t > i + j:
        return 0.0
    if i == j == t == 0:
        return math.exp(-q * q_x * q_x)
    if j == 0:
        return (hermite_e(i - 1, j, t - 1, q_x, a, b) / (2.0 * p)
                - (q * q_x / a) * hermite_e(i - 1, j, t, q_x, a, b)
                + (t + 1) * hermite_e(i - 1, j, t + 1, q_x, a, b))
    return (hermite_e(i, j - 1, t - 1, q_x, a, b) / (2.0 * p)
            + (q * q_x / b) * hermite_e(i, j - 1, t, q_x, a, b)
            + (t + 1) * hermite_e(i, j - 1, t + 1, q_x, a, b))


def boys(nmax, x):
    """F_0(x) .. F_nmax(x), series for small x, asymptotic + upward above."""
    out = [0.0] * (nmax + 1)
    if x < 1e-14:
        for n in range(nmax + 1):
            out[n] = 1.0 / (2 * n + 1)
        return out
    if x <= 35.0:
        # series at the highest order, then downward recursion
        term = 1.0 / (2 * nmax + 1)
        acc = term
        k = 1
        while True:
            term *= 2.0 * x / (2 * nmax + 2 * k + 1)
            acc += term
            if term < acc * 1e-17 or k > 500:
                break
            k += 1
        out[nmax] = math.exp(-x) * acc
        ex = math.exp(-x)
        for n in range(nmax - 1, -1, -1):
            out[n] = (2.0 * x * out[n + 1] + ex) / (2 * n + 1)
        return out
    out[0] = 0.5 * math.sqrt(math.pi / x)
    ex = math.exp(-x)
    for n in range(nmax):
        out[n + 1] = ((2 * n + 1) * out[n] - ex) / (2.0 * x)
    return out


def hermite_r(t, u, v, n, p, pc, boys_table, memo):
    key = (t, u, v, n)
    if key in memo:
        return memo[key]
    if t == u == v == 0:
        val = (-2.0 * p) ** n * boys_table[n]
    elif t > 0:
        val = hermite_r(t - 1, u, v, n + 1, p, pc, boys_table, memo) * pc[0]
        if t > 1:
            val += (t - 1) * hermite_r(t - 2, u, v, n + 1, p, pc, boys_table, memo)
    elif u > 0:
        val = hermite_r(t, u - 1, v, n + 1, p, pc, boys_table, memo) * pc[1]
        if u > 1:
            val += (u - 1) * hermite_r(t, u - 2, v, n + 1, p, pc, boys_table, memo)
    else:
        val = hermite_r(t, u, v - 1, n + 1, p, pc, boys_table, memo) * pc[2]
        if v > 1:
            val += (v - 1) * hermite_r(t, u, v - 2, n + 1, p, pc, boys_table, memo)
    memo[key] = val
    return val


def overlap_prim(a, lmn1, A, b, lmn2, B):
    p = a + b
    s = (math.pi / p) ** 1.5
    for d in range(3):
        s *= hermite_e(lmn1[d], lmn2[d], 0, A[d] - B[d], a, b)
    return s


def kinetic_prim(a, lmn1, A, b, lmn2, B):
    l2, m2, n2 = lmn2
    term0 = b * (2 * (l2 + m2 + n2) + 3) * overlap_prim(a, lmn1, A, b, lmn2, B)
    term1 = -2.0 * b * b * (
        overlap_prim(a, lmn1, A, b, (l2 + 2, m2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2 + 2, n2), B)
        + overlap_prim(a, lmn1, A, b, (l2, m2, n2 + 2), B))
    term2 = -0.5 * (
        l2 * (l2 - 1) * overlap_prim(a, lmn1, A, b, (l2 - 2, m2, n2), B)
        + m2 * (m2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2 - 2, n2), B)
        + n2 * (n2 - 1) * overlap_prim(a, lmn1, A, b, (l2, m2, n2 - 2), B))
    return term0 + term1 + term2


def nuclear_prim(a, lmn1, A, b, lmn2, B, C):
    p = a + b
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    pc = P - np.asarray(C)
    rpc2 = float(np.dot(pc, pc))
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    nmax = l1 + l2 + m1 + m2 + n1 + n2
    bt = boys(nmax, p * rpc2)
    memo = {}
    val = 0.0
    for t in range(l1 + l2 + 1):
        et = hermite_e(l1, l2, t, A[0] - B[0], a, b)
        for u in range(m1 + m2 + 1):
            eu = hermite_e(m1, m2, u, A[1] - B[1], a, b)
            for v in range(n1 + n2 + 1):
                ev = hermite_e(n1, n2, v, A[2] - B[2], a, b)
                val += et * eu * ev * hermite_r(t, u, v, 0, p, pc, bt, memo)
    return 2.0 * math.pi / p * val


def eri_prim(a, lmn1, A, b, lmn2, B, c, lmn3, C, d, lmn4, D):
    p = a + b
    q = c + d
    alpha = p * q / (p + q)
    P = (a * np.asarray(A) + b * np.asarray(B)) / p
    Q = (c * np.asarray(C) + d * np.asarray(D)) / q
    pq = P - Q
    rpq2 = float(np.dot(pq, pq))
    l1, m1, n1 = lmn1
    l2, m2, n2 = lmn2
    l3, m3, n3 = lmn3
    l4, m4, n4 = lmn4
    nmax = l1 + l2 + l3 + l4 + m1 + m2 + m3 + m4 + n1 + n2 + n3 + n4
    bt = boys(nmax, alpha * rpq2)
    memo = {}
    val = 0.0
    for t in range(l1 + l2 + 1):
        e1t = hermite_e(l1, l2, t, A[0] - B[0], a, b)
        for u in range(m1 + m2 + 1):
            e1u = hermite_e(m1, m2, u, A[1] - B[1], a, b)
            for v in range(n1 + n2 + 1):
                e1v = hermite_e(n1, n2, v, A[2] - B[2], a, b)
                e1 = e1t * e1u * e1v
                if e1 == 0.0:
                    continue
                for tt in range(l3 + l4 + 1):
                    e2t = hermite_e(l3, l4, tt, C[0] - D[0], c, d)
                    for uu in range(m3 + m4 + 1):
                        e2u = hermite_e(m3, m4, uu, C[1] - D[1], c, d)
                        for vv in range(n3 + n4 + 1):
                            e2v = hermite_e(n3, n4, vv, C[2] - D[2], c, d)
                            e2 = e2t * e2u * e2v
                            if e2 == 0.0:
                                continue
                            sign = -1.0 if (tt + uu + vv) % 2 else 1.0
                            val += e1 * e2 * sign * hermite_r(
                                t + tt, u + uu, v + vv, 0, alpha, pq, bt, memo)
    return val * 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))


def contracted(op, ga, gb):
    val = 0.0
    for ai, ci in zip(ga.exps, ga.coefs):
        for aj, cj in zip(gb.exps, gb.coefs):
            val += ci * cj * op(ai, ga.lmn, ga.center, aj, gb.lmn, gb.center)
    return val


def contracted_eri(ga, gb, gc, gd):
    val = 0.0
    for a1, c1 in zip(ga.exps, ga.coefs):
        for a2, c2 in zip(gb.exps, gb.coefs):
            for a3, c3 in zip(gc.exps, gc.coefs):
                for a4, c4 in zip(gd.exps, gd.coefs):
                    val += c1 * c2 * c3 * c4 * eri_prim(
                        a1, ga.lmn, ga.center, a2, gb.lmn, gb.center,
                        a3, gc.lmn, gc.center, a4, gd.lmn, gd.center)
    return val


def ao_integrals(basis, atoms):
    n = len(basis)
    S = np.zeros((n, n))
    T = np.zeros((n, n))
    V = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1):
            S[i, j] = S[j, i] = contracted(overlap_prim, basis[i], basis[j])
            T[i, j] = T[j, i] = contracted(kinetic_prim, basis[i], basis[j])
            v = 0.0
            for charge, center in atoms:
                v -= charge * contracted(
                    lambda a, l1, A, b, l2, B: nuclear_prim(a, l1, A, b, l2, B, center),
                    basis[i], basis[j])
            V[i, j] = V[j, i] = v
    eri = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(i + 1):
            for k in range(n):
                for l in range(k + 1):
                    if i * (i + 1) // 2 + j < k * (k + 1) // 2 + l:
                        continue
                    val = contracted_eri(basis[i], basis[j], basis[k], basis[l])
                    for (p, q) in ((i, j), (j, i)):
                        for (r, s) in ((k, l), (l, k)):
                            eri[p, q, r, s] = val
                            eri[r, s, p, q] = val
    return S, T, V, eri


def nuclear_repulsion(atoms):
    e = 0.0
    for i in range(len(atoms)):
        for j in range(i):
            zi, ri = atoms[i]
            zj, rj = atoms[j]
            e += zi * zj / float(np.linalg.norm(np.asarray(ri) - np.asarray(rj)))
    return e


def rhf(S, T, V, eri, n_elec, e_nuc, max_iter=300):
    n = S.shape[0]
    nocc = n_elec // 2
    hcore = T + V
    sval, svec = np.linalg.eigh(S)
    X = svec @ np.diag(sval ** -0.5) @ svec.T
    P = np.zeros((n, n))
    e_old = 0.0
    for it in range(max_iter):
        J = np.einsum("pqrs,rs->pq", eri, P)
        K = np.einsum("prqs,rs->pq", eri, P)
        F = hcore + J - 0.5 * K
        eps, Cp = np.linalg.eigh(X.T @ F @ X)
        C = X @ Cp
        P_new = 2.0 * C[:, :nocc] @ C[:, :nocc].T
        if it < 5:
            P_new = 0.5 * (P_new + P)
        e_elec = 0.5 * np.sum(P_new * (hcore + F))
        if abs(e_elec - e_old) < 1e-13 and np.max(np.abs(P_new - P)) < 1e-11:
            P = P_new
            break
        P = P_new
        e_old = e_elec
    J = np.einsum("pqrs,rs->pq", eri, P)
    K = np.einsum("prqs,rs->pq", eri, P)
    F = hcore + J - 0.5 * K
    eps, Cp = np.linalg.eigh(X.T @ F @ X)
    C = X @ Cp
    e_elec = 0.5 * np.sum(P * (hcore + F))
    return e_elec + e_nuc, C, eps, hcore


def mo_transform(hcore, eri, C):
    h_mo = C.T @ hcore @ C
    g = np.einsum("pqrs,pi->iqrs", eri, C)
    g = np.einsum("iqrs,qj->ijrs", g, C)
    g = np.einsum("ijrs,rk->ijks", g, C)
    g = np.einsum("ijks,sl->ijkl", g, C)
    return h_mo, g


def write_fcidump(path, h_mo, g_mo, e_nuc, n_elec):
    n = h_mo.shape[0]
    lines = []
    lines.append("&FCI NORB=%d,NELEC=%d,MS2=0," % (n, n_elec))
    lines.append(" ORBSYM=" + "1," * n)
    lines.append(" ISYM=1,")
    lines.append("&END")
    for p in range(n):
        for q in range(p + 1):
            for r in range(p + 1):
                smax = q if r == p else r
                for s in range(smax + 1):
                    v = g_mo[p, q, r, s]
                    if abs(v) > 1e-16:
                        lines.append(" %.16e %3d %3d %3d %3d"
                                     % (v, p + 1, q + 1, r + 1, s + 1))
    for p in range(n):
        for q in range(p + 1):
            v = h_mo[p, q]
            if abs(v) > 1e-16:
                lines.append(" %.16e %3d %3d %3d %3d" % (v, p + 1, q + 1, 0, 0))
    lines.append(" %.16e %3d %3d %3d %3d" % (e_nuc, 0, 0, 0, 0))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


# ----- independent dense FCI via second-quantized operator application -----

def bit_masks(n_orb, n_elec):
    out = []
    for mask in range(1 << n_orb):
        if bin(mask).count("1") == n_elec:
            out.append(mask)
    return out


def apply_ops(occ, n_orb, ops):
    """Apply (create?, spin_orbital) ops right-to-left on a 2*n_orb bitstring."""
    sign = 1
    for create, so in reversed(ops):
        bit = 1 << so
        if create:
            if occ & bit:
                return None
            below = bin(occ & (bit - 1)).count("1")
            sign *= -1 if below % 2 else 1
            occ |= bit
        else:
            if not occ & bit:
                return None
            below = bin(occ & (bit - 1)).count("1")
            sign *= -1 if below % 2 else 1
            occ &= ~bit
    return occ, sign


def fci_dense(h_mo, g_mo, e_nuc, n_alpha, n_beta):
    n = h_mo.shape[0]
    amasks = bit_masks(n, n_alpha)
    bmasks = bit_masks(n, n_beta)
    basis = [(a, b) for a in amasks for b in bmasks]
    index = {d: i for i, d in enumerate(basis)}
    dim = len(basis)
    H = np.zeros((dim, dim))

    def so(p, spin):
        return p + spin * n

    for j, (am, bm) in enumerate(basis):
        occ = am | (bm << n)
        for p in range(n):
            for q in range(n):
                if abs(h_mo[p, q]) < 1e-16:
                    continue
                for spin in (0, 1):
                    res = apply_ops(occ, n, [(True, so(p, spin)), (False, so(q, spin))])
                    if res is None:
                        continue
                    new, sgn = res
                    i = index[(new & ((1 << n) - 1), new >> n)]
                    H[i, j] += sgn * h_mo[p, q]
        for p in range(n):
            for q in range(n):
                for r in range(n):
                    for s in range(n):
                        v = g_mo[p, q, r, s]
                        if abs(v) < 1e-16:
                            continue
                        for s1 in (0, 1):
                            for s2 in (0, 1):
                                res = apply_ops(occ, n,
                                                [(True, so(p, s1)), (True, so(r, s2)),
                                                 (False, so(s, s2)), (False, so(q, s1))])
                                if res is None:
                                    continue
                                new, sgn = res
                                i = index[(new & ((1 << n) - 1), new >> n)]
                                H[i, j] += 0.5 * sgn * v
    assert np.max(np.abs(H - H.T)) < 1e-10
    w = np.linalg.eigvalsh(H)
    return w[0] + e_nuc


def mp2_energy(h_mo, g_mo, eps, nocc):
    n = h_mo.shape[0]
    e = 0.0
    for i in range(nocc):
        for j in range(nocc):
            for a in range(nocc, n):
                for b in range(nocc, n):
                    num = g_mo[i, a, j, b] * (2.0 * g_mo[i, a, j, b] - g_mo[i, b, j, a])
                    e += num / (eps[i] + eps[j] - eps[a] - eps[b])
    return e


def h2_basis(r_bohr, hs):
    a = (0.0, 0.0, 0.0)
    b = (0.0, 0.0, r_bohr)
    fns = []
    for center in (a, b):
        for shell in hs:
            fns.append(Cgto(center, (0, 0, 0), shell))
    atoms = [(1.0, a), (1.0, b)]
    return fns, atoms


def lih_basis(r_bohr):
    li = (0.0, 0.0, 0.0)
    h = (0.0, 0.0, r_bohr)
    fns = [Cgto(li, (0, 0, 0), STO3G_LI_1S),
           Cgto(li, (0, 0, 0), list(zip(STO3G_LI_2SP, STO3G_LI_2S_C))),
           Cgto(li, (1, 0, 0), list(zip(STO3G_LI_2SP, STO3G_LI_2P_C))),
           Cgto(li, (0, 1, 0), list(zip(STO3G_LI_2SP, STO3G_LI_2P_C))),
           Cgto(li, (0, 0, 1), list(zip(STO3G_LI_2SP, STO3G_LI_2P_C))),
           Cgto(h, (0, 0, 0), STO3G_H_S)]
    atoms = [(3.0, li), (1.0, h)]
    return fns, atoms


def build_fixture(name, molecule, basis_name, r_angstrom, basis, atoms, n_elec, outdir):
    print("== %s ==" % name)
    S, T, V, eri = ao_integrals(basis, atoms)
    e_nuc = nuclear_repulsion(atoms)
    e_scf, C, eps, hcore = rhf(S, T, V, eri, n_elec, e_nuc)
    h_mo, g_mo = mo_transform(hcore, eri, C)
    nocc = n_elec // 2
    # cross-check: SCF energy recomputed from MO integrals
    e_check = e_nuc + 2.0 * sum(h_mo[i, i] for i in range(nocc))
    for i in range(nocc):
        for j in range(nocc):
            e_check += 2.0 * g_mo[i, i, j, j] - g_mo[i, j, j, i]
    assert abs(e_check - e_scf) < 1e-9, (e_check, e_scf)
    e_fci = fci_dense(h_mo, g_mo, e_nuc, nocc, nocc)
    e_mp2 = e_scf + mp2_energy(h_mo, g_mo, eps, nocc)
    path = os.path.join(outdir, name + ".fcidump")
    write_fcidump(path, h_mo, g_mo, e_nuc, n_elec)
    print("  E(SCF) = %.10f  E(MP2) = %.10f  E(FCI) = %.10f" % (e_scf, e_mp2, e_fci))
    entry = {
        "file": name + ".fcidump",
        "molecule": molecule,
        "basis": basis_name,
        "bond_length_angstrom": r_angstrom,
        "geometry_source": "experimental geometry (CCCBDB)",
        "n_orbitals": len(basis),
        "n_electrons": n_elec,
        "core_energy": e_nuc,
        "scf_energy": e_scf,
        "mp2_energy": e_mp2,
        "fci_energy": e_fci,
        "h11": h_mo[0, 0],
        "g1111": g_mo[0, 0, 0, 0],
        "g1122": g_mo[0, 0, 1, 1] if len(basis) > 1 else None,
    }
    if molecule == "H2":
        # the single spatial double amplitude (1,1 -> 2,2), lowest virtual
        entry["mp2_t2_1122"] = g_mo[0, 1, 0, 1] / (2.0 * eps[0] - 2.0 * eps[1])
    return entry


def main():
    outdir = os.path.dirname(os.path.abspath(__file__))
    r_h2 = 0.741
    r_lih = 1.595
    fixtures = []
    fns, atoms = h2_basis(r_h2 * ANGSTROM_TO_BOHR, [STO3G_H_S])
    fixtures.append(build_fixture("h2_sto3g", "H2", "STO-3G", r_h2, fns, atoms, 2, outdir))
    fns, atoms = h2_basis(r_h2 * ANGSTROM_TO_BOHR, [G631_H_S1, G631_H_S2])
    fixtures.append(build_fixture("h2_631g", "H2", "6-31G", r_h2, fns, atoms, 2, outdir))
    fns, atoms = lih_basis(r_lih * ANGSTROM_TO_BOHR)
    fixtures.append(build_fixture("lih_sto3g", "LiH", "STO-3G", r_lih, fns, atoms, 4, outdir))
    manifest = {"fixtures": fixtures}
    with open(os.path.join(outdir, "manifest.json"), "w") as f:
        json.dump(manifest, f, indent=2)
        f.write("\n")
    print("wrote manifest.json")


if __name__ == "__main__":
    sys.exit(main())
