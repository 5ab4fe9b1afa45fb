#!/usr/bin/env python3
"""Independent reference values for the unit tests.

Everything here is recomputed from the closed-form definitions with Python
fractions and brute force; nothing is shared with the C++ sources. Run with
--check to compare against the values frozen in tests/oracle/frozen.json.
"""
import itertools
import json
import sys
from fractions import Fraction as F
from math import comb


def pos(x):
    return x if x > 0 else F(0)


def converse_halfspaces(H, K0, L, N, M):
    L = sorted(L, reverse=True)
    Ks = sum(L)
    K = K0 + Ks
    hs = [(F(1), F(0), F(0)), (F(0), F(1), F(0)), (F(1), F(0), F(min(N, K0)))]
    if N > K0:
        for s in range(1, H + 1):
            hs.append((F(1), F(1), K0 + min(sum(L[:s]), N - K0) * pos(1 - F(s) * M / (N - K0))))
        hs.append((F(1), F(0), K0 + min(Ks, N - K0) * pos(1 - F(H) * M / (N - K0))))
    if N >= K:
        for s in range(1, H + 1):
            hs.append((F(1), 1 - F(s, H), K0 + F(s, H) * Ks * pos(1 - F(s) * M / (N - K0))))
    return hs


def converse_corners(H, K0, L, N, M):
    hs = converse_halfspaces(H, K0, L, N, M)
    pts = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(hs, 2):
        det = a1 * b2 - b1 * a2
        if det == 0:
            continue
        rm = (c1 * b2 - c2 * b1) / det
        rs = (a1 * c2 - a2 * c1) / det
        if all(a * rm + b * rs >= c for a, b, c in hs):
            pts.add((rs, rm))
    return sorted(p for p in pts if not any(q != p and q[0] <= p[0] and q[1] <= p[1] for q in pts))


def shared_mult(q, t):
    G = len(q)
    q = sorted(q, reverse=True)
    return sum(F(q[r - 1] * comb(G - r, t), comb(G, t)) for r in range(1, G - t + 1))


def side_mult(q, t, direct=False):
    G = len(q)
    total = F(0)
    for S in itertools.combinations(range(G), t + 1):
        a = sorted((q[i] for i in S), reverse=True)
        extra = F(a[t]) if direct else pos(F(a[t] - a[0] + a[t - 1]))
        total += a[0] + extra / t
    return total / comb(G, t)


def sym_points(H, K0, L, N, t):
    room = N - K0
    Lc = [min(l, room) for l in sorted(L, reverse=True)]
    worst = min(room, sum(L))
    M = F(t * room, H)
    shared = K0 + min(worst * F(H - t, H), shared_mult(Lc, t))
    side = None
    if t >= 1:
        side = side_mult(Lc, t)
        if H >= 2:
            side = min(side, worst * F(H - t, H - 1))
    return M, shared, side


def set_partitions(items, G):
    if not items:
        if G == 0:
            yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest, G - 1):
        yield [[first]] + p
    for p in set_partitions(rest, G):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def asym_shared(H, K0, L, N, G, t):
    best = None
    for p in set_partitions(list(range(H)), G):
        q = [min(sum(L[h] for h in g), N - K0) for g in p]
        v = K0 + shared_mult(q, t)
        if best is None or v < best[0]:
            best = (v, p)
    return best


def per_demand(H, K0, L, N, groups, t, approach, d):
    """Per-demand load of the grouped schemes, straight from the delivery description."""
    mbs = set(d[:K0])
    sbs_files = sorted(set(d[K0:]) - mbs)
    if len(mbs) + len(sbs_files) <= K0:
        return F(len(mbs) + len(sbs_files)), F(0)
    extra = K0 - len(mbs)
    dprime = set(sbs_files[extra:])
    owner = []
    for h, l in enumerate(L):
        owner += [h] * l
    G = len(groups)
    counts = []
    for g in groups:
        files = {d[K0 + k] for k in range(len(owner)) if owner[k] in g and d[K0 + k] in dprime}
        counts.append(len(files))
    if approach == "shared1":
        return K0 + len(dprime) * F(G - t, G), F(0)
    if approach == "shared2":
        return K0 + shared_mult(counts, t), F(0)
    if approach == "side1":
        return F(K0), len(dprime) * F(G - t, G - 1)
    if approach == "side2":
        return F(K0), side_mult(counts, t)
    return F(K0), side_mult(counts, t, direct=True)


def worst_case(H, K0, L, N, groups, t, approach):
    K = K0 + sum(L)
    best = (F(0), F(0))
    for d in itertools.product(range(1, N + 1), repeat=K):
        rm, rs = per_demand(H, K0, L, N, groups, t, approach, list(d))
        best = (max(best[0], rm), max(best[1], rs))
    return best


def cutset(K0, L, N, M, s):
    Ls = sum(sorted(L, reverse=True)[:s])
    return K0 + pos(Ls - F(s) * M / ((N - K0) // Ls))


def stirling2(n, k):
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def gf_mul(a, b):
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
        b >>= 1
    return r


def variance_partition(lams, G):
    H = len(lams)
    target = F(sum(lams), G)
    best = None
    for p in set_partitions(list(range(H)), G):
        obj = sum(sum(F(lams[j]) for j in g) + (sum(F(lams[j]) for j in g) - target) ** 2 for g in p)
        key = sorted(sorted(g) for g in p)
        if best is None or obj < best[0] or (obj == best[0] and key < best[1]):
            best = (obj, key)
    return "|".join(",".join(str(h + 1) for h in g) for g in best[1])


def agnostic_shared(N, k0_dist, l_dists, groups, t, n):
    G = len(groups)
    total = F(0)
    for k0, pk in k0_dist:
        for combo in itertools.product(*l_dists):
            p = pk
            ls = []
            for v, pv in combo:
                p *= pv
                ls.append(v)
            sL = sum(ls)
            base = F(min(N, max(k0, n)))
            if sL:
                q = [min(sum(ls[h] for h in g), max(0, N - k0)) for g in groups]
                base += pos(F(sL - max(0, n - k0))) / sL * shared_mult(q, t)
            total += p * base
    return F(t * (N - n), G), total


def agnostic_side(N, k0_dist, l_dists, groups, t, n):
    G = len(groups)
    total = F(0)
    for k0, pk in k0_dist:
        for combo in itertools.product(*l_dists):
            p = pk
            ls = []
            for v, pv in combo:
                p *= pv
                ls.append(v)
            room = max(0, N - k0)
            q = [min(sum(ls[h] for h in g), room) for g in groups]
            r = F(G, G - 1) * max(0, n - k0) + min(min(room, sum(ls)) * F(G - t, G - 1), side_mult(q, t))
            total += p * r
    return F(t * (N - n), G), total


def s(x):
    return str(x)


def reference():
    out = {}
    out["binom"] = {"4,2": comb(4, 2), "12,6": comb(12, 6), "30,15": comb(30, 15)}
    out["stirling"] = {"3,2": stirling2(3, 2), "4,2": stirling2(4, 2), "6,3": stirling2(6, 3), "6,2": stirling2(6, 2)}
    out["four_sbs_corners"] = [[s(a), s(b)] for a, b in converse_corners(4, 4, [6, 4, 3, 3], 20, F(5))]
    out["four_sbs_corners_M"] = {
        str(M): [[s(a), s(b)] for a, b in converse_corners(4, 4, [6, 4, 3, 3], 20, F(M))] for M in (0, 2, 8, 16)
    }
    out["saturated_corners"] = [[s(a), s(b)] for a, b in converse_corners(2, 5, [2, 1], 4, F(1))]
    out["three_sbs_sym"] = {str(t): [s(x) if x is not None else None for x in sym_points(3, 2, [2, 1, 1], 6, t)]
                      for t in range(4)}
    out["four_sbs_sym"] = {str(t): [s(x) if x is not None else None for x in sym_points(4, 4, [6, 4, 3, 3], 20, t)]
                       for t in range(5)}
    v, p = asym_shared(6, 10, [20, 20, 8, 6, 4, 2], 70, 3, 2)
    out["six_sbs_asym_G3_t2"] = [s(v), "|".join(",".join(str(h + 1) for h in sorted(g)) for g in sorted(p, key=lambda g: -sum([20, 20, 8, 6, 4, 2][h] for h in g)))]
    out["worst_H2_N4"] = s(worst_case(2, 1, [2, 1], 4, [[0], [1]], 1, "shared2")[0])
    out["worst_H2_N4_shared1"] = s(worst_case(2, 1, [2, 1], 4, [[0], [1]], 1, "shared1")[0])
    out["worst_three_sbs_side2"] = [s(x) for x in worst_case(3, 2, [2, 1, 1], 6, [[0], [1], [2]], 2, "side2")]
    out["worst_grouped_shared"] = [s(x) for x in worst_case(3, 2, [2, 1, 1], 6, [[0], [1, 2]], 1, "shared2")]
    out["worst_grouped_side"] = [s(x) for x in worst_case(3, 2, [2, 1, 1], 6, [[0], [1, 2]], 1, "side2")]
    out["three_sbs_direct"] = s(per_demand(3, 2, [2, 1, 1], 6, [[0], [1], [2]], 2, "side2-direct", [5, 6, 1, 2, 3, 4])[1])
    out["side2_310"] = s(side_mult([3, 1, 0], 2))
    out["cutset"] = {"M2": s(cutset(2, [2, 2], 10, F(2), 1)), "M4": s(cutset(2, [2, 2], 10, F(4), 1))}
    out["gf"] = {"53*ca": gf_mul(0x53, 0xCA), "57*83": gf_mul(0x57, 0x83), "02*80": gf_mul(0x02, 0x80)}
    out["variance"] = {"poisson6_G3": variance_partition([20, 20, 8, 6, 4, 2], 3),
                       "3111_G2": variance_partition([3, 1, 1, 1], 2)}
    half = F(1, 2)
    k0 = [(1, half), (2, half)]
    ld = [[(1, half), (3, half)], [(1, F(1))], [(0, F(1, 4)), (2, F(3, 4))]]
    out["agnostic_shared"] = [s(x) for x in agnostic_shared(8, k0, ld, [[0], [1, 2]], 1, 2)]
    out["agnostic_side"] = [s(x) for x in agnostic_side(8, k0, ld, [[0], [1], [2]], 2, 2)]
    return out


if __name__ == "__main__":
    ref = reference()
    if len(sys.argv) > 1 and sys.argv[1] == "--check":
        with open(sys.argv[2]) as f:
            frozen = json.load(f)
        bad = [k for k in ref if ref[k] != frozen.get(k)]
        for k in bad:
            print(f"mismatch {k}: {ref[k]} != {frozen.get(k)}")
        sys.exit(1 if bad else 0)
    print(json.dumps(ref, indent=1))
