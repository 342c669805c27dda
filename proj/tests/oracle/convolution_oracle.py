"""Brute force over functionals on C(G, {0,1}) for small monoids acting on
themselves by x -> xg with rho = 1. Functionals are dicts from value tuples
to values."""

from itertools import product


def functions(n):
    return list(product(range(2), repeat=n))


def all_functionals(n):
    fs = functions(n)
    for values in product(range(2), repeat=len(fs)):
        yield dict(zip(fs, values))


def key(nu):
    return tuple(sorted(nu.items()))


def conv(nu, lam, op):
    n = len(next(iter(nu)))
    out = {}
    for f in functions(n):
        # T_g f (x) = f(x g)
        h = tuple(lam[tuple(f[op[x][g]] for x in range(n))] for g in range(n))
        out[f] = nu[h]
    return out


def join_kind(nu):
    fs = list(nu)
    for f in fs:
        for g in fs:
            m = tuple(max(a, b) for a, b in zip(f, g))
            if nu[m] != max(nu[f], nu[g]):
                return False
    return True


def invariant(nu, op):
    n = len(next(iter(nu)))
    return all(nu[tuple(f[op[x][g]] for x in range(n))] == nu[f] for f in nu for g in range(n))


def saturate(gens, op):
    seen = {key(g): g for g in gens}
    while True:
        cur = list(seen.values())
        new = {}
        for a in cur:
            for b in cur:
                for c in ({f: max(a[f], b[f]) for f in a}, conv(a, b, op)):
                    if key(c) not in seen:
                        new[key(c)] = c
        if not new:
            return list(seen.values())
        seen.update(new)


def main():
    z2 = [[0, 1], [1, 0]]
    collapse = [[0, 1], [1, 1]]
    fam = [nu for nu in all_functionals(2) if join_kind(nu)]
    alg = saturate(fam, z2)
    print(f"# Z2 join: family={len(fam)} saturated={len(alg)} invariant={sum(invariant(nu, z2) for nu in alg)}")
    inv = [nu for nu in all_functionals(2) if invariant(nu, collapse)]
    print(f"# collapsing monoid: invariant={len(inv)}")
    left_zero = [[0, 1, 2], [1, 1, 1], [2, 2, 2]]
    dirac = lambda x: {f: f[x] for f in functions(3)}
    pq = conv(dirac(1), dirac(2), left_zero)
    print("# dirac p * dirac q equals dirac", [x for x in range(3) if key(pq) == key(dirac(x))])
    # saturating + on {0,1,2}, sup over both points
    sat = lambda a, b: min(a + b, 2)
    f, g = (1, 0), (0, 1)
    s = tuple(sat(a, b) for a, b in zip(f, g))
    print(f"# saturating chain: sup(f+g)={max(s)} sup f + sup g={sat(max(f), max(g))}")


if __name__ == "__main__":
    main()
