"""Brute-force idempotent arrow ideals of small categories.

Builds each category directly (simplex categories as monotone maps, the
walking arrow as a thin category), computes the factorization preorder
f <= g iff f = h . g . k, enumerates its down-closed sets (these are the
two-sided ideals) and keeps those in which every member is a composite of
two members. Writes the result as JSON to stdout.
"""

import itertools
import json


def simplex(k):
    arrows = []
    for j in range(k + 1):
        for l in range(k + 1):
            for images in itertools.product(range(l + 1), repeat=j + 1):
                if all(a <= b for a, b in zip(images, images[1:])):
                    arrows.append((j, l, images))

    def compose(g, f):
        if f[1] != g[0]:
            return None
        return (f[0], g[1], tuple(g[2][x] for x in f[2]))

    return arrows, compose


def thin(n_objects, pairs):
    arrows = [(a, b, None) for (a, b) in pairs]

    def compose(g, f):
        if f[1] != g[0]:
            return None
        return (f[0], g[1], None)

    return arrows, compose


def idempotent_ideals(arrows, compose):
    index = {a: i for i, a in enumerate(arrows)}
    n = len(arrows)
    below = []
    for g in arrows:
        reach = set()
        for h in arrows:
            hg = compose(h, g)
            if hg is None:
                continue
            for k in arrows:
                hgk = compose(hg, k)
                if hgk is not None:
                    reach.add(index[hgk])
        below.append(frozenset(reach))
    ideals = set()
    # down-sets of the preorder are unions of principal down-sets
    frontier = {frozenset()}
    while frontier:
        ideals |= frontier
        nxt = set()
        for ideal in frontier:
            for g in range(n):
                if g not in ideal:
                    u = ideal | below[g]
                    if u not in ideals:
                        nxt.add(u)
        frontier = nxt

    def idempotent(ideal):
        for f in ideal:
            if not any(
                compose(arrows[g], arrows[h]) == arrows[f]
                for g in ideal
                for h in ideal
            ):
                return False
        return True

    found = sorted((sorted(i) for i in ideals if idempotent(i)), key=lambda s: (len(s), s))
    chain = all(set(a) <= set(b) or set(b) <= set(a) for a in found for b in found)
    return {
        "arrows": n,
        "ideals": len(ideals),
        "idempotent_ideals": len(found),
        "sizes": [len(s) for s in found],
        "chain": chain,
    }


def main():
    out = {
        "terminal": idempotent_ideals(*thin(1, [(0, 0)])),
        "walking-arrow": idempotent_ideals(*thin(2, [(0, 0), (0, 1), (1, 1)])),
    }
    for k in (1, 2, 3):
        out["simplex-%d" % k] = idempotent_ideals(*simplex(k))
    print(json.dumps(out, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
