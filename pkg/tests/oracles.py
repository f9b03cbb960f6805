"""Slow reference implementations used only by the tests."""

from __future__ import annotations

from itertools import combinations


def compose(p, q):
    # left to right, 0-based tuples
    return tuple(q[x] for x in p)


def group_elements(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    todo = [ident]
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def set_partials(n, support):
    """All partial partitions of {0..n-1} with the given block sizes, as
    frozensets of frozensets."""
    support = sorted(support, reverse=True)
    out = set()

    def rec(i, free, blocks):
        if i == len(support):
            out.add(frozenset(blocks))
            return
        for b in combinations(sorted(free), support[i]):
            rec(i + 1, free - set(b), blocks + [frozenset(b)])

    rec(0, set(range(n)), [])
    return out


def act(P, g):
    return frozenset(frozenset(g[x] for x in b) for b in P)


def fixed(g, support):
    return sum(1 for P in set_partials(len(g), support) if act(P, g) == P)


def orbits(elements, objects, action=act):
    left = set(objects)
    out = []
    while left:
        x = left.pop()
        orb = {action(x, g) for g in elements}
        left -= orb
        out.append(orb)
    return out


def perm_with_type(parts):
    img = []
    start = 0
    for l in parts:
        img.extend(range(start + 1, start + l))
        img.append(start)
        start += l
    return tuple(img)


def semigroup(gens):
    """Closure of 0-based transformation tuples under left-to-right product."""
    seen = set(gens)
    todo = list(gens)
    while todo:
        x = todo.pop()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen
