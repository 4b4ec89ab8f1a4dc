#!/usr/bin/env python3
"""Brute-force closed-surface invariants for a one-point abelian model.

Builds eps . (mu . delta)^g . eta by literal homotopy fibre products: every
object (x1, g, x2) and every arrow (l1, l2) is enumerated, nothing is reduced
to a skeleton. The groupoid cardinality of the final apex is printed as an
exact fraction. Values are frozen into the C++ regression tests.

usage: closed_invariant_bruteforce.py FACTOR [FACTOR ...] --genus G
       closed_invariant_bruteforce.py --check
"""
import argparse
import itertools
from fractions import Fraction


class Group:
    def __init__(self, factors):
        self.factors = list(factors)
        self.elems = list(itertools.product(*[range(f) for f in self.factors]))

    def add(self, a, b):
        return tuple((x + y) % f for x, y, f in zip(a, b, self.factors))

    def neg(self, a):
        return tuple((-x) % f for x, f in zip(a, self.factors))

    def zero(self):
        return tuple(0 for _ in self.factors)


class Span:
    """objects: list; arrows: list of (src, tgt, data); legs map arrows to
    boundary tuples of group elements (one entry per boundary circle)."""

    def __init__(self, objects, arrows, left, right):
        self.objects, self.arrows = objects, arrows
        self.left, self.right = left, right


def generator(grp, name):
    pt = [0]
    if name == "eta":
        return Span(pt, [(0, 0, None)], lambda a: (), lambda a: (grp.zero(),))
    if name == "eps":
        return Span(pt, [(0, 0, None)], lambda a: (grp.zero(),), lambda a: ())
    pairs = [(0, 0, (a, b)) for a in grp.elems for b in grp.elems]
    incl = lambda arr: arr[2]
    mult = lambda arr: (grp.add(*arr[2]),)
    if name == "mu":
        return Span(pt, pairs, incl, mult)
    if name == "delta":
        return Span(pt, pairs, mult, incl)
    raise ValueError(name)


def compose(grp, s1, s2):
    """homotopy fibre product of s1 (first) and s2 (second) over the middle."""
    objects = []
    index = {}
    for x1 in range(len(s1.objects)):
        for x2 in range(len(s2.objects)):
            # one-point base: every middle boundary object is the same tuple
            width = len(s1.right(next(a for a in s1.arrows if a[0] == x1)))
            for g in itertools.product(grp.elems, repeat=width):
                index[(x1, g, x2)] = len(objects)
                objects.append((x1, g, x2))
    arrows = []
    for l1 in s1.arrows:
        for l2 in s2.arrows:
            for g in {o[1] for o in objects}:
                src = (l1[0], g, l2[0])
                if src not in index:
                    continue
                m1, m2 = s1.right(l1), s2.left(l2)
                # target connector h = leg2(l2) . g . leg1(l1)^-1
                h = tuple(grp.add(grp.add(b, gi), grp.neg(a))
                          for a, gi, b in zip(m1, g, m2))
                tgt = (l1[1], h, l2[1])
                arrows.append((index[src], index[tgt], (l1, l2)))
    left = lambda arr: s1.left(arr[2][0])
    right = lambda arr: s2.right(arr[2][1])
    return Span(objects, arrows, left, right)


def cardinality(span):
    parent = list(range(len(span.objects)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s, t, _ in span.arrows:
        parent[find(s)] = find(t)
    loops = {}
    for s, t, _ in span.arrows:
        if s == t:
            loops[s] = loops.get(s, 0) + 1
    reps = {}
    for x in range(len(span.objects)):
        reps.setdefault(find(x), x)
    return sum(Fraction(1, loops[r]) for r in reps.values())


# Values frozen into the C++ tests.
FROZEN = [
    ([2], 0, Fraction(2)),
    ([2], 1, Fraction(1)),
    ([2], 2, Fraction(1, 2)),
    ([3], 0, Fraction(3)),
    ([3], 1, Fraction(1)),
    ([2, 2], 1, Fraction(1)),
]


def closed(factors, genus):
    grp = Group(factors)
    span = generator(grp, "eta")
    for _ in range(genus):
        span = compose(grp, span, generator(grp, "delta"))
        span = compose(grp, span, generator(grp, "mu"))
    span = compose(grp, span, generator(grp, "eps"))
    return cardinality(span)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("factors", type=int, nargs="*")
    ap.add_argument("--genus", type=int, default=0)
    ap.add_argument("--check", action="store_true", help="recompute the frozen values")
    args = ap.parse_args()
    if args.check:
        bad = 0
        for factors, genus, want in FROZEN:
            got = closed(factors, genus)
            print(factors, genus, got, "ok" if got == want else "MISMATCH, frozen %s" % want)
            bad += got != want
        raise SystemExit(1 if bad else 0)
    print(closed(args.factors, args.genus))


if __name__ == "__main__":
    main()
