"""Shared fixtures, generators and independent oracles for the test suite.

The oracles here deliberately avoid the implementation's own shortcuts:
ideal enumeration scans raw subsets, isomorphism testing searches for an
explicit bijective homomorphism, and lattice facts are recomputed from the
numeric order of chain elements.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import settings

import mvkit as mv

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")

FAMILY_ORDERS = (2, 3, 4, 5)


def family_combos(max_factors=3):
    for r in range(1, max_factors + 1):
        yield from itertools.combinations_with_replacement(FAMILY_ORDERS, r)


def build_family():
    """All products of chains with orders in 2..5 and at most 3 factors."""
    out = []
    for combo in family_combos():
        out.append((combo, mv.product([mv.chain_algebra(n) for n in combo])))
    return out


@pytest.fixture(scope="session")
def family():
    return build_family()


def shuffled(algebra, rng):
    perm = list(range(algebra.size))
    rng.shuffle(perm)
    return mv.relabel(algebra, perm)


# -- oracles ---------------------------------------------------------------


def ideals_by_subset_scan(algebra):
    """Every ideal, found by scanning all 2^size subsets against the clauses."""
    n = algebra.size
    down = []
    for x in range(n):
        m = 0
        for y in range(n):
            if algebra.leq(y, x):
                m |= 1 << y
        down.append(m)
    found = set()
    for mask in range(1, 1 << n):
        if not (mask >> algebra.zero) & 1:
            continue
        members = [x for x in range(n) if (mask >> x) & 1]
        if any(down[x] | mask != mask for x in members):
            continue
        if all((mask >> algebra.op(x, y)) & 1 for x in members for y in members):
            found.add(frozenset(members))
    return found


def exists_isomorphism(a, b):
    """Backtracking search for a bijective homomorphism (zero forced to zero)."""
    n = a.size
    if n != b.size:
        return False

    def undo(img, rimg, added):
        for p in added:
            del rimg[img[p]]
            del img[p]

    def extend(img, rimg, x, y):
        """Propagate x -> y through negation and sums; None on conflict."""
        stack = [(x, y)]
        added = []
        while stack:
            p, q = stack.pop()
            if p in img:
                if img[p] != q:
                    undo(img, rimg, added)
                    return None
                continue
            if q in rimg:
                undo(img, rimg, added)
                return None
            img[p] = q
            rimg[q] = p
            added.append(p)
            stack.append((a.neg(p), b.neg(q)))
            for r in list(img):
                stack.append((a.op(p, r), b.op(q, img[r])))
                stack.append((a.op(r, p), b.op(img[r], q)))
        return added

    img, rimg = {}, {}
    if extend(img, rimg, a.zero, b.zero) is None:
        return False

    def search():
        x = next((v for v in range(n) if v not in img), None)
        if x is None:
            return all(
                img[a.op(p, q)] == b.op(img[p], img[q]) for p in range(n) for q in range(n)
            ) and all(img[a.neg(p)] == b.neg(img[p]) for p in range(n))
        for y in range(n):
            if y in rimg:
                continue
            added = extend(img, rimg, x, y)
            if added is not None:
                if search():
                    return True
                undo(img, rimg, added)
        return False

    return search()


def truncadd(x: Fraction, y: Fraction) -> Fraction:
    return min(x + y, Fraction(1))


# -- randomized symbolic data ----------------------------------------------


def random_symbolic_element(spec, rng: random.Random, span=12):
    modulus = spec.period * rng.randint(1, 3)
    values = []
    for r in range(modulus):
        cls = spec.classes[r % spec.period]
        if isinstance(cls, mv.ConstClass):
            values.append(rng.randrange(cls.order))
        else:
            values.append(rng.choice((mv.ZERO, mv.TOP)))
    prefix = {}
    for x in spec.prefix_overrides:
        if spec.limit is None or x < spec.limit:
            prefix[x] = rng.randrange(spec.order_at(x))
    hi = span if spec.limit is None else min(span, spec.limit)
    for _ in range(rng.randint(0, 2)):
        if hi == 0:
            break
        x = rng.randrange(hi)
        prefix[x] = rng.randrange(spec.order_at(x))
    return mv.SymbolicElement(spec, modulus, prefix, values)


def random_ultrafilter(spec, rng: random.Random, span=12):
    if not spec.is_infinite or rng.random() < 0.5:
        hi = span if spec.limit is None else min(span, spec.limit)
        return mv.SymbolicUltrafilter.principal(rng.randrange(max(hi, 1)))
    modulus = spec.period * rng.randint(1, 3)
    return mv.SymbolicUltrafilter.free_on_residue(rng.randrange(modulus), modulus)


def bundled_specs():
    """Name and parsed IndexSpec of every bundled document."""
    from mvkit import data
    from mvkit.cli import parse_algebra_document

    out = []
    for name in data.BUNDLED:
        kind, spec = parse_algebra_document(data.load(name))
        assert kind == "symbolic"
        out.append((name, spec))
    return out
