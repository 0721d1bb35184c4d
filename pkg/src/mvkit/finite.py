"""Finite MV-algebras presented by operation tables.

Carriers are index sets {0..size-1}; the truncated sum is a size x size
table and negation a size-vector, both held as read-only numpy integer
arrays (all values are exact carrier indices, no floats).  The derived
order, lattice tables and the distance term are computed lazily from the
defining formulas and cached per algebra.

`from_tables` is the validating constructor: it verifies the Abelian-monoid
axioms, the involution and the two characteristic MV identities
exhaustively, reporting the first failing axiom together with a witness.
Algebras produced internally (products, quotients, intervals) are valid by
construction and are built without re-running the axiom sweep; the test
suite re-validates representatives of every such construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DecompositionError,
    InternalConsistencyError,
    MVAxiomError,
    NotCentralError,
    ResourceCapError,
    SchemaError,
)

DEFAULT_MAX_SIZE = 4096


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class FiniteMVAlgebra:
    """A finite MV-algebra given by its truncated-sum and negation tables.

    Immutable once built; the derived tables are cached lazily, so concurrent
    readers may compute one redundantly but never observe a partial state.
    """

    def __init__(self, size, zero, oplus_table, neg_table, labels=None):
        oplus = np.ascontiguousarray(oplus_table, dtype=np.int32)
        neg = np.ascontiguousarray(neg_table, dtype=np.int32)
        if size < 1:
            raise SchemaError(f"carrier size must be >= 1, got {size}")
        if oplus.shape != (size, size):
            raise SchemaError(f"oplus table has shape {oplus.shape}, expected {(size, size)}")
        if neg.shape != (size,):
            raise SchemaError(f"neg table has shape {neg.shape}, expected {(size,)}")
        if not (0 <= zero < size):
            raise SchemaError(f"zero index {zero} out of range for size {size}")
        if oplus.size and (oplus.min() < 0 or oplus.max() >= size):
            raise SchemaError("oplus table contains out-of-range indices")
        if neg.min() < 0 or neg.max() >= size:
            raise SchemaError("neg table contains out-of-range indices")
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != size:
                raise SchemaError(f"{len(labels)} labels for {size} elements")
        self.size = int(size)
        self.zero = int(zero)
        self.oplus_table = _frozen(oplus)
        self.neg_table = _frozen(neg)
        self.labels = labels
        self._cache = {}

    # -- element-level operations ------------------------------------

    @property
    def one(self) -> int:
        return int(self.neg_table[self.zero])

    def op(self, x: int, y: int) -> int:
        return int(self.oplus_table[x, y])

    def neg(self, x: int) -> int:
        return int(self.neg_table[x])

    def join(self, x: int, y: int) -> int:
        return int(self.join_table[x, y])

    def meet(self, x: int, y: int) -> int:
        return int(self.meet_table[x, y])

    def leq(self, x: int, y: int) -> bool:
        return bool(self.leq_matrix[x, y])

    def dist(self, x: int, y: int) -> int:
        return int(self.distance_table[x, y])

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def elements(self):
        return range(self.size)

    # -- derived tables (lazy, shared by every consumer) ---------------

    def _derived(self, key):
        if key in self._cache:
            return self._cache[key]
        O, N = self.oplus_table, self.neg_table
        if key == "leq":
            # x <= y  iff  neg x (+) y = 1
            val = O[N] == self.one
        elif key == "join":
            # x v y = neg(neg x (+) y) (+) y
            inner = N[O[N]]
            val = O[inner, np.arange(self.size)[None, :]]
        elif key == "meet":
            # x ^ y = neg(neg x v neg y)
            J = self._derived("join")
            val = N[J[np.ix_(N, N)]]
        elif key == "dist":
            # d(x,y) = neg(neg x (+) y) (+) neg(x (+) neg y)
            a = N[O[N]]
            b = N[O[:, N]]
            val = O[a, b]
        else:  # pragma: no cover
            raise KeyError(key)
        self._cache[key] = _frozen(val)
        return val

    @property
    def leq_matrix(self) -> np.ndarray:
        return self._derived("leq")

    @property
    def join_table(self) -> np.ndarray:
        return self._derived("join")

    @property
    def meet_table(self) -> np.ndarray:
        return self._derived("meet")

    @property
    def distance_table(self) -> np.ndarray:
        return self._derived("dist")

    def __repr__(self) -> str:
        return f"FiniteMVAlgebra(size={self.size})"


def as_tables(algebra: FiniteMVAlgebra):
    """Plain-list view (size, zero, oplus rows, neg row) for serialization."""
    return (
        algebra.size,
        algebra.zero,
        [[int(v) for v in row] for row in algebra.oplus_table],
        [int(v) for v in algebra.neg_table],
    )


# -- validating constructor ----------------------------------------------


def from_tables(size, zero, oplus_table, neg_table, labels=None,
                max_size=DEFAULT_MAX_SIZE) -> FiniteMVAlgebra:
    """Build an algebra from raw tables, verifying every axiom exhaustively.

    Raises MVAxiomError naming the first failed axiom and a witness tuple;
    structural problems raise SchemaError, oversize carriers ResourceCapError.
    """
    if max_size is not None and size > max_size:
        raise ResourceCapError(size, max_size)
    alg = FiniteMVAlgebra(size, zero, oplus_table, neg_table, labels)
    O, N = alg.oplus_table, alg.neg_table
    n = alg.size

    bad = np.argwhere(O != O.T)
    if len(bad):
        x, y = map(int, bad[0])
        raise MVAxiomError("commutative", (x, y))

    bad = np.flatnonzero(O[alg.zero] != np.arange(n))
    if len(bad):
        raise MVAxiomError("identity", (int(bad[0]),))

    for z in range(n):
        col = O[:, z]
        left = col[O]        # (x (+) y) (+) z
        right = O[:, col]    # x (+) (y (+) z)
        bad = np.argwhere(left != right)
        if len(bad):
            x, y = map(int, bad[0])
            raise MVAxiomError("associative", (x, y, z))

    bad = np.flatnonzero(N[N] != np.arange(n))
    if len(bad):
        raise MVAxiomError("involution", (int(bad[0]),))

    one = alg.one
    bad = np.flatnonzero(O[one] != one)
    if len(bad):
        raise MVAxiomError("mv1", (int(bad[0]),))

    # neg(neg x (+) y) (+) y is symmetric in (x, y) exactly when the second
    # MV identity holds, so the check is a transpose comparison.
    L = O[N[O[N]], np.arange(n)[None, :]]
    bad = np.argwhere(L != L.T)
    if len(bad):
        x, y = map(int, bad[0])
        raise MVAxiomError("mv2", (x, y))

    return alg


# -- basic constructions ---------------------------------------------------


def trivial_algebra() -> FiniteMVAlgebra:
    """The one-element algebra (the empty product of chains)."""
    return FiniteMVAlgebra(1, 0, [[0]], [0], labels=("0",))


def chain_algebra(order: int) -> FiniteMVAlgebra:
    """The Lukasiewicz chain with `order` elements as an operation table."""
    if order < 2:
        raise ValueError(f"chain order must be >= 2, got {order}")
    idx = np.arange(order, dtype=np.int32)
    oplus = np.minimum(idx[:, None] + idx[None, :], order - 1)
    neg = (order - 1) - idx
    labels = tuple(str(Fraction(k, order - 1)) for k in range(order))
    return FiniteMVAlgebra(order, 0, oplus, neg, labels)


def product(factors, max_size=DEFAULT_MAX_SIZE) -> FiniteMVAlgebra:
    """Direct product with componentwise operations; [] gives the trivial algebra."""
    factors = list(factors)
    if not factors:
        return trivial_algebra()
    sizes = [f.size for f in factors]
    total = 1
    for s in sizes:
        total *= s
        if max_size is not None and total > max_size:
            raise ResourceCapError(total, max_size)

    strides = np.empty(len(sizes), dtype=np.int64)
    acc = 1
    for i in range(len(sizes) - 1, -1, -1):
        strides[i] = acc
        acc *= sizes[i]

    idx = np.arange(total, dtype=np.int64)
    digits = [(idx // strides[i]) % sizes[i] for i in range(len(sizes))]

    oplus = np.zeros((total, total), dtype=np.int32)
    neg = np.zeros(total, dtype=np.int32)
    zero = 0
    for i, f in enumerate(factors):
        d = digits[i].astype(np.int32)
        oplus += f.oplus_table[np.ix_(d, d)] * np.int32(strides[i])
        neg += f.neg_table[d] * np.int32(strides[i])
        zero += f.zero * int(strides[i])

    labels = None
    if all(f.labels is not None for f in factors):
        labels = tuple(
            "(" + ",".join(factors[i].labels[int(digits[i][e])] for i in range(len(factors))) + ")"
            for e in range(total)
        )
    return FiniteMVAlgebra(total, zero, oplus, neg, labels)


def relabel(algebra: FiniteMVAlgebra, permutation) -> FiniteMVAlgebra:
    """The same algebra with carrier indices renamed by a bijection."""
    perm = np.asarray(permutation, dtype=np.int32)
    if sorted(perm.tolist()) != list(range(algebra.size)):
        raise ValueError("relabeling must be a permutation of the carrier")
    n = algebra.size
    oplus = np.empty((n, n), dtype=np.int32)
    neg = np.empty(n, dtype=np.int32)
    oplus[np.ix_(perm, perm)] = perm[algebra.oplus_table]
    neg[perm] = perm[algebra.neg_table]
    labels = None
    if algebra.labels is not None:
        labels = [None] * n
        for x in range(n):
            labels[int(perm[x])] = algebra.labels[x]
        labels = tuple(labels)
    return FiniteMVAlgebra(n, int(perm[algebra.zero]), oplus, neg, labels)


# -- Boolean center and intervals ------------------------------------------


def boolean_center(algebra: FiniteMVAlgebra):
    """All a with a ^ neg a = 0, and the atoms of that Boolean subalgebra.

    Returns (members, atoms), both as index tuples sorted ascending.
    """
    M, N = algebra.meet_table, algebra.neg_table
    idx = np.arange(algebra.size)
    mask = M[idx, N[idx]] == algebra.zero
    members = np.flatnonzero(mask)

    sub_op = algebra.oplus_table[np.ix_(members, members)]
    if not (mask[sub_op].all() and mask[N[members]].all()):
        raise InternalConsistencyError("Boolean center is not closed under the operations")

    leq = algebra.leq_matrix
    nonzero = members[members != algebra.zero]
    sub = leq[np.ix_(nonzero, nonzero)]
    atoms = nonzero[sub.sum(axis=0) == 1]  # nothing nonzero strictly below
    return tuple(int(b) for b in members), tuple(int(a) for a in atoms)


def center_algebra(algebra: FiniteMVAlgebra):
    """The Boolean center as an algebra of its own, plus the embedding.

    Returns (center, embedding) with embedding[i] = carrier index in the
    ambient algebra of the center's element i.
    """
    members, _ = boolean_center(algebra)
    emb = np.asarray(members, dtype=np.int32)
    pos = np.full(algebra.size, -1, dtype=np.int32)
    pos[emb] = np.arange(len(emb), dtype=np.int32)
    oplus = pos[algebra.oplus_table[np.ix_(emb, emb)]]
    neg = pos[algebra.neg_table[emb]]
    labels = tuple(algebra.label(int(m)) for m in members) if algebra.labels else None
    sub = FiniteMVAlgebra(len(members), int(pos[algebra.zero]), oplus, neg, labels)
    return sub, tuple(int(m) for m in members)


def interval_algebra(algebra: FiniteMVAlgebra, a: int):
    """The relativized algebra on [0, a] for a central element a.

    Operations are x (+)' y = (x (+) y) ^ a and neg' x = (neg x) ^ a.
    Returns (interval, embedding) like `center_algebra`.
    """
    center_members, _ = boolean_center(algebra)
    if a not in center_members:
        raise NotCentralError(
            f"element {algebra.label(a)} is not in the Boolean center"
        )
    emb = np.flatnonzero(algebra.leq_matrix[:, a]).astype(np.int32)
    pos = np.full(algebra.size, -1, dtype=np.int32)
    pos[emb] = np.arange(len(emb), dtype=np.int32)
    M = algebra.meet_table
    oplus = pos[M[algebra.oplus_table[np.ix_(emb, emb)], a]]
    neg = pos[M[algebra.neg_table[emb], a]]
    labels = tuple(algebra.label(int(m)) for m in emb) if algebra.labels else None
    sub = FiniteMVAlgebra(len(emb), int(pos[algebra.zero]), oplus, neg, labels)
    return sub, tuple(int(m) for m in emb)


# -- decomposition into chains ---------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """A verified isomorphism onto a product of Lukasiewicz chains.

    `chain_orders[i]` is the number of elements of the interval [0, atoms[i]];
    `iso[x]` is the numerator tuple of carrier element x, `iso_inverse` its
    inverse.  The multiset of chain orders is a complete isomorphism
    invariant, exposed sorted via `sorted_orders`.
    """

    algebra: FiniteMVAlgebra
    atoms: tuple
    chain_orders: tuple
    iso: tuple
    iso_inverse: dict

    @property
    def sorted_orders(self) -> tuple:
        return tuple(sorted(self.chain_orders))


def decompose(algebra: FiniteMVAlgebra) -> Decomposition:
    """Split a nontrivial finite MV-algebra into its chain factors.

    Computes the atoms of the Boolean center, checks every interval below an
    atom is totally ordered, and verifies pointwise that x -> (x ^ a_i)_i is
    a bijective homomorphism onto the product of those chains.
    """
    if algebra.size == 1:
        raise DecompositionError("the trivial algebra has no chain decomposition")
    _, atoms = boolean_center(algebra)
    leq = algebra.leq_matrix
    O, N, M = algebra.oplus_table, algebra.neg_table, algebra.meet_table
    n = algebra.size

    orders = []
    digit_rows = []
    for a in atoms:
        members = np.flatnonzero(leq[:, a])
        sub = leq[np.ix_(members, members)]
        if not (sub | sub.T).all():
            raise DecompositionError("not a product of chains: interval below an atom is not totally ordered")
        # position in the chain order = number of elements below (inclusive) - 1
        ranks = sub.sum(axis=0) - 1
        lookup = np.full(n, -1, dtype=np.int32)
        lookup[members] = ranks.astype(np.int32)
        digits = lookup[M[:, a]]
        order = len(members)

        ok = (digits[O] == np.minimum(digits[:, None] + digits[None, :], order - 1)).all()
        ok = ok and (digits[N] == (order - 1) - digits).all()
        ok = ok and digits[algebra.zero] == 0
        if not ok:
            raise DecompositionError("not a product of chains: coordinate map is not a homomorphism")
        orders.append(order)
        digit_rows.append(digits)

    total = 1
    for o in orders:
        total *= o
    tuples = list(zip(*(row.tolist() for row in digit_rows))) if digit_rows else []
    if total != n or len(set(tuples)) != n:
        raise DecompositionError("not a product of chains: coordinate map is not bijective")

    iso = tuple(tuple(t) for t in tuples)
    return Decomposition(
        algebra=algebra,
        atoms=tuple(atoms),
        chain_orders=tuple(orders),
        iso=iso,
        iso_inverse={t: x for x, t in enumerate(iso)},
    )


def are_isomorphic(a: FiniteMVAlgebra, b: FiniteMVAlgebra) -> bool:
    """Isomorphism test via the chain-order multiset invariant."""
    if a.size != b.size:
        return False
    if a.size == 1:
        return True
    return decompose(a).sorted_orders == decompose(b).sorted_orders
