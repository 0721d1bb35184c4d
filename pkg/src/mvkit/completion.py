"""Profinite completion of a finite MV-algebra as an explicit inverse limit.

The index poset is the full ideal set ordered by reverse inclusion (for a
finite algebra every quotient is finite, and the improper ideal contributes
one forced coordinate through its trivial quotient).  The completion is
realized concretely as the subalgebra of compatible threads inside the
product of all quotients, and the canonical map a -> ([a]_I)_I is checked
for injectivity, surjectivity and the homomorphism property rather than
inferred from structure theory.

Two verification reports cover the interaction with the Boolean center on
regular algebras: the ideal-poset correspondence I -> I n B(A) together with
the induced quotient isomorphisms and their commuting squares, and the
isomorphism between the center of the completion and the completion of the
center.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError, PreconditionError
from .finite import (
    DEFAULT_MAX_SIZE,
    FiniteMVAlgebra,
    are_isomorphic,
    center_algebra,
)
from .ideals import Ideal, all_ideals, is_regular, make_ideal, quotient


class InverseSystem:
    """All quotients of one finite algebra with their transition maps.

    `ideals[i]` is the i-th poset node (canonical all_ideals order);
    `transitions[(i, j)]`, defined whenever ideals[i] <= ideals[j], maps a
    class of A/ideals[i] to the class of A/ideals[j] containing it.
    """

    def __init__(self, algebra, ideals, quotients, projections, transitions, subset):
        self.algebra = algebra
        self.ideals = ideals
        self.quotients = quotients
        self.projections = projections
        self.transitions = transitions
        self.subset = subset

    def quotient_of(self, ideal: Ideal):
        i = self.ideals.index(ideal)
        return self.quotients[i], self.projections[i]

    def __repr__(self):
        return f"InverseSystem({len(self.ideals)} ideals over size {self.algebra.size})"


def _first_occurrences(projection, count):
    reps = np.full(count, -1, dtype=np.int32)
    for x, c in enumerate(projection):
        if reps[c] < 0:
            reps[c] = x
    return reps


def build_inverse_system(algebra: FiniteMVAlgebra,
                         max_size=DEFAULT_MAX_SIZE) -> InverseSystem:
    """Quotients by every ideal plus verified transition maps.

    Transition maps are checked to be well defined, surjective, the identity
    on equal ideals, and functorial along every comparable triple.
    """
    ideals = all_ideals(algebra, max_size)
    k = len(ideals)
    quotients = []
    projections = []
    reps = []
    for ideal in ideals:
        q, proj = quotient(algebra, ideal)
        quotients.append(q)
        projections.append(np.asarray(proj, dtype=np.int32))
        reps.append(_first_occurrences(proj, q.size))

    subset = np.zeros((k, k), dtype=bool)
    for i in range(k):
        for j in range(k):
            subset[i, j] = ideals[i].members <= ideals[j].members

    transitions = {}
    for i in range(k):
        for j in range(k):
            if not subset[i, j]:
                continue
            t = projections[j][reps[i]]
            if (projections[j] != t[projections[i]]).any():
                raise InternalConsistencyError("transition map is not well defined")
            if len(np.unique(t)) != quotients[j].size:
                raise InternalConsistencyError("transition map is not surjective")
            if i == j and (t != np.arange(quotients[i].size)).any():
                raise InternalConsistencyError("self-transition is not the identity")
            transitions[(i, j)] = t

    for i in range(k):
        for j in range(k):
            if not subset[i, j]:
                continue
            for m in range(k):
                if not subset[j, m]:
                    continue
                if (transitions[(j, m)][transitions[(i, j)]] != transitions[(i, m)]).any():
                    raise InternalConsistencyError("transition maps are not functorial")

    return InverseSystem(algebra, ideals, tuple(quotients),
                         tuple(tuple(int(c) for c in p) for p in projections),
                         transitions, subset)


@dataclass
class CompletionResult:
    """The inverse limit together with the canonical comparison map."""

    system: InverseSystem
    completion: FiniteMVAlgebra
    canonical_map: tuple
    is_isomorphism: bool

    @property
    def thread_count(self) -> int:
        return self.completion.size


def _enumerate_threads(system: InverseSystem):
    """All compatible choices of one quotient class per poset node.

    Nodes are visited by decreasing ideal size so the coarse quotients
    constrain the fine ones early.
    """
    ideals = system.ideals
    k = len(ideals)
    order = sorted(range(k),
                   key=lambda i: (-len(ideals[i].members), ideals[i].sorted_members))
    position = {node: p for p, node in enumerate(order)}
    ups = [[] for _ in range(k)]    # earlier nodes j with ideals[i] <= ideals[j]
    downs = [[] for _ in range(k)]  # earlier nodes j with ideals[j] <= ideals[i]
    for i in range(k):
        for j in range(k):
            if i == j or position[j] >= position[i]:
                continue
            if system.subset[i, j]:
                ups[i].append(j)
            if system.subset[j, i]:
                downs[i].append(j)

    transitions = system.transitions
    sizes = [q.size for q in system.quotients]
    assign = [-1] * k
    threads = []

    def extend(p):
        if p == k:
            threads.append(tuple(assign))
            return
        i = order[p]
        forced = None
        for j in downs[i]:
            v = int(transitions[(j, i)][assign[j]])
            if forced is None:
                forced = v
            elif forced != v:
                return
        candidates = (forced,) if forced is not None else range(sizes[i])
        for v in candidates:
            if all(int(transitions[(i, j)][v]) == assign[j] for j in ups[i]):
                assign[i] = v
                extend(p + 1)
                assign[i] = -1

    extend(0)
    threads.sort()
    return threads


_MAX_CODE_SPACE = 2 ** 62


def profinite_completion(algebra: FiniteMVAlgebra,
                         max_size=DEFAULT_MAX_SIZE) -> CompletionResult:
    """The compatible-thread subalgebra and the canonical map into it."""
    system = build_inverse_system(algebra, max_size)
    threads = _enumerate_threads(system)
    k = len(system.ideals)
    sizes = [q.size for q in system.quotients]

    # mixed-radix codes identify threads; stay in numpy while they fit int64
    space = 1
    for s in sizes:
        space *= s
    use_numpy = space < _MAX_CODE_SPACE

    m = len(threads)
    if use_numpy:
        strides = np.empty(k, dtype=np.int64)
        acc = 1
        for i in range(k - 1, -1, -1):
            strides[i] = acc
            acc *= sizes[i]
        T = np.asarray(threads, dtype=np.int64).reshape(m, k)
        codes = T @ strides
        if (np.diff(codes) <= 0).any():
            raise InternalConsistencyError("thread codes are not strictly increasing")

        def lookup(code_arr):
            idx = np.searchsorted(codes, code_arr)
            if (idx >= m).any() or (codes[idx] != code_arr).any():
                raise InternalConsistencyError("componentwise result escapes the thread set")
            return idx.astype(np.int32)

        op_codes = np.zeros((m, m), dtype=np.int64)
        neg_codes = np.zeros(m, dtype=np.int64)
        for i in range(k):
            col = T[:, i].astype(np.int32)
            q = system.quotients[i]
            op_codes += q.oplus_table[np.ix_(col, col)].astype(np.int64) * strides[i]
            neg_codes += q.neg_table[col].astype(np.int64) * strides[i]
        op_idx = lookup(op_codes.ravel()).reshape(m, m)
        neg_idx = lookup(neg_codes)

        proj_mat = np.asarray(system.projections, dtype=np.int64)  # (k, carrier)
        carrier_codes = strides @ proj_mat
        canonical = lookup(carrier_codes)
        zero_idx = int(canonical[algebra.zero])
        completion = FiniteMVAlgebra(m, zero_idx, op_idx, neg_idx)
        canonical = tuple(int(c) for c in canonical)
    else:
        index = {t: i for i, t in enumerate(threads)}

        def combine(f, ta, tb=None):
            out = []
            for i in range(k):
                q = system.quotients[i]
                out.append(q.op(ta[i], tb[i]) if f == "op" else q.neg(ta[i]))
            key = tuple(out)
            if key not in index:
                raise InternalConsistencyError("componentwise result escapes the thread set")
            return index[key]

        op_idx = [[combine("op", a, b) for b in threads] for a in threads]
        neg_idx = [combine("neg", a) for a in threads]
        canonical = tuple(
            index[tuple(system.projections[i][a] for i in range(k))]
            for a in range(algebra.size)
        )
        completion = FiniteMVAlgebra(m, canonical[algebra.zero], op_idx, neg_idx)

    can_arr = np.asarray(canonical, dtype=np.int32)
    injective = len(set(canonical)) == algebra.size
    surjective = set(canonical) == set(range(m))
    hom = (
        (completion.oplus_table[np.ix_(can_arr, can_arr)] == can_arr[algebra.oplus_table]).all()
        and (completion.neg_table[can_arr] == can_arr[algebra.neg_table]).all()
        and completion.zero == canonical[algebra.zero]
    )
    iso = bool(injective and surjective and hom and are_isomorphic(algebra, completion))
    return CompletionResult(system, completion, canonical, iso)


# -- Boolean-center verification reports -----------------------------------


@dataclass
class CenterCorrespondenceReport:
    """Outcome of checking the ideal correspondence with the Boolean center.

    Covers: I -> I n B(A) as an inclusion-preserving and reversing bijection
    between the two ideal posets, the induced isomorphisms
    B(A)/(I n B(A)) -> B(A/I), and commutation of those isomorphisms with
    all transition maps.
    """

    ideal_count: int
    center_ideal_count: int
    psi_well_defined: bool
    psi_injective: bool
    psi_surjective: bool
    psi_preserves_inclusion: bool
    psi_reverses_inclusion: bool
    quotient_isos_ok: bool
    squares_ok: bool

    @property
    def ok(self) -> bool:
        return (
            self.psi_well_defined and self.psi_injective and self.psi_surjective
            and self.psi_preserves_inclusion and self.psi_reverses_inclusion
            and self.quotient_isos_ok and self.squares_ok
        )


def verify_center_correspondence(algebra: FiniteMVAlgebra,
                                 max_size=DEFAULT_MAX_SIZE) -> CenterCorrespondenceReport:
    """Check the center ideal correspondence on a regular finite algebra."""
    if not is_regular(algebra, max_size):
        raise PreconditionError("center correspondence requires a regular algebra")

    system = build_inverse_system(algebra, max_size)
    ideals_a = system.ideals
    k = len(ideals_a)
    center, emb = center_algebra(algebra)
    pos_in_center = {a: c for c, a in enumerate(emb)}
    center_set = set(emb)
    ideals_c = all_ideals(center, max_size)

    from .ideals import is_ideal as _is_ideal_check

    psi = [frozenset(pos_in_center[m] for m in ideal.members if m in center_set)
           for ideal in ideals_a]
    well_defined = all(_is_ideal_check(center, mem) for mem in psi)
    injective = len(set(psi)) == k
    surjective = set(psi) == {ideal.members for ideal in ideals_c}
    preserves = all(
        psi[i] <= psi[j]
        for i in range(k) for j in range(k)
        if ideals_a[i].members <= ideals_a[j].members
    )
    reverses = all(
        ideals_a[i].members <= ideals_a[j].members
        for i in range(k) for j in range(k)
        if psi[i] <= psi[j]
    )

    # per-node data for the induced center isomorphisms
    thetas = [None] * k
    node = []
    isos_ok = well_defined
    for i in range(k):
        quot_ai = system.quotients[i]
        proj_ai = system.projections[i]
        center_q, emb_q = center_algebra(quot_ai)
        pos_q = {a: c for c, a in enumerate(emb_q)}
        quot_c, proj_c = quotient(center, make_ideal(center, psi[i]))
        node.append((quot_c, proj_c, center_q, emb_q, pos_q))

        theta = [None] * quot_c.size
        ok_i = True
        for c in range(center.size):
            u = proj_c[c]
            image = proj_ai[emb[c]]
            if image not in pos_q:
                ok_i = False
                break
            t = pos_q[image]
            if theta[u] is None:
                theta[u] = t
            elif theta[u] != t:
                ok_i = False
                break
        ok_i = ok_i and None not in theta
        ok_i = ok_i and len(set(theta)) == quot_c.size == center_q.size
        if ok_i:
            ok_i = theta[quot_c.zero] == center_q.zero
            ok_i = ok_i and all(
                theta[quot_c.op(u, v)] == center_q.op(theta[u], theta[v])
                for u in range(quot_c.size) for v in range(quot_c.size)
            )
            ok_i = ok_i and all(
                theta[quot_c.neg(u)] == center_q.neg(theta[u])
                for u in range(quot_c.size)
            )
        thetas[i] = theta
        isos_ok = isos_ok and ok_i

    squares = isos_ok
    if isos_ok:
        for i in range(k):
            quot_c_i, proj_c_i, _, emb_q_i, _ = node[i]
            reps_c_i = _first_occurrences(proj_c_i, quot_c_i.size)
            for j in range(k):
                if not system.subset[i, j]:
                    continue
                quot_c_j, proj_c_j, _, _, pos_q_j = node[j]
                trans_c = [proj_c_j[int(r)] for r in reps_c_i]
                trans_a = system.transitions[(i, j)]
                for u in range(quot_c_i.size):
                    left = thetas[j][trans_c[u]]
                    right = pos_q_j.get(int(trans_a[emb_q_i[thetas[i][u]]]))
                    if right is None or left != right:
                        squares = False
                        break
                if not squares:
                    break
            if not squares:
                break

    return CenterCorrespondenceReport(
        ideal_count=k,
        center_ideal_count=len(ideals_c),
        psi_well_defined=well_defined,
        psi_injective=injective,
        psi_surjective=surjective,
        psi_preserves_inclusion=preserves,
        psi_reverses_inclusion=reverses,
        quotient_isos_ok=isos_ok,
        squares_ok=squares,
    )


@dataclass
class CenterCompletionReport:
    """Center of the completion versus completion of the center."""

    center_of_completion_size: int
    completion_of_center_size: int
    isomorphic: bool

    @property
    def ok(self) -> bool:
        return self.isomorphic


def verify_center_completion_commute(algebra: FiniteMVAlgebra,
                                     max_size=DEFAULT_MAX_SIZE) -> CenterCompletionReport:
    """Compare B(completion of A) with the completion of B(A), both computed."""
    if not is_regular(algebra, max_size):
        raise PreconditionError("center/completion comparison requires a regular algebra")
    completed = profinite_completion(algebra, max_size).completion
    center_of_completion, _ = center_algebra(completed)
    center, _ = center_algebra(algebra)
    completed_center = profinite_completion(center, max_size).completion
    return CenterCompletionReport(
        center_of_completion_size=center_of_completion.size,
        completion_of_center_size=completed_center.size,
        isomorphic=are_isomorphic(center_of_completion, completed_center),
    )
