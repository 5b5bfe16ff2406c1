"""Slow reference implementations over frozensets, written straight from the definitions.

Nothing here imports the package; tests compare the bitmask code against these.
"""

from __future__ import annotations

from itertools import chain, combinations


def powerset(items):
    items = list(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


class Frame:
    def __init__(self, models, formulas, sat):
        self.models = list(models)
        self.formulas = list(formulas)
        self.holds = {(m, a) for m, row in zip(self.models, sat) for a, v in zip(self.formulas, row) if v}

    def mod(self, A):
        return frozenset(m for m in self.models if all((m, a) in self.holds for a in A))

    def th(self, X):
        return frozenset(a for a in self.formulas if all((m, a) in self.holds for m in X))

    def definable(self):
        return {self.mod(A) for A in powerset(self.formulas)}


# --- choice properties: f is a dict frozenset -> frozenset -------------------


def contraction(f, M):
    return all(f[X] <= X for X in powerset(M))


def coherence(f, M):
    return all(X & f[Y] <= f[X] for Y in powerset(M) for X in powerset(Y))


def local_mono(f, M):
    return all(f[X] <= f[Y] for Y in powerset(M) for X in powerset(Y) if f[Y] <= X)


def expansion(f, M):
    return all(f[X] & f[Y] <= f[X | Y] for X in powerset(M) for Y in powerset(M))


def arrow(f, M):
    return all(
        f[X] == X & f[Y] for Y in powerset(M) for X in powerset(Y) if X & f[Y]
    )


def nonempty(f, M):
    return all(f[X] for X in powerset(M) if X)


def dp(f, fr):
    d = fr.definable()
    return all(f[X] in d for X in d)


def hull(f, fr):
    return all(f[X] <= f[fr.mod(fr.th(X))] for X in powerset(fr.models))


def preferential(edges, M):
    """Minimal elements; (x, y) means x beats y."""
    return {X: frozenset(x for x in X if not any((y, x) in edges for y in X)) for X in powerset(M)}


# --- consequence properties: C is a dict frozenset -> frozenset --------------


def inclusion(C, L):
    return all(A <= C[A] for A in powerset(L))


def idempotence(C, L):
    return all(C[C[A]] == C[A] for A in powerset(L))


def cautious(C, L):
    return all(C[A] <= C[B] for A in powerset(L) for B in powerset(C[A]) if A <= B)


def conditional(C, L):
    return all(C[B] <= C[A] for A in powerset(L) for B in powerset(C[A]) if A <= B)


def threshold(C, L):
    subs = powerset(L)
    return all(
        C[X] <= C[Y] for A in subs for Y in subs for X in subs if C[A] <= X <= Y
    )


def cumulativity(C, L):
    return all(C[A] == C[B] for A in powerset(L) for B in powerset(C[A]) if A <= B)


def cap(C, L, A):
    out = frozenset(L)
    for F in powerset(L):
        if A <= F:
            out &= C[F]
    return out


def prop_e(C, L):
    subs = powerset(L)
    caps = {A: cap(C, L, A) for A in subs}
    return all(C[caps[A] & caps[B]] <= C[C[A] | C[B]] for A in subs for B in subs)


def distributivity(C, L, fr):
    subs = powerset(L)
    return all(
        C[A] & C[B] <= C[fr.th(fr.mod(A)) & fr.th(fr.mod(B))] for A in subs for B in subs
    )


def derived(fr, f):
    return {A: fr.th(f[fr.mod(A)]) for A in powerset(fr.formulas)}


def is_strict_partial_order(edges, elems):
    if any((x, x) in edges for x in elems):
        return False
    return all((x, z) in edges for (x, y) in edges for (y2, z) in edges if y == y2)
