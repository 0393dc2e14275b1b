"""Indexed finite groups: a full Cayley table plus subgroup machinery.

Subgroups are numpy index arrays into the parent's element list.  On top of
the table sit the closure, normalizer, derived-series and conjugacy-
canonicalization primitives, the cyclic-extension enumeration of all
solvable subgroups up to conjugacy, and a slow brute-force subgroup
enumeration used as an independent oracle at tiny sizes.
"""

import numpy as np

from .errors import TooLarge
from .field import is_prime


class CayleyTable:
    """Multiplication table of a finite group on element indices 0..N-1."""

    __slots__ = ("table", "inv", "identity", "n")

    def __init__(self, table, inv, identity):
        self.table = table
        self.inv = inv
        self.identity = int(identity)
        self.n = table.shape[0]

    # -- construction ------------------------------------------------------

    @classmethod
    def from_matrix_group(cls, G):
        els = G.enumerate()
        N = len(els)
        n = G.dim
        dtype = np.int16 if N < 32767 else np.int32
        table = np.empty((N, N), dtype=dtype)
        if G.field.k == 1 and G.field.p ** (n * n) < 2 ** 62:
            p = G.field.p
            stack = np.stack([m.a for m in els]).astype(np.int64)
            powers = p ** np.arange(n * n, dtype=np.int64)
            codes = stack.reshape(N, -1) @ powers
            code_index = {int(c): i for i, c in enumerate(codes)}
            for i in range(N):
                prods = (stack[i] @ stack) % p
                pc = prods.reshape(N, -1) @ powers
                table[i] = [code_index[int(c)] for c in pc]
        else:
            index = {m: i for i, m in enumerate(els)}
            for i, a in enumerate(els):
                table[i] = [index[a @ b] for b in els]
        e = G.index_of(G.identity)
        inv = np.empty(N, dtype=dtype)
        for i in range(N):
            inv[i] = int(np.flatnonzero(table[i] == e)[0])
        return cls(table, inv, e)

    @classmethod
    def from_perm_group(cls, P):
        els = P.enumerate()
        N = len(els)
        n = P.degree
        arr = np.array(els, dtype=np.int64)
        powers = np.int64(n) ** np.arange(n, dtype=np.int64)
        codes = arr @ powers
        lut = np.full(n ** n, -1, dtype=np.int32)
        lut[codes] = np.arange(N)
        dtype = np.int16 if N < 32767 else np.int32
        table = np.empty((N, N), dtype=dtype)
        for i in range(N):
            composed = arr[i][arr]  # (p_i * q_j)(x) = p_i[q_j[x]]
            table[i] = lut[composed @ powers]
        e = int(lut[np.arange(n, dtype=np.int64) @ powers])
        inv = np.empty(N, dtype=dtype)
        for i in range(N):
            inv[i] = int(np.flatnonzero(table[i] == e)[0])
        return cls(table, inv, e)

    # -- basic subgroup operations -------------------------------------------

    def closure(self, seeds):
        """Sorted index array of the subgroup generated by the seeds."""
        seen = np.zeros(self.n, dtype=bool)
        seen[self.identity] = True
        gens = sorted({int(s) for s in seeds})
        frontier = [self.identity]
        while frontier:
            prods = self.table[np.ix_(gens, frontier)].ravel() \
                if gens else np.empty(0, dtype=int)
            fresh = np.unique(prods)
            fresh = fresh[~seen[fresh]]
            seen[fresh] = True
            frontier = fresh.tolist()
        return np.flatnonzero(seen)

    def subgroup_generators(self, H):
        """Greedy small generating set for a subgroup index array."""
        gens = []
        span = np.zeros(self.n, dtype=bool)
        span[self.identity] = True
        for x in np.sort(np.asarray(H)):
            if not span[x]:
                gens.append(int(x))
                span[:] = False
                span[self.closure(gens)] = True
                if span.sum() == len(H):
                    break
        return gens

    def element_order(self, x):
        m = 1
        y = int(x)
        while y != self.identity:
            y = int(self.table[y, x])
            m += 1
        return m

    def conjugate_rows(self, H):
        """(N, |H|) array: row g is the set gHg^-1, entries sorted."""
        Hs = np.sort(np.asarray(H))
        M = self.table[self.table[:, Hs], self.inv[:, None]]
        # table[g, h] then times inv[g] on the right: careful with order
        return np.sort(M, axis=1)

    def normalizer_mask(self, H):
        Hs = np.sort(np.asarray(H))
        M = self.conjugate_rows(Hs)
        return (M == Hs[None, :]).all(axis=1)

    def canonical_key(self, H):
        """Bytes key of the lexicographically least conjugate of H."""
        M = self.conjugate_rows(H)
        order = np.lexsort(M.T[::-1])
        return M[order[0]].astype(np.int32).tobytes()

    def conjugate_set(self, H, g):
        rows = self.table[self.table[g, np.asarray(H)], int(self.inv[g])]
        return np.sort(rows)

    def contained_up_to_conjugacy(self, K, K2):
        """True iff some conjugate of K is a subset of K2."""
        mask2 = np.zeros(self.n, dtype=bool)
        mask2[np.asarray(K2)] = True
        M = self.conjugate_rows(K)
        return bool(mask2[M].all(axis=1).any())

    # -- solvability on index sets ----------------------------------------------

    def derived_series_sets(self, H):
        series = [np.sort(np.asarray(H))]
        gens = self.subgroup_generators(series[0])
        while len(series[-1]) > 1:
            seeds = set()
            for i, a in enumerate(gens):
                for b in gens[i + 1:]:
                    c = self.table[self.inv[a],
                                   self.table[self.inv[b], self.table[a, b]]]
                    if int(c) != self.identity:
                        seeds.add(int(c))
            if not seeds:
                series.append(np.array([self.identity]))
                break
            conj_by = gens + [int(self.inv[g]) for g in gens]
            closed = set(seeds)
            frontier = list(seeds)
            while frontier:
                nxt = []
                for s in frontier:
                    for g in conj_by:
                        t = int(self.table[self.table[g, s], self.inv[g]])
                        if t not in closed:
                            closed.add(t)
                            nxt.append(t)
                frontier = nxt
            D = self.closure(sorted(closed))
            if len(D) == len(series[-1]):
                break
            series.append(D)
            gens = self.subgroup_generators(D)
        return series

    def is_solvable_set(self, H):
        return len(self.derived_series_sets(H)[-1]) == 1

    # -- subgroup enumeration ------------------------------------------------------

    def solvable_subgroup_classes(self):
        """All conjugacy classes of solvable subgroups, by the cyclic
        extension method: grow each known class by elements of prime order
        modulo the subgroup inside its normalizer, deduplicating by the
        canonical conjugate.  Deterministic; returns sorted index arrays,
        ordered by (order, canonical key)."""
        e = self.identity
        trivial = np.array([e])
        classes = {self.canonical_key(trivial): trivial}
        frontier = [trivial]
        while frontier:
            fresh = []
            for H in frontier:
                mask = np.zeros(self.n, dtype=bool)
                mask[H] = True
                norm = np.flatnonzero(self.normalizer_mask(H))
                for x in norm:
                    if mask[x]:
                        continue
                    m = 1
                    y = int(x)
                    while not mask[y]:
                        y = int(self.table[y, x])
                        m += 1
                    if not is_prime(m):
                        continue
                    powers = [e]
                    y = int(x)
                    for _ in range(m - 1):
                        powers.append(y)
                        y = int(self.table[y, x])
                    K = np.unique(self.table[np.ix_(powers, H)])
                    key = self.canonical_key(K)
                    if key not in classes:
                        classes[key] = K
                        fresh.append(K)
            frontier = fresh
        return sorted(classes.values(), key=lambda a: (len(a), a.tobytes()))

    def all_subgroup_classes(self, limit=300):
        """Brute-force enumeration of every subgroup class: close each known
        class representative with each group element until stable.  Only for
        tiny groups; serves as the independent oracle."""
        if self.n > limit:
            raise TooLarge(f"brute-force subgroup sweep over {self.n} "
                           f"elements exceeds limit {limit}")
        classes = {}
        frontier = []
        for x in range(self.n):
            K = self.closure([x])
            key = self.canonical_key(K)
            if key not in classes:
                classes[key] = K
                frontier.append(K)
        while frontier:
            fresh = []
            for H in frontier:
                mask = np.zeros(self.n, dtype=bool)
                mask[H] = True
                for x in range(self.n):
                    if mask[x]:
                        continue
                    K = self.closure(list(H) + [x])
                    key = self.canonical_key(K)
                    if key not in classes:
                        classes[key] = K
                        fresh.append(K)
            frontier = fresh
        return sorted(classes.values(), key=lambda a: (len(a), a.tobytes()))
