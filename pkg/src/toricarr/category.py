"""Acyclic categories, their nerves, and integral homology.

An acyclic category generalizes a poset: parallel morphisms are allowed,
but only identities are invertible and the only endomorphisms are the
identities.  The nerve collects chains of composable nonidentity
morphisms; because every category built here is graded (nonidentity
morphisms strictly raise the grade), the nerve has no degeneracies and a
hard dimension cap.
"""

from .errors import InternalError
from .exact import IntMatrix, snf


class AcyclicCategory:
    """Objects with an integer grade, morphisms, and a composition table.

    `morphisms[i]` is the pair (source, target).  Identities are explicit
    morphisms listed in `identities` (one per object, in object order).
    The table maps (second, first) to the composite for composable pairs
    of nonidentity morphisms; identity composition is implicit.
    """

    def __init__(self, grades, morphisms, identities, table, labels=None):
        self.grades = list(grades)
        self.morphisms = [tuple(m) for m in morphisms]
        self.identities = list(identities)
        self.table = dict(table)
        self.labels = labels if labels is not None else list(range(len(grades)))
        self._identity_set = set(self.identities)

    @property
    def n_objects(self):
        return len(self.grades)

    def is_identity(self, mid):
        return mid in self._identity_set

    def source(self, mid):
        return self.morphisms[mid][0]

    def target(self, mid):
        return self.morphisms[mid][1]

    def nonidentity(self):
        return [m for m in range(len(self.morphisms)) if m not in self._identity_set]

    def compose(self, m2, m1):
        """Composite m2 after m1; requires target(m1) == source(m2)."""
        if self.target(m1) != self.source(m2):
            raise InternalError("morphisms are not composable")
        if self.is_identity(m1):
            return m2
        if self.is_identity(m2):
            return m1
        try:
            return self.table[(m2, m1)]
        except KeyError:
            raise InternalError("missing composite for pair (%d, %d)" % (m2, m1)) from None


def check_acyclic(cat):
    """Verify the acyclicity axioms plus composition closure/associativity.

    Returns (ok, diagnostics); failures are reported, never raised.
    """
    diags = []
    n = cat.n_objects
    if len(cat.identities) != n:
        diags.append("expected one identity per object")
    else:
        for o, mid in enumerate(cat.identities):
            if cat.morphisms[mid] != (o, o):
                diags.append("identity of object %d has wrong endpoints" % o)
    for mid in cat.nonidentity():
        s, t = cat.morphisms[mid]
        if s == t:
            diags.append("nonidentity endomorphism %d at object %d" % (mid, s))
    # opposite nonidentity morphisms would compose to endomorphisms and
    # hence to inverses; reject the pattern outright
    directed = {}
    for mid in cat.nonidentity():
        s, t = cat.morphisms[mid]
        directed.setdefault((s, t), []).append(mid)
    for (s, t) in directed:
        if s != t and (t, s) in directed:
            diags.append("morphisms in both directions between %d and %d" % (s, t))
    nonid = cat.nonidentity()
    by_source = {}
    for mid in nonid:
        by_source.setdefault(cat.source(mid), []).append(mid)
    composites = {}
    for m1 in nonid:
        for m2 in by_source.get(cat.target(m1), ()):
            if (m2, m1) not in cat.table:
                diags.append("missing composite (%d, %d)" % (m2, m1))
                continue
            c = cat.table[(m2, m1)]
            if cat.morphisms[c] != (cat.source(m1), cat.target(m2)):
                diags.append("composite (%d, %d) has wrong endpoints" % (m2, m1))
            composites[(m2, m1)] = c
    for (m2, m1), c in composites.items():
        for m3 in by_source.get(cat.target(m2), ()):
            left = composites.get((m3, m2))
            if left is None:
                continue
            lhs = composites.get((m3, c))
            rhs = composites.get((left, m1))
            if lhs is None or rhs is None or lhs != rhs:
                diags.append("associativity fails on (%d, %d, %d)" % (m1, m2, m3))
    return (not diags, diags)


def nerve_chains(cat, max_dim):
    """Chains of composable nonidentity morphisms, degree by degree.

    Degree 0 lists object ids; degree k lists k-tuples of morphism ids.
    Order is deterministic: chains extend in ascending morphism id.
    """
    degrees = [list(range(cat.n_objects))]
    nonid = sorted(cat.nonidentity())
    by_source = {}
    for mid in nonid:
        by_source.setdefault(cat.source(mid), []).append(mid)
    current = [(m,) for m in nonid]
    k = 1
    while k <= max_dim and current:
        degrees.append(current)
        nxt = []
        for chain in current:
            for m in by_source.get(cat.target(chain[-1]), ()):
                nxt.append(chain + (m,))
        current = nxt
        k += 1
    return degrees


class ChainComplex:
    """Integral chain complex: boundary[k] maps degree k to degree k-1."""

    def __init__(self, counts, boundaries):
        self.counts = list(counts)
        self.boundaries = list(boundaries)  # index k-1 holds d_k, k >= 1

    def boundary(self, k):
        if 1 <= k <= len(self.boundaries):
            return self.boundaries[k - 1]
        rows = self.counts[k - 1] if 0 <= k - 1 < len(self.counts) else 0
        cols = self.counts[k] if 0 <= k < len(self.counts) else 0
        return IntMatrix.zero(rows, cols)

    @property
    def top_degree(self):
        return len(self.counts) - 1


def boundary_matrices(chains, cat):
    """Simplicial-style boundary of the nerve: drop or compose morphisms.

    d(m1, ..., mk) alternates over dropping the first morphism, composing
    each inner pair, and dropping the last.  All faces stay nondegenerate
    because grades are strictly monotone along chains.
    """
    index = [{c: i for i, c in enumerate(deg)} for deg in chains]
    boundaries = []
    for k in range(1, len(chains)):
        rows = len(chains[k - 1])
        cols = len(chains[k])
        entries = [0] * (rows * cols)
        for col, chain in enumerate(chains[k]):
            if k == 1:
                m = chain[0]
                entries[cat.target(m) * cols + col] += 1
                entries[cat.source(m) * cols + col] -= 1
                continue
            for j in range(k + 1):
                if j == 0:
                    face = chain[1:]
                elif j == k:
                    face = chain[:-1]
                else:
                    comp = cat.compose(chain[j], chain[j - 1])
                    face = chain[:j - 1] + (comp,) + chain[j + 1:]
                row = index[k - 1][face]
                entries[row * cols + col] += 1 if j % 2 == 0 else -1
        boundaries.append(IntMatrix(rows, cols, entries))
    return ChainComplex([len(d) for d in chains], boundaries)


def homology(cc):
    """Integral homology of the complex: per degree (betti, torsion list)."""
    top = cc.top_degree
    factors = {}
    for k in range(1, top + 2):
        b = cc.boundary(k)
        if b.rows == 0 or b.cols == 0:
            factors[k] = []
        else:
            _, f = snf(b)
            factors[k] = f
    out = []
    for k in range(top + 1):
        nk = cc.counts[k]
        rank_k = len(factors.get(k, []))
        rank_k1 = len(factors.get(k + 1, []))
        betti = nk - rank_k - rank_k1
        torsion = [d for d in factors.get(k + 1, []) if d > 1]
        out.append((betti, torsion))
    return out


def euler_characteristic(chains):
    return sum((-1) ** k * len(deg) for k, deg in enumerate(chains))


def verify_dd_zero(cc):
    """True when consecutive boundaries compose to zero, degree by degree."""
    from .exact import mat_mul
    for k in range(2, cc.top_degree + 1):
        a = cc.boundary(k - 1)
        b = cc.boundary(k)
        if a.cols == 0 or b.cols == 0:
            continue
        prod = mat_mul(a, b)
        if any(prod.entries):
            return False
    return True
