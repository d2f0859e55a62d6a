"""Salvetti poset of the lift and its quotient category on the torus.

Elements of the affine Salvetti poset are pairs [F, C] of a face and an
adjacent chamber; [F1,C1] <= [F2,C2] when F2 <= F1 and the two chambers
agree on every hyperplane through the span of F1.  The quotient by the
translation lattice is an acyclic category whose nerve models the
homotopy type of the arrangement complement; its objects are in
bijection with the cells of a (generally non-regular) CW structure,
graded by the codimension of F.
"""

from .errors import WindowError, InternalError
from .category import AcyclicCategory, nerve_chains
from .cells import _floor_vec, _shifted

__all__ = [
    "SalvettiPoset", "SalvettiCategory", "salvetti_poset", "toric_salvetti",
    "is_thick", "cw_census", "orbit_chain_counts",
]


class SalvettiPoset:
    """Pairs [F, C] over the windowed lift, restricted to faces whose
    closed star the window fully contains."""

    def __init__(self, lifted, elements):
        self.lifted = lifted
        self.elements = elements        # list of (fid, cid)
        self.index = {e: i for i, e in enumerate(elements)}

    def grade(self, i):
        fid, _ = self.elements[i]
        return self.lifted.dim - self.lifted.faces[fid].dim

    def leq(self, i, j):
        """Element i bounds element j in the unsubdivided complex."""
        f1, c1 = self.elements[i]
        f2, c2 = self.elements[j]
        if not self.lifted.leq(f2, f1):
            return False
        sig1 = self.lifted.faces[c1].sign_vector
        sig2 = self.lifted.faces[c2].sign_vector
        return all(sig1[h] == sig2[h] for h in self.lifted.zero_set(f1))

    def relation_pairs(self):
        """All strict order pairs (i, j), grade-increasing."""
        n_el = len(self.elements)
        grades = [self.grade(i) for i in range(n_el)]
        pairs = []
        for i in range(n_el):
            for j in range(n_el):
                if grades[i] < grades[j] and self.leq(i, j):
                    pairs.append((i, j))
        return pairs

    def as_category(self):
        n_el = len(self.elements)
        grades = [self.grade(i) for i in range(n_el)]
        morphs = []
        identities = []
        for i in range(n_el):
            identities.append(len(morphs))
            morphs.append((i, i))
        strict = {}
        for (i, j) in self.relation_pairs():
            strict[(i, j)] = len(morphs)
            morphs.append((i, j))
        table = {}
        by_src = {}
        for (i, j), mid in strict.items():
            by_src.setdefault(i, []).append((j, mid))
        for (i, j), m1 in strict.items():
            for (k, m2) in by_src.get(j, ()):
                comp = strict.get((i, k))
                if comp is None:
                    raise InternalError("Salvetti order is not transitive")
                table[(m2, m1)] = comp
        return AcyclicCategory(grades, morphs, identities, table,
                               labels=list(self.elements))


def salvetti_poset(lifted, truncated=True):
    """Pairs [F, C] of the lift.

    With `truncated` set (the default), only faces whose closed star the
    window fully contains are used: the lift is a finite snapshot of a
    periodic arrangement and boundary faces carry incomplete data.  Pass
    `truncated=False` when the hyperplane list is a complete affine
    arrangement; every sign class is then an honest face, unbounded ones
    included.
    """
    elements = []
    for f in lifted.faces:
        if truncated and not lifted.star_ok(f.id):
            continue
        for cid in lifted.chambers_above(f.id):
            elements.append((f.id, cid))
    elements.sort()
    return SalvettiPoset(lifted, elements)


class SalvettiObject:
    __slots__ = ("index", "fid", "cid", "codim")

    def __init__(self, index, fid, cid, codim):
        self.index = index
        self.fid = fid                  # canonical face representative
        self.cid = cid                  # chamber adjacent to it
        self.codim = codim

    def __repr__(self):
        return "SalvettiObject(%d, [%d,%d], codim=%d)" % (
            self.index, self.fid, self.cid, self.codim)


class SalvettiMorphism:
    __slots__ = ("mid", "src", "tgt", "shift", "rep")

    def __init__(self, mid, src, tgt, shift, rep):
        self.mid = mid
        self.src = src
        self.tgt = tgt
        self.shift = shift
        self.rep = rep                  # (fid1, cid1, fid2, cid2), source side canonical

    @property
    def is_identity(self):
        return self.rep[0] == self.rep[2] and self.rep[1] == self.rep[3]


class SalvettiCategory:
    """The quotient of the lifted Salvetti poset by the translation lattice."""

    def __init__(self, lifted, fc, objects, obj_index, morphisms, by_rep, table):
        self.lifted = lifted
        self.face_category = fc
        self.objects = objects
        self.obj_index = obj_index      # canonical pair (fid, cid) -> object index
        self.morphisms = morphisms
        self.by_rep = by_rep            # rep tuple -> morphism id
        self.table = table

    def object_of_pair(self, fid, cid):
        """Object index and shift for an arbitrary in-window pair [F, C]."""
        orbit, u = self.face_category.orbit_of[fid]
        cf = self.face_category.orbits[orbit].canonical_fid
        if any(u):
            cc = self.lifted.locate(_shifted(self.lifted.faces[cid].barycenter, u, -1))
        else:
            cc = cid
        try:
            return self.obj_index[(cf, cc)], u
        except KeyError:
            raise InternalError("pair (%d, %d) has no canonical object" % (fid, cid)) from None

    def census(self):
        counts = {}
        for o in self.objects:
            counts[o.codim] = counts.get(o.codim, 0) + 1
        return [counts.get(c, 0) for c in range(self.lifted.dim + 1)]

    def as_category(self):
        grades = [o.codim for o in self.objects]
        identities = [None] * len(self.objects)
        morphs = []
        for m in self.morphisms:
            morphs.append((m.src, m.tgt))
            if m.is_identity:
                identities[m.src] = m.mid
        if any(i is None for i in identities):
            raise InternalError("missing identity morphism")
        return AcyclicCategory(grades, morphs, identities, self.table,
                               labels=[(o.fid, o.cid) for o in self.objects])


def toric_salvetti(lifted, fc):
    """Quotient Salvetti category; objects are orbits of pairs [F, C].

    Morphism orbits are canonicalized on their source side: the source
    pair uses the canonical face, the target pair is whatever translate
    the relation reaches, recorded together with its shift.
    """
    if not lifted.window.covers_quotient_core():
        raise WindowError("window must contain [-1,2]^n", suggestion=1)
    faces = lifted.faces
    n = lifted.dim
    objects = []
    obj_index = {}
    for orbit in fc.orbits:
        cf = orbit.canonical_fid
        for cid in lifted.chambers_above(cf):
            idx = len(objects)
            objects.append(SalvettiObject(idx, cf, cid, n - faces[cf].dim))
            obj_index[(cf, cid)] = idx

    cat = SalvettiCategory(lifted, fc, objects, obj_index, [], {}, {})
    morphisms = cat.morphisms
    by_rep = cat.by_rep

    def add_morphism(src, tgt, shift, rep):
        mid = len(morphisms)
        morphisms.append(SalvettiMorphism(mid, src, tgt, shift, rep))
        by_rep[rep] = mid
        return mid

    for obj in objects:
        f1, c1 = obj.fid, obj.cid
        add_morphism(obj.index, obj.index, (0,) * n, (f1, c1, f1, c1))
        sig1 = faces[c1].sign_vector
        zero1 = lifted.zero_set(f1)
        for f2 in sorted(lifted.lowers[f1]):
            # a lower face inside the box boundary has invisible chambers
            if not lifted.window.contains(faces[f2].barycenter, strict=True):
                raise WindowError(
                    "face %d below canonical face %d lies in the window boundary"
                    % (f2, f1), suggestion=lifted.window_suggestion())
            for c2 in lifted.chambers_above(f2):
                sig2 = faces[c2].sign_vector
                if all(sig1[h] == sig2[h] for h in zero1):
                    tgt, shift = cat.object_of_pair(f2, c2)
                    add_morphism(obj.index, tgt, shift, (f1, c1, f2, c2))

    # composition: lift the second factor along the first factor's shift
    nonid = [m for m in morphisms if not m.is_identity]
    by_src = {}
    for m in nonid:
        by_src.setdefault(m.src, []).append(m)
    table = cat.table
    for m1 in nonid:
        u = m1.shift
        for m2 in by_src.get(m1.tgt, ()):
            _, _, f3, c3 = m2.rep
            if any(u):
                f3 = lifted.locate(_shifted(faces[f3].barycenter, u))
                c3 = lifted.locate(_shifted(faces[c3].barycenter, u))
            comp = by_rep.get((m1.rep[0], m1.rep[1], f3, c3))
            if comp is None:
                raise InternalError("Salvetti composition fell outside the star")
            table[(m2.mid, m1.mid)] = comp
    return cat


def is_thick(fc):
    """A face category is thick when it is a poset: no parallel morphisms."""
    return all(c <= 1 for c in fc.morphism_multiplicities().values())


def cw_census(zcat):
    """Cell counts of the canonical CW structure, by codimension, with its
    Euler characteristic."""
    counts = zcat.census()
    chi = sum((-1) ** c * k for c, k in enumerate(counts))
    return counts, chi


def orbit_chain_counts(lifted, max_dim):
    """Per-degree counts of translation orbits of nerve chains of the
    lifted Salvetti poset, canonicalized at the chain's source element.

    Elements range over pairs whose face is an honest face of the
    periodic arrangement (boundary-cut chamber classes are fine: their
    windowed sign data is exact).  Used to confirm that taking nerves
    commutes with the quotient.
    """
    faces = lifted.faces
    elements = []
    for f in faces:
        if f.boundary_cut:
            continue
        for cid in lifted.chambers_above(f.id):
            elements.append((f.id, cid))
    elements.sort()
    sal = SalvettiPoset(lifted, elements)
    cat = sal.as_category()
    chains = nerve_chains(cat, max_dim)

    memo = {}

    def canonical_obj(i, u):
        got = memo.get((i, u))
        if got is None:
            fid, cid = sal.elements[i]
            if not any(u):
                got = (fid, cid)
            else:
                got = (lifted.locate(_shifted(faces[fid].barycenter, u, -1)),
                       lifted.locate(_shifted(faces[cid].barycenter, u, -1)))
            memo[(i, u)] = got
        return got

    counts = []
    seen0 = set()
    for i in range(len(sal.elements)):
        fid, _ = sal.elements[i]
        u = _floor_vec(faces[fid].barycenter)
        seen0.add(canonical_obj(i, u))
    counts.append(len(seen0))
    for k in range(1, len(chains)):
        seen = set()
        for chain in chains[k]:
            first = cat.source(chain[0])
            fid, _ = sal.elements[first]
            u = _floor_vec(faces[fid].barycenter)
            key = [canonical_obj(cat.source(m), u) for m in chain]
            key.append(canonical_obj(cat.target(chain[-1]), u))
            seen.add(tuple(key))
        counts.append(len(seen))
    return counts
