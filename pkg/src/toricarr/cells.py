"""Faces of the windowed lift and the face category of the torus.

Faces are the sign classes of the finite hyperplane list inside the
window box.  A face is stored with its exact sign vector, affine span,
and barycenter (vertex average of its clipped closure).  Faces whose
closure is entirely inside the closed box are honest faces of the
periodic arrangement; the rest are flagged `boundary_cut` and never
serve as orbit representatives.

The quotient by the integer translation lattice produces the face
category: objects are face orbits keyed by the unique translate with
barycenter in [0,1)^n, morphisms are orbits of incidences.
"""

from fractions import Fraction
from itertools import combinations
import math

from .errors import SpecError, WindowError, InternalError
from .exact import IntMatrix, rank, solve_affine, kernel_basis, saturation_basis, hnf
from .category import AcyclicCategory

Q = Fraction


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def conforms(lower, upper):
    """Face order on sign vectors: lower lies in the closure of upper."""
    return all(a == 0 or a == b for a, b in zip(lower, upper))


class AffineFace:
    """One cell of the windowed decomposition."""

    __slots__ = ("id", "sign_vector", "dim", "barycenter", "flat_id",
                 "boundary_cut", "vertex_ids")

    def __init__(self, fid, sign_vector, dim, barycenter, flat_id,
                 boundary_cut, vertex_ids):
        self.id = fid
        self.sign_vector = sign_vector
        self.dim = dim
        self.barycenter = barycenter
        self.flat_id = flat_id
        self.boundary_cut = boundary_cut
        self.vertex_ids = vertex_ids

    def __repr__(self):
        return "AffineFace(id=%d, dim=%d, bary=%s%s)" % (
            self.id, self.dim, tuple(map(str, self.barycenter)),
            ", cut" if self.boundary_cut else "")


def _fm_feasible(rows, nvars):
    """Exact Fourier-Motzkin feasibility for rows (coeffs, rhs, strict).

    Each row states coeffs . t >= rhs (strict: >).  Returns True when a
    rational solution exists.
    """

    def prune(rws):
        kept = {}
        for a, b, s in rws:
            if all(x == 0 for x in a):
                if b > 0 or (s and b == 0):
                    return None
                continue
            scale = next(abs(x) for x in a if x != 0)
            key = (tuple(x / scale for x in a), b / scale)
            kept[key] = kept.get(key, False) or s
        return [(a, b, s) for (a, b), s in kept.items()]

    rows = prune(rows)
    if rows is None:
        return False
    for var in range(nvars):
        pos, neg, rest = [], [], []
        for a, b, s in rows:
            if a[var] > 0:
                pos.append((a, b, s))
            elif a[var] < 0:
                neg.append((a, b, s))
            else:
                rest.append((a, b, s))
        new = rest
        for ap, bp, sp in pos:
            for an, bn, sn in neg:
                cp, cn = ap[var], -an[var]
                a2 = tuple(cn * x + cp * y for x, y in zip(ap, an))
                new.append((a2, cn * bp + cp * bn, sp or sn))
        rows = prune(new)
        if rows is None:
            return False
    return True


class LiftedFacePoset:
    """All faces of the windowed lift with their incidence structure."""

    def __init__(self, hyperplanes, window, faces, flats, by_signs,
                 uppers, geo_class, class_rep):
        self.hyperplanes = hyperplanes
        self.window = window
        self.faces = faces
        self.flats = flats              # (zero frozenset, point, basis)
        self.by_signs = by_signs
        self.uppers = uppers            # fid -> sorted tuple of fids (strict)
        self.geo_class = geo_class      # hyperplane idx -> geometric class id
        self.class_rep = class_rep      # class id -> smallest hyperplane idx
        self.chamber_ids = tuple(f.id for f in faces if f.dim == window.dim)
        self.lowers = {f.id: [] for f in faces}
        for fid, ups in uppers.items():
            for g in ups:
                self.lowers[g].append(fid)
        for fid in self.lowers:
            self.lowers[fid] = tuple(sorted(self.lowers[fid]))
        self._star_ok = {}

    @property
    def dim(self):
        return self.window.dim

    def zero_set(self, fid):
        return self.flats[self.faces[fid].flat_id][0]

    def flat_of(self, fid):
        _, point, basis = self.flats[self.faces[fid].flat_id]
        return point, basis

    def leq(self, f1, f2):
        """True when face f1 lies in the closure of face f2."""
        return conforms(self.faces[f1].sign_vector, self.faces[f2].sign_vector)

    def covering_relations(self):
        rels = []
        for fid, ups in sorted(self.uppers.items()):
            d = self.faces[fid].dim
            rels.extend((fid, g) for g in ups if self.faces[g].dim == d + 1)
        return rels

    def window_suggestion(self):
        k = max([1] + [math.ceil(-lo) for lo in self.window.lo]
                + [math.ceil(hi - 1) for hi in self.window.hi])
        return k + 1

    def locate(self, point):
        """Face containing an exact point, via its sign vector."""
        if not self.window.contains(point):
            raise WindowError("point %s escapes the window" % (tuple(map(str, point)),),
                              suggestion=self.window_suggestion())
        sig = tuple(_sign(h.value(point)) for h in self.hyperplanes)
        fid = self.by_signs.get(sig)
        if fid is None:
            raise WindowError("no face enumerated at %s" % (tuple(map(str, point)),),
                              suggestion=self.window_suggestion())
        return fid

    def star_ok(self, fid):
        """Closed star of the face lies inside the window box.

        Faces contained in the box boundary are rejected outright: parts
        of their true star never intersect the window, so its visible
        portion proves nothing.
        """
        cached = self._star_ok.get(fid)
        if cached is None:
            f = self.faces[fid]
            cached = (not f.boundary_cut and
                      self.window.contains(f.barycenter, strict=True) and
                      all(not self.faces[g].boundary_cut for g in self.uppers[fid]))
            self._star_ok[fid] = cached
        return cached

    def chambers_above(self, fid):
        n = self.dim
        if self.faces[fid].dim == n:
            return (fid,)
        return tuple(g for g in self.uppers[fid] if self.faces[g].dim == n)


def _sign(x):
    return (x > 0) - (x < 0)


def enumerate_faces(hyperplanes, window):
    """Stratify the window by the hyperplane list.

    Emits every sign class meeting the closed box.  Flats are found by
    closing the hyperplane set under intersection; faces on a flat are
    found by a depth-first sweep over feasible strict sign assignments,
    certified by exact vertex averages of the clipped regions.
    """
    n = window.dim
    m = len(hyperplanes)
    if m == 0 or rank(IntMatrix.from_rows([h.alpha for h in hyperplanes])) < n:
        raise SpecError("hyperplane normals must span the ambient space")

    geo_class = {}
    class_rep = []
    seen_geo = {}
    for i, h in enumerate(hyperplanes):
        key = h.geometric_key()
        if key not in seen_geo:
            seen_geo[key] = len(class_rep)
            class_rep.append(i)
        geo_class[i] = seen_geo[key]

    planes = [(tuple(Q(a) for a in h.alpha), h.c) for h in hyperplanes]
    for j in range(n):
        e = tuple(Q(int(i == j)) for i in range(n))
        planes.append((e, window.lo[j]))
        planes.append((e, window.hi[j]))

    # candidate points: all vertex-like intersections inside the box
    pts = set()
    for combo in combinations(range(len(planes)), n):
        sol = solve_affine([planes[i][0] for i in combo],
                           [planes[i][1] for i in combo])
        if sol is not None and not sol[1]:
            if window.contains(sol[0]):
                pts.add(sol[0])
    cand = sorted(pts)
    if not cand:
        raise InternalError("window contains no arrangement vertices")
    vals = [tuple(h.value(p) for h in hyperplanes) for p in cand]

    # flats: closure of the hyperplane list under intersection, inside box
    flats = []
    flat_index = {}

    def containing_set(point, basis):
        out = set()
        for i, h in enumerate(hyperplanes):
            if h.value(point) == 0 and all(_dot(h.alpha, b) == 0 for b in basis):
                out.add(i)
        return frozenset(out)

    def flat_cands(zero):
        return [ci for ci in range(len(cand))
                if all(vals[ci][i] == 0 for i in zero)]

    origin = tuple(Q(0) for _ in range(n))
    ident = tuple(kernel_basis([], n))
    flats.append((frozenset(), origin, ident))
    flat_index[frozenset()] = 0
    head = 0
    while head < len(flats):
        zero, point, basis = flats[head]
        head += 1
        if len(basis) == 0:
            continue
        for hidx in range(m):
            if hidx in zero:
                continue
            h = hyperplanes[hidx]
            if all(_dot(h.alpha, b) == 0 for b in basis):
                continue  # parallel to the flat
            rows = [hyperplanes[i].alpha for i in sorted(zero)] + [h.alpha]
            rhs = [hyperplanes[i].c for i in sorted(zero)] + [h.c]
            sol = solve_affine(rows, rhs)
            if sol is None:
                continue
            p2, b2 = sol
            zero2 = containing_set(p2, b2)
            if zero2 in flat_index:
                continue
            if not flat_cands(zero2):
                continue  # misses the box entirely
            flat_index[zero2] = len(flats)
            flats.append((zero2, p2, tuple(b2)))

    # faces per flat: DFS over strict sign assignments
    raw = []
    for flat_id, (zero, point, basis) in enumerate(flats):
        cands0 = flat_cands(zero)
        if not cands0:
            continue
        others = [i for i in range(m) if i not in zero]
        d = len(basis)

        def averaged(cis):
            k = len(cis)
            return tuple(sum(cand[ci][j] for ci in cis) / k for j in range(n))

        def strict_ok(z, assigned):
            for hidx, s in assigned:
                if _sign(hyperplanes[hidx].value(z)) != s:
                    return False
            return True

        stack = [(0, cands0, averaged(cands0), [])]
        while stack:
            depth, cs, witness, assigned = stack.pop()
            if depth == len(others):
                bary = averaged(cs)
                if not strict_ok(bary, assigned):
                    raise InternalError("barycenter escaped its own face")
                sig = [0] * m
                for hidx, s in assigned:
                    sig[hidx] = s
                raw.append((tuple(sig), flat_id, d, bary, tuple(cs)))
                continue
            hidx = others[depth]
            wv = hyperplanes[hidx].value(witness)
            for s in (1, -1):
                cs2 = [ci for ci in cs if s * vals[ci][hidx] >= 0]
                if not cs2:
                    continue
                if s * wv > 0:
                    w2 = witness
                else:
                    w2 = averaged(cs2)
                    if _sign(hyperplanes[hidx].value(w2)) != s or \
                            not strict_ok(w2, assigned):
                        continue
                stack.append((depth + 1, cs2, w2, assigned + [(hidx, s)]))

    raw.sort(key=lambda r: (r[2], r[3]))
    faces = []
    by_signs = {}
    for fid, (sig, flat_id, d, bary, verts) in enumerate(raw):
        faces.append(AffineFace(fid, sig, d, bary, flat_id, False, verts))
        by_signs[sig] = fid

    _flag_boundary_cut(faces, flats, hyperplanes, window, cand)

    # closure order: a face's clipped vertices all recur on larger faces,
    # so one shared vertex narrows the candidate uppers
    at_vertex = {}
    for f in faces:
        for ci in f.vertex_ids:
            at_vertex.setdefault(ci, []).append(f.id)
    uppers = {}
    for f in faces:
        cands_up = at_vertex[f.vertex_ids[0]]
        ups = [g for g in cands_up
               if faces[g].dim > f.dim and conforms(f.sign_vector, faces[g].sign_vector)]
        uppers[f.id] = tuple(sorted(ups))

    return LiftedFacePoset(hyperplanes, window, faces, flats, by_signs,
                           uppers, geo_class, class_rep)


def _flag_boundary_cut(faces, flats, hyperplanes, window, cand):
    """Mark faces whose closure pokes outside the closed box."""
    n = window.dim
    on_boundary = [any(x == lo or x == hi
                       for x, lo, hi in zip(p, window.lo, window.hi))
                   for p in cand]
    for f in faces:
        if not any(on_boundary[ci] for ci in f.vertex_ids):
            continue  # clipped closure avoids the boundary entirely
        zero, point, basis = flats[f.flat_id]
        d = len(basis)
        base_rows = []
        for hidx, s in enumerate(f.sign_vector):
            if s == 0:
                continue
            h = hyperplanes[hidx]
            coeffs = tuple(_dot(h.alpha, b) for b in basis)
            if all(c == 0 for c in coeffs):
                continue  # constant on the flat, holds everywhere on it
            base_rows.append((tuple(s * c for c in coeffs),
                              s * (h.c - _dot(h.alpha, point)), False))
        cut = False
        for j in range(n):
            coeffs = tuple(b[j] for b in basis)
            up = base_rows + [(coeffs, window.hi[j] - point[j], True)]
            if _fm_feasible(up, d):
                cut = True
                break
            down = base_rows + [(tuple(-c for c in coeffs),
                                 point[j] - window.lo[j], True)]
            if _fm_feasible(down, d):
                cut = True
                break
        f.boundary_cut = cut


# ---------------------------------------------------------------------------
# quotient by the translation lattice


class FaceOrbit:
    __slots__ = ("index", "canonical_fid", "dim")

    def __init__(self, index, canonical_fid, dim):
        self.index = index
        self.canonical_fid = canonical_fid
        self.dim = dim

    def __repr__(self):
        return "FaceOrbit(%d, fid=%d, dim=%d)" % (self.index, self.canonical_fid, self.dim)


class FaceMorphism:
    __slots__ = ("mid", "src", "tgt", "shift", "lower_fid", "upper_fid")

    def __init__(self, mid, src, tgt, shift, lower_fid, upper_fid):
        self.mid = mid
        self.src = src
        self.tgt = tgt
        self.shift = shift
        self.lower_fid = lower_fid
        self.upper_fid = upper_fid

    @property
    def is_identity(self):
        return self.lower_fid == self.upper_fid


class FaceCategory:
    """Acyclic category of face orbits of the torus decomposition."""

    def __init__(self, lifted, orbits, orbit_of, morphisms, by_rep, table):
        self.lifted = lifted
        self.orbits = orbits
        self.orbit_of = orbit_of        # fid -> (orbit index, shift)
        self.morphisms = morphisms
        self.by_rep = by_rep            # (lower_fid, canonical upper fid) -> mid
        self.table = table

    def census(self):
        counts = {}
        for o in self.orbits:
            counts[o.dim] = counts.get(o.dim, 0) + 1
        return [counts.get(d, 0) for d in range(self.lifted.dim + 1)]

    def as_category(self):
        grades = [o.dim for o in self.orbits]
        identities = [None] * len(self.orbits)
        morphs = []
        for m in self.morphisms:
            morphs.append((m.src, m.tgt))
            if m.is_identity:
                identities[m.tgt] = m.mid
        if any(i is None for i in identities):
            raise InternalError("missing identity morphism")
        return AcyclicCategory(grades, morphs, identities, self.table,
                               labels=[o.canonical_fid for o in self.orbits])

    def morphism_multiplicities(self):
        counts = {}
        for m in self.morphisms:
            if not m.is_identity:
                key = (m.src, m.tgt)
                counts[key] = counts.get(key, 0) + 1
        return counts


def _floor_vec(point):
    return tuple(math.floor(x) for x in point)


def _shifted(point, shift, sign=1):
    return tuple(x + sign * s for x, s in zip(point, shift))


def quotient_faces(lifted):
    """Quotient the windowed lift by integer translations."""
    if not lifted.window.covers_quotient_core():
        raise WindowError("window must contain [-1,2]^n to canonicalize orbits",
                          suggestion=1)
    faces = lifted.faces
    canonical = [f.id for f in faces
                 if not f.boundary_cut and all(0 <= b < 1 for b in f.barycenter)]
    orbit_index = {fid: k for k, fid in enumerate(canonical)}
    orbits = [FaceOrbit(k, fid, faces[fid].dim) for k, fid in enumerate(canonical)]

    orbit_of = {}
    for f in faces:
        if f.boundary_cut:
            continue
        u = _floor_vec(f.barycenter)
        target = _shifted(f.barycenter, u, -1)
        gfid = lifted.locate(target)
        g = faces[gfid]
        if g.boundary_cut:
            raise WindowError("canonical representative of face %d is cut by the window"
                              % f.id, suggestion=lifted.window_suggestion())
        if g.barycenter != target:
            raise InternalError("orbit representative mismatch for face %d" % f.id)
        orbit_of[f.id] = (orbit_index[gfid], u)

    morphisms = []
    by_rep = {}
    for k, gfid in enumerate(canonical):
        for lf in sorted(lifted.lowers[gfid] + (gfid,)):
            if faces[lf].boundary_cut:
                raise InternalError("cut face below an uncut face")
            src, shift = orbit_of[lf]
            mid = len(morphisms)
            morphisms.append(FaceMorphism(mid, src, k, shift, lf, gfid))
            by_rep[(lf, gfid)] = mid

    # composition through lifts: translate the first factor's incidence by
    # the second factor's shift
    table = {}
    nonid = [m for m in morphisms if not m.is_identity]
    by_src = {}
    for m in nonid:
        by_src.setdefault(m.src, []).append(m)
    for m1 in nonid:
        for m2 in by_src.get(m1.tgt, ()):
            lower = m1.lower_fid
            if any(m2.shift):
                pt = _shifted(faces[lower].barycenter, m2.shift)
                lower = lifted.locate(pt)
            comp = by_rep.get((lower, m2.upper_fid))
            if comp is None:
                raise InternalError("incidence composition fell outside the star")
            table[(m2.mid, m1.mid)] = comp
    return FaceCategory(lifted, orbits, orbit_of, morphisms, by_rep, table)


# ---------------------------------------------------------------------------
# layers


class Layer:
    __slots__ = ("index", "dim", "key", "rep_flat")

    def __init__(self, index, dim, key, rep_flat):
        self.index = index
        self.dim = dim
        self.key = key
        self.rep_flat = rep_flat

    def __repr__(self):
        return "Layer(%d, dim=%d)" % (self.index, self.dim)


class LayerPoset:
    def __init__(self, layers, relations):
        self.layers = layers
        self.relations = relations      # (lower index, upper index) strict

    def census(self):
        counts = {}
        for l in self.layers:
            counts[l.dim] = counts.get(l.dim, 0) + 1
        return counts

    def top_index(self):
        return max(range(len(self.layers)), key=lambda i: self.layers[i].dim)


def _normal_lattice(basis, n):
    """Integer basis of the characters vanishing on the direction space."""
    if not basis:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    rat = kernel_basis([list(b) for b in basis], n)
    scaled = []
    for row in rat:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        scaled.append([int(x * den) for x in row])
    return saturation_basis(scaled, n)


def _column_hnf(rows):
    """HNF basis of the lattice spanned by the rows (as vectors)."""
    h, _ = hnf(IntMatrix.from_rows(rows))
    return [list(h.row(i)) for i in range(h.rows) if any(h.row(i))]


def _reduce_mod_lattice(vec, hbasis):
    v = list(vec)
    for row in hbasis:
        piv = next(j for j, x in enumerate(row) if x != 0)
        t = math.floor(v[piv] / row[piv])
        if t:
            v = [x - t * y for x, y in zip(v, row)]
    return tuple(v)


def layers(spec, lifted=None):
    """Connected components of hypersurface intersections on the torus."""
    n = spec.rank
    if not spec.hypersurfaces:
        top = Layer(0, n, ("top",), None)
        return LayerPoset([top], [])
    if lifted is None:
        raise SpecError("layers of a nonempty arrangement need the lifted poset")
    recs = {}
    for flat_id, (zero, point, basis) in enumerate(lifted.flats):
        a_rows = _normal_lattice(basis, n)
        r = len(a_rows)
        if r == 0:
            key = ((), ())
        else:
            b = [_dot(row, point) for row in a_rows]
            # the translation lattice acts on constants through the columns
            cols = [[a_rows[i][j] for i in range(r)] for j in range(n)]
            image = _column_hnf(cols)
            key = (tuple(tuple(row) for row in a_rows),
                   _reduce_mod_lattice(b, image))
        if key not in recs:
            recs[key] = (n - r, flat_id, a_rows)
    ordered = sorted(recs.items(), key=lambda kv: (-kv[1][0], str(kv[0])))
    layers_list = [Layer(i, dim, key, flat_id)
                   for i, (key, (dim, flat_id, _)) in enumerate(ordered)]
    rows_of = {layer.index: recs[layer.key][2] for layer in layers_list}

    def contained(l1, l2):
        # some integer translate of flat(l1) lies inside flat(l2)
        if l1.dim > l2.dim:
            return False
        _, p1, b1 = lifted.flats[l1.rep_flat]
        _, p2, b2 = lifted.flats[l2.rep_flat]
        a2 = rows_of[l2.index]
        if not a2:
            return True
        for row in a2:
            if any(_dot(row, bv) != 0 for bv in b1):
                return False
        w = [_dot(row, p2) - _dot(row, p1) for row in a2]
        if any(x.denominator != 1 for x in w):
            return False
        cols = [[a2[i][j] for i in range(len(a2))] for j in range(spec.rank)]
        image = _column_hnf(cols)
        return all(x == 0 for x in _reduce_mod_lattice([int(x) for x in w], image))

    relations = []
    for l1 in layers_list:
        for l2 in layers_list:
            if l1.index != l2.index and l1.dim < l2.dim and contained(l1, l2):
                relations.append((l1.index, l2.index))
    return LayerPoset(layers_list, relations)


# ---------------------------------------------------------------------------
# local chamber operations


def project_pi_F(lifted, fid):
    """Restrict sign vectors of the star of a face to the hyperplanes
    through the face's affine span: the cellular localization map."""
    zero = sorted(lifted.zero_set(fid))
    out = {}
    for g in (fid,) + lifted.uppers[fid]:
        sig = lifted.faces[g].sign_vector
        out[g] = tuple(sig[i] for i in zero)
    return out


def opposite_chamber(lifted, cid, fid):
    """The chamber opposite a chamber across one of its faces."""
    if lifted.faces[cid].dim != lifted.dim:
        raise SpecError("opposite_chamber needs a chamber")
    if not lifted.leq(fid, cid):
        raise SpecError("face %d is not a face of chamber %d" % (fid, cid))
    zero = lifted.zero_set(fid)
    sig = tuple(-s if i in zero else s
                for i, s in enumerate(lifted.faces[cid].sign_vector))
    got = lifted.by_signs.get(sig)
    if got is None:
        raise WindowError("opposite chamber of (%d, %d) escapes the window" % (cid, fid),
                          suggestion=lifted.window_suggestion())
    return got


def chamber_fiber(lifted, cid, fid):
    """The unique chamber of the localization fiber of `cid` whose closure
    contains the face: keep signs through the face's span, take the
    face's signs elsewhere."""
    if lifted.faces[cid].dim != lifted.dim:
        raise SpecError("chamber_fiber needs a chamber")
    zero = lifted.zero_set(fid)
    csig = lifted.faces[cid].sign_vector
    fsig = lifted.faces[fid].sign_vector
    sig = tuple(csig[i] if i in zero else fsig[i] for i in range(len(csig)))
    got = lifted.by_signs.get(sig)
    if got is None:
        raise WindowError("fiber chamber of (%d, %d) escapes the window" % (cid, fid),
                          suggestion=lifted.window_suggestion())
    return got
