"""Finite presentation of the fundamental group of the complement.

Generators: one loop t_i per lattice direction and one meridian g_o per
codimension-1 face orbit.  Relators: commutators of the t_i, plus, for
every codimension-2 face orbit, the cyclic relations read off the star
of a translated representative.  Each meridian entering a relation is
conjugated back to the base chamber by an explicit word produced from
crossing sequences of straight segments and minimal positive chamber
paths.
"""

from collections import Counter
from fractions import Fraction
from functools import cmp_to_key
import math

from .errors import SpecError, WindowError, InternalError
from .exact import snf, IntMatrix, kernel_basis
from .arrangement import Window, lift_to_window, is_essential
from .cells import (enumerate_faces, quotient_faces, chamber_fiber,
                    opposite_chamber, _fm_feasible, _floor_vec, _shifted, _dot)

Q = Fraction


# ---------------------------------------------------------------------------
# words over signed generator indices


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    word = list(free_reduce(word))
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return tuple(word)


def invert_word(word):
    return tuple(-x for x in reversed(word))


def _substitute(word, gen, repl):
    out = []
    inv = invert_word(repl)
    for x in word:
        if abs(x) == gen:
            out.extend(repl if x > 0 else inv)
        else:
            out.append(x)
    return free_reduce(out)


class GroupPresentation:
    """Named generators and relator words of signed 1-based indices."""

    def __init__(self, names, relators, tau_count=None):
        self.names = tuple(names)
        rels = []
        g = len(self.names)
        for r in relators:
            r = free_reduce(r)
            if any(abs(x) < 1 or abs(x) > g for x in r):
                raise SpecError("relator mentions an undeclared generator")
            rels.append(tuple(r))
        self.relators = tuple(rels)
        self.tau_count = tau_count

    def __repr__(self):
        return "GroupPresentation(<%d generators | %d relators>)" % (
            len(self.names), len(self.relators))


def abelianize(pres):
    """First homology of the presented group: (betti, torsion factors)."""
    g = len(pres.names)
    if not pres.relators:
        return g, []
    rows = []
    for r in pres.relators:
        row = [0] * g
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    _, factors = snf(IntMatrix.from_rows(rows))
    return g - len(factors), [d for d in factors if d > 1]


def simplify_presentation(pres):
    """Tietze simplification: free and cyclic reduction, removal of
    trivial relators, and elimination of generators that some relator
    expresses in terms of the others."""
    relators = [cyclic_reduce(r) for r in pres.relators]
    relators = [r for r in relators if r]
    alive = list(range(1, len(pres.names) + 1))
    removed = set()
    while True:
        relators.sort(key=lambda r: (len(r), r))
        pick = None
        for idx, r in enumerate(relators):
            counts = Counter(abs(x) for x in r)
            for pos, x in enumerate(r):
                if counts[abs(x)] == 1:
                    pick = (idx, pos, x)
                    break
            if pick:
                break
        if pick is None:
            break
        idx, pos, x = pick
        r = relators[idx]
        rot = r[pos:] + r[:pos]
        repl = invert_word(rot[1:]) if rot[0] > 0 else tuple(rot[1:])
        gen = abs(x)
        removed.add(gen)
        nxt = []
        for j, r2 in enumerate(relators):
            if j == idx:
                continue
            r3 = cyclic_reduce(_substitute(r2, gen, repl))
            if r3:
                nxt.append(r3)
        relators = nxt
    survivors = [g for g in alive if g not in removed]
    remap = {g: i + 1 for i, g in enumerate(survivors)}
    names = tuple(pres.names[g - 1] for g in survivors)
    rels = tuple(tuple((1 if x > 0 else -1) * remap[abs(x)] for x in r)
                 for r in relators)
    taus = sum(1 for g in survivors
               if pres.tau_count is not None and g <= pres.tau_count)
    return GroupPresentation(names, rels, tau_count=taus if pres.tau_count is not None else None)


def quotient_without_meridians(pres):
    """Kill every meridian generator; what remains is generated by the
    lattice loops alone."""
    if pres.tau_count is None:
        raise SpecError("presentation does not distinguish lattice generators")
    t = pres.tau_count
    rels = []
    for r in pres.relators:
        rels.append(free_reduce([x for x in r if abs(x) <= t]))
    return GroupPresentation(pres.names[:t], [r for r in rels if r], tau_count=t)


# ---------------------------------------------------------------------------
# crossings and paths


class Crossing:
    """One wall crossing of a path, recorded on the lifted arrangement."""

    __slots__ = ("orbit", "shift", "sign", "hyper_key")

    def __init__(self, orbit, shift, sign, hyper_key):
        self.orbit = orbit
        self.shift = shift
        self.sign = sign
        self.hyper_key = hyper_key

    def ref(self):
        return (self.orbit, self.shift)

    def __repr__(self):
        return "Crossing(orbit=%d, shift=%s, sign=%+d)" % (self.orbit, self.shift, self.sign)


def chamber_graph(lifted):
    """Directed multigraph on chambers: one edge per (wall, side)."""
    n = lifted.dim
    edges = {cid: [] for cid in lifted.chamber_ids}
    for f in lifted.faces:
        if f.dim != n - 1:
            continue
        chams = lifted.chambers_above(f.id)
        if len(chams) != 2:
            continue
        a, b = chams
        edges[a].append((f.id, b))
        edges[b].append((f.id, a))
    for cid in edges:
        edges[cid].sort()
    return edges


def positive_minimal_path(lifted, c_from, c_to):
    """A directed chamber path crossing each separating wall exactly once.

    Returns the crossings as (face id, chamber left behind) pairs; walks
    greedily toward the target, which always succeeds when the window
    contains the whole straight-line tube between the chambers.
    """
    steps = []
    x = c_from
    tgt_sig = lifted.faces[c_to].sign_vector
    n = lifted.dim
    guard = len(lifted.hyperplanes) + 1
    while x != c_to:
        if guard == 0:
            raise InternalError("chamber walk failed to terminate")
        guard -= 1
        x_sig = lifted.faces[x].sign_vector
        found = None
        for f in lifted.lowers[x]:
            if lifted.faces[f].dim != n - 1:
                continue
            rep = min(lifted.zero_set(f))
            if x_sig[rep] == tgt_sig[rep]:
                continue
            try:
                opp = opposite_chamber(lifted, x, f)
            except WindowError:
                continue
            found = (f, opp)
            break
        if found is None:
            raise WindowError("no positive minimal path between chambers %d and %d"
                              % (c_from, c_to), suggestion=lifted.window_suggestion())
        steps.append((found[0], x))
        x = found[1]
    return steps


def _primitive_key(alpha, c):
    g = 0
    for a in alpha:
        g = math.gcd(g, a)
    lead = next(a for a in alpha if a != 0)
    s = 1 if lead > 0 else -1
    return tuple(a // (s * g) for a in alpha), Fraction(c) / (s * g)


def _shifted_key(key, shift):
    alpha, c = key
    return alpha, c + _dot(alpha, shift)


class Pi1Context:
    """Base data for the presentation: base point, base chamber, crossing
    sequences of the coordinate segments, and generator bookkeeping."""

    def __init__(self, spec, lifted, fc):
        self.spec = spec
        self.lifted = lifted
        self.fc = fc
        self.n = spec.rank
        self.x0 = _choose_base_point(spec)
        self.c0 = lifted.locate(self.x0)
        self.codim1_orbits = [o.index for o in fc.orbits if o.dim == self.n - 1]
        self._gamma_pos = {o: i for i, o in enumerate(self.codim1_orbits)}
        self._canonical_key = {}
        for o in fc.orbits:
            if o.dim == self.n - 1:
                rep = min(lifted.zero_set(o.canonical_fid))
                self._canonical_key[o.index] = lifted.hyperplanes[rep].geometric_key()
        self._omega_cache = {}
        self._q_faces = None
        self._omega_faces = None

    # generator numbering: 1..n are lattice loops, then meridians
    @property
    def tau_count(self):
        return self.n

    def gamma_gen(self, orbit):
        return self.n + 1 + self._gamma_pos[orbit]

    def generator_names(self):
        return tuple("t%d" % (i + 1) for i in range(self.n)) + \
            tuple("g%d" % (i + 1) for i in range(len(self.codim1_orbits)))

    def tau_word(self, shift):
        word = []
        for i, s in enumerate(shift):
            word.extend([i + 1 if s > 0 else -(i + 1)] * abs(s))
        return word

    def _orbit_ref(self, fid):
        got = self.fc.orbit_of.get(fid)
        if got is None:
            raise WindowError("crossed face %d has no orbit data in the window" % fid,
                              suggestion=self.lifted.window_suggestion())
        return got

    def crossing_of_face(self, fid, sign=1):
        orbit, u = self._orbit_ref(fid)
        key = _shifted_key(self._canonical_key[orbit], u)
        return Crossing(orbit, u, sign, key)

    def crossing_at_point(self, point, sign=1):
        base = _floor_vec(point)
        core = _shifted(point, base, -1)
        fid = self.lifted.locate(core)
        f = self.lifted.faces[fid]
        if f.dim != self.n - 1:
            raise InternalError("crossing point does not lie on a single wall")
        orbit, u0 = self._orbit_ref(fid)
        shift = tuple(a + b for a, b in zip(base, u0))
        key = _shifted_key(self._canonical_key[orbit], shift)
        return Crossing(orbit, shift, sign, key)

    def omega(self, u):
        u = tuple(int(x) for x in u)
        if u not in self._omega_cache:
            self._omega_cache[u] = omega_paths(self, u)
        return self._omega_cache[u]

    @property
    def q_faces(self):
        """Faces whose closure meets the unit cube anchored at the base
        point (the closed fundamental region swept by the segments)."""
        if self._q_faces is None:
            out = []
            lifted = self.lifted
            for f in lifted.faces:
                zero, point, basis = lifted.flats[f.flat_id]
                d = len(basis)
                rows = []
                for hidx, s in enumerate(f.sign_vector):
                    if s == 0:
                        continue
                    h = lifted.hyperplanes[hidx]
                    coeffs = tuple(_dot(h.alpha, b) for b in basis)
                    if all(c == 0 for c in coeffs):
                        continue
                    rows.append((tuple(s * c for c in coeffs),
                                 s * (h.c - _dot(h.alpha, point)), False))
                ok = True
                for j in range(self.n):
                    coeffs = tuple(b[j] for b in basis)
                    rows.append((coeffs, self.x0[j] - point[j], False))
                    rows.append((tuple(-c for c in coeffs),
                                 point[j] - self.x0[j] - 1, False))
                if _fm_feasible(rows, d):
                    out.append(f.id)
            self._q_faces = tuple(out)
        return self._q_faces

    @property
    def omega_faces(self):
        """Orbit-and-shift references of every wall crossed by an iterated
        coordinate segment staying inside the window."""
        if self._omega_faces is None:
            out = set()
            for i in range(self.n):
                unit = self.omega(tuple(int(j == i) for j in range(self.n)))
                k = 0
                while True:
                    end = tuple(x + (k + 1) * int(j == i)
                                for j, x in enumerate(self.x0))
                    if not self.lifted.window.contains(end):
                        break
                    for c in unit:
                        shift = tuple(s + k * int(j == i)
                                      for j, s in enumerate(c.shift))
                        out.add((c.orbit, shift))
                    k += 1
            self._omega_faces = frozenset(out)
        return self._omega_faces


def _primes():
    yield from (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _segment_crossings(spec, base, axis, steps):
    """Crossing times and points of the straight leg base -> base + steps*e_axis
    against the full periodic arrangement."""
    out = []
    for chi, a in spec.hypersurfaces:
        aj = chi.alpha[axis]
        if aj == 0:
            continue
        v0 = _dot(chi.alpha, base)
        v1 = v0 + steps * aj
        lo, hi = (v0, v1) if v1 > v0 else (v1, v0)
        k = math.floor(lo - a.q) + 1
        while a.q + k < hi:
            c = a.q + k
            if c > lo:
                t = (c - v0) / (steps * aj)
                point = tuple(x + t * steps * int(j == axis)
                              for j, x in enumerate(base))
                out.append((t, point, _primitive_key(chi.alpha, c)))
            k += 1
    out.sort(key=lambda z: (z[0], z[2]))
    return out


def _is_generic(spec, x0):
    n = spec.rank
    for chi, a in spec.hypersurfaces:
        if (_dot(chi.alpha, x0) - a.q).denominator == 1:
            return False
    for axis in range(n):
        crossings = _segment_crossings(spec, x0, axis, 1)
        for (t1, _, k1), (t2, _, k2) in zip(crossings, crossings[1:]):
            if t1 == t2 and k1 != k2:
                return False
    return True


def _choose_base_point(spec):
    n = spec.rank
    for p in _primes():
        x0 = tuple(Fraction(1, p ** (i + 1)) for i in range(n))
        if _is_generic(spec, x0):
            return x0
    raise InternalError("no generic base point found")


def omega_paths(ctx, u):
    """Crossing sequence of the broken-segment path from the base point to
    its translate by a nonnegative lattice vector."""
    u = tuple(int(x) for x in u)
    if any(x < 0 for x in u):
        raise SpecError("omega paths need nonnegative coordinates")
    word = []
    base = list(ctx.x0)
    for axis in range(ctx.n):
        steps = u[axis]
        if steps == 0:
            continue
        crossings = _segment_crossings(ctx.spec, tuple(base), axis, steps)
        for (t1, _, k1), (t2, _, k2) in zip(crossings, crossings[1:]):
            if t1 == t2 and k1 != k2:
                raise InternalError("segment is not generic")
        last_key = None
        for t, point, key in crossings:
            if key == last_key:
                continue  # coincident copies of one geometric wall
            word.append(ctx.crossing_at_point(point))
            last_key = key
        base[axis] += steps
    return word


def sigma(path):
    """Reduce a positive crossing word: repeatedly drop every crossing
    whose wall supports an odd number of later crossings, until stable."""
    seq = list(path)
    if any(c.sign != 1 for c in seq):
        raise SpecError("sigma applies to positive words only")
    while True:
        tail = Counter()
        marks = []
        for c in reversed(seq):
            marks.append(tail[c.hyper_key] % 2 == 1)
            tail[c.hyper_key] += 1
        marks.reverse()
        if not any(marks):
            return seq
        seq = [c for c, mk in zip(seq, marks) if not mk]


def delta_word(ctx, ref):
    """Conjugating word of a codim-1 face of the lift: the product of the
    based meridians of the surviving crossings of the access path."""
    orbit, shift = ref
    if any(s < 0 for s in shift):
        raise SpecError("expansion faces must have nonnegative shifts")
    lifted = ctx.lifted
    canonical = ctx.fc.orbits[orbit].canonical_fid
    f_fid = lifted.locate(_shifted(lifted.faces[canonical].barycenter, shift))
    c0u = lifted.locate(_shifted(ctx.x0, shift))
    fib = chamber_fiber(lifted, c0u, f_fid)
    mu = [ctx.crossing_of_face(f) for f, _ in positive_minimal_path(lifted, c0u, fib)]
    word = []
    for g in sigma(list(ctx.omega(shift)) + mu):
        tau = ctx.tau_word(g.shift)
        word.extend(tau)
        word.append(ctx.gamma_gen(g.orbit))
        word.extend(invert_word(tau))
    return free_reduce(word)


def gamma_delta_word(ctx, ref):
    """Based meridian of an arbitrary codim-1 face of the lift."""
    orbit, shift = ref
    delta = delta_word(ctx, ref)
    tau = ctx.tau_word(shift)
    core = list(tau) + [ctx.gamma_gen(orbit)] + list(invert_word(tau))
    return free_reduce(list(invert_word(delta)) + core + list(delta))


def h_of_G(lifted, gfid):
    """The codim-1 faces around a codim-2 face, in cyclic angular order.

    Starts at the face with the smallest id; the first half meets each
    wall once and the second half repeats the walls on opposite sides.
    """
    n = lifted.dim
    g = lifted.faces[gfid]
    if g.dim != n - 2:
        raise SpecError("expected a face of codimension 2")
    ups = [f for f in lifted.uppers[gfid] if lifted.faces[f].dim == n - 1]
    _, _, basis = lifted.flats[g.flat_id]
    proj = kernel_basis([list(b) for b in basis], n)
    if len(proj) != 2:
        raise InternalError("transverse plane of a codim-2 face is not 2-dimensional")
    vecs = {}
    for f in ups:
        v = tuple(b - a for a, b in zip(g.barycenter, lifted.faces[f].barycenter))
        w = (_dot(proj[0], v), _dot(proj[1], v))
        if w == (0, 0):
            raise InternalError("adjacent face projects onto the flat")
        vecs[f] = w

    def half(w):
        return 0 if (w[1] > 0 or (w[1] == 0 and w[0] > 0)) else 1

    def cmp(fa, fb):
        wa, wb = vecs[fa], vecs[fb]
        ha, hb = half(wa), half(wb)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = wa[0] * wb[1] - wa[1] * wb[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        raise InternalError("two adjacent faces share a direction")

    ordered = sorted(ups, key=cmp_to_key(cmp))
    start = ordered.index(min(ordered))
    ordered = ordered[start:] + ordered[:start]
    if len(ordered) % 2 != 0:
        raise InternalError("odd number of faces around a codim-2 face")
    k = len(ordered) // 2
    wall = [min(lifted.zero_set(f)) for f in ordered]
    for i in range(k):
        if lifted.geo_class[wall[i]] != lifted.geo_class[wall[i + k]]:
            raise InternalError("opposite faces lie on different walls")
    return ordered


def relations_for_G(ctx, canonical_gfid):
    """Relators of one codim-2 orbit: all consecutive equalities of the
    cyclic window products of the based meridians around a translated
    representative whose star has nonnegative shifts."""
    lifted = ctx.lifted
    bary = lifted.faces[canonical_gfid].barycenter
    refs = None
    for scale in (0, 1, 2, 3):
        try:
            g2 = lifted.locate(_shifted(bary, (scale,) * ctx.n))
        except WindowError:
            break
        if not lifted.star_ok(g2):
            continue
        ordered = h_of_G(lifted, g2)
        cand = [ctx._orbit_ref(f) for f in ordered]
        if all(all(s >= 0 for s in shift) for _, shift in cand):
            refs = cand
            break
    if refs is None:
        raise WindowError("no expansion star with nonnegative shifts fits the window",
                          suggestion=lifted.window_suggestion())
    words = [gamma_delta_word(ctx, ref) for ref in refs]
    two_k = len(words)
    k = two_k // 2
    relators = []
    for j in range(two_k - 1):
        w1 = []
        w2 = []
        for i in range(k):
            w1.extend(words[(j + i) % two_k])
            w2.extend(words[(j + 1 + i) % two_k])
        rel = free_reduce(list(w1) + list(invert_word(w2)))
        if rel:
            relators.append(rel)
    return relators


def build_context(spec, lifted, fc):
    return Pi1Context(spec, lifted, fc)


def presentation(spec, window=None):
    """Presentation of the fundamental group of the arrangement complement."""
    if not is_essential(spec):
        raise SpecError("presentation needs an essential arrangement")
    n = spec.rank
    if window is None:
        window = Window.standard(n)
    lifted = enumerate_faces(lift_to_window(spec, window), window)
    fc = quotient_faces(lifted)
    ctx = build_context(spec, lifted, fc)
    return presentation_from_context(ctx)


def presentation_from_context(ctx):
    n = ctx.n
    names = ctx.generator_names()
    relators = []
    for i in range(n):
        for j in range(i + 1, n):
            relators.append((i + 1, j + 1, -(i + 1), -(j + 1)))
    codim2 = sorted(o.canonical_fid for o in ctx.fc.orbits if o.dim == n - 2)
    for gfid in codim2:
        relators.extend(relations_for_G(ctx, gfid))
    return GroupPresentation(names, relators, tau_count=n)
