"""Homomorphisms, space morphisms, and the duality functors on both levels.

A space morphism (g, h) : p -> p' is a commuting square of partial maps in
which g restricts to a bijection from each fiber piece onto the fiber over
the image base point, and preserves the band when both spaces carry one.
The dual of a homomorphism acts by preimages; the dual of a space morphism
acts on sections by preimage under g.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .core_algebra import (
    SizeCapError,
    StructuralError,
    ValidationReport,
    green_partitions,
    leq_matrix,
    preceq_matrix,
    subalgebra_on,
)
from .ideals_spectra import (
    fibers,
    leq_ideal_generated,
    make_space,
    preceq_ideal_generated,
    spectrum_data,
)
from .spaces_sections import PartialMap, dual_algebra, partial_map


@dataclass(frozen=True)
class Homomorphism:
    """Total map between algebras preserving zero and all four operations."""

    source: object
    target: object
    map: tuple[int, ...]

    def __call__(self, x):
        return self.map[x]


@dataclass(frozen=True)
class SpaceMorphism:
    """Pair of partial maps (g on total spaces, h on bases) forming a
    commuting square with g bijective on fibers."""

    source: object
    target: object
    g: PartialMap
    h: PartialMap


@dataclass(frozen=True)
class SpaceMorphismFlags:
    total: bool
    semitotal: bool
    saturated: bool
    section_lifting: bool


@dataclass(frozen=True)
class HomFlags:
    leq_cofinal: bool
    preceq_cofinal: bool
    D_saturated: bool
    leq_ideal_inclusion: bool
    image_ideal_preceq_closed: bool


# ---------------------------------------------------------------------------
# Homomorphisms
# ---------------------------------------------------------------------------

def validate_hom(f):
    """Exhaustive preservation check for zero, meet, join, diff and cap."""
    A, B, m = f.source, f.target, f.map
    if len(m) != A.n or any(not (0 <= v < B.n) for v in m):
        raise StructuralError("homomorphism map is not a total map into the target")
    failures = []
    if m[A.zero] != B.zero:
        failures.append(("preserves_zero", (A.zero,)))
    for name in ("meet", "join", "diff", "cap"):
        fa, fb = getattr(A, name), getattr(B, name)
        witness = next(((x, y) for x in A.elements for y in A.elements
                        if m[fa(x, y)] != fb(m[x], m[y])), None)
        if witness is not None:
            failures.append((f"preserves_{name}", witness))
    return ValidationReport(ok=not failures, failures=tuple(failures))


def identity_hom(A):
    return Homomorphism(A, A, tuple(A.elements))


def zero_hom(A, B):
    return Homomorphism(A, B, (B.zero,) * A.n)


def compose_homs(outer, inner):
    if inner.target != outer.source:
        raise ValueError("homomorphisms do not compose")
    return Homomorphism(inner.source, outer.target,
                        tuple(outer.map[v] for v in inner.map))


def enumerate_homs(A, B, max_candidates=10 ** 6):
    """All homomorphisms A -> B by backtracking.

    Elements are assigned in index order; each operation instance is checked
    as soon as its arguments and result are all assigned, which prunes most
    of the |B|^|A| raw candidates.  Output is in lexicographic map order.
    """
    if B.n ** A.n > max_candidates:
        raise SizeCapError(f"{B.n}^{A.n} candidate maps exceed {max_candidates}")
    ops = [(getattr(A, name), getattr(B, name)) for name in ("meet", "join", "diff", "cap")]
    # constraints[(k)] lists (op_idx, i, j) checkable once element k is assigned
    constraints = [[] for _ in range(A.n)]
    for oi, (fa, _) in enumerate(ops):
        for i in range(A.n):
            for j in range(A.n):
                constraints[max(i, j, fa(i, j))].append((oi, i, j))
    image = [0] * A.n
    found = []

    def extend(k):
        if k == A.n:
            found.append(Homomorphism(A, B, tuple(image)))
            return
        options = (B.zero,) if k == A.zero else range(B.n)
        for v in options:
            image[k] = v
            if all(image[ops[oi][0](i, j)] == ops[oi][1](image[i], image[j])
                   for oi, i, j in constraints[k]):
                extend(k + 1)

    extend(0)
    return tuple(found)


def enumerate_homs_bruteforce(A, B, max_candidates=10 ** 4):
    """Oracle path: try every map and keep the ones that validate."""
    if B.n ** A.n > max_candidates:
        raise SizeCapError(f"{B.n}^{A.n} candidate maps exceed {max_candidates}")
    out = []
    for image in product(range(B.n), repeat=A.n):
        f = Homomorphism(A, B, image)
        if validate_hom(f).ok:
            out.append(f)
    return tuple(out)


# ---------------------------------------------------------------------------
# Space morphisms
# ---------------------------------------------------------------------------

def validate_space_morphism(m):
    """Check the commuting square, fiber bijectivity, and band preservation
    (the latter only when both spaces carry bands)."""
    sp, tp = m.source, m.target
    if any(not 0 <= y < sp.size_e for y in m.g.domain) or \
       any(not 0 <= v < tp.size_e for v in m.g.values) or \
       any(not 0 <= x < sp.size_b for x in m.h.domain) or \
       any(not 0 <= v < tp.size_b for v in m.h.values):
        raise StructuralError("morphism maps reference out-of-range points")
    failures = []
    g, h = m.g.as_dict(), m.h.as_dict()
    for y, gy in g.items():
        if sp.p[y] not in h or tp.p[gy] != h[sp.p[y]]:
            failures.append(("square_commutes", (y,)))
    tgt_fibers = fibers(tp)
    for x, hx in h.items():
        piece = sorted(g[y] for y in fibers(sp)[x] if y in g)
        if piece != sorted(set(piece)) or piece != list(tgt_fibers[hx]):
            failures.append(("fiber_bijection", (x,)))
    if sp.band is not None and tp.band is not None:
        for y1 in g:
            for y2 in g:
                if sp.p[y1] != sp.p[y2]:
                    continue
                v = sp.band[y1][y2]
                if v not in g or g[v] != tp.band[g[y1]][g[y2]]:
                    failures.append(("band_preserved", (y1, y2)))
    return ValidationReport(ok=not failures, failures=tuple(failures))


def identity_space_morphism(sp):
    ids = PartialMap(tuple(range(sp.size_e)), tuple(range(sp.size_e)))
    idb = PartialMap(tuple(range(sp.size_b)), tuple(range(sp.size_b)))
    return SpaceMorphism(sp, sp, ids, idb)


def compose_space_morphisms(outer, inner):
    if inner.target != outer.source:
        raise ValueError("space morphisms do not compose")
    og, oh = outer.g.as_dict(), outer.h.as_dict()
    g = {y: og[v] for y, v in zip(inner.g.domain, inner.g.values) if v in og}
    h = {x: oh[v] for x, v in zip(inner.h.domain, inner.h.values) if v in oh}
    return SpaceMorphism(inner.source, outer.target, partial_map(g), partial_map(h))


def enumerate_space_morphisms(sp, tp):
    """All valid space morphisms sp -> tp.

    Base maps are enumerated first; over each base point in the domain the
    fiber map is an injection from a subset of the fiber onto the whole
    target fiber, so those are enumerated directly instead of filtering all
    partial maps on E.
    """
    src_fib, tgt_fib = fibers(sp), fibers(tp)
    out = []
    for h_choice in product(*[(None,) + tuple(range(tp.size_b)) for _ in range(sp.size_b)]):
        h = {x: v for x, v in enumerate(h_choice) if v is not None}
        options = []
        feasible = True
        for x, hx in h.items():
            tf = tgt_fib[hx]
            fiber_maps = [dict(zip(chosen, tf))
                          for chosen in permutations(src_fib[x], len(tf))]
            if not fiber_maps:
                feasible = False
                break
            options.append(fiber_maps)
        if not feasible:
            continue
        for combo in product(*options):
            g = {}
            for piece in combo:
                g.update(piece)
            cand = SpaceMorphism(sp, tp, partial_map(g), partial_map(h))
            if validate_space_morphism(cand).ok:
                out.append(cand)
    return tuple(sorted(out, key=lambda m: (m.h.domain, m.h.values, m.g.domain, m.g.values)))


# ---------------------------------------------------------------------------
# The duality functors on morphisms
# ---------------------------------------------------------------------------

def dual_of_hom(f):
    """Dual space morphism Sk(target) -> Sk(source) of a homomorphism.

    The base map sends a prime to its preimage when that is proper; the
    total-space map sends (P, t) to (preimage P, a) whenever t is congruent
    mod P to some value f(a) outside P.  The result is validated in full.
    """
    sd_a = spectrum_data(f.source)
    sd_b = spectrum_data(f.target)
    prime_index_a = {p.members: p.index for p in sd_a.primes}
    carrier = set(f.source.elements)
    h = {}
    for pj, prime in enumerate(sd_b.primes):
        mem = set(prime.members)
        pre = tuple(sorted(x for x in carrier if f.map[x] in mem))
        if len(pre) < f.source.n:
            if pre not in prime_index_a:
                raise RuntimeError(f"preimage {pre} of a prime is not prime")
            h[pj] = prime_index_a[pre]
    g = {}
    for e, pt in enumerate(sd_b.points):
        pj = pt.prime
        if pj not in h:
            continue
        theta_b = sd_b.thetas[pj]
        mem = set(sd_b.primes[pj].members)
        cands = [a for a in f.source.elements
                 if f.map[a] not in mem and theta_b.labels[f.map[a]] == theta_b.labels[pt.rep]]
        if not cands:
            continue
        pi = h[pj]
        theta_a = sd_a.thetas[pi]
        if len({theta_a.labels[a] for a in cands}) != 1:
            raise RuntimeError("dual point is not well defined")
        g[e] = sd_a.point_of(pi, cands[0])
    morphism = SpaceMorphism(sd_b.space, sd_a.space, partial_map(g), partial_map(h))
    report = validate_space_morphism(morphism)
    if not report.ok:
        raise RuntimeError(f"dual morphism invalid: {report.failures}")
    return morphism


def hom_of_space_morphism(m):
    """Dual homomorphism (sections of target) -> (sections of source) acting
    by preimage under g; checks base images behave as inverse images under h
    on the way."""
    A_src, src_sections = dual_algebra(m.source)
    A_tgt, tgt_sections = dual_algebra(m.target)
    src_index = {s: i for i, s in enumerate(src_sections)}
    g, h = m.g.as_dict(), m.h.as_dict()
    image = []
    for s in tgt_sections:
        sset = set(s)
        pre = tuple(sorted(y for y, gy in g.items() if gy in sset))
        if pre not in src_index:
            raise RuntimeError(f"preimage {pre} of a section is not a section")
        base_pre = sorted({m.source.p[y] for y in pre})
        base_expect = sorted(x for x, hx in h.items() if hx in {m.target.p[e] for e in s})
        if base_pre != base_expect:
            raise RuntimeError("preimage does not respect base inverse images")
        image.append(src_index[pre])
    f = Homomorphism(A_tgt, A_src, tuple(image))
    report = validate_hom(f)
    if not report.ok:
        raise RuntimeError(f"dual homomorphism invalid: {report.failures}")
    return f


# ---------------------------------------------------------------------------
# Round-trip isomorphisms
# ---------------------------------------------------------------------------

def algebra_roundtrip_iso(A):
    """Canonical isomorphism from A onto the section algebra of its spectrum
    (a is sent to its basic section).  Any failed check here means a bug, so
    failures raise with a witness."""
    from .ideals_spectra import basic_copen
    from .spaces_sections import dual_algebra_rect

    sd = spectrum_data(A)
    dual, labels = dual_algebra_rect(sd.space)
    index = {s: i for i, s in enumerate(labels)}
    image = []
    for a in A.elements:
        section = basic_copen(A, a)
        if section not in index:
            raise RuntimeError(f"basic section of {a} is not a section of the spectrum")
        image.append(index[section])
    f = Homomorphism(A, dual, tuple(image))
    if len(set(image)) != A.n or dual.n != A.n:
        raise RuntimeError("basic sections do not biject with spectrum sections")
    report = validate_hom(f)
    if not report.ok:
        raise RuntimeError(f"round-trip map is not a homomorphism: {report.failures}")
    return f


def space_roundtrip_iso(sp):
    """Canonical isomorphism from a space onto the spectrum of its section
    algebra: a base point goes to the prime of sections missing it, a total
    point to the class of any section through it."""
    A, labels = dual_algebra(sp)
    sd = spectrum_data(A)
    base_image = [frozenset(sp.p[e] for e in s) for s in labels]
    prime_index = {p.members: p.index for p in sd.primes}
    h = []
    for x in range(sp.size_b):
        members = tuple(i for i in range(A.n) if x not in base_image[i])
        if members not in prime_index:
            raise RuntimeError(f"point {x} does not induce a prime of the section algebra")
        h.append(prime_index[members])
    singleton = {s[0]: i for i, s in enumerate(labels) if len(s) == 1}
    g = [sd.point_of(h[sp.p[y]], singleton[y]) for y in range(sp.size_e)]
    if sorted(g) != list(range(sd.space.size_e)) or sorted(h) != list(range(sd.space.size_b)):
        raise RuntimeError("round-trip maps are not bijections")
    total_e = PartialMap(tuple(range(sp.size_e)), tuple(g))
    total_b = PartialMap(tuple(range(sp.size_b)), tuple(h))
    morphism = SpaceMorphism(sp, sd.space, total_e, total_b)
    report = validate_space_morphism(morphism)
    if not report.ok:
        raise RuntimeError(f"round-trip square does not commute: {report.failures}")
    return morphism


# ---------------------------------------------------------------------------
# Rectangular spaces versus pairs of plain spaces
# ---------------------------------------------------------------------------

def to_space_pair(sp):
    """Split a rectangular space into (R-quotient, L-quotient) over the same
    base, the fiberwise coequalizers of the band's Green relations.  With a
    right band R is the full fiber relation and L is equality, so the first
    component collapses onto the base and the second keeps the total space."""
    if sp.band is None:
        raise ValueError("pair decomposition needs a band")
    from .spaces_sections import _fiber_band_classes

    def quotient(selector):
        p_q = []
        for b, f in enumerate(fibers(sp)):
            for _ in selector(sp, f):
                p_q.append(b)
        return make_space(len(p_q), sp.size_b, p_q)

    left = quotient(lambda s, f: _fiber_band_classes(s, f)[0])
    right = quotient(lambda s, f: _fiber_band_classes(s, f)[1])
    return left, right


def from_space_pair(left, right):
    """Fiber product of two plain spaces over their common base, with the
    grid band (u1, v1) ^ (u2, v2) = (u1, v2)."""
    if left.size_b != right.size_b:
        raise ValueError("pair components have different bases")
    if left.band is not None or right.band is not None:
        raise ValueError("pair components must be plain spaces")
    points = []
    for b in range(left.size_b):
        for u in fibers(left)[b]:
            for v in fibers(right)[b]:
                points.append((b, u, v))
    index = {pt: i for i, pt in enumerate(points)}
    n = len(points)
    band = [[None] * n for _ in range(n)]
    for i, (b1, u1, _) in enumerate(points):
        for j, (b2, _, v2) in enumerate(points):
            if b1 == b2:
                band[i][j] = index[(b1, u1, v2)]
    return make_space(n, left.size_b, [pt[0] for pt in points], band)


# ---------------------------------------------------------------------------
# Decomposition and classification of morphisms
# ---------------------------------------------------------------------------

def restrict_space(sp, e_subset, b_subset):
    """Subspace on the given points with reindexed projection and band."""
    e_list = tuple(sorted(e_subset))
    b_list = tuple(sorted(b_subset))
    b_pos = {b: i for i, b in enumerate(b_list)}
    p = [b_pos[sp.p[e]] for e in e_list]
    band = None
    if sp.band is not None:
        e_pos = {e: i for i, e in enumerate(e_list)}
        band = [[None if sp.band[x][y] is None or sp.band[x][y] not in e_pos
                 else e_pos[sp.band[x][y]]
                 for y in e_list] for x in e_list]
    return make_space(len(e_list), len(b_list), p, band), e_list, b_list


def decompose_morphism(m):
    """Split a morphism into a partial identity onto the restriction to its
    domains, followed by a total morphism out of it (total and bijective on
    fibers, hence a pullback square).  Their composite is the original."""
    sub, e_list, b_list = restrict_space(m.source, m.g.domain, m.h.domain)
    e_pos = {e: i for i, e in enumerate(e_list)}
    b_pos = {b: i for i, b in enumerate(b_list)}
    part_identity = SpaceMorphism(
        m.source, sub,
        PartialMap(m.g.domain, tuple(e_pos[e] for e in m.g.domain)),
        PartialMap(m.h.domain, tuple(b_pos[b] for b in m.h.domain)))
    pullback_part = SpaceMorphism(
        sub, m.target,
        PartialMap(tuple(range(len(e_list))), m.g.values),
        PartialMap(tuple(range(len(b_list))), m.h.values))
    for part in (part_identity, pullback_part):
        report = validate_space_morphism(part)
        if not report.ok:
            raise RuntimeError(f"decomposition component invalid: {report.failures}")
    if len(pullback_part.g.domain) != sub.size_e or len(pullback_part.h.domain) != sub.size_b:
        raise RuntimeError("second component of the decomposition is not total")
    if compose_space_morphisms(pullback_part, part_identity) != m:
        raise RuntimeError("decomposition does not compose back to the morphism")
    return part_identity, pullback_part


def _sections_above(sp, base_points):
    """All sections whose base image is exactly the given set."""
    fib = fibers(sp)
    pools = [fib[x] for x in base_points]
    if any(not pool for pool in pools):
        return []
    return [tuple(sorted(choice)) for choice in product(*pools)]


def classify_space_morphism(m):
    """Totality, semitotality, saturation of the domain, and the section
    lifting property, each by exhaustive test."""
    sp, tp = m.source, m.target
    total = len(m.g.domain) == sp.size_e and len(m.h.domain) == sp.size_b
    semitotal = len(m.h.domain) == sp.size_b
    h = m.h.as_dict()
    saturated = set(m.g.domain) == {y for y in range(sp.size_e) if sp.p[y] in h}
    g = m.g.as_dict()
    lifting = True
    base_subsets = [frozenset(c) for k in range(tp.size_b + 1)
                    for c in _combinations(range(tp.size_b), k)]
    for U in base_subsets:
        pre_base = tuple(sorted(x for x, hx in h.items() if hx in U))
        for s in _sections_above(sp, pre_base):
            found = False
            for r in _sections_above(tp, tuple(sorted(U))):
                rset = set(r)
                if tuple(sorted(y for y, gy in g.items() if gy in rset)) == s:
                    found = True
                    break
            if not found:
                lifting = False
                break
        if not lifting:
            break
    return SpaceMorphismFlags(total=total, semitotal=semitotal,
                              saturated=saturated, section_lifting=lifting)


def _combinations(iterable, k):
    from itertools import combinations
    return combinations(tuple(iterable), k)


def is_partial_identity_up_to_iso(m):
    """True when both components map their domains bijectively onto the whole
    target, which makes the morphism an inclusion-of-restriction in disguise."""
    return (len(set(m.g.values)) == len(m.g.values) == m.target.size_e
            and len(set(m.h.values)) == len(m.h.values) == m.target.size_b)


def classify_hom(f):
    """Algebraic counterparts of the space-morphism classes."""
    B = f.target
    image = set(f.map)
    leq_cofinal = len(leq_ideal_generated(B, image)) == B.n
    preceq_cofinal = len(preceq_ideal_generated(B, image).members) == B.n
    d = green_partitions(B)[0]
    image_classes = {d.labels[v] for v in image}
    d_saturated = all(b in image for b in B.elements if d.labels[b] in image_classes)
    leq = leq_matrix(B)
    down_closed = all(y in image for y in B.elements for v in image if leq[y][v])
    injective = len(image) == f.source.n
    ideal = set(leq_ideal_generated(B, image))
    pre = preceq_matrix(B)
    ideal_pre_closed = all(y in ideal for x in ideal for y in B.elements if pre[y][x])
    return HomFlags(leq_cofinal=leq_cofinal,
                    preceq_cofinal=preceq_cofinal,
                    D_saturated=d_saturated,
                    leq_ideal_inclusion=injective and down_closed,
                    image_ideal_preceq_closed=ideal_pre_closed)


def check_variant_dualities(f):
    """The five morphism-class equivalences, checked by comparing algebraic
    flags with the flags of the dual space morphism."""
    hf = classify_hom(f)
    dual = dual_of_hom(f)
    sf = classify_space_morphism(dual)
    return (hf.leq_cofinal == sf.total
            and hf.preceq_cofinal == sf.semitotal
            and hf.leq_ideal_inclusion == is_partial_identity_up_to_iso(dual)
            and hf.D_saturated == sf.section_lifting
            and hf.image_ideal_preceq_closed == sf.saturated)


def hom_factorization(f):
    """Factor a homomorphism through the order ideal generated by its image:
    a cofinal corestriction followed by an ideal inclusion."""
    members = leq_ideal_generated(f.target, set(f.map))
    sub, embedding = subalgebra_on(f.target, members)
    pos = {a: i for i, a in enumerate(embedding)}
    corestriction = Homomorphism(f.source, sub, tuple(pos[v] for v in f.map))
    inclusion = Homomorphism(sub, f.target, embedding)
    if compose_homs(inclusion, corestriction) != f:
        raise RuntimeError("factorization does not compose back to the homomorphism")
    if not classify_hom(corestriction).leq_cofinal:
        raise RuntimeError("first factor is not cofinal")
    if not classify_hom(inclusion).leq_ideal_inclusion:
        raise RuntimeError("second factor is not an ideal inclusion")
    return corestriction, inclusion
