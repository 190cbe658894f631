"""Lattice sections of right-handed algebras versus global sections of spaces.

A lattice section picks one element per D-class so that zero, meet and join
are preserved; a global section of a space picks one point per fiber.  On a
finite instance each exists exactly when the other does, and either witness
converts into the other.

Every finite base is trivially a finite union of copen sets, so here a
section always exists; right-handed algebras without lattice sections only
appear over genuinely infinite bases (an uncountable ordinal works), which
are outside what this package can represent.  The suite therefore pins the
finite existence statement instead.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core_algebra import green_partitions, handedness, quotient_by
from .ideals_spectra import basic_copen, fibers, spectrum_data


@dataclass(frozen=True)
class LatticeSection:
    """choice[d] is the chosen element of D-class d."""

    choice: tuple[int, ...]


@dataclass(frozen=True)
class GlobalSection:
    """Section meeting every fiber: the projection restricts to a bijection."""

    points: tuple[int, ...]


def _require_right_handed(A):
    kind = handedness(A)
    if kind not in ("right", "commutative"):
        raise ValueError(f"lattice-section search needs a right-handed algebra, got {kind}")


def is_lattice_section(A, choice):
    """Check one element per D-class, zero preserved, meet and join preserved."""
    d = green_partitions(A)[0]
    if len(choice) != len(d.blocks):
        return False
    for i, c in enumerate(choice):
        if d.labels[c] != i:
            return False
    AD, to_d = quotient_by(A, d)
    if choice[to_d[A.zero]] != A.zero:
        return False
    for i in range(AD.n):
        for j in range(AD.n):
            if A.meet(choice[i], choice[j]) != choice[AD.meet(i, j)]:
                return False
            if A.join(choice[i], choice[j]) != choice[AD.join(i, j)]:
                return False
    return True


def find_lattice_section(A):
    """Depth-first search over per-class choices, least candidates first,
    pruning as soon as a meet or join of chosen elements leaves the partial
    choice.  Returns the first section found, or None."""
    _require_right_handed(A)
    d = green_partitions(A)[0]
    AD, to_d = quotient_by(A, d)
    k = AD.n
    # class pairs whose meet or join lands in class t, checked when t is filled
    triggers = [[] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            for op, qop in (("meet", AD.meet), ("join", AD.join)):
                triggers[max(i, j, qop(i, j))].append((op, i, j))
    choice = [None] * k

    def consistent(t):
        for op, i, j in triggers[t]:
            got = getattr(A, op)(choice[i], choice[j])
            want_class = AD.meet(i, j) if op == "meet" else AD.join(i, j)
            if got != choice[want_class]:
                return False
        return True

    def extend(t):
        if t == k:
            return True
        block = d.blocks[t]
        candidates = (A.zero,) if t == to_d[A.zero] else block
        for c in candidates:
            choice[t] = c
            if consistent(t) and extend(t + 1):
                return True
        choice[t] = None
        return False

    if extend(0):
        section = LatticeSection(tuple(choice))
        if not is_lattice_section(A, section.choice):
            raise RuntimeError("search returned a non-section")
        return section
    return None


def find_global_section(sp):
    """Least point of every fiber; always succeeds on a finite surjection."""
    fib = fibers(sp)
    if any(not f for f in fib):
        return None
    return GlobalSection(tuple(f[0] for f in fib))


def lattice_section_to_global(A, section):
    """Glue the basic sections of the chosen elements into a global section
    of the spectrum, verifying the gluing compatibilities on the way."""
    sd = spectrum_data(A)
    d = green_partitions(A)[0]
    AD, to_d = quotient_by(A, d)
    base_of = []
    for i in range(AD.n):
        rep = d.blocks[i][0]
        base_of.append(frozenset(pi for pi, p in enumerate(sd.primes)
                                 if rep not in p.members))
    copens = [frozenset(basic_copen(A, c)) for c in section.choice]
    for i in range(AD.n):
        for j in range(AD.n):
            # the local pieces agree on overlaps
            overlap = base_of[i] & base_of[j]
            glued = frozenset(e for e in copens[j] if sd.space.p[e] in overlap)
            if copens[AD.meet(i, j)] != glued:
                raise ValueError(f"local sections disagree above classes ({i}, {j})")
    points = sorted(frozenset().union(*copens)) if copens else []
    if sorted(sd.space.p[e] for e in points) != list(range(sd.space.size_b)):
        raise ValueError("glued section does not hit every fiber exactly once")
    return GlobalSection(tuple(points))


def global_section_to_lattice(A, section):
    """Carve the global section of the spectrum into basic pieces, one per
    D-class, and read the chosen elements back through the section bijection."""
    sd = spectrum_data(A)
    d = green_partitions(A)[0]
    AD, to_d = quotient_by(A, d)
    element_of = {basic_copen(A, a): a for a in A.elements}
    pts = set(section.points)
    choice = []
    for i in range(AD.n):
        rep = d.blocks[i][0]
        above = frozenset(pi for pi, p in enumerate(sd.primes) if rep not in p.members)
        piece = tuple(sorted(e for e in pts if sd.space.p[e] in above))
        if piece not in element_of:
            raise ValueError(f"restriction of the section above class {i} is not basic")
        choice.append(element_of[piece])
    result = LatticeSection(tuple(choice))
    if not is_lattice_section(A, result.choice):
        raise ValueError("converted choice is not a lattice section")
    return result


def section_equivalence_check(A):
    """A right-handed algebra has a lattice section exactly when its spectrum
    has a global section; both witnesses are produced and converted into each
    other, with every conversion validated."""
    _require_right_handed(A)
    lattice = find_lattice_section(A)
    sd = spectrum_data(A)
    global_ = find_global_section(sd.space)
    if (lattice is None) != (global_ is None):
        return False
    if lattice is None:
        return True
    try:
        lattice_section_to_global(A, lattice)
        global_section_to_lattice(A, global_)
    except ValueError:
        return False
    return True
