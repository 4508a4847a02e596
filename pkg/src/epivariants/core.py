"""Finite semigroups as Cayley tables: validation, powers, closure generation,
isomorphism testing and canonical forms.

Elements are dense integer indices 0..n-1.  Entry (row a, column b) of the
table holds the product a*b.  Associativity is a checked invariant, never
assumed at construction time: build with ``CayleyTable.from_rows`` or call
``validate`` explicitly.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations


class SemigroupError(Exception):
    pass


class EntryOutOfRange(SemigroupError):
    def __init__(self, position, value):
        self.position = position
        self.value = value
        super().__init__(f"entry {value!r} at {position} is out of range")


class NotAssociative(SemigroupError):
    def __init__(self, witness):
        self.witness = witness
        a, b, c = witness
        super().__init__(f"({a}*{b})*{c} != {a}*({b}*{c})")


class CapExceeded(SemigroupError):
    pass


@dataclass(frozen=True)
class CayleyTable:
    """A finite magma given by its multiplication table."""

    table: tuple

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(row) for row in self.table))

    @property
    def order(self):
        return len(self.table)

    @classmethod
    def from_rows(cls, rows):
        t = cls(tuple(tuple(r) for r in rows))
        validate(t)
        return t


@dataclass(frozen=True)
class UnarySemigroup:
    """A Cayley table paired with a unary map x -> x'.

    ``canonical`` is True when the unary map is known to be the pseudoinverse
    map of the base table (see :mod:`epivariants.epigroup`).
    """

    base: CayleyTable
    unary: tuple
    canonical: bool = False

    def __post_init__(self):
        object.__setattr__(self, "unary", tuple(self.unary))

    @property
    def order(self):
        return self.base.order


def validate(t):
    """Check table shape, entry ranges and associativity.

    Raises EntryOutOfRange or NotAssociative (carrying the offending triple);
    returns the table unchanged when it is a semigroup.
    """
    n = t.order
    for a, row in enumerate(t.table):
        if len(row) != n:
            raise SemigroupError(f"row {a} has length {len(row)}, expected {n}")
        for b, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise EntryOutOfRange((a, b), v)
    tab = t.table
    for a in range(n):
        for b in range(n):
            ab = tab[a][b]
            for c in range(n):
                if tab[ab][c] != tab[a][tab[b][c]]:
                    raise NotAssociative((a, b, c))
    return t


def validate_unary(s):
    validate(s.base)
    n = s.order
    if len(s.unary) != n:
        raise SemigroupError(f"unary map has length {len(s.unary)}, expected {n}")
    for a, v in enumerate(s.unary):
        if not isinstance(v, int) or not 0 <= v < n:
            raise EntryOutOfRange(("unary", a), v)
    return s


def product(t, a, b):
    return t.table[a][b]


def power(t, a, k):
    """a^k by square-and-multiply; k must be >= 1 (no identity is assumed)."""
    if k < 1:
        raise ValueError("exponent must be a positive integer")
    tab = t.table
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else tab[result][base]
        k >>= 1
        if k:
            base = tab[base][base]
    return result


def identity_of(t):
    """The two-sided identity element, or None."""
    n = t.order
    tab = t.table
    for e in range(n):
        if all(tab[e][x] == x == tab[x][e] for x in range(n)):
            return e
    return None


def adjoin_identity(t, force=False):
    """S^1: return t unchanged if it is already a monoid, otherwise adjoin a
    new identity element with index n.  ``force`` adjoins unconditionally."""
    if not force and identity_of(t) is not None:
        return t
    n = t.order
    rows = [list(row) + [a] for a, row in enumerate(t.table)]
    rows.append(list(range(n + 1)))
    return CayleyTable(rows)


def zero_of(t):
    """The two-sided zero element, or None."""
    n = t.order
    tab = t.table
    for z in range(n):
        if all(tab[z][x] == z == tab[x][z] for x in range(n)):
            return z
    return None


@dataclass(frozen=True)
class Transformation:
    """A self-map of {0, ..., degree-1}."""

    degree: int
    images: tuple

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.degree:
            raise ValueError("image list does not match degree")
        for v in self.images:
            if not 0 <= v < self.degree:
                raise ValueError(f"image {v} out of range for degree {self.degree}")

    def __call__(self, x):
        return self.images[x]


def compose(f, g):
    """(f*g)(x) = g(f(x)): left-to-right action."""
    if f.degree != g.degree:
        raise ValueError("degrees differ")
    return Transformation(f.degree, tuple(g.images[v] for v in f.images))


def generate_from_transformations(gens, cap=10000):
    """Close a generating set of transformations under composition.

    Elements are ordered breadth-first over products in generator order.
    Returns (CayleyTable, labels) where labels[i] is the transformation
    realizing element i.
    """
    if not gens:
        raise ValueError("at least one generator is required")
    degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError("generators must share one degree")
    elements = []
    index = {}
    for g in gens:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
    frontier = list(elements)
    while frontier:
        new = []
        for f in frontier:
            for g in gens:
                h = compose(f, g)
                if h not in index:
                    if len(elements) >= cap:
                        raise CapExceeded(f"closure exceeds cap {cap}")
                    index[h] = len(elements)
                    elements.append(h)
                    new.append(h)
        frontier = new
    rows = [[index[compose(f, g)] for g in elements] for f in elements]
    return CayleyTable.from_rows(rows), tuple(elements)


def _unpack(s):
    if isinstance(s, UnarySemigroup):
        return s.base.table, s.unary
    return s.table, None


def _element_signatures(table, unary):
    """Relabeling-invariant per-element fingerprints, used to prune the
    isomorphism search."""
    n = len(table)
    total = Counter(v for row in table for v in row)
    sigs = []
    for a in range(n):
        row = table[a]
        col = tuple(table[x][a] for x in range(n))
        sig = (
            row[a] == a,                              # idempotent
            total[a],                                 # occurrences in the table
            row.count(a),
            col.count(a),
            tuple(sorted(Counter(row).values())),
            tuple(sorted(Counter(col).values())),
        )
        if unary is not None:
            sig += (unary[a] == a, unary.count(a))
        sigs.append(sig)
    return sigs


def find_isomorphism(s, t):
    """A bijection phi with phi(ab) = phi(a)phi(b) (and phi(a') = phi(a)' in
    the unary case), or None.  Backtracking with invariant-based pruning."""
    t1, u1 = _unpack(s)
    t2, u2 = _unpack(t)
    if (u1 is None) != (u2 is None):
        raise TypeError("cannot compare a plain table with a unary semigroup")
    n = len(t1)
    if n != len(t2):
        return None
    sig1 = _element_signatures(t1, u1)
    sig2 = _element_signatures(t2, u2)
    if sorted(sig1) != sorted(sig2):
        return None
    candidates = [[b for b in range(n) if sig2[b] == sig1[a]] for a in range(n)]
    phi = [-1] * n
    used = [False] * n

    def consistent(k):
        # check every constraint among the first k+1 assigned elements whose
        # product image is also assigned
        for x in range(k + 1):
            px = phi[x]
            for y in range(k + 1):
                z = t1[x][y]
                if phi[z] != -1 and t2[px][phi[y]] != phi[z]:
                    return False
            if u1 is not None and phi[u1[x]] != -1 and u2[px] != phi[u1[x]]:
                return False
        return True

    def extend(a):
        if a == n:
            return True
        for b in candidates[a]:
            if used[b]:
                continue
            phi[a] = b
            used[b] = True
            if consistent(a) and extend(a + 1):
                return True
            used[b] = False
        phi[a] = -1
        return False

    if extend(0):
        return tuple(phi)
    return None


def relabel(s, perm):
    """Apply the bijection a -> perm[a] to a table or unary semigroup."""
    table, unary = _unpack(s)
    n = len(table)
    inv = [0] * n
    for a, b in enumerate(perm):
        inv[b] = a
    rows = [[perm[table[inv[x]][inv[y]]] for y in range(n)] for x in range(n)]
    if unary is None:
        return CayleyTable(rows)
    new_unary = [perm[unary[inv[x]]] for x in range(n)]
    return UnarySemigroup(CayleyTable(rows), new_unary)


def _flat(s):
    table, unary = _unpack(s)
    flat = [v for row in table for v in row]
    if unary is not None:
        flat.extend(unary)
    return flat


def canonical_form(s):
    """Lexicographically minimal row-major serialization over all n!
    relabelings; equal byte strings iff isomorphic (same kind assumed)."""
    table, unary = _unpack(s)
    n = len(table)
    best = None
    for perm in permutations(range(n)):
        cand = _flat(relabel(s, perm))
        if best is None or cand < best:
            best = cand
    return bytes([n]) + bytes(best)


def transpose(t):
    """The opposite (anti-isomorphic) semigroup."""
    n = t.order
    return CayleyTable([[t.table[y][x] for y in range(n)] for x in range(n)])


def anti_canonical_form(s):
    """Canonical form merging anti-isomorphic pairs (plain tables only)."""
    if isinstance(s, UnarySemigroup):
        op = UnarySemigroup(transpose(s.base), s.unary, s.canonical)
    else:
        op = transpose(s)
    return min(canonical_form(s), canonical_form(op))


# ---------------------------------------------------------------------------
# Text format: first line n, then n rows of n space-separated integers,
# optionally a line "unary: i0 i1 ... i(n-1)".  '#' starts a comment line.

def parse_semigroup(text):
    lines = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            lines.append(line)
    if not lines:
        raise SemigroupError("empty input")
    n = int(lines[0])
    if len(lines) < n + 1:
        raise SemigroupError(f"expected {n} table rows, got {len(lines) - 1}")
    rows = []
    for i in range(n):
        row = tuple(int(v) for v in lines[1 + i].split())
        if len(row) != n:
            raise SemigroupError(f"row {i} has {len(row)} entries, expected {n}")
        rows.append(row)
    # range-check only; associativity is the job of validate(), so that a
    # broken table can still be loaded and diagnosed
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if not 0 <= v < n:
                raise EntryOutOfRange((i, j), v)
    t = CayleyTable(rows)
    rest = lines[1 + n:]
    if rest:
        if not rest[0].startswith("unary:"):
            raise SemigroupError(f"unexpected line: {rest[0]!r}")
        unary = tuple(int(v) for v in rest[0][len("unary:"):].split())
        validate(t)  # the canonical flag below needs a genuine semigroup
        from .epigroup import pseudoinverse_map  # deferred: epigroup builds on core
        s = UnarySemigroup(t, unary)
        validate_unary(s)
        canonical = pseudoinverse_map(t).unary == unary
        return UnarySemigroup(t, unary, canonical=canonical)
    return t


def emit_semigroup(s):
    table, unary = _unpack(s)
    lines = [str(len(table))]
    lines.extend(" ".join(str(v) for v in row) for row in table)
    if unary is not None:
        lines.append("unary: " + " ".join(str(v) for v in unary))
    return "\n".join(lines) + "\n"


def load_semigroup(path):
    with open(path) as fh:
        return parse_semigroup(fh.read())
