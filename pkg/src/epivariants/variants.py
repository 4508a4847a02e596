"""Variants (sandwich products) and unary variants.

The variant of S at c multiplies by a *_c b = acb.  When S carries its
pseudoinverse map, the star operation x* = (xc)' x (cx)' turns the variant
into a unary semigroup; the checks below verify, table by table, that star
behaves exactly like the variant's own pseudoinverse.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CayleyTable, UnarySemigroup, CapExceeded, canonical_form, find_isomorphism
from .epigroup import element_index, pseudoinverse_map


@dataclass(frozen=True)
class CheckReport:
    name: str
    ok: bool
    witness: object = None


def variant(t, c):
    """The table of a *_c b = acb."""
    n = t.order
    tab = t.table
    if not 0 <= c < n:
        raise ValueError(f"sandwich element {c} out of range")
    return CayleyTable.from_rows(
        [[tab[tab[a][c]][b] for b in range(n)] for a in range(n)]
    )


def star(s, c):
    """The map x -> (xc)' x (cx)', evaluated in the base semigroup."""
    tab = s.base.table
    u = s.unary
    out = []
    for x in range(s.order):
        xc = tab[x][c]
        cx = tab[c][x]
        out.append(tab[tab[u[xc]][x]][u[cx]])
    return tuple(out)


def unary_variant(s, c):
    """(S, ._c, *): the variant table paired with the star map."""
    return UnarySemigroup(variant(s.base, c), star(s, c))


def check_pseudoinverse_transport(s, c):
    """Verify (xc)' = x* c and c x** = (cx)'' for all x, in the base
    semigroup.  Both hold whenever the unary map is the pseudoinverse."""
    tab = s.base.table
    u = s.unary
    st = star(s, c)
    for x in range(s.order):
        if u[tab[x][c]] != tab[st[x]][c]:
            return CheckReport("pseudoinverse-transport", False, ("(xc)' = x*c", x))
        if tab[c][st[st[x]]] != u[u[tab[c][x]]]:
            return CheckReport("pseudoinverse-transport", False, ("cx** = (cx)''", x))
    return CheckReport("pseudoinverse-transport", True)


def check_variant_index(s, c, a):
    """Compare the index of ca in the base with the index of a in the
    variant; the latter must be n or n+1.  The variant's index is computed
    from the variant table itself, independently of the star map."""
    base_index = element_index(s.base, s.base.table[c][a])
    variant_index = element_index(variant(s.base, c), a)
    return base_index, variant_index, variant_index in (base_index, base_index + 1)


def check_rho_homomorphism(t, c):
    """rho_c: x -> xc is a homomorphism from the variant onto Sc, and with
    canonical pseudoinverses it carries star to prime via (xc)' = x* c."""
    tab = t.table
    n = t.order
    v = variant(t, c)
    for x in range(n):
        for y in range(n):
            if tab[v.table[x][y]][c] != tab[tab[x][c]][tab[y][c]]:
                return CheckReport("rho-homomorphism", False, (x, y))
    transport = check_pseudoinverse_transport(pseudoinverse_map(t), c)
    if not transport.ok:
        return CheckReport("rho-homomorphism", False, transport.witness)
    return CheckReport("rho-homomorphism", True)


def is_unary_variant_of_completely_regular(s, cap=4, as_unary=True):
    """Search every completely regular semigroup T of the same order and
    every sandwich element for a unary variant isomorphic to s.

    The sandwich element ranges over T^1: sandwiching by the adjoined
    identity gives back T itself, so a completely regular semigroup always
    counts as a (trivial) variant.  Returns (T, c, isomorphism) with c = None
    for the trivial sandwich, or None when no witness exists.  ``as_unary=
    False`` downgrades to a plain-table comparison.
    """
    from . import search
    from .epigroup import is_completely_regular

    n = s.order
    if n > cap:
        raise CapExceeded(f"order {n} exceeds the cross-search cap {cap}")
    target = canonical_form(s if as_unary else s.base)
    for t in search.semigroup_tables(n):
        if not is_completely_regular(t):
            continue
        su = pseudoinverse_map(t)
        for c in range(n):
            uv = unary_variant(su, c)
            cand = uv if as_unary else uv.base
            if canonical_form(cand) == target:
                phi = find_isomorphism(cand, s if as_unary else s.base)
                return t, c, phi
        # c = adjoined identity: x *_1 y = xy and x* = x'
        cand = su if as_unary else t
        if canonical_form(cand) == target:
            phi = find_isomorphism(cand, s if as_unary else s.base)
            return t, None, phi
    return None
