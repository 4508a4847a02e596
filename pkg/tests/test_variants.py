import pytest

from epivariants.core import CapExceeded, CayleyTable, identity_of, validate
from epivariants.corpus import load_corpus
from epivariants.epigroup import pseudoinverse_map
from epivariants.search import semigroup_tables
from epivariants.variants import (
    check_pseudoinverse_transport,
    check_rho_homomorphism,
    check_variant_index,
    is_unary_variant_of_completely_regular,
    star,
    unary_variant,
    variant,
)
from epivariants.varieties import in_V

NULL2 = CayleyTable([[0, 0], [0, 0]])


def test_variant_at_identity_is_same_table():
    z3 = load_corpus("z3.sgp")
    assert variant(z3, 0) == z3
    s3 = load_corpus("s3.sgp")
    assert variant(s3, identity_of(s3)) == s3


def test_variant_of_z3_at_1():
    z3 = load_corpus("z3.sgp")
    v = variant(z3, 1)
    # oracle: x + y + 1 mod 3, a group with identity 2
    assert v.table == tuple(tuple((x + y + 1) % 3 for y in range(3)) for x in range(3))
    assert identity_of(v) == 2


def test_variant_at_zero_is_null():
    meet = load_corpus("semilattice2.sgp")
    assert variant(meet, 0) == NULL2


def test_variant_always_associative():
    for order in (1, 2, 3):
        for t in semigroup_tables(order):
            for c in range(order):
                validate(variant(t, c))


def test_variant_rejects_bad_sandwich():
    with pytest.raises(ValueError):
        variant(NULL2, 5)


def test_star_group_cases():
    z3 = pseudoinverse_map(load_corpus("z3.sgp"))
    assert star(z3, 0) == z3.unary  # identity sandwich reduces to x'
    # oracle: inverse w.r.t. the variant identity 2 is 1 - x mod 3
    assert star(z3, 1) == tuple((1 - x) % 3 for x in range(3))
    z2 = pseudoinverse_map(load_corpus("z2.sgp"))
    assert star(z2, 1) == (0, 1)


def test_unary_variant_of_z3():
    z3 = pseudoinverse_map(load_corpus("z3.sgp"))
    uv = unary_variant(z3, 1)
    assert uv.base.table == tuple(tuple((x + y + 1) % 3 for y in range(3)) for x in range(3))
    assert uv.unary == tuple((1 - x) % 3 for x in range(3))


def test_unary_variant_at_identity_is_identity_operation():
    z3 = pseudoinverse_map(load_corpus("z3.sgp"))
    uv = unary_variant(z3, 0)
    assert uv.base == z3.base and uv.unary == z3.unary


def test_star_equals_variant_pseudoinverse():
    for order in (1, 2, 3):
        for t in semigroup_tables(order):
            s = pseudoinverse_map(t)
            for c in range(order):
                assert star(s, c) == pseudoinverse_map(variant(t, c)).unary


def test_transport_trivial_and_z3():
    one = pseudoinverse_map(CayleyTable([[0]]))
    assert check_pseudoinverse_transport(one, 0).ok
    z3 = pseudoinverse_map(load_corpus("z3.sgp"))
    assert check_pseudoinverse_transport(z3, 1).ok


def test_transport_exhaustive_small_orders():
    for order in (1, 2, 3):
        for t in semigroup_tables(order):
            s = pseudoinverse_map(t)
            for c in range(order):
                assert check_pseudoinverse_transport(s, c).ok


def test_variant_index_group():
    z3 = pseudoinverse_map(load_corpus("z3.sgp"))
    for c in range(3):
        for a in range(3):
            assert check_variant_index(z3, c, a) == (1, 1, True)


def test_variant_index_null_variant():
    # variant of the meet semilattice at its zero is null: nonzero elements
    # get index 2 while c*a = 0 is idempotent in the base
    meet = pseudoinverse_map(load_corpus("semilattice2.sgp"))
    base_index, variant_index, ok = check_variant_index(meet, 0, 1)
    assert (base_index, variant_index, ok) == (1, 2, True)


def test_rho_homomorphism():
    z3 = load_corpus("z3.sgp")
    assert check_rho_homomorphism(z3, 1).ok
    w = load_corpus("w_not_v1.sgp")
    for c in range(4):
        assert check_rho_homomorphism(w.base, c).ok


def test_variant_of_cr_monoid_is_witnessed_by_itself():
    z3 = pseudoinverse_map(load_corpus("z3.sgp"))
    witness = is_unary_variant_of_completely_regular(z3)
    assert witness is not None
    t, c, phi = witness


def test_unary_variant_of_z3_recognized():
    z3 = pseudoinverse_map(load_corpus("z3.sgp"))
    uv = unary_variant(z3, 1)
    witness = is_unary_variant_of_completely_regular(uv)
    assert witness is not None


def test_census_references_are_not_variants():
    for k in "abc":
        ref = load_corpus(f"v1_nonvariant_{k}.sgp")
        assert in_V(ref, 1).holds
        assert is_unary_variant_of_completely_regular(ref) is None


def test_variant_search_cap():
    s3 = pseudoinverse_map(load_corpus("s3.sgp"))
    with pytest.raises(CapExceeded):
        is_unary_variant_of_completely_regular(s3)
