import itertools

import pytest

from strata_lab import lattice, zoo
from strata_lab.coeff import Coefficient, ParamContext
from strata_lab.pbw import Element, gen, monomial, one
from strata_lab.strat import (GenericityUnverified, HPrime, MonomialIdeal,
                              StratError, brute_force_central_monomials,
                              central_multiplier_check,
                              commutation_exponent_matrix, hspec_quantum_affine,
                              ideal_of, is_central, normal_separation_witness,
                              poset_covers, poset_height, quotient_presentation,
                              stratification_axioms_check, stratum_report,
                              stratum_torus)

import oracles


@pytest.fixture(scope="module")
def qa2():
    return zoo.quantum_affine_generic(2)


@pytest.fixture(scope="module")
def qa3s():
    return zoo.quantum_affine_single(3)


def test_hspec_sizes(qa2):
    assert [w.members for w in hspec_quantum_affine(qa2)] == [(), (1,), (2,), (1, 2)]
    qa0 = zoo.quantum_affine_generic(0)
    assert [w.members for w in hspec_quantum_affine(qa0)] == [()]
    qa5 = zoo.quantum_affine_single(5)
    assert len(hspec_quantum_affine(qa5)) == 32


def test_hspec_is_boolean_lattice():
    p = zoo.quantum_affine_generic(3)
    primes = hspec_quantum_affine(p)
    covers = poset_covers(primes)
    # covering relations add exactly one generator
    for a, b in covers:
        assert set(a.members) < set(b.members)
        assert len(b.members) == len(a.members) + 1
    assert len(covers) == 3 * 2 ** 2  # n * 2^(n-1)
    for w in primes:
        assert poset_height(primes, w) == len(w.members)


def test_hspec_requires_affine_shape():
    with pytest.raises(StratError):
        hspec_quantum_affine(zoo.quantized_weyl_generic(1))
    with pytest.raises(StratError):
        hspec_quantum_affine(zoo.quantum_matrices_generic(2, 2))


def test_genericity_guard_rejects_signed_scalars():
    ctx = ParamContext(["q"])
    q = Coefficient.symbol(ctx, "q")
    spec = zoo.AntisymmetricMatrixSpec.from_upper(ctx, 2, {(1, 2): -q})
    p = zoo.quantum_affine(spec)
    with pytest.raises(GenericityUnverified):
        hspec_quantum_affine(p)


def test_monomial_prime_oracle_confirms_hspec():
    # every stable prime among monomially-generated candidates is variable-generated
    for n in (1, 2, 3):
        survivors = oracles.stable_prime_monomial_ideals(n)
        expected = set()
        for members in itertools.chain.from_iterable(
                itertools.combinations(range(n), k) for k in range(n + 1)):
            gens = []
            for i in members:
                e = [0] * n
                e[i] = 1
                gens.append(tuple(e))
            expected.add(tuple(sorted(gens)))
        assert survivors == expected


def test_quotient_presentation(qa2):
    q = quotient_presentation(qa2, HPrime((1,)))
    assert q.generators == ("x2",)
    assert not q.invertible[0]
    t = stratum_torus(qa2, HPrime((1,)))
    assert t.invertible[0]


def test_stratum_ranks_n2_generic(qa2):
    primes = hspec_quantum_affine(qa2)
    ranks = [stratum_report(qa2, w).center_rank for w in primes]
    assert ranks == [0, 1, 1, 0]


def test_stratum_rank1_is_laurent_in_x2(qa2):
    rep = stratum_report(qa2, HPrime((1,)))
    assert rep.torus.generators == ("x2",)
    assert rep.center_basis == [(1,)]
    assert rep.coefficient_field_note == "base field (generic parameters)"


def test_stratum_n3_single_param(qa3s):
    rep = stratum_report(qa3s, HPrime(()))
    assert rep.center_rank == 1
    assert rep.center_basis == [(1, -1, 1)]
    assert rep.exponent_matrix == [[0, 1, 1], [-1, 0, 1], [-1, -1, 0]]


def test_ore_product_is_ordered_monomial(qa3s):
    rep = stratum_report(qa3s, HPrime((2,)))
    assert rep.torus_size == 2
    assert rep.ore_set_generator_product == monomial(rep.torus, (1, 1))


def test_brute_force_central_monomials():
    t2 = stratum_torus(zoo.quantum_affine_generic(2), HPrime(()))
    assert brute_force_central_monomials(t2, 2) == [(0, 0)]
    commutative = zoo.quantum_torus(
        zoo.AntisymmetricMatrixSpec(ParamContext([]),
                                    [[Coefficient.one(ParamContext([]))] * 2] * 2))
    box = brute_force_central_monomials(commutative, 1)
    assert box == sorted(itertools.product((-1, 0, 1), repeat=2))
    t3 = stratum_torus(zoo.quantum_affine_single(3), HPrime(()))
    got = brute_force_central_monomials(t3, 2)
    assert got == [(-2, 2, -2), (-1, 1, -1), (0, 0, 0), (1, -1, 1), (2, -2, 2)]


def test_center_basis_matches_brute_force_small():
    for p in (zoo.quantum_affine_generic(3), zoo.quantum_affine_single(3)):
        for w in hspec_quantum_affine(p):
            rep = stratum_report(p, w)
            brute = brute_force_central_monomials(rep.torus, 2)
            boxed = [v for v in itertools.product(range(-2, 3), repeat=rep.torus_size)
                     if lattice.in_row_span(rep.center_basis, v)]
            assert sorted(boxed) == brute


def test_rank_bound_and_parity():
    for n in range(5):
        single = zoo.quantum_affine_single(n)
        for w in hspec_quantum_affine(single):
            rep = stratum_report(single, w)
            assert rep.center_rank <= rep.torus_size
            assert rep.center_rank % 2 == rep.torus_size % 2


def test_weight_spaces_of_torus_are_one_dimensional(qa2):
    # distinct torus monomials have distinct weights (graded-simplicity shadow)
    from strata_lab.grading import weight_of
    from strata_lab.strat import graded_simplicity_shadow
    t = stratum_torus(qa2, HPrime(()))
    assert graded_simplicity_shadow(t)
    seen = {}
    for vec in itertools.product(range(-2, 3), repeat=t.ngens):
        w = weight_of(t, vec)
        assert w not in seen or seen[w] == vec
        seen[w] = vec
    # a torus whose generators share a weight line fails the structural check
    from strata_lab.pbw import Presentation
    degenerate = zoo.quantum_torus_generic(2)
    collapsed = Presentation(degenerate.context, degenerate.generators,
                             degenerate.rules, [(1,), (1,)], invertible=True)
    assert not graded_simplicity_shadow(collapsed)


def test_witness_smallest_index_and_mu(qa2):
    witness = normal_separation_witness(qa2, HPrime(()), HPrime((1,)))
    assert witness.generator == 1
    q12 = Coefficient.symbol(qa2.context, "q_1_2")
    # c = x1 against x2: x1 x2 = q_12 (x2 x1)
    assert witness.certificate.mus[witness.quotient.gen_index("x2")] == q12
    assert witness.certificate.verify(witness.quotient)


def test_witness_choice_rule():
    p = zoo.quantum_affine_generic(3)
    witness = normal_separation_witness(p, HPrime((2,)), HPrime((1, 2, 3)))
    assert witness.generator == 1  # smallest index in the difference


def test_witness_requires_strict_inclusion(qa2):
    with pytest.raises(StratError):
        normal_separation_witness(qa2, HPrime((1,)), HPrime((1,)))
    with pytest.raises(StratError):
        normal_separation_witness(qa2, HPrime((1,)), HPrime((2,)))


def test_all_witnesses_reverify_n4():
    p = zoo.quantum_affine_single(4)
    primes = hspec_quantum_affine(p)
    for a in primes:
        for b in primes:
            if a.issubset(b) and a != b:
                witness = normal_separation_witness(p, a, b)
                assert witness.certificate.verify(witness.quotient)


def test_monomial_ideal_basics():
    ideal = MonomialIdeal.make(2, [(1, 0), (2, 1)])
    assert ideal.generators == ((1, 0),)  # reduction removes multiples
    assert ideal.contains_monomial((3, 2))
    assert not ideal.contains_monomial((0, 5))
    meet = MonomialIdeal.make(2, [(1, 0)]).intersect(MonomialIdeal.make(2, [(0, 1)]))
    assert meet.generators == ((1, 1),)
    assert MonomialIdeal.make(2, [(0, 0)]).is_whole_ring
    assert MonomialIdeal.make(2, []).is_zero


def test_locally_closed_witness_n2(qa2):
    report = stratification_axioms_check(qa2)
    by_prime = {w.hprime: w for w in report.locally_closed}
    assert by_prime[HPrime(())].bigger.generators == ((1, 1),)  # <x1 x2>
    assert by_prime[HPrime((1, 2))].bigger.is_whole_ring
    assert report.passed


def test_stratification_axioms_up_to_n4():
    for n in range(5):
        p = zoo.quantum_affine_single(n)
        assert stratification_axioms_check(p).passed


def test_central_multiplier_check():
    t3 = stratum_torus(zoo.quantum_affine_single(3), HPrime(()))
    z = monomial(t3, (1, -1, 1))
    assert is_central(t3, z)
    x1 = gen(t3, 0)
    assert not is_central(t3, x1)
    assert central_multiplier_check(t3, z, x1)
    assert central_multiplier_check(t3, z, monomial(t3, (2, -2, 2)))
    assert central_multiplier_check(t3, one(t3), x1)
    with pytest.raises(ValueError):
        central_multiplier_check(t3, x1, z)
    with pytest.raises(ValueError):
        central_multiplier_check(t3, Element(), z)


def test_exponent_matrix_rows(qa2):
    t = stratum_torus(qa2, HPrime(()))
    assert commutation_exponent_matrix(t) == [[0, 1], [-1, 0]]


def test_domain_shadow_check():
    from strata_lab.strat import domain_shadow_check
    assert domain_shadow_check(zoo.quantum_affine_generic(3))
    assert domain_shadow_check(zoo.quantum_torus_single(2))
    assert not domain_shadow_check(zoo.quantum_matrices_generic(2, 2))


def test_ideal_of(qa3s):
    ideal = ideal_of(qa3s, HPrime((1, 3)))
    assert ideal.generators == ((0, 0, 1), (1, 0, 0))
