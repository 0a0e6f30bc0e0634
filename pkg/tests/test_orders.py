import random
from fractions import Fraction
from math import isqrt

import pytest

from zdcert.errors import MismatchError, ResourceLimitError
from zdcert.orders import (
    FracIdeal,
    class_group,
    fundamental_unit,
    ideal_class,
    ideals_of_norm_up_to,
    is_principal,
    maximal_order,
    minkowski_bound,
    prime_ideals_above,
    principal_generator,
    principal_ideal,
    trivial_class,
    unit_ideal,
)
from zdcert.quadratic import QuadElement, is_squarefree

O10 = maximal_order(10)


# ---------------------------------------------------------------------------
# independent class-number oracles working purely with binary quadratic forms
# ---------------------------------------------------------------------------


def h_imaginary_by_forms(disc: int) -> int:
    """Count reduced positive definite forms of fundamental discriminant disc < 0."""
    assert disc < 0
    count = 0
    a = 1
    while 3 * a * a <= -disc:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a:
                continue
            if a == c and b < 0:
                continue
            count += 1
        a += 1
    return count


def _reduced_indefinite(a: int, b: int, disc: int) -> bool:
    # |sqrt(disc) - 2|a|| < b < sqrt(disc), all comparisons exact
    if b <= 0 or b * b >= disc:
        return False
    if (2 * abs(a) + b) ** 2 <= disc:
        return False
    t = 2 * abs(a) - b
    return t <= 0 or t * t < disc


def _rho_indefinite(a: int, b: int, c: int, disc: int) -> tuple[int, int, int]:
    s = isqrt(disc)
    r = (-b) % (2 * abs(c))
    b2 = s - ((s - r) % (2 * abs(c)))
    return c, b2, (b2 * b2 - disc) // (4 * c)


def narrow_h_by_form_cycles(disc: int) -> int:
    """Count rho-cycles of reduced indefinite forms: the narrow class number."""
    assert disc > 0
    forms = set()
    for b in range(1, isqrt(disc) + 1):
        if (disc - b * b) % 4:
            continue
        m = (disc - b * b) // 4  # = -a*c > 0
        for a in range(1, m + 1):
            if m % a:
                continue
            for aa in (a, -a):
                if _reduced_indefinite(aa, b, disc):
                    forms.add((aa, b, (b * b - disc) // (4 * aa)))
    cycles = 0
    todo = set(forms)
    while todo:
        start = todo.pop()
        cycles += 1
        f = _rho_indefinite(*start, disc)
        while f != start:
            todo.discard(f)
            f = _rho_indefinite(*f, disc)
    return cycles


def wide_h_by_forms(order) -> int:
    if order.disc < 0:
        return h_imaginary_by_forms(order.disc)
    h_plus = narrow_h_by_form_cycles(order.disc)
    if fundamental_unit(order).norm() == -1:
        return h_plus
    assert h_plus % 2 == 0
    return h_plus // 2


def h_by_pairwise_equivalence(order) -> int:
    """Partition all ideals of norm <= the Minkowski bound by equivalence tests."""
    reps: list[FracIdeal] = []
    for ideal in ideals_of_norm_up_to(order, minkowski_bound(order)):
        if not any(is_principal(ideal * rep.conjugate()) for rep in reps):
            reps.append(ideal)
    return max(len(reps), 1)


def fundamental_discriminants(limit: int):
    for d in range(-limit, limit + 1):
        if d in (0, 1) or not is_squarefree(d):
            continue
        disc = d if d % 4 == 1 else 4 * d
        if abs(disc) <= limit:
            yield maximal_order(d)


# ---------------------------------------------------------------------------
# orders and ideals
# ---------------------------------------------------------------------------


def test_maximal_order_examples():
    assert O10.disc == 40 and O10.omega() == QuadElement(10, 0, 1)
    o5 = maximal_order(5)
    assert o5.disc == 5 and o5.omega() == QuadElement(5, Fraction(1, 2), Fraction(1, 2))
    om5 = maximal_order(-5)
    assert om5.disc == -20 and om5.omega() == QuadElement(-5, 0, 1)


def test_maximal_order_rejects_bad_d():
    for bad in (0, 1, 12, -4):
        with pytest.raises(ValueError):
            maximal_order(bad)


def test_ideal_normal_form_validation():
    FracIdeal(O10, 2, 0)
    FracIdeal(O10, 3, 1)
    with pytest.raises(ValueError):
        FracIdeal(O10, 7, 1)  # 7 does not divide 1 - 10
    with pytest.raises(ValueError):
        FracIdeal(O10, -2, 0)
    with pytest.raises(ValueError):
        FracIdeal(O10, 2, 0, 0)


def test_ideal_mul_examples():
    ramified = FracIdeal(O10, 2, 0)
    assert ramified * ramified == FracIdeal(O10, 1, 0, 2)  # (2, sqrt10)^2 = (2)
    anything = FracIdeal(O10, 3, 1, Fraction(5, 7))
    assert anything * unit_ideal(O10) == anything
    assert FracIdeal(O10, 3, 1).norm() == 3
    assert ramified.norm() == 2
    assert (ramified * ramified).norm() == 4


def test_mixed_orders_rejected():
    with pytest.raises(MismatchError):
        FracIdeal(O10, 2, 0) * FracIdeal(maximal_order(2), 2, 0)


def _random_ideal(rng, order, max_a=40, scaled=False):
    while True:
        a = rng.randint(1, max_a)
        bs = [b for b in range(a) if order.norm_b_plus_omega(b) % a == 0]
        if bs:
            scale = Fraction(rng.randint(1, 6), rng.randint(1, 6)) if scaled else Fraction(1)
            return FracIdeal(order, a, rng.choice(bs), scale)


def test_ideal_norm_multiplicative_random():
    rng = random.Random(20260820)
    for d in (10, 2, 79, -5, -23):
        order = maximal_order(d)
        for _ in range(500):
            i1 = _random_ideal(rng, order, scaled=True)
            i2 = _random_ideal(rng, order, scaled=True)
            assert (i1 * i2).norm() == i1.norm() * i2.norm()


def test_ideal_multiplication_ring_laws():
    rng = random.Random(20260825)
    for d in (10, -5, 13):
        order = maximal_order(d)
        for _ in range(60):
            i1, i2, i3 = (_random_ideal(rng, order, scaled=True) for _ in range(3))
            assert i1 * i2 == i2 * i1
            assert (i1 * i2) * i3 == i1 * (i2 * i3)


def test_ideal_contains_its_generator_products():
    # each product of the two-generator bases must land back in the product
    # lattice: recompute membership through the normal form
    rng = random.Random(20260826)
    for d in (10, -5):
        order = maximal_order(d)
        for _ in range(60):
            i1, i2 = _random_ideal(rng, order), _random_ideal(rng, order)
            prod = i1 * i2
            for g1 in i1.generators():
                for g2 in i2.generators():
                    x, y = order.to_coords(g1 * g2)
                    s = prod.scale
                    # solve x + y*w = s*(m*a + n*(b+w)) over the integers
                    n = y / s
                    m = (x / s - n * prod.b) / prod.a
                    assert n.denominator == 1 and m.denominator == 1


def test_ideal_times_conjugate_is_norm():
    rng = random.Random(20260821)
    for d in (10, -5, 13):
        order = maximal_order(d)
        for _ in range(100):
            ideal = _random_ideal(rng, order)
            assert ideal * ideal.conjugate() == unit_ideal(order) * ideal.norm()


def test_principal_ideal_construction():
    alpha = QuadElement(10, 1, 1)
    ideal = principal_ideal(O10, alpha)
    assert ideal == FracIdeal(O10, 9, 1)
    assert ideal.norm() == abs(alpha.norm())
    # fractional generator
    half = principal_ideal(O10, QuadElement(10, Fraction(1, 2), 0))
    assert half == FracIdeal(O10, 1, 0, Fraction(1, 2))
    with pytest.raises(ValueError):
        principal_ideal(O10, QuadElement(10, 0, 0))


def test_principality_examples():
    assert not is_principal(FracIdeal(O10, 2, 0))  # x^2 - 10 y^2 = +-2 impossible mod 5
    assert not is_principal(FracIdeal(O10, 3, 1))
    gen_ideal = principal_ideal(O10, QuadElement(10, 3, 1))
    assert is_principal(gen_ideal)
    # 3 + sqrt(10) is a unit, so the ideal is the whole order
    assert gen_ideal == unit_ideal(O10)
    witness = principal_generator(gen_ideal)
    assert witness is not None and principal_ideal(O10, witness) == gen_ideal


def test_principal_generator_witnesses_random():
    rng = random.Random(20260822)
    for d in (10, 2, 15, -5, -23):
        order = maximal_order(d)
        for _ in range(60):
            x = rng.randint(-9, 9)
            y = rng.randint(-9, 9)
            alpha = order.from_coords(x, y)
            if alpha.is_zero():
                continue
            ideal = principal_ideal(order, alpha)
            witness = principal_generator(ideal)
            assert witness is not None
            assert principal_ideal(order, witness) == ideal


def test_scaled_ideals_keep_principality_class():
    ideal = FracIdeal(O10, 2, 0, Fraction(3, 7))
    assert not is_principal(ideal)
    scaled_unit = FracIdeal(O10, 1, 0, Fraction(5, 2))
    gen = principal_generator(scaled_unit)
    assert gen == QuadElement(10, Fraction(5, 2))
    # imaginary case with a rational scale
    om5 = maximal_order(-5)
    assert principal_generator(FracIdeal(om5, 1, 0, Fraction(3, 2))) == QuadElement(-5, Fraction(3, 2))
    assert not is_principal(FracIdeal(om5, 2, 1, Fraction(7, 3)))


def test_reduction_handles_states_beyond_sqrt_disc():
    # ideals whose theta starts with b_D^2 > D push the continued fraction
    # through negative intermediate denominators; (13, 7 + sqrt10) is one
    ideal = FracIdeal(O10, 13, 7)
    assert not is_principal(ideal)  # x^2 - 10 y^2 = +-13 impossible mod 5
    assert ideal_class(ideal) == ideal_class(FracIdeal(O10, 2, 0))  # h = 2
    conj = ideal.conjugate()
    assert conj == FracIdeal(O10, 13, 6)
    assert is_principal(ideal * conj)  # their product is (13)
    big = principal_ideal(O10, QuadElement(10, 1, 31))  # norm 1 - 9610
    gen = principal_generator(big)
    assert gen is not None and principal_ideal(O10, gen) == big


def test_equivalent_ideals_same_class():
    rng = random.Random(20260823)
    for d in (10, 79, -5, -23):
        order = maximal_order(d)
        for _ in range(40):
            ideal = _random_ideal(rng, order)
            x, y = rng.randint(-6, 6), rng.randint(-6, 6)
            alpha = order.from_coords(x, y)
            if alpha.is_zero():
                continue
            assert ideal_class(ideal) == ideal_class(ideal * alpha)
            assert ideal_class(ideal) == ideal_class(ideal * Fraction(3, 5))


def test_class_equality_matches_equivalence_test():
    rng = random.Random(20260824)
    for d in (10, -23, 15):
        order = maximal_order(d)
        ideals = [_random_ideal(rng, order, max_a=25) for _ in range(12)]
        for i1 in ideals:
            for i2 in ideals:
                same = ideal_class(i1) == ideal_class(i2)
                assert same == is_principal(i1 * i2.conjugate())


def test_class_group_examples():
    cg10 = class_group(O10)
    assert cg10.invariants == (2,) and cg10.h == 2
    nontrivial = cg10.nontrivial_classes()[0]
    assert nontrivial.rep == FracIdeal(O10, 2, 0)
    assert (nontrivial * nontrivial).is_trivial

    cg2 = class_group(maximal_order(2))
    assert cg2.invariants == () and cg2.h == 1
    assert minkowski_bound(maximal_order(2)) < 2

    cgm5 = class_group(maximal_order(-5))
    assert cgm5.h == 2 and cgm5.invariants == (2,)


def test_class_group_respects_bound():
    with pytest.raises(ResourceLimitError):
        class_group(O10, bound=10)


def test_prime_ideal_splitting():
    # 3 splits in Z[sqrt(10)]: two primes with b in {1, 2}
    split = prime_ideals_above(O10, 3)
    assert sorted(i.b for i in split) == [1, 2]
    # 2 ramifies: one prime
    assert [i.b for i in prime_ideals_above(O10, 2)] == [0]
    # 7 is inert
    assert prime_ideals_above(O10, 7) == []
    with pytest.raises(ValueError):
        prime_ideals_above(O10, 6)


def test_fundamental_unit_examples():
    u10 = fundamental_unit(O10)
    assert u10 == QuadElement(10, 3, 1) and u10.norm() == -1
    assert fundamental_unit(maximal_order(2)) == QuadElement(2, 1, 1)
    u3 = fundamental_unit(maximal_order(3))
    assert u3 == QuadElement(3, 2, 1) and u3.norm() == 1
    assert fundamental_unit(maximal_order(5)) == QuadElement(5, Fraction(1, 2), Fraction(1, 2))
    assert fundamental_unit(maximal_order(19)) == QuadElement(19, 170, 39)
    with pytest.raises(ValueError):
        fundamental_unit(maximal_order(-5))


def pell_fundamental(d: int) -> QuadElement:
    """Independent oracle: scan y upward for the least solution of the unit norm
    equation (x^2 - d y^2 = +-4 in half coordinates when d = 1 mod 4, else +-1)."""
    targets = (-4, 4) if d % 4 == 1 else (-1, 1)
    y = 1
    while True:
        hits = []
        for t in targets:
            x2 = d * y * y + t
            if x2 <= 0:
                continue
            x = isqrt(x2)
            if x * x == x2 and (d % 4 != 1 or (x - y) % 2 == 0):
                if d % 4 == 1:
                    hits.append(QuadElement(d, Fraction(x, 2), Fraction(y, 2)))
                else:
                    hits.append(QuadElement(d, x, y))
        if hits:
            return min(hits, key=lambda u: (u.a, u.b))
        y += 1


def test_fundamental_unit_matches_pell_oracle():
    for d in (2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 33, 62):
        assert fundamental_unit(maximal_order(d)) == pell_fundamental(d), d


def test_fundamental_unit_minimality_brute_force_box():
    # nothing with bounded coordinates can sit strictly between 1 and the unit
    for d in (2, 3, 5, 6, 7, 10, 13, 21):
        order = maximal_order(d)
        u = fundamental_unit(order)
        for x in range(-60, 61):
            for y in range(-60, 61):
                v = order.from_coords(x, y)
                if abs(v.norm()) == 1 and v > 1:
                    assert not (u > v), (d, v)


def test_class_numbers_against_form_oracles_small():
    for order in fundamental_discriminants(60):
        assert class_group(order).h == wide_h_by_forms(order), order.disc


def test_class_numbers_against_pairwise_oracle_small():
    for order in fundamental_discriminants(60):
        assert class_group(order).h == h_by_pairwise_equivalence(order), order.disc


def test_known_class_numbers():
    known = {-163: 1, -23: 3, -5: 2, -15: 2, -1: 1, -3: 1, 5: 1, 2: 1, 10: 2, 15: 2, 79: 3}
    for d, h in known.items():
        assert class_group(maximal_order(d)).h == h, d


def test_class_group_structure_z3():
    # disc -23 has class group Z/3: check invariants and generator order
    cg = class_group(maximal_order(-23))
    assert cg.invariants == (3,)
    c = cg.nontrivial_classes()[0]
    assert not (c * c).is_trivial and (c * c * c).is_trivial


def test_class_group_noncyclic():
    # disc -84: class group Z/2 x Z/2
    cg = class_group(maximal_order(-21))
    assert cg.invariants == (2, 2)
    assert all((c * c).is_trivial for c in cg.classes)


def test_trivial_class_and_inverse():
    cg = class_group(O10)
    c = cg.nontrivial_classes()[0]
    assert trivial_class(O10).is_trivial
    assert (c * c.inverse()).is_trivial
    assert c ** -1 == c.inverse()
    assert c ** 2 == trivial_class(O10)
