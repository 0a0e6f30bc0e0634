import random

import pytest

from zdcert.errors import MismatchError
from zdcert.orders import class_group, ideal_class, maximal_order, trivial_class
from zdcert.steinitz import (
    AVClass,
    ModuleClass,
    class_of_ideal_sum,
    direct_sum,
    free_module,
    tensor_av,
    zero_module,
)

O10 = maximal_order(10)
CG10 = class_group(O10)
TRIV = trivial_class(O10)
NONTRIV = CG10.nontrivial_classes()[0]


def test_module_class_invariants():
    with pytest.raises(ValueError):
        ModuleClass(-1, TRIV)
    with pytest.raises(ValueError):
        ModuleClass(0, NONTRIV)  # zero module forces trivial Steinitz class
    assert zero_module(O10) == ModuleClass(0, TRIV)


def test_class_of_ideal_sum_examples():
    assert class_of_ideal_sum([TRIV, TRIV]) == free_module(O10, 2)
    assert class_of_ideal_sum([NONTRIV, NONTRIV]) == free_module(O10, 2)  # [I]^2 = 1
    assert class_of_ideal_sum([NONTRIV]) == ModuleClass(1, NONTRIV)
    assert class_of_ideal_sum([NONTRIV]) != free_module(O10, 1)
    with pytest.raises(ValueError):
        class_of_ideal_sum([])
    with pytest.raises(MismatchError):
        class_of_ideal_sum([TRIV, trivial_class(maximal_order(2))])


def test_direct_sum_examples():
    c = NONTRIV
    assert direct_sum(ModuleClass(1, c), ModuleClass(1, c)) == ModuleClass(2, c * c)
    assert direct_sum(zero_module(O10), ModuleClass(3, c)) == ModuleClass(3, c)
    assert direct_sum(ModuleClass(2, c), free_module(O10, 3)) == ModuleClass(5, c)
    with pytest.raises(MismatchError):
        direct_sum(free_module(O10, 1), free_module(maximal_order(2), 1))


def _random_module(rng, classes):
    rank = rng.randint(0, 6)
    if rank == 0:
        return zero_module(O10)
    return ModuleClass(rank, rng.choice(classes))


def test_direct_sum_monoid_laws_random():
    rng = random.Random(20260840)
    classes = list(CG10.classes)
    zero = zero_module(O10)
    for _ in range(500):
        m1, m2, m3 = (_random_module(rng, classes) for _ in range(3))
        assert direct_sum(m1, m2) == direct_sum(m2, m1)
        assert direct_sum(direct_sum(m1, m2), m3) == direct_sum(m1, direct_sum(m2, m3))
        assert direct_sum(zero, m1) == m1


def test_ideal_sum_invariance():
    # permutation invariance and replacing ideals by equivalent ones
    rng = random.Random(20260841)
    from zdcert.orders import FracIdeal

    pool = [
        ideal_class(FracIdeal(O10, 2, 0)),
        ideal_class(FracIdeal(O10, 3, 1)),
        ideal_class(FracIdeal(O10, 9, 1)),
        TRIV,
    ]
    for _ in range(500):
        classes = [rng.choice(pool) for _ in range(rng.randint(1, 5))]
        shuffled = classes[:]
        rng.shuffle(shuffled)
        assert class_of_ideal_sum(classes) == class_of_ideal_sum(shuffled)
    # alpha * I has the same class, so the module class cannot change
    from zdcert.quadratic import QuadElement

    scaled = ideal_class(FracIdeal(O10, 2, 0) * QuadElement(10, 1, 1))
    assert class_of_ideal_sum([scaled, NONTRIV]) == class_of_ideal_sum([NONTRIV, NONTRIV])


def test_tensor_functor_injective_on_classes():
    rng = random.Random(20260842)
    classes = list(CG10.classes)
    for _ in range(500):
        m1, m2 = _random_module(rng, classes), _random_module(rng, classes)
        assert (tensor_av(m1, "A") == tensor_av(m2, "A")) == (m1 == m2)
    assert tensor_av(free_module(O10, 1), "A") != tensor_av(free_module(O10, 1), "other-base")


def test_square_isomorphism_phenomenon():
    a_like = ModuleClass(1, TRIV)
    b_like = ModuleClass(1, NONTRIV)
    assert a_like != b_like
    assert direct_sum(a_like, a_like) == direct_sum(b_like, b_like)
    # through the tensor functor: A x A = B x B while A differs from B
    assert tensor_av(direct_sum(a_like, a_like), "A") == tensor_av(direct_sum(b_like, b_like), "A")
    assert tensor_av(a_like, "A") != tensor_av(b_like, "A")
    assert tensor_av(zero_module(O10), "A") == AVClass("A", zero_module(O10))
