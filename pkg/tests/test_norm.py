"""Restricted L1 extension, exact oracle, dual rounding."""

import random
from fractions import Fraction

from coverext.setfun import PartialFunction, eval_from_w
from coverext.norm import norm_extension_approx, norm_opt_exact, verify_dual_feasible

import oracles

F = Fraction


def pf(m, *pairs):
    return PartialFunction(m, tuple((mask, F(v)) for mask, v in pairs))


def test_triangle_instance():
    # f(1)=f(2)=f(12)=1: singletons alone must pay 1 somewhere (summing the
    # three absolute errors bounds any singleton solution below by 1), while
    # a single shared universe element fits exactly, so the true optimum is 0.
    instance = pf(2, (0b01, 1), (0b10, 1), (0b11, 1))
    result = norm_extension_approx(instance, with_exact=True)
    assert result.opt_restricted == F(1)
    assert result.opt_exact == F(0)
    assert result.additive_bound == F(3, 2)
    assert result.opt_exact <= result.opt_restricted <= result.opt_exact + result.additive_bound


def test_superadditive_instance():
    instance = pf(2, (0b01, 1), (0b10, 1), (0b11, 3))
    result = norm_extension_approx(instance, with_exact=True)
    assert result.opt_restricted == F(1)
    assert result.opt_exact == F(1)
    assert result.additive_bound == F(5, 2)


def test_singletons_only_is_exact():
    instance = pf(3, (0b001, 2), (0b010, 3), (0b100, 1))
    result = norm_extension_approx(instance, with_exact=True)
    assert instance.d == 1
    assert result.additive_bound == F(0)
    assert result.opt_restricted == result.opt_exact == F(0)


def test_zero_point_with_superset():
    assert norm_opt_exact(pf(2, (0b01, 0), (0b11, 1))) == F(0)


def test_extendible_instances_have_zero_exact_optimum():
    rng = random.Random(611)
    for _ in range(40):
        instance, _ = oracles.random_extendible_instance(rng, max_m=6, max_n=6)
        assert norm_opt_exact(instance) == F(0)


def test_dual_feasibility_examples():
    instance = pf(2, (0b01, 1), (0b11, 1))
    assert verify_dual_feasible(instance, (F(0), F(0)))
    assert verify_dual_feasible(instance, (F(1), F(-1)))
    assert not verify_dual_feasible(instance, (F(2), F(0)))
    assert not verify_dual_feasible(instance, (F(1), F(0)))  # span sum at {1} is +1


def test_guarantees_on_random_instances():
    rng = random.Random(612)
    for _ in range(80):
        instance = oracles.random_partial_function(rng, max_m=6, max_n=6)
        result = norm_extension_approx(instance, with_exact=True)
        opt, opt_r = result.opt_exact, result.opt_restricted
        assert opt <= opt_r <= opt + result.additive_bound
        assert opt_r <= instance.total_value  # zero function is always available
        assert sum(abs(e) for e in result.primal_errors) == opt_r
        assert all(mask.bit_count() == 1 for mask, _ in result.witness.support)
        assert verify_dual_feasible(instance, result.dual_rounded)
        priced = sum(v * y for (_, v), y in zip(instance.points, result.dual_rounded))
        assert priced <= opt


def test_witness_evaluates_consistently():
    instance = pf(2, (0b01, 1), (0b10, 1), (0b11, 3))
    result = norm_extension_approx(instance)
    for (mask, value), err in zip(instance.points, result.primal_errors):
        assert eval_from_w(result.witness, mask) - value == err
