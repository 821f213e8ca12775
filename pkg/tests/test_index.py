from fractions import Fraction

import pytest

from foamcalc.index_formula import (IndexInput, formal_dimension,
                                    kappa_admissible, min_dots_for_nonzero)


def test_suspension_zero_case():
    # 0 = -3 + 4 - (1/2) * 2
    fd = formal_dimension(IndexInput(kappa=Fraction(0), chi=4, tau=2))
    assert fd.value == 0 and fd.is_integer


def test_torus_seam_zero_case():
    # b1 = 1 kills the -3(1 - b1 + b+) term
    fd = formal_dimension(IndexInput(kappa=Fraction(0), b1=1))
    assert fd.value == 0 and fd.is_integer


def test_one_eighth_action():
    fd = formal_dimension(IndexInput(kappa=Fraction(1, 8), b1=1))
    assert fd.value == 1


def test_affine_in_kappa():
    base = IndexInput(kappa=Fraction(3, 8), b1=2, bplus=1, chi=5,
                      self_int=Fraction(1, 2), tau=3)
    shifted = IndexInput(kappa=base.kappa + Fraction(1, 8), b1=2, bplus=1,
                         chi=5, self_int=Fraction(1, 2), tau=3)
    assert formal_dimension(shifted).value == formal_dimension(base).value + 1


def test_half_integer_self_intersection():
    fd = formal_dimension(IndexInput(kappa=Fraction(0), self_int=Fraction(1, 2)))
    assert fd.value == Fraction(-11, 4)
    assert not fd.is_integer


def test_lattice_violations_rejected():
    with pytest.raises(ValueError, match="1/32"):
        IndexInput(kappa=Fraction(1, 64))
    with pytest.raises(ValueError, match="half-integer"):
        IndexInput(kappa=Fraction(0), self_int=Fraction(1, 3))
    with pytest.raises(ValueError, match="nonnegative"):
        IndexInput(kappa=Fraction(0), tau=-1)


def test_min_dots_bounds():
    assert min_dots_for_nonzero(2, 0, 0) == 2   # sphere
    assert min_dots_for_nonzero(3, 0, 0) == 3   # three disks on a circle
    assert min_dots_for_nonzero(4, 0, 2) == 3   # the doubled cone


def test_min_dots_matches_formula():
    # the bound is the k with 8*0 + chi + s/2 - tau/2 - k = 0; taking b1=1
    # in the dimension formula kills its -3(1 - b1 + b+) term
    for chi in range(-2, 5):
        for tau in range(0, 4):
            for s2 in range(-3, 4):
                s = Fraction(s2, 2)
                bound = min_dots_for_nonzero(chi, s, tau)
                d = formal_dimension(IndexInput(kappa=Fraction(0), b1=1, chi=chi,
                                                self_int=s, tau=tau))
                assert bound == d.value


def test_kappa_admissibility():
    assert kappa_admissible(Fraction(1, 8), True)
    assert not kappa_admissible(Fraction(1, 8), False)
    assert kappa_admissible(0, True) and kappa_admissible(0, False)
    assert kappa_admissible(Fraction(1, 4), False)
    assert not kappa_admissible(Fraction(1, 16), True)
