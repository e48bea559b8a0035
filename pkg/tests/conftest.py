from fractions import Fraction
from random import Random

import pytest

from skewdet import (
    Commutative,
    Differential,
    FieldSpec,
    PrimeField,
    QShift,
    RationalFunctions,
    Rationals,
    Shift,
)


@pytest.fixture
def rng():
    return Random(20240811)


@pytest.fixture
def spec_q():
    return FieldSpec(Rationals(), Commutative())


@pytest.fixture
def spec_f5():
    return FieldSpec(PrimeField(5), Commutative())


@pytest.fixture
def spec_qt_comm():
    return FieldSpec(RationalFunctions(Rationals()), Commutative())


@pytest.fixture
def spec_qt_diff():
    return FieldSpec(RationalFunctions(Rationals()), Differential())


@pytest.fixture
def spec_f5t_diff():
    return FieldSpec(RationalFunctions(PrimeField(5)), Differential())


@pytest.fixture
def spec_qt_shift():
    return FieldSpec(RationalFunctions(Rationals()), Shift())


@pytest.fixture
def spec_f5t_shift():
    return FieldSpec(RationalFunctions(PrimeField(5)), Shift())


@pytest.fixture
def spec_qt_qshift():
    return FieldSpec(RationalFunctions(Rationals()), QShift(Fraction(2)))


@pytest.fixture
def all_twist_specs(
    spec_qt_comm, spec_qt_diff, spec_f5t_diff, spec_qt_shift, spec_f5t_shift, spec_qt_qshift
):
    return [
        spec_qt_comm,
        spec_qt_diff,
        spec_f5t_diff,
        spec_qt_shift,
        spec_f5t_shift,
        spec_qt_qshift,
    ]
