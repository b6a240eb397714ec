from oim_lab.datamodel.types.base_types import FloatRangeBase, IntRangeBase


class IntNonNegative(IntRangeBase):
    _min: int = 0


class IntPositive(IntRangeBase):
    _min: int = 1


class FloatNonNegative(FloatRangeBase):
    _min: float = 0.0


class FloatPositive(FloatRangeBase):
    _min: float = 0.0
    _exclusive_min: bool = True


class FloatUnit(FloatRangeBase):
    _min: float = 0.0
    _max: float = 1.0


class Probability(FloatRangeBase):
    """
    Failure probabilities and similar, zero excluded.
    """

    _min: float = 0.0
    _exclusive_min: bool = True
    _max: float = 1.0
