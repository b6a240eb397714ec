import numpy as np
from pytest import raises

from oim_lab.utils.rng import Purpose, StreamFactory, make_rng


def test_streams_are_reproducible():
    a = StreamFactory(7).stream(Purpose.THRESHOLDS, 3, 11).random(5)
    b = StreamFactory(7).stream(Purpose.THRESHOLDS, 3, 11).random(5)
    assert np.array_equal(a, b)


def test_streams_differ_by_key():
    factory = StreamFactory(7)
    base = factory.stream(Purpose.THRESHOLDS, 0, 1).random(4)
    assert not np.array_equal(base, factory.stream(Purpose.TAU, 0, 1).random(4))
    assert not np.array_equal(base, factory.stream(Purpose.THRESHOLDS, 1, 1).random(4))
    assert not np.array_equal(base, factory.stream(Purpose.THRESHOLDS, 0, 2).random(4))
    assert not np.array_equal(base, StreamFactory(8).stream(Purpose.THRESHOLDS, 0, 1).random(4))


def test_replication_streams_do_not_depend_on_creation_order():
    factory = StreamFactory(1)
    first = factory.for_replication(2)
    _ = factory.for_replication(0).round(Purpose.TAU, 1).random(100)
    second = StreamFactory(1).for_replication(2)
    assert np.array_equal(first.round(Purpose.TAU, 5).random(3), second.round(Purpose.TAU, 5).random(3))


def test_evaluation_stream_is_long_lived():
    streams = StreamFactory(3).for_replication(0)
    assert streams.evaluation is streams.evaluation


def test_make_rng():
    assert np.array_equal(make_rng(5).random(3), make_rng(5).random(3))

    with raises(ValueError):
        StreamFactory(-1)
