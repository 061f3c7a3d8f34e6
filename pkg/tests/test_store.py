from hypothesis import given
from hypothesis import strategies as st

from hcprop.kernel import Store, assign, bits, remove_value, to_mask


def one(values):
    return Store.from_domains([values])


def test_remove_value_basic():
    s = remove_value(one({1, 2, 3}), 0, 2)
    assert s.values(0) == [1, 3]
    assert not s.failed


def test_remove_last_value_fails():
    assert remove_value(one({1}), 0, 1).failed


def test_remove_absent_value_is_noop():
    s = one({1, 3})
    out = remove_value(s, 0, 2)
    assert out == s and out.values(0) == [1, 3]


def test_functional_forms_leave_input_alone():
    s = one({1, 2, 3})
    remove_value(s, 0, 1)
    assign(s, 0, 2)
    assert s.values(0) == [1, 2, 3]


def test_assign():
    assert assign(one({1, 2, 3}), 0, 2).values(0) == [2]
    assert assign(one({1, 3}), 0, 2).failed
    s = assign(one({2}), 0, 2)
    assert s.values(0) == [2] and s.is_assigned(0) and s.value(0) == 2


def test_failed_stores_are_equal():
    a = Store.from_domains([{1}, {2, 3}])
    b = Store.from_domains([{5, 6}], [(0, 9)])
    a.fail()
    b.remove_value(0, 5)
    b.remove_value(0, 6)
    assert a.failed and b.failed
    assert a == b and hash(a) == hash(b)


def test_interval_bounds():
    s = Store.from_domains([], [(0, 10)])
    assert s.set_min(0, 3) and not s.set_min(0, 2)
    assert s.set_max(0, 7) and (s.lo[0], s.hi[0]) == (3, 7)
    s.set_max(0, 2)
    assert s.failed


def test_negative_values_rejected():
    import pytest
    with pytest.raises(ValueError):
        to_mask([-1])


@given(st.sets(st.integers(0, 40)), st.integers(0, 45))
def test_remove_is_contracting(values, v):
    s = Store.from_domains([values])
    out = remove_value(s, 0, v)
    assert out.subset_of(s)
    if not out.failed:
        assert set(out.values(0)) == set(values) - {v}


@given(st.integers(0, 1 << 70))
def test_bits_roundtrip(mask):
    assert to_mask(bits(mask)) == mask
