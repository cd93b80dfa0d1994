import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hooklab import (
    AddressError,
    BinaryFamily,
    BinaryTree,
    LabeledTree,
    LabelingError,
    OrderedFamily,
    OrderedTree,
    SlottedTree,
    TreeParseError,
    addresses,
    check_labeling,
    completion,
    decode,
    depth,
    encode,
    enum_binary,
    enum_ordered,
    grow,
    hook_lengths,
    subtree_at,
)


def leaf():
    return BinaryTree()


LEFT_PATH_3 = BinaryTree(BinaryTree(BinaryTree()))
CHERRY = BinaryTree(BinaryTree(), BinaryTree())


class TestEncoding:
    def test_binary_examples(self):
        assert encode(leaf()) == "(.,.)"
        assert encode(BinaryTree(None, leaf())) == "(.,(.,.))"
        assert encode(LEFT_PATH_3) == "(((.,.),.),.)"

    def test_ordered_examples(self):
        star = OrderedTree((OrderedTree(), OrderedTree(), OrderedTree()))
        assert encode(star) == "(()()())"
        assert encode(OrderedTree()) == "()"

    def test_slotted_example(self):
        t = SlottedTree(((0, SlottedTree()), (2, SlottedTree())))
        assert encode(t) == "([0]()[2]())"

    def test_encoding_lengths(self):
        for n in (1, 3, 5):
            for t in enum_binary(n):
                assert len(t.enc) == 4 * n + 1
            for t in enum_ordered(n):
                assert len(t.enc) == 2 * n

    def test_round_trip_exhaustive(self):
        for n in range(1, 9):
            for t in enum_binary(n):
                assert decode(t.enc) == t
            for t in enum_ordered(n):
                assert decode(t.enc) == t

    def test_labeled_round_trip(self):
        lt = LabeledTree(CHERRY, {(): 1, (0,): 3, (1,): 2})
        assert lt.enc == "(:1(:3.,.),(:2.,.))"
        back = decode(lt.enc)
        assert isinstance(back, LabeledTree)
        assert back.shape == CHERRY
        assert back.labels == lt.labels

    def test_slotted_needs_family_hint_when_childless(self):
        assert decode("()") == OrderedTree()
        assert decode("()", family="slotted") == SlottedTree()

    def test_parse_error_position(self):
        with pytest.raises(TreeParseError) as err:
            decode("(.,.")
        assert "position" in str(err.value)
        for bad in ["", "(", "(.,.))", "((),", "(.,)", "(a)"]:
            with pytest.raises(TreeParseError):
                decode(bad)

    def test_slot_order_must_increase(self):
        with pytest.raises(TreeParseError):
            decode("([1]()[1]())", family="slotted")


class TestAddresses:
    def test_preorder(self):
        t = decode("((())())")
        assert addresses(t) == [(), (0,), (0, 0), (1,)]

    def test_subtree_at(self):
        t = decode("((())())")
        assert subtree_at(t, (0,)) == decode("(())")
        assert subtree_at(t, ()) == t
        with pytest.raises(AddressError):
            subtree_at(t, (2,))
        with pytest.raises(AddressError):
            subtree_at(t, (0, 0, 0))

    def test_depth(self):
        t = LEFT_PATH_3
        assert depth(t, ()) == 0
        assert depth(t, (0, 0)) == 2
        with pytest.raises(AddressError):
            depth(t, (1, 0))

    def test_binary_single_child_side_is_significant(self):
        assert BinaryTree(leaf(), None) != BinaryTree(None, leaf())


class TestHooks:
    def test_single_vertex(self):
        assert hook_lengths(leaf()) == {(): 1}

    def test_path(self):
        assert hook_lengths(LEFT_PATH_3) == {(): 3, (0,): 2, (0, 0): 1}

    def test_cherry(self):
        assert hook_lengths(CHERRY) == {(): 3, (0,): 1, (1,): 1}

    def test_root_hook_is_size(self):
        for n in range(1, 7):
            for t in enum_binary(n):
                assert hook_lengths(t)[()] == n

    def test_hook_excess_equals_depth_sum(self):
        # both count strict ancestor-descendant pairs
        for n in range(1, 8):
            for t in enum_binary(n):
                hooks = hook_lengths(t)
                assert sum(h - 1 for h in hooks.values()) == sum(
                    len(a) for a in hooks
                )
            for t in enum_ordered(n):
                hooks = hook_lengths(t)
                assert sum(h - 1 for h in hooks.values()) == sum(
                    len(a) for a in hooks
                )


class TestCompletion:
    def test_single_vertex(self):
        c = completion(leaf())
        assert c == CHERRY
        assert c.size == 3

    def test_path_2(self):
        c = completion(BinaryTree(BinaryTree()))
        assert c.size == 5

    def test_counts_and_shape(self):
        for n in range(1, 9):
            for t in enum_binary(n):
                c = completion(t)
                assert c.size == 2 * n + 1
                leaves = [
                    a
                    for a in addresses(c)
                    if subtree_at(c, a).size == 1
                ]
                assert len(leaves) == n + 1
                internal = [a for a in addresses(c) if a not in set(leaves)]
                assert sorted(internal) == sorted(addresses(t))
                # complete: every vertex has 0 or 2 children
                for a in addresses(c):
                    node = subtree_at(c, a)
                    kids = sum(1 for _ in node.child_items())
                    assert kids in (0, 2)


class TestLabeling:
    def test_valid(self):
        lt = LabeledTree(CHERRY, {(): 1, (0,): 2, (1,): 3})
        check_labeling(lt)

    def test_root_must_be_one(self):
        lt = LabeledTree(CHERRY, {(): 2, (0,): 1, (1,): 3})
        with pytest.raises(LabelingError):
            check_labeling(lt)

    def test_parent_before_child(self):
        lt = LabeledTree(
            BinaryTree(BinaryTree(BinaryTree())), {(): 1, (0,): 3, (0, 0): 2}
        )
        with pytest.raises(LabelingError):
            check_labeling(lt)

    def test_labels_must_be_bijection(self):
        lt = LabeledTree(CHERRY, {(): 1, (0,): 2, (1,): 2})
        with pytest.raises(LabelingError):
            check_labeling(lt)

    def test_labels_must_cover_addresses(self):
        with pytest.raises(LabelingError):
            LabeledTree(CHERRY, {(): 1, (0,): 2})


@st.composite
def random_binary_shapes(draw):
    n = draw(st.integers(1, 8))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return grow(BinaryFamily(), n, random.Random(seed)).shape


@st.composite
def random_ordered_shapes(draw):
    n = draw(st.integers(1, 8))
    seed = draw(st.integers(0, 2 ** 32 - 1))
    return grow(OrderedFamily(n), n, random.Random(seed)).shape


@settings(deadline=None)
@given(random_binary_shapes())
def test_binary_round_trip_property(shape):
    assert decode(encode(shape)) == shape
    assert len(encode(shape)) == 4 * shape.size + 1


@settings(deadline=None)
@given(random_ordered_shapes())
def test_ordered_round_trip_property(shape):
    assert decode(encode(shape)) == shape
    assert len(encode(shape)) == 2 * shape.size
