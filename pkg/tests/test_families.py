import json
from collections import Counter
from dataclasses import FrozenInstanceError

import pytest

from conftest import catalan
from hooklab import (
    ConstantBranching,
    DepthBranching,
    FamilyConfigError,
    OracleSyntaxError,
    TableBranching,
    enum_binary,
    enum_ordered,
    enum_tbar,
    hook_lengths,
    parse_oracle,
)


class TestOracles:
    def test_constant(self):
        o = ConstantBranching(3)
        assert o.child_count(()) == 3
        assert o.child_count((0, 1, 2)) == 3

    def test_depth_last_repeats(self):
        o = DepthBranching((2, 3))
        assert o.child_count(()) == 2
        assert o.child_count((0,)) == 3
        assert o.child_count((0, 1, 2)) == 3

    def test_table_with_default(self):
        o = TableBranching((((), 2), ((0,), 3)), ConstantBranching(1))
        assert o.child_count(()) == 2
        assert o.child_count((0,)) == 3
        assert o.child_count((1,)) == 1

    def test_counts_must_be_positive(self):
        with pytest.raises(FamilyConfigError):
            ConstantBranching(0)
        with pytest.raises(FamilyConfigError):
            DepthBranching((2, 0))

    def test_oracles_are_frozen(self):
        o = ConstantBranching(2)
        with pytest.raises(FrozenInstanceError):
            o.count = 3


class TestParseOracle:
    def test_const(self):
        assert parse_oracle("const:2") == ConstantBranching(2)

    def test_depth(self):
        assert parse_oracle("depth:2,3,1") == DepthBranching((2, 3, 1))

    def test_file(self, tmp_path):
        path = tmp_path / "o.json"
        path.write_text(json.dumps({"": 2, "0/1": 3, "default": "depth:2,3"}))
        o = parse_oracle(f"file:{path}")
        assert o.child_count(()) == 2
        assert o.child_count((0, 1)) == 3
        assert o.child_count((5,)) == 3  # depth default

    def test_errors_cite_the_token(self):
        with pytest.raises(OracleSyntaxError, match="no ':'"):
            parse_oracle("const")
        with pytest.raises(OracleSyntaxError, match="'x'"):
            parse_oracle("const:x")
        with pytest.raises(OracleSyntaxError, match="'0'"):
            parse_oracle("depth:2,0")
        with pytest.raises(OracleSyntaxError, match="unknown oracle kind"):
            parse_oracle("grid:2")

    def test_file_errors(self, tmp_path):
        with pytest.raises(OracleSyntaxError, match="cannot read"):
            parse_oracle(f"file:{tmp_path}/missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("[1,2]")
        with pytest.raises(OracleSyntaxError, match="default"):
            parse_oracle(f"file:{bad}")
        noisy = tmp_path / "noisy.json"
        noisy.write_text("{", encoding="ascii")
        with pytest.raises(OracleSyntaxError, match="not valid JSON"):
            parse_oracle(f"file:{noisy}")
        badkey = tmp_path / "badkey.json"
        badkey.write_text(json.dumps({"0/x": 2, "default": "const:2"}))
        with pytest.raises(OracleSyntaxError, match="'0/x'"):
            parse_oracle(f"file:{badkey}")


class TestEnumBinary:
    def test_counts(self):
        for n in range(1, 11):
            assert sum(1 for _ in enum_binary(n)) == catalan(n)

    def test_small_examples(self):
        assert [t.enc for t in enum_binary(1)] == ["(.,.)"]
        assert sum(1 for _ in enum_binary(3)) == 5
        assert sum(1 for _ in enum_binary(5)) == 42

    def test_lex_order_no_duplicates(self):
        for n in range(1, 9):
            encs = [t.enc for t in enum_binary(n)]
            assert encs == sorted(encs)
            assert len(set(encs)) == len(encs)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            enum_binary(0)


class TestEnumOrdered:
    def test_counts(self):
        for n in range(1, 11):
            assert sum(1 for _ in enum_ordered(n)) == catalan(n - 1)

    def test_small_examples(self):
        assert [t.enc for t in enum_ordered(1)] == ["()"]
        assert sum(1 for _ in enum_ordered(4)) == 5
        assert sum(1 for _ in enum_ordered(6)) == 42

    def test_lex_order_no_duplicates(self):
        for n in range(1, 9):
            encs = [t.enc for t in enum_ordered(n)]
            assert encs == sorted(encs)
            assert len(set(encs)) == len(encs)


class GuardedOracle(ConstantBranching):
    """Raises when probed deeper than a hard limit."""

    def __init__(self, count, max_depth):
        super().__init__(count)
        object.__setattr__(self, "max_depth", max_depth)

    def child_count(self, addr):
        if len(addr) > self.max_depth:
            raise AssertionError(f"oracle probed at depth {len(addr)}")
        return super().child_count(addr)


class TestEnumTbar:
    def test_const_1_is_the_path(self):
        for n in range(1, 7):
            trees = list(enum_tbar(ConstantBranching(1), n))
            assert len(trees) == 1
            assert trees[0].size == n

    def test_const_2_matches_binary_hooks(self):
        for n in range(1, 9):
            tb = Counter(
                tuple(sorted(hook_lengths(t).values()))
                for t in enum_tbar(ConstantBranching(2), n)
            )
            bb = Counter(
                tuple(sorted(hook_lengths(t).values())) for t in enum_binary(n)
            )
            assert tb == bb

    def test_mixed_oracle_subtrees(self, mixed_oracle):
        trees = list(enum_tbar(mixed_oracle, 3))
        assert [t.enc for t in trees] == [
            "([0]()[1]())",
            "([0]([0]()))",
            "([0]([1]()))",
            "([0]([2]()))",
            "([1]([0]()))",
        ]

    def test_lex_order_no_duplicates(self, mixed_oracle):
        for oracle in (ConstantBranching(2), DepthBranching((2, 3)), mixed_oracle):
            for n in range(1, 8):
                encs = [t.enc for t in enum_tbar(oracle, n)]
                assert encs == sorted(encs)
                assert len(set(encs)) == len(encs)

    def test_respects_oracle(self, mixed_oracle):
        # child slots always within the oracle's width at that address
        def check(node, addr):
            width = mixed_oracle.child_count(addr)
            for slot, child in node.children:
                assert 0 <= slot < width
                check(child, addr + (slot,))

        for n in range(1, 7):
            for t in enum_tbar(mixed_oracle, n):
                check(t, ())

    def test_oracle_is_probed_lazily(self):
        # a size-n subtree never needs child counts below depth n-2
        for n in range(2, 8):
            guarded = GuardedOracle(2, n - 2)
            assert sum(1 for _ in enum_tbar(guarded, n)) == catalan(n)

    def test_wide_slots_sort_as_text(self):
        # slot 12 sorts before slot 2 in the bracket encoding
        o = ConstantBranching(13)
        encs = [t.enc for t in enum_tbar(o, 2)]
        assert encs == sorted(encs)
        assert len(encs) == 13
