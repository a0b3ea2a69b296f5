# Unit tests for tcores/abacus.py - abacus bijections, runners, cores and quotients
# Tests round trips on whole boxes and agreement with the rim-hook oracle

from itertools import product

import pytest
from hypothesis import given, strategies as st

from tcores.abacus import (
    AbacusWindow,
    CoreDescriptor,
    RectangleWord,
    RunnerDecomposition,
    core_descriptor,
    core_from_descriptor,
    core_size,
    descriptor_from_sizes,
    from_abacus,
    is_justified,
    justify,
    littlewood_compose,
    offset,
    positions_of_justification,
    rectangle_word,
    runner_lengths,
    runner_merge,
    runner_split,
    t_core_fast,
    t_quotient,
    to_abacus,
)
from tcores.exceptions import BoxMismatchError, DescriptorError, NotACoreError, RunnerShapeError
from tcores.partition_core import Box, Partition, enumerate_box, is_t_core, remove_rim_hooks, t_core_by_rim_hooks

from .conftest import BOX_2X2_RUNNERS_T3, CORE_2211, LAMBDA, LAMBDA_ABACUS_BITS


class TestAbacusWindow:
    """Test cases for AbacusWindow, to_abacus and from_abacus."""

    def test_running_example(self):
        """Test the abacus of (5,4,4,1) on indices -7..7."""
        window = to_abacus(LAMBDA)
        assert tuple(window.bit(i) for i in range(-7, 8)) == LAMBDA_ABACUS_BITS
        assert offset(window) == 0

    def test_padding_does_not_matter(self):
        """Test equality is on the infinite word."""
        assert AbacusWindow(-7, LAMBDA_ABACUS_BITS) == to_abacus(LAMBDA)
        assert hash(AbacusWindow(-7, LAMBDA_ABACUS_BITS)) == hash(to_abacus(LAMBDA))

    def test_empty_partition(self):
        """Test the empty partition is justified at 0."""
        window = to_abacus(Partition())
        assert window == AbacusWindow(0, ())
        assert window.bit(-1) == 1 and window.bit(0) == 0

    def test_single_box(self):
        """Test (1) has beads at 0, -2, -3, ..."""
        assert to_abacus(Partition.of(1)) == AbacusWindow(-2, (1, 0, 1))
        assert from_abacus(AbacusWindow(-2, (1, 0, 1))) == (0, Partition.of(1))

    def test_from_abacus_running_example(self):
        """Test reading (5,4,4,1) back."""
        assert from_abacus(AbacusWindow(-7, LAMBDA_ABACUS_BITS)) == (0, LAMBDA)

    @pytest.mark.parametrize("split", [-3, 0, 4])
    def test_justified_window(self, split):
        """Test a justified abacus reads as (split, ∅)."""
        assert from_abacus(AbacusWindow(split, ())) == (split, Partition())
        assert from_abacus(AbacusWindow(split - 2, (1, 1, 0, 0))) == (split, Partition())

    def test_offset_shifts_partition_reading(self):
        """Test a shifted abacus keeps its partition and changes the offset."""
        window = to_abacus(LAMBDA)
        shifted = AbacusWindow(window.start + 3, window.bits)
        assert from_abacus(shifted) == (3, LAMBDA)

    def test_justify(self):
        """Test justify moves the split to the offset."""
        assert justify(AbacusWindow(-2, (0, 1, 1))) == AbacusWindow(0, ())

    def test_json(self):
        """Test the JSON form of a window."""
        assert to_abacus(Partition.of(1)).to_json() == {"start": -1, "bits": "01"}
        assert AbacusWindow.from_json({"start": -1, "bits": "01"}) == to_abacus(Partition.of(1))

    def test_round_trip_par_6_6(self, par_6_6):
        """Test from_abacus(to_abacus(λ)) = (0, λ) on Par_{6,6}."""
        for partition in par_6_6:
            assert from_abacus(to_abacus(partition)) == (0, partition)


class TestRectangleWord:
    """Test cases for rectangle_word and RectangleWord."""

    def test_two_one(self):
        """Test the word of (2,1) in the 2x2 box."""
        assert rectangle_word(Partition.of(2, 1), Box(2, 2)).bits == (0, 1, 0, 1)

    def test_two_two(self):
        """Test the word of (2,2) in the 2x2 box."""
        assert rectangle_word(Partition.of(2, 2), Box(2, 2)).bits == (0, 0, 1, 1)

    @pytest.mark.parametrize("rows,cols", [(0, 3), (3, 0), (2, 4)])
    def test_empty_is_justified(self, rows, cols):
        """Test the word of ∅ is 1^r 0^s."""
        assert rectangle_word(Partition(), Box(rows, cols)).bits == (1,) * rows + (0,) * cols

    def test_rejects_non_fitting(self):
        """Test a partition outside the box is rejected."""
        with pytest.raises(BoxMismatchError):
            rectangle_word(LAMBDA, Box(3, 9))

    def test_rejects_wrong_weight(self):
        """Test words must carry exactly r ones."""
        with pytest.raises(RunnerShapeError):
            RectangleWord((1, 1, 1, 0), Box(2, 2))

    def test_bijection_par_6_6(self, par_6_6):
        """Test the words of Par_{6,6} are the C(12,6) distinct weight-6 words."""
        words = {rectangle_word(p, Box(6, 6)).bits for p in par_6_6}
        assert len(words) == 924
        assert all(len(w) == 12 and sum(w) == 6 for w in words)
        for partition in par_6_6:
            assert rectangle_word(partition, Box(6, 6)).to_partition() == partition


class TestRunners:
    """Test cases for runner_split, runner_merge and positions_of_justification."""

    def test_box_2x2_tuples(self):
        """Test every partition of the 2x2 box splits into its mod-3 tuple."""
        for partition, words in BOX_2X2_RUNNERS_T3.items():
            assert runner_split(rectangle_word(partition, Box(2, 2)), 3).words == words

    def test_merge_examples(self):
        """Test merging (10,1,0) and (01,0,1)."""
        box = Box(2, 2)
        assert runner_merge(RunnerDecomposition(((1, 0), (1,), (0,)), 3, box)).bits == (1, 1, 0, 0)
        assert runner_merge(RunnerDecomposition(((0, 1), (0,), (1,)), 3, box)).bits == (0, 0, 1, 1)

    def test_justified_word_splits_justified(self):
        """Test 1^r 0^s splits into justified runners."""
        split = runner_split(rectangle_word(Partition(), Box(4, 5)), 3)
        assert all(is_justified(w) for w in split.words)

    def test_sizes_of_2211(self):
        """Test the runner sizes of (2,2,1,1) in the 4x5 box."""
        split = runner_split(rectangle_word(CORE_2211, Box(4, 5)), 3)
        assert split.sizes == (0, 2, 2)
        assert split.lengths == (3, 3, 3)

    def test_runner_lengths(self):
        """Test n_i for the 2x2 box and t=3."""
        assert runner_lengths(Box(2, 2), 3) == (2, 1, 1)

    def test_rejects_bad_lengths(self):
        """Test runner words must have the lengths n_i."""
        with pytest.raises(RunnerShapeError):
            RunnerDecomposition(((1,), (1,), (0,)), 3, Box(2, 2))

    def test_rejects_bad_sizes(self):
        """Test runner sizes must sum to r."""
        with pytest.raises(RunnerShapeError):
            RunnerDecomposition(((1, 1), (1,), (0,)), 3, Box(2, 2))

    @pytest.mark.parametrize("t", range(2, 7))
    def test_split_merge_identity(self, par_6_6, t):
        """Test runner_merge(runner_split(v)) = v on Par_{6,6}."""
        for partition in par_6_6:
            word = rectangle_word(partition, Box(6, 6))
            assert runner_merge(runner_split(word, t)) == word

    @pytest.mark.parametrize("t", range(2, 6))
    def test_core_criterion(self, par_5_5, t):
        """Test λ is a t-core iff all its runner words are justified."""
        for partition in par_5_5:
            split = runner_split(rectangle_word(partition, Box(5, 5)), t)
            assert is_t_core(partition, t) == all(is_justified(w) for w in split.words)

    def test_positions_of_2211(self):
        """Test p = (1,1,-2) for (2,2,1,1)."""
        split = runner_split(rectangle_word(CORE_2211, Box(4, 5)), 3)
        assert positions_of_justification(split).positions == (1, 1, -2)

    def test_positions_of_empty(self):
        """Test the empty partition has all-zero positions."""
        split = runner_split(rectangle_word(Partition(), Box(3, 4)), 4)
        assert positions_of_justification(split).positions == (0, 0, 0, 0)

    def test_positions_of_non_core(self):
        """Test (2,1) has zero positions but a non-justified first runner."""
        split = runner_split(rectangle_word(Partition.of(2, 1), Box(2, 2)), 3)
        assert positions_of_justification(split).positions == (0, 0, 0)
        assert not is_justified(split.words[0])


class TestCoreSize:
    """Test cases for CoreDescriptor and core_size."""

    def test_2211(self):
        """Test the descriptor (1,1,-2) has size 6."""
        assert core_size(CoreDescriptor((1, 1, -2), 3)) == 6

    def test_zero(self):
        """Test the zero descriptor has size 0."""
        assert core_size(CoreDescriptor((0, 0, 0, 0), 4)) == 0

    def test_from_sizes(self):
        """Test a = (0,2,2) in a 4-row box gives p = (1,1,-2), whatever s is."""
        assert descriptor_from_sizes((0, 2, 2), 4, 3).positions == (1, 1, -2)

    def test_core_5_of_lambda(self):
        """Test the 5-core of (5,4,4,1) has size 4."""
        assert core_size(core_descriptor(LAMBDA, 5)) == 4

    def test_rejects_unbalanced(self):
        """Test descriptors must sum to zero."""
        with pytest.raises(DescriptorError):
            CoreDescriptor((1, 0, 0), 3)

    def test_rejects_wrong_length(self):
        """Test descriptors must have t entries."""
        with pytest.raises(DescriptorError):
            CoreDescriptor((1, -1), 3)

    @pytest.mark.parametrize("t", range(2, 7))
    def test_size_matches_core(self, par_6_6, t):
        """Test core_size of the word descriptor equals |t_core_fast(λ)| on Par_{6,6}."""
        for partition in par_6_6:
            split = runner_split(rectangle_word(partition, Box(6, 6)), t)
            assert core_size(positions_of_justification(split)) == t_core_fast(partition, t).size


class TestCoreAndQuotient:
    """Test cases for t_core_fast, t_quotient and littlewood_compose."""

    def test_core_5(self):
        """Test core_5((5,4,4,1)) = (3,1)."""
        assert t_core_fast(LAMBDA, 5) == Partition.of(3, 1)

    def test_core_of_two_two(self):
        """Test core_3((2,2)) = (1)."""
        assert t_core_fast(Partition.of(2, 2), 3) == Partition.of(1)

    def test_core_is_fixed_point(self):
        """Test a t-core is its own core."""
        assert t_core_fast(CORE_2211, 3) == CORE_2211

    def test_quotient_two_divisible(self):
        """Test the 2-quotient of (5,4,4,1) has total size 7."""
        assert sum(mu.size for mu in t_quotient(LAMBDA, 2)) == 7

    def test_quotient_of_core(self):
        """Test a t-core has empty quotient."""
        assert t_quotient(CORE_2211, 3) == (Partition(),) * 3

    def test_quotient_of_two_two(self):
        """Test the 3-quotient of (2,2) has total size 1."""
        assert sum(mu.size for mu in t_quotient(Partition.of(2, 2), 3)) == 1

    @pytest.mark.parametrize("t", range(2, 7))
    def test_oracle_equivalence(self, par_6_6, t):
        """Test t_core_fast agrees with the rim-hook oracle on Par_{6,6}."""
        for partition in par_6_6:
            core, removed = remove_rim_hooks(partition, t)
            assert t_core_fast(partition, t) == core
            assert sum(mu.size for mu in t_quotient(partition, t)) == removed
            assert core_size(core_descriptor(partition, t)) == core.size

    def test_compose_identity(self):
        """Test composing with empty quotients gives the core back."""
        assert littlewood_compose(CORE_2211, (Partition(),) * 3, 3) == CORE_2211

    def test_compose_single_box_quotient(self):
        """Test ((1), ((1),∅,∅), 3) gives (4)."""
        composed = littlewood_compose(Partition.of(1), (Partition.of(1), Partition(), Partition()), 3)
        assert composed == Partition.of(4)
        assert t_core_by_rim_hooks(composed, 3) == Partition.of(1)
        assert t_quotient(composed, 3) == (Partition.of(1), Partition(), Partition())

    def test_compose_rejects_non_core(self):
        """Test the core argument must be a t-core."""
        with pytest.raises(NotACoreError):
            littlewood_compose(Partition.of(2, 1), (Partition(),) * 3, 3)

    @pytest.mark.parametrize("t", range(2, 6))
    def test_decomposition_round_trip(self, par_6_6, t):
        """Test λ = compose(core(λ), quotient(λ)) on Par_{6,6}."""
        for partition in par_6_6:
            assert littlewood_compose(t_core_fast(partition, t), t_quotient(partition, t), t) == partition

    @given(
        st.integers(min_value=2, max_value=5).flatmap(
            lambda t: st.tuples(
                st.just(t),
                st.lists(
                    st.lists(st.integers(min_value=1, max_value=4), max_size=3).map(
                        lambda parts: Partition(tuple(sorted(parts, reverse=True)))
                    ),
                    min_size=t,
                    max_size=t,
                ),
            )
        )
    )
    def test_compose_inverts_quotient(self, case):
        """Test core and quotient of a composition recover the inputs."""
        t, quotients = case
        core = t_core_fast(Partition.of(3, 1), t)
        composed = littlewood_compose(core, quotients, t)
        assert t_core_fast(composed, t) == core
        assert t_quotient(composed, t) == tuple(quotients)
        assert composed.size == core.size + t * sum(mu.size for mu in quotients)


class TestCoreFromDescriptor:
    """Test cases for core_from_descriptor."""

    def test_2211(self):
        """Test (1,1,-2) builds (2,2,1,1)."""
        assert core_from_descriptor(CoreDescriptor((1, 1, -2), 3)) == CORE_2211

    def test_zero(self):
        """Test the zero descriptor builds ∅."""
        assert core_from_descriptor(CoreDescriptor((0, 0), 2)) == Partition()

    def test_round_trip_3_1(self):
        """Test the descriptor of (3,1) at t=5 builds (3,1)."""
        assert core_from_descriptor(core_descriptor(Partition.of(3, 1), 5)) == Partition.of(3, 1)

    @pytest.mark.parametrize("t", [2, 3, 4])
    def test_descriptor_round_trip(self, t):
        """Test positions_of_justification inverts core_from_descriptor for small descriptors."""
        for head in product(range(-2, 3), repeat=t - 1):
            last = -sum(head)
            if abs(last) > 2:
                continue
            descriptor = CoreDescriptor(head + (last,), t)
            core = core_from_descriptor(descriptor)
            assert is_t_core(core, t)
            assert core.size == core_size(descriptor)
            box = Box(core.length + t, core.largest + t)
            split = runner_split(rectangle_word(core, box), t)
            assert positions_of_justification(split) == descriptor
