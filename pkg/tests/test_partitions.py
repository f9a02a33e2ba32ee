import itertools

import pytest

from raagspine import (
    all_partitions,
    enumerate_partitions,
    families,
    make_partition,
    whitehead_images,
)
from raagspine.graph import mask_iter, sv_inverse
from raagspine.partitions import PartitionError, render_word

from conftest import doubled_names, find_partition, signed, signed_set, small_fixture_graphs


def side_names(g, p, which=0):
    return {g.signed_name(s) for s in mask_iter(p.sides()[which])}


class TestEnumeration:
    def test_rake2_leaf_base(self):
        t2 = families.rake(2)
        parts = enumerate_partitions(t2, t2.vertex_id("u"))
        assert len(parts) == 2
        sides = {frozenset(side_names(t2, p, 0)) for p in parts}
        assert frozenset({"u"} | set(doubled_names(["a1", "b1"]))) in sides
        assert frozenset({"u"} | set(doubled_names(["a2", "b2"]))) in sides

    def test_rake_tooth_leaf_not_relevant(self):
        t3 = families.rake(3)
        assert enumerate_partitions(t3, t3.vertex_id("b1")) == []

    def test_partition_example_graph(self):
        g = families.partition_example_graph()
        parts = enumerate_partitions(g, g.vertex_id("v"))
        target = {"v", "x"} | set(doubled_names(["c2a", "c2b", "c2c"]))
        p = find_partition(g, parts, target)
        assert p is not None
        assert sorted(g.names[v] for v in p.max_bases) == ["v"]

    def test_count_matches_independent_assignment_enumerator(self):
        # independent oracle: put each unit on one of two sides, keep both thick
        for g in small_fixture_graphs().values():
            for v in range(g.n):
                units = g.partition_units(v)
                expected = 0
                for choice in itertools.product((0, 1), repeat=len(units)):
                    if len(units) and any(c == 0 for c in choice) and any(
                        c == 1 for c in choice
                    ):
                        expected += 1
                assert len(enumerate_partitions(g, v)) == expected

    def test_all_partitions_complete_graph_empty(self):
        assert all_partitions(families.complete(4)) == []

    def test_all_partitions_rake2(self):
        t2 = families.rake(2)
        parts = all_partitions(t2)
        assert len(parts) == 28
        for base in ("u", "v", "a1", "a2"):
            for p in enumerate_partitions(t2, t2.vertex_id(base)):
                assert p in parts

    def test_all_partitions_compatibility_example(self):
        g = families.compatibility_example_graph()
        parts = all_partitions(g)
        assert find_partition(g, parts, ["a", "c", "c^-1", "d", "d^-1"]) is not None
        assert find_partition(g, parts, ["b", "e"]) is not None
        assert find_partition(g, parts, ["d", "a", "a^-1", "b", "b^-1", "e^-1"]) is not None

    def test_all_partitions_sorted_and_unique(self):
        for g in small_fixture_graphs().values():
            parts = all_partitions(g)
            keys = [p.key() for p in parts]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)

    def test_edgeless_counts(self):
        assert len(all_partitions(families.edgeless(3))) == 22
        assert len(all_partitions(families.edgeless(4))) == 112


class TestInvariants:
    def test_round_trip_validation(self):
        for g in small_fixture_graphs().values():
            for p in all_partitions(g):
                rebuilt = make_partition(
                    g, list(mask_iter(p.side_a)), list(mask_iter(p.side_b))
                )
                assert rebuilt == p
                # re-enumerating from any legal base reproduces the object
                for m in p.max_bases:
                    assert p in enumerate_partitions(g, m)

    def test_blocks_partition_signed_universe(self):
        for g in small_fixture_graphs().values():
            full = (1 << (2 * g.n)) - 1
            for p in all_partitions(g):
                assert p.side_a | p.side_b | p.link == full
                assert not p.side_a & p.side_b
                assert not p.side_a & p.link
                assert not p.side_b & p.link
                assert p.thick

    def test_max_bases_share_link(self):
        for g in small_fixture_graphs().values():
            for p in all_partitions(g):
                assert p.max_bases
                links = {g.link_mask(m) for m in p.max_bases}
                assert links == {p.link}

    def test_split_contains_max(self):
        for g in small_fixture_graphs().values():
            for p in all_partitions(g):
                assert p.max_bases <= p.split

    def test_fig_3_2_split_and_max(self):
        g = families.compatibility_example_graph()
        p2 = find_partition(g, all_partitions(g), ["b", "e"])
        assert sorted(g.names[v] for v in p2.split) == ["b", "e"]
        assert sorted(g.names[v] for v in p2.max_bases) == ["b"]

    def test_thin_constructor_flagged(self):
        g = families.rake(1)
        thin = make_partition(
            g,
            [signed(g, "a1")],
            [signed(g, "a1^-1"), signed(g, "u"), signed(g, "u^-1")],
            allow_thin=True,
        )
        assert not thin.thick
        with pytest.raises(PartitionError):
            make_partition(
                g,
                [signed(g, "a1")],
                [signed(g, "a1^-1"), signed(g, "u"), signed(g, "u^-1")],
            )

    def test_cohesion_violation_rejected(self):
        t2 = families.rake(2)
        # a1 and b1 share a component of the graph minus st(u): cannot split them
        side1 = signed_set(t2, ["u", "a1", "a1^-1"])
        side2 = signed_set(
            t2, ["u^-1", "b1", "b1^-1"] + doubled_names(["a2", "b2"])
        )
        with pytest.raises(PartitionError):
            make_partition(t2, side1, side2)


class TestWhiteheadImages:
    def test_rake2_split_image(self):
        t2 = families.rake(2)
        parts = all_partitions(t2)
        p = find_partition(t2, parts, ["a1", "u"])
        images = whitehead_images(t2, p, signed(t2, "a1"))
        assert images[t2.vertex_id("u")] == (signed(t2, "u"), signed(t2, "a1^-1"))
        assert images[t2.vertex_id("b1")] == (signed(t2, "b1"),)

    def test_rake2_conjugated_image(self):
        t2 = families.rake(2)
        parts = all_partitions(t2)
        p = find_partition(t2, parts, ["a2", "u"] + doubled_names(["a1", "b1"]))
        images = whitehead_images(t2, p, signed(t2, "a2"))
        a1, a2 = signed(t2, "a1"), signed(t2, "a2")
        assert images[t2.vertex_id("a1")] == (a2, a1, sv_inverse(a2))
        assert render_word(t2, images[t2.vertex_id("a1")]) == "a2.a1.a2^-1"

    def test_link_fixed(self):
        for g in small_fixture_graphs().values():
            for p in all_partitions(g):
                m = min(p.max_bases)
                images = whitehead_images(g, p, 2 * m)
                for v in range(g.n):
                    if p.link >> (2 * v) & 1:
                        assert images[v] == (2 * v,)
                assert images[m] == (2 * m,)

    def test_base_and_inverse_choice_compose_to_identity(self):
        # apply phi(P, m) then phi(P, m^-1) as monoid maps on words,
        # freely reducing; every generator must come back to itself
        def reduce_word(word):
            out = []
            for s in word:
                if out and out[-1] == sv_inverse(s):
                    out.pop()
                else:
                    out.append(s)
            return tuple(out)

        def apply(images, word):
            out = []
            for s in word:
                img = images[s >> 1]
                if s & 1:
                    out.extend(sv_inverse(x) for x in reversed(img))
                else:
                    out.extend(img)
            return reduce_word(tuple(out))

        for g in small_fixture_graphs().values():
            for p in all_partitions(g):
                for m in p.max_bases:
                    fwd = whitehead_images(g, p, 2 * m)
                    bwd = whitehead_images(g, p, 2 * m + 1)
                    for v in range(g.n):
                        assert apply(bwd, fwd[v]) == (2 * v,)
                        assert apply(fwd, bwd[v]) == (2 * v,)

    def test_images_freely_reduced(self):
        for g in small_fixture_graphs().values():
            for p in all_partitions(g):
                for m in p.max_bases:
                    for word in whitehead_images(g, p, 2 * m).values():
                        for a, b in zip(word, word[1:]):
                            assert b != sv_inverse(a)

    def test_invalid_base_rejected(self):
        t2 = families.rake(2)
        p = find_partition(t2, all_partitions(t2), ["a1", "u"])
        with pytest.raises(PartitionError):
            whitehead_images(t2, p, signed(t2, "v"))
