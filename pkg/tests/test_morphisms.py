from itertools import product as iproduct

import pytest

import ogroup as og
import oracle_utils as oracle
from ogroup import corpus


class TestEnumerateHoms:
    def test_s3_endomorphisms(self, s3):
        expected = oracle.all_homs(s3, s3)
        homs = og.enumerate_homs(s3, s3)
        assert [f.map for f in homs.morphisms] == expected
        assert len(homs) == 10
        assert sum(homs.normal_flags) == 7

    def test_from_trivial(self, s3):
        homs = og.enumerate_homs(og.build_named("cyclic", 1), s3)
        assert len(homs) == 1

    def test_c6_endomorphisms_all_normal(self, c6):
        homs = og.enumerate_homs(c6, c6)
        assert len(homs) == 6
        assert all(homs.normal_flags)

    def test_agrees_with_all_maps_oracle(self):
        groups = [(k, g) for k, g in corpus.corpus_groups(8) if not g.operators]
        sources = [(k, g) for k, g in groups if g.order <= 8]
        for ks, G in sources:
            for kt, H in groups:
                maps = [f.map for f in og.enumerate_homs(G, H).morphisms]
                assert maps == oracle.all_homs(G, H), (ks, kt)

    def test_operator_pairs_respected(self):
        v = corpus.load("v4rot")
        homs = og.enumerate_homs(v, v)
        # identity, the rotation itself and its square, and zero
        assert len(homs) == 4
        for f in homs.morphisms:
            og.OmegaMorphism(v, v, f.map)

    def test_cap(self, s3):
        big = og.direct_product([s3, s3]).product
        with pytest.raises(og.CapExceededError):
            og.enumerate_homs(big, big)

    def test_sorted_lexicographically(self, c6):
        maps = [f.map for f in og.enumerate_homs(c6, c6).morphisms]
        assert maps == sorted(maps)


class TestIsNormalMorphism:
    def test_surjective_always_normal(self, s3):
        for f in og.enumerate_homs(s3, s3).morphisms:
            if f.is_surjective():
                assert og.is_normal_morphism(f)

    def test_inclusion_of_a3(self, s3, a3_in_s3):
        sub, embed = og.subgroup_as_group(a3_in_s3)
        assert og.is_normal_morphism(embed)

    def test_inclusion_of_order2_not_normal(self, s3):
        h = og.generated_subgroup(s3, [1])
        sub, embed = og.subgroup_as_group(h)
        assert not og.is_normal_morphism(embed)

    def test_matches_image_oracle(self):
        pairs = [(g, h) for _, g in corpus.corpus_groups(6) if not g.operators
                 for _, h in corpus.corpus_groups(8) if not h.operators]
        for G, H in pairs:
            if G.order > 6:
                continue
            for f in og.enumerate_homs(G, H).morphisms:
                got = og.is_normal_morphism(f)
                want = all(
                    oracle.is_normal_subset(H, {f.map[x] for x in s})
                    for s in oracle.normal_subgroups(G))
                assert got == want

    def test_composition_preserves_normality(self, c6, s3):
        for key, G in corpus.corpus_groups(6):
            homs = og.enumerate_homs(G, G)
            normal = homs.normal_morphisms()
            for f in normal:
                for g in normal:
                    assert og.is_normal_morphism(g.compose(f)), key

    def test_normal_image_does_not_imply_normal_morphism(self, v4):
        # embeddings of the four-group onto {1, r^2, s, s r^2} in the square's
        # symmetry group have a normal image, yet send the internal line
        # {1, s-copy} to a non-normal subgroup
        d4 = og.build_named("dihedral", 4)
        homs = og.enumerate_homs(v4, d4)
        embeddings = [(f, flag) for f, flag in zip(homs.morphisms, homs.normal_flags)
                      if f.is_injective()]
        assert embeddings
        for f, flag in embeddings:
            image = og.subgroup_from_mask(d4, f.image_mask())
            assert og.is_normal(d4, image)
            assert flag is False

    def test_direct_summand_image_is_normal(self, c6):
        # images that are direct summands always yield normal morphisms
        for key, G in corpus.corpus_groups(8):
            if G.order > 8:
                continue
            homs = og.enumerate_homs(G, G)
            for f, flag in zip(homs.morphisms, homs.normal_flags):
                image = og.subgroup_from_mask(G, f.image_mask(), require_omega=False)
                if not image.omega_closed or not og.is_normal(G, image):
                    continue
                if og.find_supplementary(G, image) is not None:
                    assert flag, key


class TestComponentOfMorphism:
    def test_identity_restricts_to_identity(self, c6):
        c2 = og.build_named("cyclic", 2)
        f = og.identity_morphism(c6)
        comp = og.component_of_morphism(f, c2)
        assert comp.map == (0, 1)

    def test_cube_map_kills_c3_part(self, c6):
        cube = og.OmegaMorphism(c6, c6, [(3 * x) % 6 for x in range(6)])
        comp = og.component_of_morphism(cube, og.build_named("cyclic", 3))
        assert comp.map == (0, 0, 0)

    def test_functorial_under_composition(self, c6):
        c2 = og.build_named("cyclic", 2)
        normal = og.enumerate_homs(c6, c6).normal_morphisms()
        for f in normal:
            for g in normal:
                lhs = og.component_of_morphism(g.compose(f), c2)
                rhs = og.component_of_morphism(g, c2).compose(
                    og.component_of_morphism(f, c2))
                assert lhs.map == rhs.map

    def test_requires_normal_morphism(self, s3):
        h = og.generated_subgroup(s3, [1])
        _, embed = og.subgroup_as_group(h)
        with pytest.raises(og.ValidationError, match="normal"):
            og.component_of_morphism(embed, og.build_named("cyclic", 2))

    def test_component_of_normal_is_normal(self):
        # restriction stays normal for semisimple endpoints
        for key, G in corpus.corpus_groups(8):
            if not og.is_semisimple(G) or G.order > 8:
                continue
            for f in og.enumerate_homs(G, G).normal_morphisms():
                for cert in og.support(G):
                    comp = og.component_of_morphism(f, cert)
                    assert og.is_normal_morphism(comp), key


class TestPhi:
    def test_c6_counting(self, c6):
        normal = og.enumerate_homs(c6, c6).normal_morphisms()
        assert len(normal) == 6
        counts = []
        for cert in og.support(c6):
            sub, _ = og.subgroup_as_group(og.isotypical_component(c6, cert))
            counts.append(len(og.enumerate_homs(sub, sub).normal_morphisms()))
        assert sorted(counts) == [2, 3]
        assert len(normal) == counts[0] * counts[1]

    def test_identity_vector_roundtrip(self, c6):
        f = og.identity_morphism(c6)
        vec = og.phi(f)
        assert og.phi_inverse(c6, c6, vec) == f
        for _, comp in vec.entries:
            assert comp.is_bijective()

    def test_roundtrip_both_ways(self, c6):
        normal = og.enumerate_homs(c6, c6).normal_morphisms()
        seen = set()
        for f in normal:
            vec = og.phi(f)
            seen.add(vec.signature())
            assert og.phi_inverse(c6, c6, vec) == f
        assert len(seen) == len(normal)

    def test_mixed_endpoints(self, c6):
        c2 = og.build_named("cyclic", 2)
        normal = og.enumerate_homs(c6, c2).normal_morphisms()
        comp_counts = 1
        shared = og.support(c6) & og.support(c2)
        for cert in shared:
            s, _ = og.subgroup_as_group(og.isotypical_component(c6, cert))
            t, _ = og.subgroup_as_group(og.isotypical_component(c2, cert))
            comp_counts *= len(og.enumerate_homs(s, t).normal_morphisms())
        assert len(normal) == comp_counts == 2
        for f in normal:
            assert og.phi_inverse(c6, c2, og.phi(f)) == f

    def test_vector_enumeration_surjectivity(self, c6):
        shared = list(og.support(c6))
        pools = []
        for cert in shared:
            sub, _ = og.subgroup_as_group(og.isotypical_component(c6, cert))
            pools.append(og.enumerate_homs(sub, sub).normal_morphisms())
        for combo in iproduct(*pools):
            vec = dict(zip(shared, combo))
            f = og.phi_inverse(c6, c6, vec)
            back = og.phi(f).as_dict()
            assert all(back[c] == vec[c] for c in shared)

    def test_requires_semisimple(self, s3):
        with pytest.raises(og.ValidationError, match="semisimple"):
            og.phi(og.identity_morphism(s3))

    def test_vector_keys_validated(self, c6):
        with pytest.raises(og.ValidationError, match="shared support"):
            og.phi_inverse(c6, c6, {})
