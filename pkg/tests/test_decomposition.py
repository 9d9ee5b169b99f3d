import pytest

import ogroup as og
import oracle_utils as oracle
from ogroup import corpus


def c6_parts(c6):
    return og.generated_subgroup(c6, [3]), og.generated_subgroup(c6, [2])


class TestSocle:
    def test_s3(self, s3, a3_in_s3):
        assert og.socle(s3).mask == a3_in_s3.mask

    def test_s3_squared(self, s3):
        w = og.direct_product([s3, s3])
        soc = og.socle(w.product, cap=36)
        assert soc.size == 9
        expected = 0
        for a in (0, 3, 4):
            for b in (0, 3, 4):
                expected |= 1 << w.product.table[w.injections[0].map[a]][w.injections[1].map[b]]
        assert soc.mask == expected

    def test_a4_trivial(self, a4):
        # contrast with the classical socle, which is the four-group here
        assert og.socle(a4).mask == 1

    def test_socle_always_normal(self):
        for key, G in corpus.corpus_groups(12):
            assert og.is_normal(G, og.socle(G)), key


class TestIsotypicalComponent:
    def test_c6_c2_part(self, c6):
        c2 = og.build_named("cyclic", 2)
        comp = og.isotypical_component(c6, c2)
        assert comp.members() == (0, 3)

    def test_s3_no_normal_c2(self, s3):
        comp = og.isotypical_component(s3, og.build_named("cyclic", 2))
        assert comp.mask == 1

    def test_absent_type_trivial(self, c6):
        comp = og.isotypical_component(c6, og.build_named("cyclic", 5))
        assert comp.mask == 1

    def test_certificate_keyed_same_as_group_keyed(self, c6):
        c3 = og.build_named("cyclic", 3)
        by_group = og.isotypical_component(c6, c3)
        by_cert = og.isotypical_component(c6, og.certificate(c3))
        assert by_group.mask == by_cert.mask

    def test_rejects_non_simple(self, c6, c4):
        with pytest.raises(og.ValidationError, match="simple"):
            og.isotypical_component(c6, c4)


class TestSupport:
    def test_c6(self, c6):
        sup = og.support(c6)
        c2 = og.certificate(og.build_named("cyclic", 2))
        c3 = og.certificate(og.build_named("cyclic", 3))
        assert set(sup.certificates) == {c2, c3}

    def test_trivial(self):
        assert len(og.support(og.build_named("cyclic", 1))) == 0

    def test_v4_with_rotation_is_omega_simple(self):
        v = corpus.load("v4rot")
        sz = og.simple_normal_subgroups(v)
        assert [h.mask for h in sz] == [v.full_mask()]
        sup = og.support(v)
        assert len(sup) == 1
        assert next(iter(sup)).order == 4


class TestCcAndTheta:
    def test_singleton_family(self, s3, a3_in_s3):
        assert og.check_cc(s3, [a3_in_s3])

    def test_abelian_parent(self, c6):
        assert og.check_cc(c6, list(c6_parts(c6)))

    def test_diagonals_inside_abelian_socle(self, s3):
        w = og.direct_product([s3, s3])
        P = w.product
        i1, i2 = w.injections
        a3a = og.subgroup_from_mask(P, sum(1 << i1.map[a] for a in (0, 3, 4)))
        a3b = og.subgroup_from_mask(P, sum(1 << i2.map[a] for a in (0, 3, 4)))
        diag = og.subgroup_from_mask(
            P, sum(1 << P.table[i1.map[a]][i2.map[a]] for a in (0, 3, 4)))
        assert og.check_cc(P, [a3a, a3b, diag])

    def test_transpositions_fail_cc(self, s3):
        h1 = og.generated_subgroup(s3, [1])
        h2 = og.generated_subgroup(s3, [2])
        assert not og.check_cc(s3, [h1, h2])

    def test_theta_bijective_on_c6(self, c6):
        th = og.theta(c6, list(c6_parts(c6)))
        assert th.is_bijective()
        assert th.source.order == 6

    def test_theta_singleton_is_inclusion(self, s3, a3_in_s3):
        th = og.theta(s3, [a3_in_s3])
        assert th.image_mask() == a3_in_s3.mask
        assert th.is_injective()

    def test_theta_duplicated_diagonal_not_injective(self, v4):
        d = og.generated_subgroup(v4, [3])
        th = og.theta(v4, [d, d])
        assert not th.is_injective()

    def test_theta_requires_cc(self, s3):
        with pytest.raises(og.ValidationError, match="centralizing"):
            og.theta(s3, [og.generated_subgroup(s3, [1]),
                          og.generated_subgroup(s3, [2])])

    def test_theta_slot_maps_restrict_to_inclusions(self, c6):
        parts = list(c6_parts(c6))
        th = og.theta(c6, parts)
        w = og.direct_product([og.subgroup_as_group(h)[0] for h in parts])
        for inj, h in zip(w.injections, parts):
            assert og.OmegaMorphism(inj.source, c6,
                                    [th.map[inj.map[x]] for x in range(inj.source.order)]
                                    ).image_mask() == h.mask


class TestSdrReport:
    def test_c6_bijective(self, c6):
        rep = og.sdr_report(c6, list(c6_parts(c6)))
        assert rep.cc_holds and rep.bijective and rep.mi_holds
        assert rep.theta is not None

    def test_s3_a3_injective_not_surjective(self, s3, a3_in_s3):
        rep = og.sdr_report(s3, [a3_in_s3])
        assert rep.injective and not rep.surjective and not rep.bijective

    def test_empty_family(self, s3):
        rep = og.sdr_report(s3, [])
        assert rep.injective and not rep.surjective
        trivial = og.build_named("cyclic", 1)
        assert og.sdr_report(trivial, []).bijective

    def test_cc_failure_reported(self, s3):
        rep = og.sdr_report(s3, [og.generated_subgroup(s3, [1]),
                                 og.generated_subgroup(s3, [2])])
        assert not rep.cc_holds and rep.theta is None and not rep.bijective

    def test_mi_equals_injectivity_everywhere(self):
        # the paired routes agree on every family the engine can see
        for key, G in corpus.corpus_groups(8):
            normals = list(og.enumerate_normal_omega_subgroups(G))
            for i in range(len(normals)):
                for j in range(i, len(normals)):
                    fam = [normals[i], normals[j]]
                    if og.check_cc(G, fam):
                        rep = og.sdr_report(G, fam)
                        assert rep.injective == rep.mi_holds


class TestSupplementary:
    def test_c6(self, c6):
        c2, c3 = c6_parts(c6)
        assert og.find_supplementary(c6, c2).mask == c3.mask

    def test_trivial_gets_whole(self, s3):
        assert og.find_supplementary(s3, og.trivial_subgroup(s3)).is_full()

    def test_c4_has_no_supplement_for_c2(self, c4):
        c2 = og.generated_subgroup(c4, [2])
        assert og.find_supplementary(c4, c2) is None

    def test_requires_normal(self, s3):
        with pytest.raises(og.ValidationError):
            og.find_supplementary(s3, og.generated_subgroup(s3, [1]))

    def test_supplement_verdict_matches_exhaustive_oracle(self):
        for key, G in corpus.corpus_groups(8):
            subs = {frozenset(s) for s in oracle.all_subgroups(G)}
            normal = [s for s in subs if oracle.is_normal_subset(G, s)]
            for F in og.enumerate_normal_omega_subgroups(G):
                fset = set(F.members())
                exists = any(
                    fset & k == {0} and
                    {G.table[a][b] for a in fset for b in k} == set(range(G.order))
                    for k in normal)
                assert (og.find_supplementary(G, F) is not None) == exists, key


class TestSemisimplicity:
    def test_c6_all_criteria(self, c6):
        ev = og.semisimplicity(c6)
        assert ev.verdict
        assert ev.criterion_sum_of_simples and ev.criterion_equals_socle \
            and ev.criterion_all_summands

    def test_c4_false(self, c4):
        ev = og.semisimplicity(c4)
        assert not ev.verdict
        assert ev.socle.size == 2

    def test_trivial_group(self):
        assert og.is_semisimple(og.build_named("cyclic", 1))

    def test_criteria_agree_on_corpus(self):
        for key, G in corpus.corpus_groups(12):
            og.semisimplicity(G)  # raises EngineInvariantError on disagreement


class TestGreedyRefine:
    def test_c6_duplicate_rejected(self, c6):
        c2, c3 = c6_parts(c6)
        J = og.greedy_refine(c6, og.trivial_subgroup(c6), [c2, c3, c2])
        assert J == (0, 1)

    def test_full_f_gives_empty(self, c6):
        c2, c3 = c6_parts(c6)
        assert og.greedy_refine(c6, og.full_subgroup(c6), [c2, c3]) == ()

    def test_v4_three_lines(self, v4):
        subs = [og.generated_subgroup(v4, [i]) for i in (1, 2, 3)]
        assert og.greedy_refine(v4, og.trivial_subgroup(v4), subs) == (0, 1)

    def test_precondition_generation(self, c6):
        c2, _ = c6_parts(c6)
        with pytest.raises(og.ValidationError, match="generate"):
            og.greedy_refine(c6, og.trivial_subgroup(c6), [c2])

    def test_precondition_simple(self, c6):
        with pytest.raises(og.ValidationError, match="simple"):
            og.greedy_refine(c6, og.trivial_subgroup(c6), [og.full_subgroup(c6)])


class TestDecompose:
    def test_c6(self, c6):
        dec = og.decompose(c6)
        assert dec.socle.is_full()
        assert len(dec.components) == 2
        masks = sorted(h.mask for _, h in dec.components)
        c2, c3 = c6_parts(c6)
        assert masks == sorted([c2.mask, c3.mask])
        assert {c.digest for c, _ in dec.components} == \
            {c.digest for c in dec.support}

    def test_a4_empty(self, a4):
        dec = og.decompose(a4)
        assert dec.socle.mask == 1
        assert dec.components == ()
        assert len(dec.support) == 0

    def test_trivial(self):
        dec = og.decompose(og.build_named("cyclic", 1))
        assert dec.components == () and len(dec.support) == 0

    def test_component_lookup(self, c6):
        dec = og.decompose(c6)
        c2cert = og.certificate(og.build_named("cyclic", 2))
        assert dec.component(c2cert).members() == (0, 3)
        c5cert = og.certificate(og.build_named("cyclic", 5))
        assert dec.component(c5cert).mask == 1
