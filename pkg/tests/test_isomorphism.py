import pytest

import ogroup as og
import oracle_utils as oracle
from ogroup import corpus


class TestAreIsomorphic:
    def test_c2xc3_c6(self, c6):
        w = og.direct_product([og.build_named("cyclic", 2), og.build_named("cyclic", 3)])
        witness = og.are_isomorphic(w.product, c6)
        assert witness is not None
        assert witness.is_bijective()

    def test_self(self, s3):
        witness = og.are_isomorphic(s3, s3)
        assert witness is not None

    def test_c4_v4_distinct(self, c4, v4):
        assert og.are_isomorphic(c4, v4) is None

    def test_witness_is_valid_morphism(self, s3):
        d3 = og.build_named("dihedral", 3)
        w = og.are_isomorphic(s3, d3)
        assert w is not None
        og.OmegaMorphism(s3, d3, w.map)  # revalidates

    def test_operator_labels_must_match(self, v4):
        rot = og.build_from_table(v4.table, [("rot", [0, 2, 3, 1])])
        assert og.are_isomorphic(v4, rot) is None

    def test_operator_action_matters(self, v4):
        rot = og.build_from_table(v4.table, [("a", [0, 2, 3, 1])])
        ident = og.build_from_table(v4.table, [("a", [0, 1, 2, 3])])
        assert og.are_isomorphic(rot, ident) is None

    def test_agrees_with_bijection_oracle_small(self):
        groups = [g for _, g in corpus.corpus_groups(8)]
        for i, G in enumerate(groups):
            for H in groups[i:]:
                got = og.are_isomorphic(G, H) is not None
                assert got == oracle.isomorphic(G, H), (G.name, H.name)


class TestCertificate:
    def test_s3_equals_d3(self, s3):
        d3 = og.build_named("dihedral", 3)
        assert og.certificate(s3) == og.certificate(d3)

    def test_trivial(self):
        cert = og.certificate(og.build_named("cyclic", 1))
        assert cert.order == 1
        assert cert.canonical_table == ((0,),)

    def test_c4_differs_from_v4(self, c4, v4):
        assert og.certificate(c4).digest != og.certificate(v4).digest

    def test_idempotent(self, s3):
        cert = og.certificate(s3)
        rebuilt = og.group_from_certificate(cert)
        assert og.certificate(rebuilt) == cert

    def test_cap(self):
        big = og.direct_product([og.build_named("symmetric", 3)] * 2).product
        with pytest.raises(og.CapExceededError):
            og.certificate(big)
        # raising the cap works; shrinking it gates an otherwise fine order
        c12 = og.build_named("cyclic", 12)
        with pytest.raises(og.CapExceededError):
            og.certificate(c12, cap=8)
        assert og.certificate(c12, cap=12).order == 12

    def test_distinguishes_operator_labels(self, v4):
        a = og.build_from_table(v4.table, [("a", [0, 2, 3, 1])])
        b = og.build_from_table(v4.table, [("b", [0, 2, 3, 1])])
        assert og.certificate(a).digest != og.certificate(b).digest

    def test_agreement_with_pairwise_search(self):
        groups = [g for _, g in corpus.corpus_groups(12)]
        for i, G in enumerate(groups):
            for H in groups[i:]:
                same_cert = og.certificate(G) == og.certificate(H)
                assert same_cert == (og.are_isomorphic(G, H) is not None), \
                    (G.name, H.name)

    def test_digest_serialization_layout(self):
        c2 = og.build_named("cyclic", 2)
        data = og.encode_group_bytes(c2.order, c2.table, c2.operators_sorted())
        assert data == (b"\x00\x00\x00\x02"   # order
                        b"\x00\x01\x01\x00"   # row-major table
                        b"\x00\x00\x00\x00")  # operator count 0
