import pytest
from hypothesis import given, strategies as st

import ogroup as og
from ogroup import _kernels_py, corpus, kernels
from ogroup.subgroups import generating_sequence

try:
    from ogroup import _ckernels
except ImportError:
    _ckernels = None

needs_compiled = pytest.mark.skipif(_ckernels is None,
                                    reason="compiled kernels not built")


def sample_groups():
    return [g for _, g in corpus.corpus_groups(12)]


class TestClosurePure:
    def test_closure_matches_fixpoint_oracle(self):
        import oracle_utils as oracle
        for G in sample_groups()[:12]:
            for x in range(G.order):
                got = _kernels_py.closure_mask(G.table, G.actions(), 1 << x)
                want = 0
                for m in oracle.saturate(G, [x]):
                    want |= 1 << m
                assert got == want

    @given(st.data())
    def test_closure_idempotent_and_monotone(self, data):
        G = data.draw(st.sampled_from(sample_groups()))
        seed = data.draw(st.integers(0, G.full_mask()))
        closed = _kernels_py.closure_mask(G.table, G.actions(), seed)
        again = _kernels_py.closure_mask(G.table, G.actions(), closed)
        assert again == closed
        smaller = seed & data.draw(st.integers(0, G.full_mask()))
        sub = _kernels_py.closure_mask(G.table, G.actions(), smaller)
        assert sub & ~closed == 0

    def test_order_cap(self):
        with pytest.raises(ValueError):
            _kernels_py.closure_mask([[0]] * 65, (), 1)


@needs_compiled
class TestBackendParity:
    def test_closure(self):
        for G in sample_groups():
            for x in range(G.order):
                seed = (1 << x) | 1
                a = _kernels_py.closure_mask(G.table, G.actions(), seed)
                b = _ckernels.closure_mask(G.table, G.actions(), seed)
                assert a == b

    def test_subgroup_enumeration(self):
        for G in sample_groups():
            a = sorted(_kernels_py.all_subgroup_masks(G.table, G.actions()))
            b = sorted(_ckernels.all_subgroup_masks(G.table, G.actions()))
            assert a == b

    def test_normal_enumeration(self):
        for G in sample_groups():
            conj = G.conjugation_actions()
            a = sorted(_kernels_py.normal_subgroup_masks(G.table, G.actions(), conj))
            b = sorted(_ckernels.normal_subgroup_masks(G.table, G.actions(), conj))
            assert a == b

    def test_morphism_search(self):
        for G in sample_groups():
            if G.order > 8:
                continue
            gens = generating_sequence(G)
            orders = G.element_orders()
            cands = [tuple(t for t in range(G.order) if orders[g] % orders[t] == 0)
                     for g in gens]
            acts = tuple(a for _, a in G.operators_sorted())
            a = _kernels_py.search_morphisms(G.table, acts, G.table, acts, gens, cands)
            b = _ckernels.search_morphisms(G.table, acts, G.table, acts, gens, cands)
            assert a == b

    def test_morphism_search_bijective_first(self):
        for G in sample_groups():
            gens = generating_sequence(G)
            orders = G.element_orders()
            cands = [tuple(t for t in range(G.order) if orders[t] == orders[g])
                     for g in gens]
            acts = tuple(a for _, a in G.operators_sorted())
            a = _kernels_py.search_morphisms(G.table, acts, G.table, acts, gens,
                                             cands, bijective_only=True, first_only=True)
            b = _ckernels.search_morphisms(G.table, acts, G.table, acts, gens,
                                           cands, bijective_only=True, first_only=True)
            assert a == b and len(a) == 1

    def test_canonical_encoding(self):
        for G in sample_groups():
            acts = tuple(a for _, a in G.operators_sorted())
            a = _kernels_py.canonical_encoding(G.table, acts)
            b = _ckernels.canonical_encoding(G.table, acts)
            assert a == b

    def test_backend_reports_compiled(self):
        import os
        if os.environ.get("OGROUP_PURE_PYTHON"):
            assert kernels.backend() == "pure"
        else:
            assert kernels.backend() == "compiled"


class TestCanonicalProperties:
    def test_relabeling_invariance(self):
        # conjugating the table by a random relabeling never changes the encoding
        import random
        rng = random.Random(7)
        for G in sample_groups():
            if G.order > 8 or G.operators:
                continue
            perm = [0] + rng.sample(range(1, G.order), G.order - 1)
            inv = [0] * G.order
            for i, p in enumerate(perm):
                inv[p] = i
            table = [[perm[G.table[inv[i]][inv[j]]] for j in range(G.order)]
                     for i in range(G.order)]
            a = _kernels_py.canonical_encoding(G.table, ())
            b = _kernels_py.canonical_encoding(table, ())
            assert a == b, G.name

    def test_encoding_reconstructs_a_group(self):
        for G in sample_groups():
            if G.operators:
                continue
            enc = _kernels_py.canonical_encoding(G.table, ())
            n = G.order
            table = [list(enc[i * n:(i + 1) * n]) for i in range(n)]
            rebuilt = og.build_from_table(table)
            assert og.are_isomorphic(G, rebuilt) is not None
