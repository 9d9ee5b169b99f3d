"""Corpus verification suites.

Each suite turns a batch of laws into per-instance checks over the bundled
corpus (with its operatorless, inner-conjugation and sample-operator
variants) and over products of corpus pairs within the lattice cap:

* ``prop2``  -- greedy independent refinement (heavily sampled) and the
  direct-sum laws: component families centralize and sum injectively, the
  socle is the bijective sum of its nontrivial isotypical components, normal
  morphisms carry socles/components into socles/components, and socle,
  components and support all commute with finite products.
* ``theorem`` -- bijective families restrict to bijective socle/component
  families with matching supports; a group and its socle share components
  and support; the component-vector restriction of normal morphisms between
  semisimple groups is a bijection (verified by exhaustive double counting
  and exact round trips).
* ``sie-ns`` -- componentwise-smaller surjective families coincide with the
  injective family; normal-inside-a-summand implies normal; quotients and
  normal subgroups of semisimple groups stay semisimple; the diagonal
  normality equivalence.
* ``lemma``  -- joins of normal subgroups are normal, the setwise product is
  order-independent and equals the closure of the union, closure is
  idempotent and monotone, and simple members sit inside the normal lattice.

Checks return ``(check_id, ok, detail)`` triples; a suite passes when every
``ok`` is true. Instance work can be sharded across a process pool; results
are merged in sorted check order, so the output is deterministic regardless
of the worker count.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from itertools import product as iproduct

from . import corpus
from .core import (DEFAULT_HOM_CAP, DEFAULT_LATTICE_CAP, FiniteOmegaGroup,
                   direct_product, quotient)
from .decomposition import (check_cc, decompose, find_supplementary,
                            greedy_refine, is_semisimple, isotypical_component,
                            sdr_report, socle, support)
from .errors import OmegaGroupError
from .isomorphism import certificate
from .morphisms import enumerate_homs, phi, phi_inverse
from .subgroups import (SubgroupHandle, enumerate_normal_omega_subgroups,
                        enumerate_omega_subgroups, generated_mask,
                        generated_subgroup, is_normal, join_normal,
                        setwise_product_mask, simple_normal_subgroups,
                        subgroup_as_group, subgroup_from_mask)

Check = tuple[str, bool, str]

SUITE_NAMES = ("prop2", "theorem", "sie-ns", "lemma")

GREEDY_SAMPLES_PER_BASE = 8
SIE_COMBO_CAP = 120


def _instances(max_order: int) -> list[tuple[str, FiniteOmegaGroup]]:
    return corpus.corpus_groups(max_order)


def _pairs(max_order: int) -> list[tuple[str, str]]:
    """Morphism-compatible corpus pairs: operatorless x operatorless plus
    self-pairs of the operator-equipped variants."""
    insts = _instances(max_order)
    plain = [k for k, g in insts if not g.operators]
    pairs = [(a, b) for a in plain for b in plain]
    pairs.extend((k, k) for k, g in insts if g.operators)
    return pairs


def _product_keys(max_order: int) -> list[tuple[str, str]]:
    insts = dict(_instances(max_order))
    keys = []
    for a, ga in insts.items():
        for b, gb in insts.items():
            if ga.order * gb.order <= DEFAULT_LATTICE_CAP \
                    and ga.operator_label_set() == gb.operator_label_set():
                keys.append((a, b))
    return keys


def _group(key: str) -> FiniteOmegaGroup:
    return corpus.load_variant(key)


def _translate(amb: FiniteOmegaGroup, embed_map: tuple[int, ...],
               mask: int) -> SubgroupHandle:
    back = {x: i for i, x in enumerate(embed_map)}
    out = 0
    m = mask
    i = 0
    while m:
        if m & 1:
            out |= 1 << back[i]
        m >>= 1
        i += 1
    return SubgroupHandle(amb, out)


def _image_mask(f, mask: int) -> int:
    out = 0
    i = 0
    while mask:
        if mask & 1:
            out |= 1 << f.map[i]
        mask >>= 1
        i += 1
    return out


# ---------------------------------------------------------------------------
# prop2


def check_greedy_sampling(key: str) -> list[Check]:
    """Sampled greedy refinements; every accepted family must verify as a
    bijective sum through an independent report call."""
    G = _group(key)
    rng = random.Random(f"greedy:{key}")
    sz = list(simple_normal_subgroups(G))
    results: list[Check] = []
    count = 0
    for fi, F in enumerate(enumerate_normal_omega_subgroups(G)):
        for s in range(GREEDY_SAMPLES_PER_BASE):
            if sz:
                k = rng.randint(1, min(6, 2 * len(sz)))
                H = [sz[rng.randrange(len(sz))] for _ in range(k)]
            else:
                H = []
            union = F.mask
            for h in H:
                union |= h.mask
            if generated_mask(G, union | 1) != G.full_mask():
                continue
            count += 1
            J = greedy_refine(G, F, H)
            rep = sdr_report(G, [F] + [H[j] for j in J])
            ok = rep.bijective
            results.append((f"prop2/greedy/{key}/F{fi}s{s}", ok,
                            f"J={list(J)}" if ok else "refinement not bijective"))
    results.append((f"prop2/greedy-count/{key}", True, f"instances={count}"))
    return results


def check_component_family(key: str) -> list[Check]:
    """Families of isotypical components over pairwise distinct types
    centralize each other and sum injectively."""
    G = _group(key)
    types = list(support(G))
    if not G.operators:
        for extra in ("c2", "c3", "c5"):
            cert = certificate(corpus.load(extra))
            if cert not in types:
                types.append(cert)
    family = [isotypical_component(G, t) for t in types]
    cc = check_cc(G, family)
    rep = sdr_report(G, family)
    ok = cc and rep.injective and rep.mi_holds
    return [(f"prop2/components-injective/{key}", ok,
             f"types={len(types)}" if ok else "component family not independent")]


def check_socle_decomposition(key: str) -> list[Check]:
    """The socle is the bijective sum of the nontrivial components (verified
    inside decompose) and the socle itself is semisimple."""
    G = _group(key)
    dec = decompose(G)
    soc_group, _ = subgroup_as_group(dec.socle)
    ok = is_semisimple(soc_group)
    return [(f"prop2/socle-decomposes/{key}", ok,
             f"socle_order={dec.socle.size} components={len(dec.components)}")]


def check_normal_morphisms_preserve(key_pair: tuple[str, str]) -> list[Check]:
    """Normal morphisms carry the socle into the socle and each component
    into the matching component."""
    ka, kb = key_pair
    G, H = _group(ka), _group(kb)
    if G.order > DEFAULT_HOM_CAP:
        return []
    homs = enumerate_homs(G, H)
    soc_s = socle(G).mask
    soc_t = socle(H).mask
    types = {c.digest: c for c in support(G)}
    types.update({c.digest: c for c in support(H)})
    bad = []
    for idx, (f, normal) in enumerate(zip(homs.morphisms, homs.normal_flags)):
        if not normal:
            continue
        if _image_mask(f, soc_s) & ~soc_t:
            bad.append(f"hom{idx}: socle image escapes")
            continue
        for digest in sorted(types):
            cert = types[digest]
            src = isotypical_component(G, cert).mask
            dst = isotypical_component(H, cert).mask
            if _image_mask(f, src) & ~dst:
                bad.append(f"hom{idx}: component {digest[:8]} escapes")
                break
    ok = not bad
    return [(f"prop2/normal-morphisms-preserve/{ka}->{kb}", ok,
             f"normal={sum(homs.normal_flags)}/{len(homs)}" if ok else "; ".join(bad))]


def check_product_commutes(key_pair: tuple[str, str]) -> list[Check]:
    """socle(AxB) = socle(A) x socle(B), componentwise and for supports."""
    ka, kb = key_pair
    A, B = _group(ka), _group(kb)
    w = direct_product([A, B])
    P = w.product
    i1, i2 = w.injections
    checks: list[Check] = []

    expected = setwise_product_mask(P, _image_mask(i1, socle(A).mask),
                                    _image_mask(i2, socle(B).mask))
    ok1 = socle(P).mask == expected
    checks.append((f"prop2/product-socle/{ka}x{kb}", ok1,
                   "" if ok1 else "socle does not split"))

    sup_union = {c.digest for c in support(A)} | {c.digest for c in support(B)}
    sup_prod = {c.digest for c in support(P)}
    ok2 = sup_union == sup_prod
    checks.append((f"prop2/product-support/{ka}x{kb}", ok2,
                   "" if ok2 else f"{sorted(sup_prod)} != {sorted(sup_union)}"))

    types = {c.digest: c for c in support(P)}
    ok3 = True
    for digest in sorted(types):
        cert = types[digest]
        lhs = isotypical_component(P, cert).mask
        rhs = setwise_product_mask(P, _image_mask(i1, isotypical_component(A, cert).mask),
                                   _image_mask(i2, isotypical_component(B, cert).mask))
        if lhs != rhs:
            ok3 = False
            break
    checks.append((f"prop2/product-components/{ka}x{kb}", ok3,
                   "" if ok3 else "a component does not split"))

    dec = decompose(P)
    checks.append((f"prop2/product-socle-decomposes/{ka}x{kb}", True,
                   f"components={len(dec.components)}"))
    return checks


# ---------------------------------------------------------------------------
# theorem


def _t1_family_checks(tag: str, G: FiniteOmegaGroup,
                      handles: list[SubgroupHandle]) -> list[Check]:
    """Given a bijective family in G, validate the socle/component/support
    conclusions."""
    checks: list[Check] = []
    rep = sdr_report(G, handles)
    if not rep.bijective:
        return [(f"theorem/t1-premise/{tag}", False, "family is not bijective")]

    soc_G = socle(G)
    soc_group, soc_embed = subgroup_as_group(soc_G)
    member_data = []
    for h in handles:
        sub, embed = subgroup_as_group(h)
        member_data.append((h, sub, embed))

    ok_contain = True
    socle_handles = []
    for h, sub, embed in member_data:
        soc_mask_parent = _image_mask(embed, socle(sub).mask)
        if soc_mask_parent & ~soc_G.mask:
            ok_contain = False
        socle_handles.append(soc_mask_parent)
    checks.append((f"theorem/t1-socle-contained/{tag}", ok_contain,
                   "" if ok_contain else "a member socle escapes the socle"))

    translated = [_translate(soc_group, soc_embed.map, m) for m in socle_handles]
    rep_soc = sdr_report(soc_group, translated)
    checks.append((f"theorem/t1-socle-bijective/{tag}",
                   rep_soc.cc_holds and rep_soc.bijective,
                   "" if rep_soc.bijective else "member socles do not sum onto the socle"))

    sup_union = set()
    for h, sub, embed in member_data:
        sup_union |= {c.digest for c in support(sub)}
    sup_G = {c.digest for c in support(G)}
    checks.append((f"theorem/t1-support-union/{tag}", sup_union == sup_G,
                   "" if sup_union == sup_G else f"{sorted(sup_G)} != {sorted(sup_union)}"))

    ok_comp = True
    for digest in sorted(sup_G):
        cert = next(c for c in support(G) if c.digest == digest)
        comp_G = isotypical_component(G, cert)
        comp_group, comp_embed = subgroup_as_group(comp_G)
        parts = []
        contained = True
        for h, sub, embed in member_data:
            part = _image_mask(embed, isotypical_component(sub, cert).mask)
            if part & ~comp_G.mask:
                contained = False
                break
            parts.append(part)
        if not contained:
            ok_comp = False
            break
        translated = [_translate(comp_group, comp_embed.map, m) for m in parts]
        rep_comp = sdr_report(comp_group, translated)
        if not rep_comp.bijective:
            ok_comp = False
            break
    checks.append((f"theorem/t1-components-bijective/{tag}", ok_comp,
                   "" if ok_comp else "component families do not restrict bijectively"))
    return checks


def check_t1_products(key_pair: tuple[str, str]) -> list[Check]:
    ka, kb = key_pair
    A, B = _group(ka), _group(kb)
    w = direct_product([A, B])
    P = w.product
    handles = [subgroup_from_mask(P, _image_mask(w.injections[0], A.full_mask())),
               subgroup_from_mask(P, _image_mask(w.injections[1], B.full_mask()))]
    return _t1_family_checks(f"prod/{ka}x{kb}", P, handles)


def check_t1_decomposition(key: str) -> list[Check]:
    G = _group(key)
    if socle(G).mask != G.full_mask():
        return []
    dec = decompose(G)
    handles = [h for _, h in dec.components]
    if not handles:
        return []
    return _t1_family_checks(f"dec/{key}", G, handles)


def check_t2(key: str) -> list[Check]:
    """A group and its socle share all isotypical components and support."""
    G = _group(key)
    soc = socle(G)
    soc_group, embed = subgroup_as_group(soc)
    sup_G = {c.digest for c in support(G)}
    sup_soc = {c.digest for c in support(soc_group)}
    ok_sup = sup_G == sup_soc
    ok_comp = True
    for cert in support(G):
        comp_G = isotypical_component(G, cert).mask
        comp_soc = _image_mask(embed, isotypical_component(soc_group, cert).mask)
        if comp_G != comp_soc:
            ok_comp = False
            break
    # a type outside the support must give the trivial component on both
    outside = certificate(corpus.load("c7"))
    if not G.operators and outside.digest not in sup_G:
        if isotypical_component(G, outside).mask != 1:
            ok_comp = False
    return [(f"theorem/t2-support/{key}", ok_sup, ""),
            (f"theorem/t2-components/{key}", ok_comp, "")]


def check_phi_bijection(key_pair: tuple[str, str]) -> list[Check]:
    """Exhaustive double count plus exact round trips for the component
    restriction map between semisimple endpoints."""
    ka, kb = key_pair
    G, H = _group(ka), _group(kb)
    if G.order > DEFAULT_HOM_CAP or H.order > DEFAULT_HOM_CAP:
        return []
    if socle(G).mask != G.full_mask() or socle(H).mask != H.full_mask():
        return []
    tag = f"{ka}->{kb}"
    normal = enumerate_homs(G, H).normal_morphisms()

    shared = support(G) & support(H)
    comp_homs = {}
    expected = 1
    for cert in shared:
        sub_s, _ = subgroup_as_group(isotypical_component(G, cert))
        sub_t, _ = subgroup_as_group(isotypical_component(H, cert))
        comp_normal = enumerate_homs(sub_s, sub_t).normal_morphisms()
        comp_homs[cert] = comp_normal
        expected *= len(comp_normal)

    ok_count = len(normal) == expected
    checks = [(f"theorem/phi-count/{tag}", ok_count,
               f"|hom_n|={len(normal)} product={expected}")]

    signatures = set()
    ok_round = True
    for f in normal:
        vec = phi(f)
        signatures.add(vec.signature())
        if phi_inverse(G, H, vec) != f:
            ok_round = False
            break
    checks.append((f"theorem/phi-injective/{tag}",
                   len(signatures) == len(normal), ""))
    if ok_round:
        certs = list(shared)
        for combo in iproduct(*(comp_homs[c] for c in certs)):
            vec = dict(zip(certs, combo))
            f = phi_inverse(G, H, vec)
            back = phi(f).as_dict()
            if any(back[c] != vec[c] for c in certs):
                ok_round = False
                break
    checks.append((f"theorem/phi-roundtrip/{tag}", ok_round, ""))
    return checks


# ---------------------------------------------------------------------------
# sie-ns


def check_sie(key: str) -> list[Check]:
    """Componentwise subfamilies: surjective below an injective family forces
    equality."""
    G = _group(key)
    dec = decompose(G)
    soc_group, embed = subgroup_as_group(dec.socle)
    H = [_translate(soc_group, embed.map, h.mask) for _, h in dec.components]
    if not H:
        return [(f"sie-ns/sie/{key}", True, "no components")]
    rep_H = sdr_report(soc_group, H)
    sub_choices = []
    for h in H:
        subs = [k for k in enumerate_omega_subgroups(soc_group)
                if k.mask & h.mask == k.mask]
        sub_choices.append(subs)
    combos = list(iproduct(*sub_choices))
    rng = random.Random(f"sie:{key}")
    if len(combos) > SIE_COMBO_CAP:
        combos = rng.sample(combos, SIE_COMBO_CAP)
    tested = 0
    ok = True
    for K in combos:
        rep_K = sdr_report(soc_group, list(K))
        if rep_K.surjective and rep_H.injective:
            tested += 1
            if any(k.mask != h.mask for k, h in zip(K, H)):
                ok = False
                break
    return [(f"sie-ns/sie/{key}", ok, f"hypothesis held {tested}x")]


def check_ns(key: str) -> list[Check]:
    """Normal inside a direct summand implies normal in the ambient group."""
    G = _group(key)
    ok = True
    detail = []
    for fi, F in enumerate(enumerate_normal_omega_subgroups(G)):
        if find_supplementary(G, F) is None:
            continue
        sub, embed = subgroup_as_group(F)
        for K in enumerate_normal_omega_subgroups(sub):
            K_in_G = subgroup_from_mask(G, _image_mask(embed, K.mask))
            if not is_normal(G, K_in_G):
                ok = False
                detail.append(f"F#{fi} K={K.members()}")
    return [(f"sie-ns/ns/{key}", ok, "; ".join(detail))]


def check_semisimple_closure(key: str) -> list[Check]:
    """Quotients and normal subgroups of semisimple groups are semisimple."""
    G = _group(key)
    if not is_semisimple(G):
        return []
    ok = True
    for N in enumerate_normal_omega_subgroups(G):
        sub, _ = subgroup_as_group(N)
        if not is_semisimple(sub):
            ok = False
            break
        Q, _ = quotient(G, N)
        if not is_semisimple(Q):
            ok = False
            break
    return [(f"sie-ns/semisimple-closure/{key}", ok, "")]


def check_diagonal_equivalence(key: str) -> list[Check]:
    """diag(A) is normal in GxG exactly when A is central in G; checked for
    the socle and, on small groups, every normal subgroup."""
    G = _group(key)
    if G.order * G.order > 64:
        return []
    w = direct_product([G, G])
    P = w.product
    i1, i2 = w.injections
    if G.order <= 8:
        targets = list(enumerate_normal_omega_subgroups(G))
    else:
        targets = [socle(G)]
    ok = True
    for A in targets:
        dm = 0
        for a in A.members():
            dm |= 1 << P.table[i1.map[a]][i2.map[a]]
        handle = subgroup_from_mask(P, dm, require_omega=False)
        lhs = handle.omega_closed and is_normal(P, handle)
        rhs = A.mask & G.center_mask() == A.mask
        if lhs != rhs:
            ok = False
            break
    return [(f"sie-ns/diagonal/{key}", ok, f"targets={len(targets)}")]


# ---------------------------------------------------------------------------
# lemma


def check_lemma(key: str) -> list[Check]:
    G = _group(key)
    rng = random.Random(f"lemma:{key}")
    normals = list(enumerate_normal_omega_subgroups(G))
    checks: list[Check] = []

    ok_join = True
    ok_order = True
    for s in range(10):
        fam = [normals[rng.randrange(len(normals))]
               for _ in range(rng.randint(0, min(4, len(normals))))]
        joined = join_normal(G, fam)
        if not is_normal(G, joined):
            ok_join = False
        shuffled = fam[:]
        rng.shuffle(shuffled)
        prod = 1
        for h in shuffled:
            prod = setwise_product_mask(G, prod, h.mask)
        if prod != joined.mask:
            ok_order = False
    checks.append((f"lemma/join-normal/{key}", ok_join, ""))
    checks.append((f"lemma/product-order-free/{key}", ok_order, ""))

    ok_idem = all(generated_subgroup(G, h.members()).mask == h.mask
                  for h in enumerate_omega_subgroups(G))
    checks.append((f"lemma/closure-idempotent/{key}", ok_idem, ""))

    ok_mono = True
    for s in range(6):
        y = [x for x in range(G.order) if rng.random() < 0.4]
        x = [v for v in y if rng.random() < 0.6]
        gx = generated_subgroup(G, x).mask
        gy = generated_subgroup(G, y).mask
        if gx & ~gy:
            ok_mono = False
    checks.append((f"lemma/closure-monotone/{key}", ok_mono, ""))

    normal_masks = {h.mask for h in normals}
    sz = simple_normal_subgroups(G)
    ok_sz = all(h.mask in normal_masks and h.mask != 1 for h in sz)
    checks.append((f"lemma/sz-in-normals/{key}", ok_sz, ""))
    return checks


# ---------------------------------------------------------------------------
# dispatch


def _tasks_for(suite: str, max_order: int) -> list[tuple]:
    insts = [k for k, _ in _instances(max_order)]
    tasks: list[tuple] = []
    if suite == "prop2":
        tasks += [("greedy", k) for k in insts]
        tasks += [("components", k) for k in insts]
        tasks += [("socle-dec", k) for k in insts]
        tasks += [("morph-preserve", a, b) for a, b in _pairs(max_order)]
        tasks += [("product", a, b) for a, b in _product_keys(max_order)]
    elif suite == "theorem":
        tasks += [("t1-prod", a, b) for a, b in _product_keys(max_order)]
        tasks += [("t1-dec", k) for k in insts]
        tasks += [("t2", k) for k in insts]
        tasks += [("phi", a, b) for a, b in _pairs(max_order)]
    elif suite == "sie-ns":
        tasks += [("sie", k) for k in insts]
        tasks += [("ns", k) for k in insts]
        tasks += [("ss-closure", k) for k in insts]
        tasks += [("diagonal", k) for k in insts]
    elif suite == "lemma":
        tasks += [("lemma", k) for k in insts]
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return tasks


_RUNNERS = {
    "greedy": check_greedy_sampling,
    "components": check_component_family,
    "socle-dec": check_socle_decomposition,
    "morph-preserve": check_normal_morphisms_preserve,
    "product": check_product_commutes,
    "t1-prod": check_t1_products,
    "t1-dec": check_t1_decomposition,
    "t2": check_t2,
    "phi": check_phi_bijection,
    "sie": check_sie,
    "ns": check_ns,
    "ss-closure": check_semisimple_closure,
    "diagonal": check_diagonal_equivalence,
    "lemma": check_lemma,
}


def _run_task(task: tuple) -> list[Check]:
    kind = task[0]
    runner = _RUNNERS[kind]
    try:
        if len(task) == 2:
            return runner(task[1])
        return runner((task[1], task[2]))
    except OmegaGroupError as exc:
        return [(f"{kind}/{'/'.join(task[1:])}", False, f"error: {exc}")]


def run_suite(suite: str, *, max_order: int = 12, workers: int = 1) -> list[Check]:
    """Run one suite (or 'all') over the corpus; deterministic result list."""
    if suite == "all":
        out: list[Check] = []
        for name in SUITE_NAMES:
            out.extend(run_suite(name, max_order=max_order, workers=workers))
        return out
    tasks = _tasks_for(suite, max_order)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_task, tasks))
    else:
        chunks = [_run_task(t) for t in tasks]
    results = [c for chunk in chunks for c in chunk]
    results.sort(key=lambda c: c[0])
    return results
