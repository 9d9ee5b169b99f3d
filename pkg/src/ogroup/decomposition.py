"""Socle, isotypical components, support, restricted-direct-sum predicates,
supplementaries, semisimplicity and the greedy independent refinement.

The restricted direct sum of a finite family is realised as the full direct
product; infinite families are out of scope by construction. For a family H
of operator-closed subgroups of G that pairwise centralize each other
(condition CC), ``theta`` is the canonical morphism from the product of the
abstract members into G sending a tuple to the ordered product of its slots.
Injectivity, surjectivity and bijectivity of theta are the three
restricted-direct-sum predicates; injectivity is recomputed independently
through mutual independence (each member meets the join of the others
trivially) and the two routes must agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import FiniteOmegaGroup, OmegaMorphism, direct_product
from .errors import EngineInvariantError, ValidationError
from .isomorphism import IsoCertificate, are_isomorphic, certificate
from .subgroups import (SubgroupFamily, SubgroupHandle, full_subgroup,
                        generated_mask, is_normal, is_simple_subgroup,
                        join_normal, enumerate_normal_omega_subgroups,
                        setwise_product_mask, simple_normal_subgroups,
                        subgroup_as_group, trivial_subgroup)


@dataclass(frozen=True)
class SdrReport:
    """Verdicts for one family: the centralizing condition, the canonical
    morphism when it exists, and the three sum predicates plus the
    independently computed mutual-independence flag."""

    family: SubgroupFamily
    cc_holds: bool
    theta: OmegaMorphism | None
    injective: bool
    surjective: bool
    bijective: bool
    mi_holds: bool


@dataclass(frozen=True)
class SupportSet:
    certificates: frozenset[IsoCertificate]

    def digests(self) -> tuple[str, ...]:
        return tuple(sorted(c.digest for c in self.certificates))

    def __len__(self) -> int:
        return len(self.certificates)

    def __iter__(self):
        return iter(sorted(self.certificates, key=lambda c: c.digest))

    def __contains__(self, cert: IsoCertificate) -> bool:
        return cert in self.certificates

    def __or__(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(self.certificates | other.certificates)

    def __and__(self, other: "SupportSet") -> "SupportSet":
        return SupportSet(self.certificates & other.certificates)


@dataclass(frozen=True)
class Decomposition:
    parent: FiniteOmegaGroup
    socle: SubgroupHandle
    components: tuple[tuple[IsoCertificate, SubgroupHandle], ...]
    support: SupportSet

    def component(self, cert: IsoCertificate) -> SubgroupHandle:
        for c, h in self.components:
            if c == cert:
                return h
        return trivial_subgroup(self.parent)


def _handles(G: FiniteOmegaGroup,
             family: SubgroupFamily | Sequence[SubgroupHandle]) -> list[SubgroupHandle]:
    entries = list(family)
    for h in entries:
        if h.parent != G:
            raise ValidationError("family entry does not live in the ambient group")
        if not h.omega_closed:
            raise ValidationError("family entries must be operator-closed subgroups")
    return entries


def socle(G: FiniteOmegaGroup, *, cap: int | None = None) -> SubgroupHandle:
    """Join of all simple normal operator-closed subgroups; always normal."""
    key = ("socle", )
    if key not in G._memo:
        G._memo[key] = join_normal(G, simple_normal_subgroups(G, cap=cap))
    return G._memo[key]


def support(G: FiniteOmegaGroup, *, cap: int | None = None) -> SupportSet:
    """Certificates of the simple normal subgroups, as extracted groups."""
    key = ("support",)
    if key not in G._memo:
        certs = set()
        for h in simple_normal_subgroups(G, cap=cap):
            sub, _ = subgroup_as_group(h)
            certs.add(certificate(sub))
        G._memo[key] = SupportSet(frozenset(certs))
    return G._memo[key]


def isotypical_component(G: FiniteOmegaGroup,
                         S: FiniteOmegaGroup | IsoCertificate, *,
                         cap: int | None = None) -> SubgroupHandle:
    """Join of all simple normal subgroups isomorphic to S.

    S may be a simple operator group or a certificate; the two give the same
    component. Comes back trivial when no member matches.
    """
    if isinstance(S, FiniteOmegaGroup):
        if not is_simple_subgroup(S, full_subgroup(S)):
            raise ValidationError("the component type must be a simple operator group")
    matching = []
    for h in simple_normal_subgroups(G, cap=cap):
        sub, _ = subgroup_as_group(h)
        if isinstance(S, IsoCertificate):
            if certificate(sub) == S:
                matching.append(h)
        else:
            if are_isomorphic(sub, S) is not None:
                matching.append(h)
    if not matching:
        return trivial_subgroup(G)
    return join_normal(G, matching)


def check_cc(G: FiniteOmegaGroup,
             family: SubgroupFamily | Sequence[SubgroupHandle]) -> bool:
    """Do all pairs of distinct members centralize each other elementwise?"""
    entries = _handles(G, family)
    tab = G.table
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            for x in entries[i].members():
                row = tab[x]
                for y in entries[j].members():
                    if row[y] != tab[y][x]:
                        return False
    return True


def mutual_independence(G: FiniteOmegaGroup,
                        family: SubgroupFamily | Sequence[SubgroupHandle]) -> bool:
    """Each member meets the subgroup generated by all the others trivially."""
    entries = _handles(G, family)
    for i, h in enumerate(entries):
        rest = 1
        for j, k in enumerate(entries):
            if j != i:
                rest |= k.mask
        if h.mask & generated_mask(G, rest) != 1:
            return False
    return True


#: Size allowance for the scratch product a family's theta is built on.
#: Independent of the construction cap: the product is assembled from
#: already-validated members, so it skips re-validation.
THETA_PRODUCT_CAP = 256


def theta(G: FiniteOmegaGroup,
          family: SubgroupFamily | Sequence[SubgroupHandle]) -> OmegaMorphism:
    """Canonical morphism from the product of the abstract members into G,
    sending a tuple to the ordered product of its slots. Requires CC."""
    entries = _handles(G, family)
    if not check_cc(G, entries):
        raise ValidationError("family does not satisfy the centralizing condition")
    if not entries:
        triv = FiniteOmegaGroup([[0]], [(label, (0,)) for label in G.operator_labels()],
                                name="1")
        return OmegaMorphism(triv, G, [0])
    extracted = [subgroup_as_group(h) for h in entries]
    witness = direct_product([sub for sub, _ in extracted],
                             cap=THETA_PRODUCT_CAP, validate=False)
    prod = witness.product
    mapping = []
    for t in range(prod.order):
        acc = 0
        for (sub, embed), proj in zip(extracted, witness.projections):
            acc = G.table[acc][embed.map[proj.map[t]]]
        mapping.append(acc)
    return OmegaMorphism(prod, G, mapping)


def sdr_report(G: FiniteOmegaGroup,
               family: SubgroupFamily | Sequence[SubgroupHandle]) -> SdrReport:
    """Evaluate every sum predicate for the family inside G.

    Injectivity is computed both from theta and from mutual independence,
    surjectivity both from theta's image and from generated-subgroup
    equality; the paired routes must agree or the engine is broken.
    """
    entries = _handles(G, family)
    fam = family if isinstance(family, SubgroupFamily) else SubgroupFamily(G, tuple(entries))
    mi = mutual_independence(G, entries)
    if not check_cc(G, entries):
        return SdrReport(fam, False, None, False, False, False, mi)
    th = theta(G, entries)
    injective = th.is_injective()
    surjective = th.image_mask() == G.full_mask()
    union = 1
    for h in entries:
        union |= h.mask
    surjective_gen = generated_mask(G, union) == G.full_mask()
    if injective != mi:
        raise EngineInvariantError(
            "theta injectivity disagrees with mutual independence")
    if surjective != surjective_gen:
        raise EngineInvariantError(
            "theta image disagrees with the generated subgroup")
    return SdrReport(fam, True, th, injective, surjective,
                     injective and surjective, mi)


def find_supplementary(G: FiniteOmegaGroup, F: SubgroupHandle, *,
                       cap: int | None = None) -> SubgroupHandle | None:
    """First normal K (in enumeration order) with F&K trivial and FK = G.

    When G is semisimple the result is cross-checked against the
    constructive supplementary produced by the greedy refinement.
    """
    if not F.omega_closed or not is_normal(G, F):
        raise ValidationError("supplementary search needs a normal operator-closed subgroup")
    found = None
    for K in enumerate_normal_omega_subgroups(G, cap=cap):
        if F.mask & K.mask == 1 and setwise_product_mask(G, F.mask, K.mask) == G.full_mask():
            found = K
            break
    if socle(G, cap=cap).mask == G.full_mask():
        J = greedy_refine(G, F, simple_normal_subgroups(G, cap=cap))
        mask = 1
        sz = simple_normal_subgroups(G, cap=cap)
        for j in J:
            mask = setwise_product_mask(G, mask, sz[j].mask)
        ok = (F.mask & mask == 1
              and setwise_product_mask(G, F.mask, mask) == G.full_mask())
        if not ok or found is None:
            raise EngineInvariantError(
                "greedy supplementary disagrees with exhaustive search")
    return found


@dataclass(frozen=True)
class SemisimplicityEvidence:
    """Tri-criteria verdict: (i) a simple family sums bijectively onto G,
    (ii) G equals its socle, (iii) every normal subgroup has a
    supplementary. The three must agree; (ii) is the primary criterion."""

    verdict: bool
    socle: SubgroupHandle
    criterion_sum_of_simples: bool
    criterion_equals_socle: bool
    criterion_all_summands: bool
    simple_family_indices: tuple[int, ...] | None

    def __bool__(self) -> bool:
        return self.verdict


def semisimplicity(G: FiniteOmegaGroup, *, cap: int | None = None) -> SemisimplicityEvidence:
    soc = socle(G, cap=cap)
    crit_ii = soc.mask == G.full_mask()

    crit_iii = True
    for F in enumerate_normal_omega_subgroups(G, cap=cap):
        if find_supplementary(G, F, cap=cap) is None:
            crit_iii = False
            break

    crit_i = False
    indices: tuple[int, ...] | None = None
    if crit_ii:
        sz = simple_normal_subgroups(G, cap=cap)
        J = greedy_refine(G, trivial_subgroup(G), sz)
        rep = sdr_report(G, [sz[j] for j in J])
        crit_i = rep.bijective
        indices = J

    if not (crit_i == crit_ii == crit_iii):
        raise EngineInvariantError(
            f"semisimplicity criteria disagree on {G.name}: "
            f"(i)={crit_i} (ii)={crit_ii} (iii)={crit_iii}")
    return SemisimplicityEvidence(crit_ii, soc, crit_i, crit_ii, crit_iii, indices)


def is_semisimple(G: FiniteOmegaGroup, *, cap: int | None = None) -> bool:
    return semisimplicity(G, cap=cap).verdict


def greedy_refine(G: FiniteOmegaGroup, F: SubgroupHandle,
                  H: SubgroupFamily | Sequence[SubgroupHandle]) -> tuple[int, ...]:
    """Indices J such that (F, (H_j)_{j in J}) is an independent family whose
    sum is all of G.

    Preconditions: F normal, every H_i simple normal, and F together with
    all the H_i generates G. The scan runs in ascending index order and
    accepts i exactly when H_i meets the current product trivially; the
    postcondition is then verified by an actual report, not assumed.
    """
    entries = _handles(G, H)
    if not F.omega_closed or not is_normal(G, F):
        raise ValidationError("the fixed subgroup must be a normal operator-closed subgroup")
    union = F.mask
    for h in entries:
        if not is_normal(G, h) or not is_simple_subgroup(G, h):
            raise ValidationError("family members must be simple normal subgroups")
        union |= h.mask
    if generated_mask(G, union | 1) != G.full_mask():
        raise ValidationError("the fixed subgroup and the family must generate the group")

    current = F.mask
    accepted: list[int] = []
    for i, h in enumerate(entries):
        if h.mask & current == 1:
            accepted.append(i)
            current = setwise_product_mask(G, current, h.mask)
    extended = [F] + [entries[i] for i in accepted]
    rep = sdr_report(G, extended)
    if not rep.bijective:
        raise EngineInvariantError("greedy refinement produced a non-bijective family")
    return tuple(accepted)


def decompose(G: FiniteOmegaGroup, *, cap: int | None = None) -> Decomposition:
    """Socle, nontrivial isotypical components keyed by certificate, and
    support; the component family is verified to sum bijectively onto the
    socle before anything is returned."""
    sup = support(G, cap=cap)
    sz = simple_normal_subgroups(G, cap=cap)
    by_cert: dict[IsoCertificate, list[SubgroupHandle]] = {}
    for h in sz:
        sub, _ = subgroup_as_group(h)
        by_cert.setdefault(certificate(sub), []).append(h)
    components = tuple(
        (cert, join_normal(G, by_cert[cert]))
        for cert in sorted(by_cert, key=lambda c: c.digest))
    soc = socle(G, cap=cap)

    soc_group, embed = subgroup_as_group(soc)
    back = {x: i for i, x in enumerate(embed.map)}
    translated = []
    for _, h in components:
        mask = 0
        for x in h.members():
            mask |= 1 << back[x]
        translated.append(SubgroupHandle(soc_group, mask))
    rep = sdr_report(soc_group, translated)
    if not rep.bijective:
        raise EngineInvariantError(
            f"isotypical components of {G.name} do not sum bijectively onto the socle")
    return Decomposition(G, soc, components, sup)
