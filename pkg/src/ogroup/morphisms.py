"""Morphism sets, normal morphisms, per-type restriction, and the bijection
between normal morphisms of semisimple groups and vectors of component
morphisms.

A morphism is normal when the direct image of every normal operator-closed
subgroup of its source is normal in its target. For semisimple endpoints,
restricting a normal morphism to each shared support type gives a vector of
component morphisms; that restriction map is a bijection, and its inverse is
built constructively (assemble the component maps over the source's
isotypical product decomposition, null outside the shared support).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import kernels
from .core import (DEFAULT_HOM_CAP, FiniteOmegaGroup, OmegaMorphism,
                   direct_product)
from .errors import CapExceededError, EngineInvariantError, ValidationError
from .isomorphism import IsoCertificate, certificate
from .decomposition import isotypical_component, socle, support
from .subgroups import (enumerate_normal_omega_subgroups,
                        generating_sequence, subgroup_as_group)


@dataclass(frozen=True)
class HomSet:
    source: FiniteOmegaGroup
    target: FiniteOmegaGroup
    morphisms: tuple[OmegaMorphism, ...]
    normal_flags: tuple[bool, ...]

    def __len__(self) -> int:
        return len(self.morphisms)

    def normal_morphisms(self) -> tuple[OmegaMorphism, ...]:
        return tuple(f for f, ok in zip(self.morphisms, self.normal_flags) if ok)


@dataclass(frozen=True)
class ComponentVector:
    """Per-type component morphisms of a normal morphism; keys are exactly
    the shared support of the two endpoints."""

    source: FiniteOmegaGroup
    target: FiniteOmegaGroup
    entries: tuple[tuple[IsoCertificate, OmegaMorphism], ...]

    def as_dict(self) -> dict[IsoCertificate, OmegaMorphism]:
        return dict(self.entries)

    def signature(self) -> tuple:
        return tuple((cert.digest, f.map) for cert, f in self.entries)


def _paired_actions(G: FiniteOmegaGroup, H: FiniteOmegaGroup):
    if G.operator_label_set() != H.operator_label_set():
        raise ValidationError("morphism endpoints carry different operator label sets")
    return (tuple(act for _, act in G.operators_sorted()),
            tuple(act for _, act in H.operators_sorted()))


def enumerate_homs(G: FiniteOmegaGroup, H: FiniteOmegaGroup, *,
                   cap: int | None = None) -> HomSet:
    """All morphisms from G to H, in lexicographic map order, each validated,
    with a parallel normality flag list."""
    cap = DEFAULT_HOM_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceededError(
            f"source order {G.order} exceeds morphism enumeration cap {cap}",
            limit=cap, needed=G.order)
    ops_G, ops_H = _paired_actions(G, H)
    gens = generating_sequence(G)
    orders_G = G.element_orders()
    orders_H = H.element_orders()
    candidates = [tuple(t for t in range(H.order) if orders_G[g] % orders_H[t] == 0)
                  for g in gens]
    maps = kernels.search_morphisms(G.table, ops_G, H.table, ops_H,
                                    gens, candidates)
    morphisms = sorted((OmegaMorphism(G, H, m) for m in maps),
                       key=lambda f: f.map)
    flags = tuple(is_normal_morphism(f) for f in morphisms)
    return HomSet(G, H, tuple(morphisms), flags)


def is_normal_morphism(f: OmegaMorphism, *, cap: int | None = None) -> bool:
    """Does f send every normal operator-closed subgroup of the source to a
    normal one of the target?

    Surjective morphisms are normal outright (fast path); everything else is
    settled by the exhaustive sweep over the source's normal lattice.
    """
    if f.is_surjective():
        return True
    target_normals = {h.mask for h in enumerate_normal_omega_subgroups(f.target, cap=cap)}
    for h in enumerate_normal_omega_subgroups(f.source, cap=cap):
        if f.image_mask(h.mask) not in target_normals:
            return False
    return True


def component_of_morphism(f: OmegaMorphism,
                          S: FiniteOmegaGroup | IsoCertificate) -> OmegaMorphism:
    """Restriction of a normal morphism between the S-components of its
    endpoints, as a morphism of the extracted component groups."""
    if not is_normal_morphism(f):
        raise ValidationError("component restriction requires a normal morphism")
    src_comp = isotypical_component(f.source, S)
    dst_comp = isotypical_component(f.target, S)
    sub_s, embed_s = subgroup_as_group(src_comp)
    sub_t, embed_t = subgroup_as_group(dst_comp)
    back = {x: i for i, x in enumerate(embed_t.map)}
    mapping = []
    for x in embed_s.map:
        y = f.map[x]
        if y not in back:
            raise EngineInvariantError(
                "normal morphism failed to carry a component into a component")
        mapping.append(back[y])
    return OmegaMorphism(sub_s, sub_t, mapping)


def _require_semisimple(G: FiniteOmegaGroup) -> None:
    if socle(G).mask != G.full_mask():
        raise ValidationError(f"{G.name} is not semisimple")


def phi(f: OmegaMorphism) -> ComponentVector:
    """Component vector of a normal morphism between semisimple groups,
    indexed by the shared support."""
    G, Gp = f.source, f.target
    _require_semisimple(G)
    _require_semisimple(Gp)
    if not is_normal_morphism(f):
        raise ValidationError("phi requires a normal morphism")
    shared = support(G) & support(Gp)
    entries = tuple((cert, component_of_morphism(f, cert)) for cert in shared)
    return ComponentVector(G, Gp, entries)


def phi_inverse(G: FiniteOmegaGroup, Gp: FiniteOmegaGroup,
                vector: ComponentVector | Mapping[IsoCertificate, OmegaMorphism]) -> OmegaMorphism:
    """Reassemble the normal morphism with the given component vector.

    The construction mirrors the bijection proof: the source splits as the
    product of its isotypical components, each shared-type slot is pushed
    through its component morphism into the target, every other slot is
    killed, and the slot images are multiplied back together.
    """
    _require_semisimple(G)
    _require_semisimple(Gp)
    entries = dict(vector.entries) if isinstance(vector, ComponentVector) else dict(vector)
    shared = support(G) & support(Gp)
    if set(entries) != set(shared.certificates):
        raise ValidationError("component vector keys must equal the shared support")

    certs = [c for c in support(G)]  # sorted by digest
    pieces = []
    for cert in certs:
        handle = isotypical_component(G, cert)
        sub, embed = subgroup_as_group(handle)
        pieces.append((cert, sub, embed))
    witness = direct_product([sub for _, sub, _ in pieces])
    prod = witness.product

    # theta of the component family, in the same digest order; bijective
    # because G is semisimple.
    theta_map = []
    for t in range(prod.order):
        acc = 0
        for (cert, sub, embed), proj in zip(pieces, witness.projections):
            acc = G.table[acc][embed.map[proj.map[t]]]
        theta_map.append(acc)
    if len(set(theta_map)) != G.order or prod.order != G.order:
        raise EngineInvariantError("isotypical product failed to cover the group")
    theta_inv = [0] * G.order
    for t, g in enumerate(theta_map):
        theta_inv[g] = t

    push: dict[str, tuple] = {}
    for cert, sub, embed in pieces:
        if cert in entries:
            comp = entries[cert]
            dst_handle = isotypical_component(Gp, cert)
            sub_t, embed_t = subgroup_as_group(dst_handle)
            if comp.source != sub or comp.target != sub_t:
                raise ValidationError(
                    "component morphism endpoints do not match the extracted components")
            if not is_normal_morphism(comp):
                raise ValidationError("component vector entries must be normal morphisms")
            push[cert.digest] = (comp.map, embed_t.map)

    mapping = [0] * G.order
    for g in range(G.order):
        t = theta_inv[g]
        acc = 0
        for (cert, sub, embed), proj in zip(pieces, witness.projections):
            entry = push.get(cert.digest)
            if entry is None:
                continue
            comp_map, embed_t_map = entry
            acc = Gp.table[acc][embed_t_map[comp_map[proj.map[t]]]]
        mapping[g] = acc
    return OmegaMorphism(G, Gp, mapping)
