"""Subgroup calculus: closures, centralizers, commutators, lattice
enumeration, simple normal subgroups and normal joins.

Subgroups are handles: a parent group plus a membership bit mask. Handles
over the same parent compare by mask. A handle records whether its subset is
closed under every operator action; most operations require that flag, but
centralizers may legitimately come back without it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernels
from .core import DEFAULT_LATTICE_CAP, FiniteOmegaGroup, OmegaMorphism
from .errors import CapExceededError, EngineInvariantError, ValidationError


@dataclass(frozen=True)
class SubgroupHandle:
    parent: FiniteOmegaGroup = field(compare=True)
    mask: int = 0
    omega_closed: bool = field(default=True, compare=False)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def members(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.parent.order) if self.mask >> x & 1)

    def contains(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def is_trivial(self) -> bool:
        return self.mask == 1

    def is_full(self) -> bool:
        return self.mask == self.parent.full_mask()

    def __repr__(self) -> str:
        return f"SubgroupHandle({self.parent.name!r}, members={list(self.members())})"


@dataclass(frozen=True)
class SubgroupFamily:
    parent: FiniteOmegaGroup
    entries: tuple[SubgroupHandle, ...]

    def __post_init__(self):
        for h in self.entries:
            if h.parent != self.parent:
                raise ValidationError("family entries must share the same parent group")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> SubgroupHandle:
        return self.entries[i]

    def masks(self) -> tuple[int, ...]:
        return tuple(h.mask for h in self.entries)


def _mask_of(G: FiniteOmegaGroup, elements: Iterable[int]) -> int:
    mask = 0
    for x in elements:
        x = int(x)
        if not 0 <= x < G.order:
            raise ValidationError(f"element index {x} out of range for {G.name}")
        mask |= 1 << x
    return mask


def subgroup_from_mask(G: FiniteOmegaGroup, mask: int, *,
                       require_omega: bool = True) -> SubgroupHandle:
    """Wrap a mask as a handle after checking the subgroup axioms on it."""
    if not mask & 1:
        raise ValidationError("subgroup does not contain the identity")
    members = [x for x in range(G.order) if mask >> x & 1]
    tab = G.table
    for x in members:
        if not mask >> G.inverses[x] & 1:
            raise ValidationError(f"subgroup not closed under inverse at {x}")
        for y in members:
            if not mask >> tab[x][y] & 1:
                raise ValidationError(f"subgroup not closed under product at ({x}, {y})")
    closed = all(mask >> act[x] & 1 for _, act in G.operators for x in members)
    if require_omega and not closed:
        raise ValidationError("subgroup is not closed under every operator action")
    return SubgroupHandle(G, mask, omega_closed=closed)


def subgroup_from_members(G: FiniteOmegaGroup, elements: Iterable[int], *,
                          require_omega: bool = True) -> SubgroupHandle:
    return subgroup_from_mask(G, _mask_of(G, elements), require_omega=require_omega)


def trivial_subgroup(G: FiniteOmegaGroup) -> SubgroupHandle:
    return SubgroupHandle(G, 1)


def full_subgroup(G: FiniteOmegaGroup) -> SubgroupHandle:
    return SubgroupHandle(G, G.full_mask())


def generated_subgroup(G: FiniteOmegaGroup, elements: Iterable[int]) -> SubgroupHandle:
    """Least operator-closed subgroup containing the given elements."""
    mask = kernels.closure_mask(G.table, G.actions(), _mask_of(G, elements))
    return SubgroupHandle(G, mask)


def generated_mask(G: FiniteOmegaGroup, mask: int) -> int:
    return kernels.closure_mask(G.table, G.actions(), mask)


def normal_closure(G: FiniteOmegaGroup, elements: Iterable[int]) -> SubgroupHandle:
    """Least normal operator-closed subgroup containing the given elements."""
    actions = G.actions() + G.conjugation_actions()
    mask = kernels.closure_mask(G.table, actions, _mask_of(G, elements))
    return SubgroupHandle(G, mask)


def is_normal(G: FiniteOmegaGroup, H: SubgroupHandle) -> bool:
    """gHg^-1 == H for every g (operator closure is the handle's flag)."""
    if H.parent != G:
        raise ValidationError("handle does not belong to this group")
    members = H.members()
    for act in G.conjugation_actions():
        for x in members:
            if not H.mask >> act[x] & 1:
                return False
    return True


def centralizer(G: FiniteOmegaGroup, elements: Iterable[int]) -> SubgroupHandle:
    """All g commuting with every given element.

    Always a subgroup, but not necessarily operator-closed; the handle's
    ``omega_closed`` flag records whether it happens to be.
    """
    xs = sorted(set(int(x) for x in elements))
    tab = G.table
    mask = 0
    for g in range(G.order):
        if all(tab[g][x] == tab[x][g] for x in xs):
            mask |= 1 << g
    return subgroup_from_mask(G, mask, require_omega=False)


def commutator_subgroup(G: FiniteOmegaGroup, H: SubgroupHandle,
                        K: SubgroupHandle) -> SubgroupHandle:
    """Subgroup generated by the commutators h k h^-1 k^-1.

    Generation includes operator closure, matching the generated-subgroup
    convention used everywhere else in the engine.
    """
    seeds = set()
    tab = G.table
    inv = G.inverses
    for h in H.members():
        for k in K.members():
            seeds.add(tab[tab[tab[h][k]][inv[h]]][inv[k]])
    return generated_subgroup(G, seeds)


def _sorted_family(G: FiniteOmegaGroup, masks: Iterable[int]) -> SubgroupFamily:
    handles = [SubgroupHandle(G, m) for m in set(masks)]
    handles.sort(key=lambda h: (h.size, h.members()))
    return SubgroupFamily(G, tuple(handles))


def _check_lattice_cap(G: FiniteOmegaGroup, cap: int | None) -> None:
    cap = DEFAULT_LATTICE_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceededError(
            f"order {G.order} exceeds lattice enumeration cap {cap}",
            limit=cap, needed=G.order)


def enumerate_omega_subgroups(G: FiniteOmegaGroup, *,
                              cap: int | None = None) -> SubgroupFamily:
    """All operator-closed subgroups, sorted by (size, member list)."""
    _check_lattice_cap(G, cap)
    key = ("lattice",)
    if key not in G._memo:
        masks = kernels.all_subgroup_masks(G.table, G.actions())
        G._memo[key] = _sorted_family(G, masks)
    return G._memo[key]


def enumerate_normal_omega_subgroups(G: FiniteOmegaGroup, *,
                                     cap: int | None = None) -> SubgroupFamily:
    """All normal operator-closed subgroups, sorted by (size, member list).

    Enumerated directly as joins of single-element normal closures, which
    agrees with filtering the full lattice but does not require it.
    """
    _check_lattice_cap(G, cap)
    key = ("normal_lattice",)
    if key not in G._memo:
        masks = kernels.normal_subgroup_masks(
            G.table, G.actions(), G.conjugation_actions())
        G._memo[key] = _sorted_family(G, masks)
    return G._memo[key]


def is_simple_subgroup(G: FiniteOmegaGroup, H: SubgroupHandle) -> bool:
    """Is H, with its induced operators, a simple operator group?

    Simplicity is relative to H itself: closure under H-conjugation and the
    ambient operators. H must be nontrivial and its only normal
    operator-closed subgroups must be the trivial one and H.
    """
    if H.mask == 1:
        return False
    tab = G.table
    inv = G.inverses
    members = H.members()
    # conjugation by members of H only: closures below start inside H and
    # stay there, computing normal closures relative to H in G's indexing.
    conj = [tuple(tab[tab[g][x]][inv[g]] for x in range(G.order)) for g in members]
    actions = G.actions() + tuple(conj)
    for x in members:
        if x == 0:
            continue
        if kernels.closure_mask(tab, actions, 1 << x) != H.mask:
            return False
    return True


def simple_normal_subgroups(G: FiniteOmegaGroup, *,
                            cap: int | None = None) -> SubgroupFamily:
    """The collection of simple normal operator-closed subgroups (the group
    itself included when it qualifies)."""
    key = ("sz",)
    if key not in G._memo:
        normals = enumerate_normal_omega_subgroups(G, cap=cap)
        simple = [h for h in normals if is_simple_subgroup(G, h)]
        G._memo[key] = SubgroupFamily(G, tuple(simple))
    return G._memo[key]


def setwise_product_mask(G: FiniteOmegaGroup, left: int, right: int) -> int:
    tab = G.table
    out = 0
    rights = [y for y in range(G.order) if right >> y & 1]
    for x in range(G.order):
        if left >> x & 1:
            row = tab[x]
            for y in rights:
                out |= 1 << row[y]
    return out


def join_normal(G: FiniteOmegaGroup, family: Sequence[SubgroupHandle] | SubgroupFamily) -> SubgroupHandle:
    """Subgroup generated by a union of normal subgroups.

    Computed as the setwise product in list order and cross-checked against
    the saturation closure of the union; a mismatch is an engine bug. The
    result is normal (joins of normal subgroups are normal).
    """
    entries = list(family)
    union = 0
    prod = 1
    for h in entries:
        if h.parent != G:
            raise ValidationError("family entries must live in the ambient group")
        if not h.omega_closed:
            raise ValidationError("join entries must be operator-closed")
        if not is_normal(G, h):
            raise ValidationError("join entries must be normal")
        union |= h.mask
        prod = setwise_product_mask(G, prod, h.mask)
    closure = generated_mask(G, union | 1)
    if prod != closure:
        raise EngineInvariantError(
            "setwise product of a normal family differs from the closure of its union")
    out = SubgroupHandle(G, closure)
    if not is_normal(G, out):
        raise EngineInvariantError("join of normal subgroups came out non-normal")
    return out


def generating_sequence(G: FiniteOmegaGroup) -> tuple[int, ...]:
    """Deterministic generating sequence: ascending greedy sweep, adding each
    element not yet inside the closure of the ones picked so far."""
    gens: list[int] = []
    mask = generated_mask(G, 1)
    for x in range(G.order):
        if not mask >> x & 1:
            gens.append(x)
            mask = generated_mask(G, mask | (1 << x))
            if mask == G.full_mask():
                break
    return tuple(gens)


def subgroup_as_group(H: SubgroupHandle) -> tuple[FiniteOmegaGroup, OmegaMorphism]:
    """Extract a handle as a standalone group plus the inclusion morphism.

    Members are reindexed in ascending parent order, so the identity stays
    at 0 and extraction is deterministic.
    """
    if not H.omega_closed:
        raise ValidationError("cannot extract a subgroup that is not operator-closed")
    G = H.parent
    members = list(H.members())
    index = {x: i for i, x in enumerate(members)}
    table = [[index[G.table[x][y]] for y in members] for x in members]
    ops = [(label, tuple(index[act[x]] for x in members)) for label, act in G.operators]
    sub = FiniteOmegaGroup(table, ops, name=f"{G.name}[{len(members)}:{H.mask:x}]")
    embed = OmegaMorphism(sub, G, members, validate=False)
    return sub, embed
