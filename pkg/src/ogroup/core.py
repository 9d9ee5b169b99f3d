"""Finite groups with operators: exact tables, morphisms, products, quotients.

Conventions used across the package:

* elements of a group of order ``n`` are the indices ``0..n-1``; index 0 is
  always the identity;
* an operator is a labelled endomorphism given as a length-``n`` action
  array; operator labels within one group are pairwise distinct;
* every value is immutable after construction and every operation is a pure
  function of its inputs, so everything can be shared between threads.

Order caps are configuration values with documented defaults, not hard
limits; each accepts an override at the call site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence, TYPE_CHECKING

from .errors import CapExceededError, ValidationError

if TYPE_CHECKING:
    from .subgroups import SubgroupHandle

#: Largest group any constructor will build by default.
DEFAULT_CONSTRUCTION_CAP = 64
#: Largest order for which the full subgroup lattice is enumerated by default.
DEFAULT_LATTICE_CAP = 24
#: Largest order canonicalised into a certificate by default.
DEFAULT_CERTIFICATE_CAP = 16
#: Largest source order for morphism-set enumeration by default.
DEFAULT_HOM_CAP = 16


class FiniteOmegaGroup:
    """A finite group with operators, stored as a Cayley table.

    ``table[x][y]`` is the product xy, ``inverses`` is derived from the
    table, and ``operators`` is an ordered tuple of ``(label, action)``
    pairs. The constructor validates every axiom (identity at 0,
    associativity, inverses, distributivity of each action) and raises
    :class:`ValidationError` naming the failing axiom otherwise. ``name`` is
    provenance only and takes no part in equality.
    """

    __slots__ = ("order", "table", "inverses", "operators", "name", "_memo", "_hash")

    def __init__(self, table: Sequence[Sequence[int]],
                 operators: Sequence[tuple[str, Sequence[int]]] = (),
                 name: str = "G", *, trusted: bool = False):
        tab = tuple(tuple(int(v) for v in row) for row in table)
        n = len(tab)
        if n == 0:
            raise ValidationError("a group needs at least the identity element")
        for i, row in enumerate(tab):
            if len(row) != n:
                raise ValidationError(f"table is not square: row {i} has length {len(row)}")
            for j, v in enumerate(row):
                if not 0 <= v < n:
                    raise ValidationError(f"table entry out of range at ({i}, {j}): {v}")
        for x in range(n):
            if tab[0][x] != x or tab[x][0] != x:
                raise ValidationError(f"element 0 is not a two-sided identity at {x}")
        inv = [-1] * n
        for x in range(n):
            for y in range(n):
                if tab[x][y] == 0 and tab[y][x] == 0:
                    inv[x] = y
                    break
            if inv[x] < 0:
                raise ValidationError(f"no inverse for element {x}")
        if not trusted:
            for x in range(n):
                rx = tab[x]
                for y in range(n):
                    rxy = tab[rx[y]]
                    ry = tab[y]
                    for z in range(n):
                        if rxy[z] != rx[ry[z]]:
                            raise ValidationError(f"not associative at ({x}, {y}, {z})")
        ops = []
        labels = set()
        for label, action in operators:
            label = str(label)
            if label in labels:
                raise ValidationError(f"duplicate operator label {label!r}")
            labels.add(label)
            act = tuple(int(v) for v in action)
            if len(act) != n:
                raise ValidationError(f"operator {label!r} action has length {len(act)}, expected {n}")
            for v in act:
                if not 0 <= v < n:
                    raise ValidationError(f"operator {label!r} action entry out of range: {v}")
            if not trusted:
                for x in range(n):
                    ax = act[x]
                    for y in range(n):
                        if act[tab[x][y]] != tab[ax][act[y]]:
                            raise ValidationError(
                                f"operator {label!r} not distributive at ({x}, {y})")
            ops.append((label, act))
        self.order = n
        self.table = tab
        self.inverses = tuple(inv)
        self.operators = tuple(ops)
        self.name = str(name)
        self._memo: dict = {}
        self._hash: int | None = None

    # -- basic arithmetic ---------------------------------------------------

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def inv(self, x: int) -> int:
        return self.inverses[x]

    def conjugate(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverses[g]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverses[x], -k)
        acc = 0
        for _ in range(k):
            acc = self.table[acc][x]
        return acc

    def element_order(self, x: int) -> int:
        acc = x
        k = 1
        while acc != 0:
            acc = self.table[acc][x]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    # -- operator access ----------------------------------------------------

    def operator_labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.operators)

    def operator_label_set(self) -> frozenset[str]:
        return frozenset(label for label, _ in self.operators)

    def operator_action(self, label: str) -> tuple[int, ...]:
        for lab, act in self.operators:
            if lab == label:
                return act
        raise KeyError(label)

    def actions(self) -> tuple[tuple[int, ...], ...]:
        """Operator actions in stored order (label-free, for closures)."""
        return tuple(act for _, act in self.operators)

    def operators_sorted(self) -> tuple[tuple[str, tuple[int, ...]], ...]:
        """Operators sorted by label; the order used by digests and pairing."""
        key = "ops_sorted"
        if key not in self._memo:
            self._memo[key] = tuple(sorted(self.operators))
        return self._memo[key]

    # -- derived data (memoised; all pure) ----------------------------------

    def element_orders(self) -> tuple[int, ...]:
        key = "elem_orders"
        if key not in self._memo:
            self._memo[key] = tuple(self.element_order(x) for x in range(self.order))
        return self._memo[key]

    def conjugation_actions(self) -> tuple[tuple[int, ...], ...]:
        """Per element g, the action x -> g x g^-1 (each is an automorphism)."""
        key = "conj_actions"
        if key not in self._memo:
            self._memo[key] = tuple(
                tuple(self.conjugate(g, x) for x in range(self.order))
                for g in range(self.order))
        return self._memo[key]

    def is_abelian(self) -> bool:
        key = "abelian"
        if key not in self._memo:
            tab = self.table
            self._memo[key] = all(
                tab[x][y] == tab[y][x]
                for x in range(self.order) for y in range(x + 1, self.order))
        return self._memo[key]

    def center_mask(self) -> int:
        key = "center"
        if key not in self._memo:
            tab = self.table
            mask = 0
            for g in range(self.order):
                if all(tab[g][x] == tab[x][g] for x in range(self.order)):
                    mask |= 1 << g
            self._memo[key] = mask
        return self._memo[key]

    def full_mask(self) -> int:
        return (1 << self.order) - 1

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiniteOmegaGroup):
            return NotImplemented
        return (self.order == other.order and self.table == other.table
                and self.operators_sorted() == other.operators_sorted())

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.order, self.table, self.operators_sorted()))
        return self._hash

    def __repr__(self) -> str:
        labels = ",".join(self.operator_labels())
        return f"FiniteOmegaGroup({self.name!r}, order={self.order}, operators=[{labels}])"

    def describe_omega(self) -> str:
        """Human tag for the operator set; an empty set prints as such."""
        if not self.operators:
            return "omega={}"
        return "omega={" + ", ".join(self.operator_labels()) + "}"


class OmegaMorphism:
    """A total map between two operator groups preserving products and
    commuting with equally-labelled operators.

    Validation requires identical operator label sets on both endpoints.
    """

    __slots__ = ("source", "target", "map")

    def __init__(self, source: FiniteOmegaGroup, target: FiniteOmegaGroup,
                 mapping: Sequence[int], validate: bool = True):
        self.source = source
        self.target = target
        self.map = tuple(int(v) for v in mapping)
        if validate:
            self._validate()

    def _validate(self) -> None:
        src, dst = self.source, self.target
        m = self.map
        if len(m) != src.order:
            raise ValidationError(f"morphism map has length {len(m)}, expected {src.order}")
        for v in m:
            if not 0 <= v < dst.order:
                raise ValidationError(f"morphism image out of range: {v}")
        if m[0] != 0:
            raise ValidationError("morphism does not fix the identity")
        if src.operator_label_set() != dst.operator_label_set():
            raise ValidationError("morphism endpoints carry different operator label sets")
        stab, dtab = src.table, dst.table
        for x in range(src.order):
            mx = m[x]
            for y in range(src.order):
                if m[stab[x][y]] != dtab[mx][m[y]]:
                    raise ValidationError(f"map is not multiplicative at ({x}, {y})")
        for label, act in src.operators:
            dact = dst.operator_action(label)
            for x in range(src.order):
                if m[act[x]] != dact[m[x]]:
                    raise ValidationError(
                        f"map does not commute with operator {label!r} at {x}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image_mask(self, mask: int | None = None) -> int:
        """Mask of the direct image of ``mask`` (whole source by default)."""
        if mask is None:
            mask = self.source.full_mask()
        out = 0
        for x in range(self.source.order):
            if mask >> x & 1:
                out |= 1 << self.map[x]
        return out

    def kernel_mask(self) -> int:
        out = 0
        for x in range(self.source.order):
            if self.map[x] == 0:
                out |= 1 << x
        return out

    def is_injective(self) -> bool:
        return len(set(self.map)) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, inner: "OmegaMorphism") -> "OmegaMorphism":
        """self after inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise ValidationError("composition endpoints do not match")
        return OmegaMorphism(inner.source, self.target,
                             tuple(self.map[v] for v in inner.map), validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OmegaMorphism):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.map == other.map)

    def __hash__(self) -> int:
        return hash((id(self.source), id(self.target), self.map))

    def __repr__(self) -> str:
        return (f"OmegaMorphism({self.source.name!r} -> {self.target.name!r}, "
                f"map={list(self.map)})")


def identity_morphism(G: FiniteOmegaGroup) -> OmegaMorphism:
    return OmegaMorphism(G, G, range(G.order), validate=False)


def null_morphism(source: FiniteOmegaGroup, target: FiniteOmegaGroup) -> OmegaMorphism:
    if source.operator_label_set() != target.operator_label_set():
        raise ValidationError("null morphism endpoints carry different operator label sets")
    return OmegaMorphism(source, target, [0] * source.order, validate=False)


@dataclass(frozen=True)
class ProductWitness:
    """A direct product together with its canonical injections/projections."""

    product: FiniteOmegaGroup
    injections: tuple[OmegaMorphism, ...]
    projections: tuple[OmegaMorphism, ...]


# -- constructors ------------------------------------------------------------


def build_from_table(table: Sequence[Sequence[int]],
                     operators: Sequence[tuple[str, Sequence[int]]] = (),
                     name: str = "G") -> FiniteOmegaGroup:
    """Validating constructor; rejects anything that is not a group with
    distributive operator actions."""
    return FiniteOmegaGroup(table, operators, name=name)


def _perm_group(perms: list[tuple[int, ...]], name: str) -> FiniteOmegaGroup:
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(len(p)))] for q in perms] for p in perms]
    return FiniteOmegaGroup(table, name=name)


def _parity(p: tuple[int, ...]) -> int:
    inv = 0
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                inv += 1
    return inv % 2


KLEIN4_TABLE = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))

#: Fixed element enumeration per kind (all deterministic):
#: cyclic n    -- residues 0..n-1, x*y = x+y mod n;
#: symmetric n -- permutation tuples of 0..n-1 in lexicographic order,
#:               composed as (p*q)(x) = p(q(x));
#: alternating n -- even permutations in lexicographic order;
#: dihedral n  -- order 2n; index a < n is rotation r^a, index n+a is r^a s,
#:               with s r^a = r^{-a} s;
#: klein4      -- the fixed table above (each element self-inverse).
BUILD_KINDS = ("cyclic", "symmetric", "alternating", "dihedral", "klein4")


def build_named(kind: str, n: int | None = None, *, cap: int | None = None,
                name: str | None = None) -> FiniteOmegaGroup:
    """Build one of the stock groups; the resulting order must stay within
    the construction cap (default 64)."""
    cap = DEFAULT_CONSTRUCTION_CAP if cap is None else cap
    if kind not in BUILD_KINDS:
        raise ValidationError(f"unknown group kind {kind!r}")
    if kind == "klein4":
        if n not in (None, 4):
            raise ValidationError("klein4 takes no order argument")
        order = 4
    else:
        if n is None or int(n) < 1:
            raise ValidationError(f"{kind} needs a positive order parameter")
        n = int(n)
        if kind == "cyclic":
            order = n
        elif kind == "symmetric":
            order = math.factorial(n)
        elif kind == "alternating":
            order = max(1, math.factorial(n) // 2)
        else:
            order = 2 * n
    if order > cap:
        raise CapExceededError(
            f"{kind} group of order {order} exceeds construction cap {cap}",
            limit=cap, needed=order)

    if kind == "cyclic":
        table = [[(x + y) % n for y in range(n)] for x in range(n)]
        return FiniteOmegaGroup(table, name=name or f"C{n}")
    if kind == "klein4":
        return FiniteOmegaGroup(KLEIN4_TABLE, name=name or "V4")
    if kind == "symmetric":
        perms = sorted(permutations(range(n)))
        return _perm_group(perms, name or f"S{n}")
    if kind == "alternating":
        perms = sorted(p for p in permutations(range(n)) if _parity(p) == 0)
        return _perm_group(perms, name or f"A{n}")
    # dihedral
    table = [[0] * (2 * n) for _ in range(2 * n)]
    for a in range(n):
        for b in range(n):
            table[a][b] = (a + b) % n
            table[a][n + b] = n + (a + b) % n
            table[n + a][b] = n + (a - b) % n
            table[n + a][n + b] = (a - b) % n
    return FiniteOmegaGroup(table, name=name or f"D{n}")


def with_inner_operators(G: FiniteOmegaGroup) -> FiniteOmegaGroup:
    """Extend the operator list with one conjugation action per element,
    labelled ``conj<i>``; existing operators are kept.

    With these operators present, operator-closed subgroups coincide with
    normal operator-closed subgroups.
    """
    ops = list(G.operators)
    for g, act in enumerate(G.conjugation_actions()):
        ops.append((f"conj{g}", act))
    return FiniteOmegaGroup(G.table, ops, name=f"inner({G.name})")


def direct_product(family: Sequence[FiniteOmegaGroup], *, cap: int | None = None,
                   name: str | None = None, validate: bool = True) -> ProductWitness:
    """Componentwise product of a finite family; the empty family gives the
    trivial group.

    Element indices are mixed-radix with slot 0 most significant. All
    members must carry the same operator label set; the product action of a
    label acts componentwise. ``validate=False`` skips re-running the group
    axioms on the result, which is sound because a componentwise product of
    valid groups is valid; it is used for large internal scratch products.
    """
    cap = DEFAULT_CONSTRUCTION_CAP if cap is None else cap
    members = list(family)
    if members:
        labels = members[0].operator_label_set()
        for g in members[1:]:
            if g.operator_label_set() != labels:
                raise ValidationError("product members carry different operator label sets")
    order = 1
    for g in members:
        order *= g.order
    if order > cap:
        raise CapExceededError(
            f"product of order {order} exceeds construction cap {cap}",
            limit=cap, needed=order)

    k = len(members)
    strides = [1] * k
    for i in range(k - 2, -1, -1):
        strides[i] = strides[i + 1] * members[i + 1].order

    def decode(x: int) -> tuple[int, ...]:
        out = []
        for i in range(k):
            out.append(x // strides[i])
            x %= strides[i]
        return tuple(out)

    def encode(parts: Sequence[int]) -> int:
        return sum(p * s for p, s in zip(parts, strides))

    coords = [decode(x) for x in range(order)]
    table = [[encode([members[i].table[a[i]][b[i]] for i in range(k)])
              for b in coords] for a in coords]
    ops = []
    if members:
        for label, _ in members[0].operators:
            acts = [g.operator_action(label) for g in members]
            ops.append((label, tuple(
                encode([acts[i][a[i]] for i in range(k)]) for a in coords)))
    prod_name = name or ("C1" if not members else "x".join(g.name for g in members))
    product = FiniteOmegaGroup(table, ops, name=prod_name, trusted=not validate)

    injections = []
    projections = []
    for i, g in enumerate(members):
        inj = [0] * g.order
        for x in range(g.order):
            parts = [0] * k
            parts[i] = x
            inj[x] = encode(parts)
        injections.append(OmegaMorphism(g, product, inj, validate=False))
        projections.append(OmegaMorphism(product, g,
                                         [coords[x][i] for x in range(order)],
                                         validate=False))
    return ProductWitness(product, tuple(injections), tuple(projections))


def quotient(G: FiniteOmegaGroup, N: "SubgroupHandle") -> tuple[FiniteOmegaGroup, OmegaMorphism]:
    """Quotient by a normal operator-closed subgroup, plus the canonical
    surjection. Cosets are indexed by ascending minimal member, so the
    identity coset is 0."""
    from .subgroups import is_normal  # local import to avoid a cycle

    if N.parent != G:
        raise ValidationError("subgroup handle does not belong to this group")
    if not N.omega_closed:
        raise ValidationError("quotient subgroup is not closed under the operators")
    if not is_normal(G, N):
        raise ValidationError("quotient subgroup is not normal")

    n = G.order
    members = [x for x in range(n) if N.mask >> x & 1]
    coset_of = [-1] * n
    reps: list[int] = []
    for x in range(n):
        if coset_of[x] < 0:
            idx = len(reps)
            reps.append(x)
            for m in members:
                coset_of[G.table[x][m]] = idx
    q = len(reps)
    table = [[coset_of[G.table[a][b]] for b in reps] for a in reps]
    ops = [(label, tuple(coset_of[act[a]] for a in reps)) for label, act in G.operators]
    Q = FiniteOmegaGroup(table, ops, name=f"{G.name}/N{N.mask:x}")
    pi = OmegaMorphism(G, Q, coset_of, validate=False)
    return Q, pi
