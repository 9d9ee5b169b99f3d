"""Pure-Python kernels for the hot inner loops.

Every function here has a compiled twin in ``_ckernels.pyx`` with the same
signature and bit-identical output; ``ogroup.kernels`` picks one at import
time. Masks are Python ints used as bit vectors over element indices
(bit ``i`` set = element ``i`` present). Index 0 is always the identity and
group orders are capped at 64 so masks fit one machine word in the compiled
twin.

A nonempty product-closed subset of a finite group is a subgroup, so the
closure kernels saturate under products and operator actions only; inverses
come for free.
"""

from __future__ import annotations

from typing import Sequence

MAX_KERNEL_ORDER = 64


def _check_order(n: int) -> None:
    if not 1 <= n <= MAX_KERNEL_ORDER:
        raise ValueError(f"kernel order {n} outside 1..{MAX_KERNEL_ORDER}")


def closure_mask(table: Sequence[Sequence[int]],
                 actions: Sequence[Sequence[int]],
                 seed_mask: int) -> int:
    """Least mask containing ``seed_mask`` and 0, closed under the table
    product and every action."""
    n = len(table)
    _check_order(n)
    mask = (seed_mask | 1) & ((1 << n) - 1)
    queue = [i for i in range(n) if mask >> i & 1]
    processed: list[int] = []
    while queue:
        x = queue.pop()
        row = table[x]
        for act in actions:
            z = act[x]
            if not mask >> z & 1:
                mask |= 1 << z
                queue.append(z)
        z = row[x]
        if not mask >> z & 1:
            mask |= 1 << z
            queue.append(z)
        for y in processed:
            z = row[y]
            if not mask >> z & 1:
                mask |= 1 << z
                queue.append(z)
            z = table[y][x]
            if not mask >> z & 1:
                mask |= 1 << z
                queue.append(z)
        processed.append(x)
    return mask


def all_subgroup_masks(table: Sequence[Sequence[int]],
                       actions: Sequence[Sequence[int]]) -> list[int]:
    """Masks of all action-closed subgroups, in discovery order.

    Breadth-first closure extension: every subgroup K above an already-found
    H is reachable as closure(H | {g}) for some g in K \\ H, so the sweep is
    complete.
    """
    n = len(table)
    _check_order(n)
    base = closure_mask(table, actions, 1)
    seen = {base}
    stack = [base]
    while stack:
        h = stack.pop()
        for g in range(n):
            if not h >> g & 1:
                k = closure_mask(table, actions, h | (1 << g))
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
    return list(seen)


def normal_subgroup_masks(table: Sequence[Sequence[int]],
                          actions: Sequence[Sequence[int]],
                          conj_actions: Sequence[Sequence[int]]) -> list[int]:
    """Masks of all conjugation- and action-closed subgroups.

    Every such subgroup is the join of the single-element normal closures of
    its members, so it suffices to saturate joins of those atoms. Joins of
    normal subgroups only need product closure: the product set is already
    closed under conjugation and actions.
    """
    n = len(table)
    _check_order(n)
    full_actions = tuple(actions) + tuple(conj_actions)
    atoms = [closure_mask(table, full_actions, 1 << x) for x in range(n)]
    base = closure_mask(table, full_actions, 1)
    seen = {base}
    stack = [base]
    while stack:
        h = stack.pop()
        for x in range(n):
            if not h >> x & 1:
                k = closure_mask(table, actions, h | atoms[x])
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
    return list(seen)


def search_morphisms(table_s: Sequence[Sequence[int]],
                     actions_s: Sequence[Sequence[int]],
                     table_t: Sequence[Sequence[int]],
                     actions_t: Sequence[Sequence[int]],
                     gens: Sequence[int],
                     candidates: Sequence[Sequence[int]],
                     bijective_only: bool = False,
                     first_only: bool = False) -> list[tuple[int, ...]]:
    """Backtracking search for structure-preserving maps.

    ``gens`` must generate the source under products and actions; candidate
    images per generator come precomputed in ``candidates``. Each partial
    assignment is propagated through products and paired actions, so a
    returned map is a total morphism by construction. With ``bijective_only``
    injectivity is enforced during propagation (caller must ensure equal
    orders). Results appear in depth-first candidate order.
    """
    ns = len(table_s)
    nt = len(table_t)
    _check_order(ns)
    _check_order(nt)
    n_act = len(actions_s)
    if n_act != len(actions_t):
        raise ValueError("action lists must pair up")
    mapping = [-1] * ns
    used = [0] * nt
    mapping[0] = 0
    used[0] = 1
    results: list[tuple[int, ...]] = []

    def assign(x: int, y: int, trail: list[int]) -> bool:
        cur = mapping[x]
        if cur >= 0:
            return cur == y
        if bijective_only and used[y]:
            return False
        mapping[x] = y
        used[y] += 1
        trail.append(x)
        return True

    def propagate(start: int, trail: list[int]) -> bool:
        queue = [start]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            fx = mapping[x]
            for k in range(n_act):
                y = actions_s[k][x]
                fy = actions_t[k][fx]
                if mapping[y] < 0:
                    if not assign(y, fy, trail):
                        return False
                    queue.append(y)
                elif mapping[y] != fy:
                    return False
            row = table_s[x]
            frow = table_t[fx]
            for z in range(ns):
                fz = mapping[z]
                if fz < 0:
                    continue
                u = row[z]
                fu = frow[fz]
                if mapping[u] < 0:
                    if not assign(u, fu, trail):
                        return False
                    queue.append(u)
                elif mapping[u] != fu:
                    return False
                u = table_s[z][x]
                fu = table_t[fz][fx]
                if mapping[u] < 0:
                    if not assign(u, fu, trail):
                        return False
                    queue.append(u)
                elif mapping[u] != fu:
                    return False
        return True

    def undo(trail: list[int]) -> None:
        for x in trail:
            used[mapping[x]] -= 1
            mapping[x] = -1

    def dfs(i: int) -> bool:
        """Returns False to stop the whole search."""
        if i == len(gens):
            if any(m < 0 for m in mapping):
                raise ValueError("generators do not generate the source")
            results.append(tuple(mapping))
            return not first_only
        g = gens[i]
        if mapping[g] >= 0:
            return dfs(i + 1)
        for y in candidates[i]:
            trail: list[int] = []
            ok = assign(g, y, trail) and propagate(g, trail)
            if ok:
                keep_going = dfs(i + 1)
                undo(trail)
                if not keep_going:
                    return False
            else:
                undo(trail)
        return True

    dfs(0)
    return results


def canonical_encoding(table: Sequence[Sequence[int]],
                       actions: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Lexicographically minimal flat encoding over relabelings fixing 0.

    The encoding is the row-major relabelled table followed by each
    relabelled action in the given action order. The search walks encoding
    cells in order; positions 1..n-1 and the placement of newly met elements
    are branch points, everything else is forced, and a branch is pruned as
    soon as its next determined cell exceeds the best known encoding. ``best``
    is kept truncated to the common prefix whenever a strictly smaller cell
    value is found, which keeps the comparison a plain index lookup.

    Column-element candidates are explored in ascending order of the cell
    value they would emit; otherwise a mediocre first candidate's subtree is
    walked in full before a better sibling tightens the bound, which blows
    up even on cyclic groups.
    """
    n = len(table)
    _check_order(n)
    k = len(actions)
    n2 = n * n
    total = n2 + k * n
    if n == 1:
        return tuple([0] * total)

    elem = [-1] * n
    pos = [-1] * n
    elem[0] = 0
    pos[0] = 0
    best: list[int] = []

    def emit(c: int, v: int) -> bool:
        if c < len(best):
            b = best[c]
            if v > b:
                return False
            if v < b:
                best[c] = v
                del best[c + 1:]
            return True
        best.append(v)
        return True

    def rec(c: int) -> None:
        if c == total:
            return
        if c >= n2:
            off = c - n2
            x = actions[off // n][elem[off % n]]
            if emit(c, pos[x]):
                rec(c + 1)
            return
        i, j = divmod(c, n)
        if i == 0:
            if emit(c, j):
                rec(c + 1)
            return
        if elem[i] < 0:
            for e in range(1, n):
                if pos[e] < 0:
                    elem[i] = e
                    pos[e] = i
                    rec(c)
                    elem[i] = -1
                    pos[e] = -1
            return
        if elem[j] < 0:
            row = table[elem[i]]
            free = -1
            for p in range(1, n):
                if elem[p] < 0 and p != j:
                    free = p
                    break
            cands = []
            for e in range(1, n):
                if pos[e] < 0:
                    p = pos[row[e]]
                    cands.append((p if p >= 0 else free, e))
            cands.sort()
            for _, e in cands:
                elem[j] = e
                pos[e] = j
                rec(c)
                elem[j] = -1
                pos[e] = -1
            return
        x = table[elem[i]][elem[j]]
        p = pos[x]
        if p >= 0:
            if emit(c, p):
                rec(c + 1)
            return
        for p2 in range(1, n):
            if elem[p2] >= 0:
                continue
            if c < len(best) and p2 > best[c]:
                break
            elem[p2] = x
            pos[x] = p2
            emit(c, p2)
            rec(c + 1)
            elem[p2] = -1
            pos[x] = -1
        return

    rec(0)
    return tuple(best)
