# cython: language_level=3, boundscheck=False, wraparound=False
# cython: initializedcheck=False, cdivision=True
"""Compiled kernels: bit-identical twins of ``_kernels_py``.

Masks are unsigned 64-bit words, which is why the shared kernel order cap
is 64. See the pure module for the algorithmic commentary; the two
implementations must stay in lockstep (the parity tests compare them).
"""

from cpython cimport array
import array as _array

MAX_KERNEL_ORDER = 64

cdef array.array _INT_TEMPLATE = _array.array('i', [])


cdef inline unsigned long long _full_mask(int n) noexcept:
    return (<unsigned long long> 0xFFFFFFFFFFFFFFFF) >> (64 - n)


cdef int _check_order(int n) except -1:
    if n < 1 or n > 64:
        raise ValueError(f"kernel order {n} outside 1..64")
    return 0


cdef array.array _flatten(rows, int n, int count):
    cdef array.array buf = array.clone(_INT_TEMPLATE, n * count, zero=False)
    cdef int[:] view = buf
    cdef int i, j
    for i in range(count):
        row = rows[i]
        for j in range(n):
            view[i * n + j] = row[j]
    return buf


cdef unsigned long long _closure(int n, int[:] tab, int n_act, int[:] acts,
                                 unsigned long long seed) noexcept:
    cdef unsigned long long mask = (seed | 1) & _full_mask(n)
    cdef int queue[64]
    cdef int processed[64]
    cdef int qn = 0, pn = 0
    cdef int i, x, y, z, k
    for i in range(n):
        if mask >> i & 1:
            queue[qn] = i
            qn += 1
    while qn:
        qn -= 1
        x = queue[qn]
        for k in range(n_act):
            z = acts[k * n + x]
            if not mask >> z & 1:
                mask |= (<unsigned long long> 1) << z
                queue[qn] = z
                qn += 1
        z = tab[x * n + x]
        if not mask >> z & 1:
            mask |= (<unsigned long long> 1) << z
            queue[qn] = z
            qn += 1
        for i in range(pn):
            y = processed[i]
            z = tab[x * n + y]
            if not mask >> z & 1:
                mask |= (<unsigned long long> 1) << z
                queue[qn] = z
                qn += 1
            z = tab[y * n + x]
            if not mask >> z & 1:
                mask |= (<unsigned long long> 1) << z
                queue[qn] = z
                qn += 1
        processed[pn] = x
        pn += 1
    return mask


def closure_mask(table, actions, seed_mask):
    cdef int n = len(table)
    _check_order(n)
    cdef int n_act = len(actions)
    cdef array.array tab = _flatten(table, n, n)
    cdef array.array acts = _flatten(actions, n, n_act)
    cdef unsigned long long seed = seed_mask & _full_mask(n)
    return int(_closure(n, tab, n_act, acts, seed))


def all_subgroup_masks(table, actions):
    cdef int n = len(table)
    _check_order(n)
    cdef int n_act = len(actions)
    cdef array.array tab_buf = _flatten(table, n, n)
    cdef array.array acts_buf = _flatten(actions, n, n_act)
    cdef int[:] tab = tab_buf
    cdef int[:] acts = acts_buf
    cdef unsigned long long base = _closure(n, tab, n_act, acts, 1)
    cdef unsigned long long h, k
    cdef int g
    seen = {base}
    stack = [base]
    while stack:
        h = stack.pop()
        for g in range(n):
            if not h >> g & 1:
                k = _closure(n, tab, n_act, acts, h | ((<unsigned long long> 1) << g))
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
    return [int(m) for m in seen]


def normal_subgroup_masks(table, actions, conj_actions):
    cdef int n = len(table)
    _check_order(n)
    cdef int n_act = len(actions)
    cdef int n_all = n_act + len(conj_actions)
    cdef array.array tab_buf = _flatten(table, n, n)
    cdef array.array acts_buf = _flatten(actions, n, n_act)
    cdef array.array all_buf = _flatten(list(actions) + list(conj_actions), n, n_all)
    cdef int[:] tab = tab_buf
    cdef int[:] acts = acts_buf
    cdef int[:] all_acts = all_buf
    cdef unsigned long long atoms[64]
    cdef int x
    for x in range(n):
        atoms[x] = _closure(n, tab, n_all, all_acts, (<unsigned long long> 1) << x)
    cdef unsigned long long base = _closure(n, tab, n_all, all_acts, 1)
    cdef unsigned long long h, k
    seen = {base}
    stack = [base]
    while stack:
        h = stack.pop()
        for x in range(n):
            if not h >> x & 1:
                k = _closure(n, tab, n_act, acts, h | atoms[x])
                if k not in seen:
                    seen.add(k)
                    stack.append(k)
    return [int(m) for m in seen]


cdef class _MorphSearch:
    cdef int ns, nt, n_act, n_gens
    cdef bint bijective_only, first_only
    cdef array.array tab_s_buf, tab_t_buf, acts_s_buf, acts_t_buf
    cdef array.array gens_buf, cand_buf, cand_off_buf
    cdef int[:] tab_s, tab_t, acts_s, acts_t, gens, cand, cand_off
    cdef int mapping[64]
    cdef int used[64]
    cdef list results

    def __init__(self, table_s, actions_s, table_t, actions_t, gens,
                 candidates, bint bijective_only, bint first_only):
        self.ns = len(table_s)
        self.nt = len(table_t)
        _check_order(self.ns)
        _check_order(self.nt)
        self.n_act = len(actions_s)
        if self.n_act != len(actions_t):
            raise ValueError("action lists must pair up")
        self.n_gens = len(gens)
        self.bijective_only = bijective_only
        self.first_only = first_only
        self.tab_s_buf = _flatten(table_s, self.ns, self.ns)
        self.tab_t_buf = _flatten(table_t, self.nt, self.nt)
        self.acts_s_buf = _flatten(actions_s, self.ns, self.n_act)
        self.acts_t_buf = _flatten(actions_t, self.nt, self.n_act)
        self.tab_s = self.tab_s_buf
        self.tab_t = self.tab_t_buf
        self.acts_s = self.acts_s_buf
        self.acts_t = self.acts_t_buf
        self.gens_buf = _array.array('i', list(gens))
        self.gens = self.gens_buf
        flat = []
        offsets = [0]
        for cand in candidates:
            flat.extend(cand)
            offsets.append(len(flat))
        self.cand_buf = _array.array('i', flat or [0])
        self.cand_off_buf = _array.array('i', offsets)
        self.cand = self.cand_buf
        self.cand_off = self.cand_off_buf
        cdef int i
        for i in range(self.ns):
            self.mapping[i] = -1
        for i in range(self.nt):
            self.used[i] = 0
        self.mapping[0] = 0
        self.used[0] = 1
        self.results = []

    cdef bint _assign(self, int x, int y, int* trail, int* trail_len) noexcept:
        cdef int cur = self.mapping[x]
        if cur >= 0:
            return cur == y
        if self.bijective_only and self.used[y]:
            return False
        self.mapping[x] = y
        self.used[y] += 1
        trail[trail_len[0]] = x
        trail_len[0] += 1
        return True

    cdef bint _propagate(self, int start, int* trail, int* trail_len) noexcept:
        cdef int queue[64]
        cdef int qi = 0, qn = 0
        cdef int x, fx, y, fy, z, fz, u, fu, k
        queue[qn] = start
        qn += 1
        while qi < qn:
            x = queue[qi]
            qi += 1
            fx = self.mapping[x]
            for k in range(self.n_act):
                y = self.acts_s[k * self.ns + x]
                fy = self.acts_t[k * self.nt + fx]
                if self.mapping[y] < 0:
                    if not self._assign(y, fy, trail, trail_len):
                        return False
                    queue[qn] = y
                    qn += 1
                elif self.mapping[y] != fy:
                    return False
            for z in range(self.ns):
                fz = self.mapping[z]
                if fz < 0:
                    continue
                u = self.tab_s[x * self.ns + z]
                fu = self.tab_t[fx * self.nt + fz]
                if self.mapping[u] < 0:
                    if not self._assign(u, fu, trail, trail_len):
                        return False
                    queue[qn] = u
                    qn += 1
                elif self.mapping[u] != fu:
                    return False
                u = self.tab_s[z * self.ns + x]
                fu = self.tab_t[fz * self.nt + fx]
                if self.mapping[u] < 0:
                    if not self._assign(u, fu, trail, trail_len):
                        return False
                    queue[qn] = u
                    qn += 1
                elif self.mapping[u] != fu:
                    return False
        return True

    cdef void _undo(self, int* trail, int trail_len) noexcept:
        cdef int i, x
        for i in range(trail_len):
            x = trail[i]
            self.used[self.mapping[x]] -= 1
            self.mapping[x] = -1

    cdef bint _dfs(self, int i) except? False:
        cdef int trail[64]
        cdef int trail_len
        cdef int g, j, y
        cdef bint ok, keep_going
        if i == self.n_gens:
            for j in range(self.ns):
                if self.mapping[j] < 0:
                    raise ValueError("generators do not generate the source")
            self.results.append(tuple([self.mapping[j] for j in range(self.ns)]))
            return not self.first_only
        g = self.gens[i]
        if self.mapping[g] >= 0:
            return self._dfs(i + 1)
        for j in range(self.cand_off[i], self.cand_off[i + 1]):
            y = self.cand[j]
            trail_len = 0
            ok = self._assign(g, y, &trail[0], &trail_len) and \
                self._propagate(g, &trail[0], &trail_len)
            if ok:
                keep_going = self._dfs(i + 1)
                self._undo(&trail[0], trail_len)
                if not keep_going:
                    return False
            else:
                self._undo(&trail[0], trail_len)
        return True


def search_morphisms(table_s, actions_s, table_t, actions_t, gens,
                     candidates, bijective_only=False, first_only=False):
    search = _MorphSearch(table_s, actions_s, table_t, actions_t, gens,
                          candidates, bijective_only, first_only)
    search._dfs(0)
    return search.results


cdef class _Canon:
    cdef int n, k, n2, total
    cdef array.array tab_buf, acts_buf, best_buf
    cdef int[:] tab, acts, best
    cdef int best_len
    cdef int elem[64]
    cdef int pos[64]

    def __init__(self, table, actions):
        self.n = len(table)
        _check_order(self.n)
        self.k = len(actions)
        self.n2 = self.n * self.n
        self.total = self.n2 + self.k * self.n
        self.tab_buf = _flatten(table, self.n, self.n)
        self.tab = self.tab_buf
        self.acts_buf = _flatten(actions, self.n, self.k) if self.k \
            else array.clone(_INT_TEMPLATE, 0, zero=False)
        self.acts = self.acts_buf
        self.best_buf = array.clone(_INT_TEMPLATE, self.total, zero=True)
        self.best = self.best_buf
        self.best_len = 0
        cdef int i
        for i in range(self.n):
            self.elem[i] = -1
            self.pos[i] = -1
        self.elem[0] = 0
        self.pos[0] = 0

    cdef bint _emit(self, int c, int v) noexcept:
        cdef int b
        if c < self.best_len:
            b = self.best[c]
            if v > b:
                return False
            if v < b:
                self.best[c] = v
                self.best_len = c + 1
            return True
        self.best[c] = v
        self.best_len = c + 1
        return True

    cdef void _rec(self, int c) noexcept:
        cdef int i, j, e, x, p, p2, off, free, nc, t, row
        cdef int cand_val[64]
        cdef int cand_elem[64]
        cdef int tmpv, tmpe
        if c == self.total:
            return
        if c >= self.n2:
            off = c - self.n2
            x = self.acts[(off // self.n) * self.n + self.elem[off % self.n]]
            if self._emit(c, self.pos[x]):
                self._rec(c + 1)
            return
        i = c // self.n
        j = c % self.n
        if i == 0:
            if self._emit(c, j):
                self._rec(c + 1)
            return
        if self.elem[i] < 0:
            for e in range(1, self.n):
                if self.pos[e] < 0:
                    self.elem[i] = e
                    self.pos[e] = i
                    self._rec(c)
                    self.elem[i] = -1
                    self.pos[e] = -1
            return
        if self.elem[j] < 0:
            # candidates ordered by the cell value they would emit; a bad
            # first branch otherwise gets explored in full before a better
            # sibling tightens the bound.
            free = -1
            for p in range(1, self.n):
                if self.elem[p] < 0 and p != j:
                    free = p
                    break
            row = self.elem[i] * self.n
            nc = 0
            for e in range(1, self.n):
                if self.pos[e] < 0:
                    p = self.pos[self.tab[row + e]]
                    cand_val[nc] = p if p >= 0 else free
                    cand_elem[nc] = e
                    nc += 1
            # insertion sort by (value, element); nc <= 63
            for t in range(1, nc):
                tmpv = cand_val[t]
                tmpe = cand_elem[t]
                p = t - 1
                while p >= 0 and (cand_val[p] > tmpv or
                                  (cand_val[p] == tmpv and cand_elem[p] > tmpe)):
                    cand_val[p + 1] = cand_val[p]
                    cand_elem[p + 1] = cand_elem[p]
                    p -= 1
                cand_val[p + 1] = tmpv
                cand_elem[p + 1] = tmpe
            for t in range(nc):
                e = cand_elem[t]
                self.elem[j] = e
                self.pos[e] = j
                self._rec(c)
                self.elem[j] = -1
                self.pos[e] = -1
            return
        x = self.tab[self.elem[i] * self.n + self.elem[j]]
        p = self.pos[x]
        if p >= 0:
            if self._emit(c, p):
                self._rec(c + 1)
            return
        for p2 in range(1, self.n):
            if self.elem[p2] >= 0:
                continue
            if c < self.best_len and p2 > self.best[c]:
                break
            self.elem[p2] = x
            self.pos[x] = p2
            self._emit(c, p2)
            self._rec(c + 1)
            self.elem[p2] = -1
            self.pos[x] = -1


def canonical_encoding(table, actions):
    cdef int n = len(table)
    _check_order(n)
    cdef int k = len(actions)
    if n == 1:
        return tuple([0] * (1 + k))
    canon = _Canon(table, actions)
    canon._rec(0)
    return tuple([canon.best[i] for i in range(canon.total)])
