"""Isomorphism testing and canonical certificates.

A certificate is the lexicographically minimal Cayley-table-plus-actions
encoding over all element relabelings fixing the identity, together with a
digest of its byte serialization. Two groups within the certificate cap get
equal certificates exactly when they are isomorphic as groups with
operators (same labels, same structure).

Digest serialization (bit-exact, also usable as a cache key when applied to
a raw, non-canonicalised group):

* ``u32`` big-endian group order ``n``;
* ``n*n`` bytes, the table row-major (each entry fits a byte, n <= 64);
* ``u32`` big-endian operator count;
* per operator, sorted by label: ``u16`` big-endian label byte length, the
  UTF-8 label bytes, then ``n`` action bytes.

The digest is the SHA-256 hex of those bytes.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from typing import Sequence

from . import kernels
from .core import DEFAULT_CERTIFICATE_CAP, FiniteOmegaGroup, OmegaMorphism
from .errors import CapExceededError
from .subgroups import generating_sequence


@dataclass(frozen=True)
class IsoCertificate:
    order: int
    labels: tuple[str, ...]
    canonical_table: tuple[tuple[int, ...], ...]
    canonical_actions: tuple[tuple[int, ...], ...]
    digest: str

    def __repr__(self) -> str:
        return f"IsoCertificate(order={self.order}, digest={self.digest[:12]}...)"


def encode_group_bytes(order: int,
                       table: Sequence[Sequence[int]],
                       operators: Sequence[tuple[str, Sequence[int]]]) -> bytes:
    """The documented byte serialization of a table plus labelled actions."""
    out = bytearray(struct.pack(">I", order))
    for row in table:
        out.extend(bytes(row))
    out.extend(struct.pack(">I", len(operators)))
    for label, action in operators:
        raw = label.encode("utf-8")
        out.extend(struct.pack(">H", len(raw)))
        out.extend(raw)
        out.extend(bytes(action))
    return bytes(out)


def raw_digest(G: FiniteOmegaGroup) -> str:
    """Digest of the group exactly as numbered (no canonicalisation).

    Safe as a cache key: equal digests mean identical tables and actions,
    so any element-indexed data (masks) can be reused verbatim.
    """
    data = encode_group_bytes(G.order, G.table, G.operators_sorted())
    return hashlib.sha256(data).hexdigest()


def certificate(G: FiniteOmegaGroup, *, cap: int | None = None) -> IsoCertificate:
    """Canonical certificate; equal across isomorphic groups, distinct
    otherwise. Above the cap (default 16) raises, signalling the caller to
    fall back to pairwise isomorphism search."""
    cap = DEFAULT_CERTIFICATE_CAP if cap is None else cap
    if G.order > cap:
        raise CapExceededError(
            f"order {G.order} exceeds certificate cap {cap}; use pairwise search",
            limit=cap, needed=G.order)
    key = ("certificate", cap)
    if key in G._memo:
        return G._memo[key]
    ops = G.operators_sorted()
    labels = tuple(label for label, _ in ops)
    flat = kernels.canonical_encoding(G.table, tuple(act for _, act in ops))
    n = G.order
    table = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
    actions = tuple(tuple(flat[n * n + a * n: n * n + (a + 1) * n])
                    for a in range(len(ops)))
    data = encode_group_bytes(n, table, list(zip(labels, actions)))
    cert = IsoCertificate(n, labels, table, actions,
                          hashlib.sha256(data).hexdigest())
    G._memo[key] = cert
    return cert


def group_from_certificate(cert: IsoCertificate) -> FiniteOmegaGroup:
    """Rebuild the canonical representative a certificate encodes."""
    ops = list(zip(cert.labels, cert.canonical_actions))
    return FiniteOmegaGroup(cert.canonical_table, ops,
                            name=f"canon:{cert.digest[:8]}")


def _op_fingerprint(G: FiniteOmegaGroup, x: int) -> tuple:
    orders = G.element_orders()
    return (orders[x],) + tuple(orders[act[x]] for _, act in G.operators_sorted())


def are_isomorphic(G: FiniteOmegaGroup, H: FiniteOmegaGroup) -> OmegaMorphism | None:
    """A witnessing isomorphism of operator groups, or None.

    Backtracking on generator images, pruning candidates by element order
    and operator fingerprints; cheap invariant prefilters (order and
    fingerprint multisets) reject most non-isomorphic pairs outright.
    """
    if G.order != H.order:
        return None
    if G.operator_label_set() != H.operator_label_set():
        return None
    if sorted(G.element_orders()) != sorted(H.element_orders()):
        return None
    fps_G = [_op_fingerprint(G, x) for x in range(G.order)]
    fps_H = [_op_fingerprint(H, x) for x in range(H.order)]
    if sorted(fps_G) != sorted(fps_H):
        return None

    gens = generating_sequence(G)
    candidates = [tuple(t for t in range(H.order) if fps_H[t] == fps_G[g])
                  for g in gens]
    ops_G = tuple(act for _, act in G.operators_sorted())
    ops_H = tuple(act for _, act in H.operators_sorted())
    found = kernels.search_morphisms(G.table, ops_G, H.table, ops_H,
                                     gens, candidates,
                                     bijective_only=True, first_only=True)
    if not found:
        return None
    return OmegaMorphism(G, H, found[0])
