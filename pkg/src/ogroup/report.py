"""Canonical JSON reports and the invariant cache.

Reports are deterministic: masks serialize as sorted index arrays,
components key on certificate digests, JSON is emitted with sorted keys and
a fixed layout, so two runs over the same input are byte-identical.

The cache keys on the raw digest of the analysed group (exact table plus
actions, not the isomorphism class), which makes reuse of element-indexed
data sound. Writes go through a temp file and an atomic rename.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .core import FiniteOmegaGroup
from .decomposition import decompose, sdr_report, semisimplicity, socle
from .isomorphism import raw_digest
from .subgroups import (SubgroupHandle, enumerate_normal_omega_subgroups,
                        enumerate_omega_subgroups, simple_normal_subgroups,
                        subgroup_as_group, join_normal)

SCHEMA = "ogroup-report-v1"
CACHE_VERSION = 1
CACHE_ENV_VAR = "OGROUP_CACHE"


def mask_to_indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _classical_socle(G: FiniteOmegaGroup, cap: int | None) -> list[int]:
    """Join of the minimal nontrivial normal subgroups; reported only as a
    comparison note against the simple-member socle."""
    normals = [h for h in enumerate_normal_omega_subgroups(G, cap=cap) if h.mask != 1]
    minimal = [h for h in normals
               if not any(k.mask != h.mask and k.mask & h.mask == k.mask
                          for k in normals if k.mask != 1)]
    if not minimal:
        return [0]
    return mask_to_indices(join_normal(G, minimal).mask)


def analysis_payload(G: FiniteOmegaGroup, *, lattice_cap: int | None = None) -> dict:
    """The invariant part of a report: everything derived from the group."""
    dec = decompose(G, cap=lattice_cap)
    evidence = semisimplicity(G, cap=lattice_cap)
    soc_group, embed = subgroup_as_group(dec.socle)
    back = {x: i for i, x in enumerate(embed.map)}
    translated = []
    for _, h in dec.components:
        mask = 0
        for x in h.members():
            mask |= 1 << back[x]
        translated.append(SubgroupHandle(soc_group, mask))
    rep = sdr_report(soc_group, translated)
    return {
        "order": G.order,
        "operator_labels": sorted(G.operator_labels()),
        "raw_digest": raw_digest(G),
        "omega_subgroup_count": len(enumerate_omega_subgroups(G, cap=lattice_cap)),
        "normal_subgroup_count": len(enumerate_normal_omega_subgroups(G, cap=lattice_cap)),
        "sz": [mask_to_indices(h.mask) for h in simple_normal_subgroups(G, cap=lattice_cap)],
        "socle": mask_to_indices(dec.socle.mask),
        "socle_order": dec.socle.size,
        "classical_socle_note": _classical_socle(G, lattice_cap),
        "components": {cert.digest: mask_to_indices(h.mask)
                       for cert, h in dec.components},
        "support": list(dec.support.digests()),
        "semisimple": {
            "verdict": evidence.verdict,
            "sum_of_simples": evidence.criterion_sum_of_simples,
            "equals_socle": evidence.criterion_equals_socle,
            "all_direct_summands": evidence.criterion_all_summands,
        },
        "sdr": {
            "cc": rep.cc_holds,
            "injective": rep.injective,
            "surjective": rep.surjective,
            "bijective": rep.bijective,
            "mutually_independent": rep.mi_holds,
        },
        "hom_stats": None,
    }


def build_report(G: FiniteOmegaGroup, *, input_text: str, group_name: str,
                 lattice_cap: int | None = None,
                 cache: "InvariantCache | None" = None) -> dict:
    analysis = None
    key = raw_digest(G)
    if cache is not None:
        analysis = cache.get(key, lattice_cap)
    if analysis is None:
        analysis = analysis_payload(G, lattice_cap=lattice_cap)
        if cache is not None:
            cache.put(key, lattice_cap, analysis)
    return {
        "schema": SCHEMA,
        "input": {"group": group_name, "text": input_text},
        "analysis": analysis,
    }


def write_atomic(path: Path, data: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


class InvariantCache:
    """Digest-keyed analysis cache with atomic writes."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)

    def _path(self, key: str, lattice_cap: int | None) -> Path:
        suffix = "default" if lattice_cap is None else str(lattice_cap)
        return self.directory / f"{key}.cap-{suffix}.json"

    def get(self, key: str, lattice_cap: int | None) -> dict | None:
        path = self._path(key, lattice_cap)
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError):
            return None
        if payload.get("cache_version") != CACHE_VERSION:
            return None
        return payload.get("analysis")

    def put(self, key: str, lattice_cap: int | None, analysis: dict) -> None:
        payload = {"cache_version": CACHE_VERSION, "key": key, "analysis": analysis}
        write_atomic(self._path(key, lattice_cap), canonical_json(payload))


def default_cache(cli_dir: str | None) -> InvariantCache | None:
    directory = cli_dir or os.environ.get(CACHE_ENV_VAR)
    return InvariantCache(directory) if directory else None
