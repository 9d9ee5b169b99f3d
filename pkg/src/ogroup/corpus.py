"""The bundled group corpus.

Ships every group of order <= 12 up to isomorphism plus a handful of larger
or operator-equipped instances, all as description files, so verification
runs need no external data. Each plain entry can also be served wrapped with
its inner (conjugation) operators.
"""

from __future__ import annotations

from importlib import resources

from .core import FiniteOmegaGroup, with_inner_operators
from .dsl import elaborate_group, parse_spec

#: name -> (order, flavour); flavour "plain" means no operators,
#: "sample" means the file itself equips operators.
CORPUS: tuple[tuple[str, int, str], ...] = (
    ("c1", 1, "plain"),
    ("c2", 2, "plain"),
    ("c3", 3, "plain"),
    ("c4", 4, "plain"),
    ("v4", 4, "plain"),
    ("c5", 5, "plain"),
    ("c6", 6, "plain"),
    ("s3", 6, "plain"),
    ("c7", 7, "plain"),
    ("c8", 8, "plain"),
    ("c4xc2", 8, "plain"),
    ("c2c2c2", 8, "plain"),
    ("d4", 8, "plain"),
    ("q8", 8, "plain"),
    ("c9", 9, "plain"),
    ("c3xc3", 9, "plain"),
    ("c10", 10, "plain"),
    ("d5", 10, "plain"),
    ("c11", 11, "plain"),
    ("c12", 12, "plain"),
    ("c6xc2", 12, "plain"),
    ("a4", 12, "plain"),
    ("d6", 12, "plain"),
    ("dic3", 12, "plain"),
    ("sigma3xsigma3", 36, "plain"),
    ("v4rot", 4, "sample"),
    ("c4neg", 4, "sample"),
    ("c6neg", 6, "sample"),
    ("c3c3swap", 9, "sample"),
)

_cache: dict[str, FiniteOmegaGroup] = {}


def corpus_names() -> tuple[str, ...]:
    return tuple(name for name, _, _ in CORPUS)


def spec_text(name: str) -> str:
    path = resources.files("ogroup").joinpath(f"specs/{name}.grp")
    return path.read_text(encoding="utf-8")


def load(name: str) -> FiniteOmegaGroup:
    """Elaborate one corpus file (memoised)."""
    if name not in _cache:
        _cache[name] = elaborate_group(parse_spec(spec_text(name)), name)
    return _cache[name]


def load_variant(key: str) -> FiniteOmegaGroup:
    """Like :func:`load` but also accepts ``<name>:inner`` keys."""
    if key.endswith(":inner"):
        if key not in _cache:
            _cache[key] = with_inner_operators(load(key[: -len(":inner")]))
        return _cache[key]
    return load(key)


def corpus_groups(max_order: int | None = None,
                  variants: tuple[str, ...] = ("plain", "inner", "sample"),
                  ) -> list[tuple[str, FiniteOmegaGroup]]:
    """Deterministic (key, group) list.

    ``plain`` serves operatorless entries as-is, ``inner`` additionally
    serves each plain entry wrapped with conjugation operators, ``sample``
    serves the operator-equipped files.
    """
    out: list[tuple[str, FiniteOmegaGroup]] = []
    for name, order, flavour in CORPUS:
        if max_order is not None and order > max_order:
            continue
        if flavour == "plain":
            if "plain" in variants:
                out.append((name, load(name)))
            if "inner" in variants:
                out.append((f"{name}:inner", load_variant(f"{name}:inner")))
        elif flavour == "sample" and "sample" in variants:
            out.append((name, load(name)))
    return out
