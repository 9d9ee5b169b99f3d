"""Command-line interface.

Subcommands: ``analyze`` (decomposition report for a described group),
``verify`` (corpus invariant suites), ``homs`` (morphism-set statistics and
component-restriction counts), ``counterexample`` (the diagonal instance
showing a simple normal subgroup of a socle need not be normal upstairs).

Exit codes: 0 success, 1 violated invariant, 2 input error, 3 cap exceeded.
With ``--json`` a machine-readable error object is printed to stderr on
failure. ``--cache DIR`` (or the OGROUP_CACHE environment variable) enables
digest-keyed caching of analysis payloads.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, corpus, suites
from .core import build_named, direct_product
from .decomposition import socle
from .dsl import elaborate, parse_spec
from .errors import (CapExceededError, DslError, EngineInvariantError,
                     OmegaGroupError, ValidationError)
from .morphisms import enumerate_homs, phi
from .report import build_report, canonical_json, default_cache, write_atomic
from .subgroups import (is_normal, simple_normal_subgroups, subgroup_as_group,
                        subgroup_from_mask)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_CAP = 3


def _load_file(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from None
    spec = parse_spec(text)
    return text, spec, elaborate(spec)


def _pick_group(env: dict, spec, name: str | None):
    if not env:
        raise ValidationError("the description defines no groups")
    if name is None:
        return spec.groups[-1].name, env[spec.groups[-1].name]
    if name not in env:
        raise ValidationError(f"no group named {name!r} in the description")
    return name, env[name]


def cmd_analyze(args) -> int:
    text, spec, env = _load_file(args.file)
    name, G = _pick_group(env, spec, args.group)
    cache = default_cache(args.cache)
    payload = build_report(G, input_text=text, group_name=name,
                           lattice_cap=args.lattice_cap, cache=cache)
    data = canonical_json(payload)
    sys.stdout.write(data)
    if args.json:
        write_atomic(Path(args.json), data)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = suites.run_suite(args.suite, max_order=args.max_order,
                               workers=args.workers)
    failures = 0
    for check_id, ok, detail in results:
        if ok:
            line = f"ok   {check_id}"
        else:
            failures += 1
            line = f"FAIL {check_id}"
        if detail:
            line += f"  [{detail}]"
        print(line)
    print(f"suite={args.suite} checks={len(results)} failures={failures}")
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


def cmd_homs(args) -> int:
    text, spec, env = _load_file(args.file)
    src_name, G = _pick_group(env, spec, getattr(args, "from"))
    dst_name, H = _pick_group(env, spec, args.to)
    homs = enumerate_homs(G, H)
    normal = homs.normal_morphisms()
    payload: dict = {
        "schema": "ogroup-homs-v1",
        "source": {"group": src_name, "order": G.order},
        "target": {"group": dst_name, "order": H.order},
        "hom_count": len(homs),
        "normal_hom_count": len(normal),
        "phi": None,
    }
    semisimple = (socle(G).mask == G.full_mask()
                  and socle(H).mask == H.full_mask())
    if semisimple:
        from .decomposition import isotypical_component, support

        shared = support(G) & support(H)
        per_type = {}
        expected = 1
        for cert in shared:
            sub_s, _ = subgroup_as_group(isotypical_component(G, cert))
            sub_t, _ = subgroup_as_group(isotypical_component(H, cert))
            count = len(enumerate_homs(sub_s, sub_t).normal_morphisms())
            per_type[cert.digest] = count
            expected *= count
        composition_observed = None
        if G == H and normal:
            composition_observed = True
            for f in normal[: min(4, len(normal))]:
                for g in normal[: min(4, len(normal))]:
                    lhs = phi(g.compose(f))
                    rhs = {c: gm.compose(fm) for (c, gm), (_, fm)
                           in zip(phi(g).entries, phi(f).entries)}
                    if dict(lhs.entries) != rhs:
                        composition_observed = False
        payload["phi"] = {
            "shared_support": sorted(per_type),
            "component_normal_hom_counts": per_type,
            "product_of_counts": expected,
            "bijective_by_count": expected == len(normal),
            "composition_respected_sampled": composition_observed,
        }
    data = canonical_json(payload)
    sys.stdout.write(data)
    if args.json:
        write_atomic(Path(args.json), data)
    if semisimple and not payload["phi"]["bijective_by_count"]:
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_counterexample(args) -> int:
    s3 = build_named("symmetric", 3)
    cap = 36
    soc_s3 = socle(s3)
    print(f"socle(S3) order: {soc_s3.size}")

    w = direct_product([s3, s3])
    P = w.product
    soc_P = socle(P, cap=cap)
    print(f"socle(S3 x S3) order: {soc_P.size}")

    i1, i2 = w.injections
    diag_mask = 0
    for a in soc_s3.members():
        diag_mask |= 1 << P.table[i1.map[a]][i2.map[a]]
    soc_group, embed = subgroup_as_group(soc_P)
    back = {x: i for i, x in enumerate(embed.map)}
    diag_in_soc = 0
    m = diag_mask
    i = 0
    while m:
        if m & 1:
            diag_in_soc |= 1 << back[i]
        m >>= 1
        i += 1
    simple_in_socle = any(h.mask == diag_in_soc
                          for h in simple_normal_subgroups(soc_group))
    print(f"diagonal of socle(S3) is a simple normal subgroup of the socle: "
          f"{simple_in_socle}")

    diag_handle = subgroup_from_mask(P, diag_mask)
    normal_upstairs = is_normal(P, diag_handle)
    print(f"diagonal is normal in S3 x S3: {normal_upstairs}")

    central = soc_s3.mask & s3.center_mask() == soc_s3.mask
    print(f"socle(S3) is central in S3: {central}")
    equivalence = normal_upstairs == central
    print(f"equivalence (diagonal normal <=> subgroup central): "
          f"{'holds' if equivalence else 'VIOLATED'}")

    reproduced = (soc_s3.size == 3 and soc_P.size == 9 and simple_in_socle
                  and not normal_upstairs and equivalence)
    print(f"counterexample reproduced: {reproduced}")
    return EXIT_OK if reproduced else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ogroup",
        description="Exact engine for finite groups with operators.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--cache", metavar="DIR", default=None,
                        help="cache directory (default: $OGROUP_CACHE if set)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="decomposition report for a described group")
    p.add_argument("file")
    p.add_argument("--group", default=None, help="group name (default: last defined)")
    p.add_argument("--json", metavar="OUT", default=None, help="also write the report here")
    p.add_argument("--lattice-cap", type=int, default=None,
                   help="override the subgroup enumeration cap (default 24)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run corpus invariant suites")
    p.add_argument("--suite", choices=suites.SUITE_NAMES + ("all",), required=True)
    p.add_argument("--max-order", type=int, default=12)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homs", help="morphism statistics between two described groups")
    p.add_argument("file")
    p.add_argument("--from", required=True, dest="from", metavar="G")
    p.add_argument("--to", required=True, metavar="H")
    p.add_argument("--json", metavar="OUT", default=None)
    p.set_defaults(func=cmd_homs)

    p = sub.add_parser("counterexample",
                       help="reproduce the diagonal-in-a-product instance")
    p.set_defaults(func=cmd_counterexample)
    return parser


def _error_payload(kind: str, exc: Exception) -> str:
    body: dict = {"error": {"kind": kind, "message": str(exc)}}
    if isinstance(exc, DslError):
        body["error"]["line"] = exc.line
        body["error"]["col"] = exc.col
    return json.dumps(body, sort_keys=True) + "\n"


def run_cli(argv: list[str] | None = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes."""
    args = build_parser().parse_args(argv)
    emit_json = getattr(args, "json", None) is not None
    try:
        return args.func(args)
    except CapExceededError as exc:
        if emit_json:
            sys.stderr.write(_error_payload("cap-exceeded", exc))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (DslError, ValidationError) as exc:
        if emit_json:
            sys.stderr.write(_error_payload("input", exc))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except EngineInvariantError as exc:
        if emit_json:
            sys.stderr.write(_error_payload("invariant", exc))
        else:
            print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except OmegaGroupError as exc:
        if emit_json:
            sys.stderr.write(_error_payload("error", exc))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


main = run_cli

if __name__ == "__main__":
    raise SystemExit(main())
