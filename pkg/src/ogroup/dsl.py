"""Line-oriented description language for groups with operators.

Grammar (UTF-8, ``#`` starts a comment anywhere on a line)::

    group <name> = cyclic <n> | symmetric <n> | alternating <n>
                 | dihedral <n> | klein4
                 | table [[...], ...]
                 | product <g1> <g2>
                 | quotient <g> by [i0, i1, ...]
                 | inner <g>
    operator <label> on <name> = [i0, i1, ...] | conj <i> | pow <k>

``dihedral n`` is the symmetry group of the regular n-gon (order 2n).
``quotient g by [..]`` divides by the operator-closed subgroup generated by
the listed element indices, which must be normal. ``inner g`` wraps ``g``
with one conjugation operator per element. Operator clauses modify the named
group in statement order; ``conj i`` is conjugation by element ``i`` and
``pow k`` is ``x -> x^k`` (rejected when not distributive, like any other
action). Parse errors carry a line and column; elaboration errors name the
violated axiom.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass

from .core import (FiniteOmegaGroup, build_from_table, build_named, quotient,
                   direct_product, with_inner_operators)
from .errors import DslError, ValidationError
from .subgroups import generated_subgroup

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_INT_RE = re.compile(r"\d+")


@dataclass(frozen=True)
class OperatorClause:
    label: str
    action: tuple[int, ...] | tuple[str, int]
    line: int
    col: int


@dataclass(frozen=True)
class GroupSpec:
    """One named group definition plus the operator clauses attached to it."""

    name: str
    form: tuple
    operators: tuple[OperatorClause, ...]
    line: int


@dataclass(frozen=True)
class SpecFile:
    groups: tuple[GroupSpec, ...]
    text: str

    def names(self) -> tuple[str, ...]:
        return tuple(g.name for g in self.groups)


class _Cursor:
    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line = line_no
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    @property
    def col(self) -> int:
        return self.pos + 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def error(self, message: str) -> DslError:
        return DslError(message, self.line, self.col)

    def word(self, what: str = "identifier") -> str:
        self.skip_ws()
        m = _NAME_RE.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group()

    def integer(self) -> int:
        self.skip_ws()
        m = _INT_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def literal(self, what: str) -> object:
        self.skip_ws()
        start = self.pos
        if start >= len(self.text) or self.text[start] != "[":
            raise self.error(f"expected {what} starting with '['")
        try:
            value = ast.literal_eval(self.text[start:].strip())
        except (ValueError, SyntaxError) as exc:
            raise self.error(f"bad {what}: {exc}") from None
        self.pos = len(self.text)
        return value

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise self.error(f"expected {token!r}")
        self.pos += len(token)


def _int_list(value: object, cur: _Cursor, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(v, int) for v in value):
        raise cur.error(f"{what} must be a flat list of integers")
    return tuple(value)


def _int_table(value: object, cur: _Cursor) -> tuple[tuple[int, ...], ...]:
    if (not isinstance(value, list) or not value
            or not all(isinstance(r, list) and all(isinstance(v, int) for v in r)
                       for r in value)):
        raise cur.error("table must be a list of integer rows")
    return tuple(tuple(r) for r in value)


def parse_spec(text: str) -> SpecFile:
    """Parse a full description into named group specs with their operator
    clauses; raises a located :class:`DslError` on the first bad token."""
    groups: dict[str, GroupSpec] = {}
    order: list[str] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        cur = _Cursor(line, line_no)
        head = cur.word("'group' or 'operator'")
        if head == "group":
            name = cur.word("group name")
            cur.expect("=")
            cur.skip_ws()
            kw_col = cur.col
            kw = cur.word("constructor keyword")
            if kw in ("cyclic", "symmetric", "alternating", "dihedral"):
                form = ("named", kw, cur.integer())
            elif kw == "klein4":
                form = ("named", "klein4", None)
            elif kw == "table":
                form = ("table", _int_table(cur.literal("table"), cur))
            elif kw == "product":
                form = ("product", cur.word("group name"), cur.word("group name"))
            elif kw == "quotient":
                g = cur.word("group name")
                cur.expect("by")
                form = ("quotient", g,
                        _int_list(cur.literal("generator list"), cur, "generator list"))
            elif kw == "inner":
                form = ("inner", cur.word("group name"))
            else:
                raise DslError(f"unknown constructor {kw!r}", line_no, kw_col)
            if not cur.at_end():
                raise cur.error("trailing tokens after group definition")
            if name in groups:
                raise DslError(f"group {name!r} defined twice", line_no, 1)
            groups[name] = GroupSpec(name, form, (), line_no)
            order.append(name)
        elif head == "operator":
            label = cur.word("operator label")
            cur.expect("on")
            name = cur.word("group name")
            if name not in groups:
                raise cur.error(f"operator attached to undefined group {name!r}")
            cur.expect("=")
            cur.skip_ws()
            col = cur.col
            if cur.pos < len(cur.text) and cur.text[cur.pos] == "[":
                action: tuple = _int_list(cur.literal("action array"), cur, "action array")
            else:
                kind = cur.word("action ('conj', 'pow' or an array)")
                if kind not in ("conj", "pow"):
                    raise DslError(f"unknown action form {kind!r}", line_no, col)
                action = (kind, cur.integer())
            if not cur.at_end():
                raise cur.error("trailing tokens after operator clause")
            spec = groups[name]
            clause = OperatorClause(label, action, line_no, col)
            groups[name] = GroupSpec(spec.name, spec.form,
                                     spec.operators + (clause,), spec.line)
        else:
            raise DslError(f"expected 'group' or 'operator', got {head!r}", line_no, 1)
    return SpecFile(tuple(groups[n] for n in order), text)


def _apply_operator(G: FiniteOmegaGroup, clause: OperatorClause,
                    name: str) -> FiniteOmegaGroup:
    if isinstance(clause.action[0], str):
        kind, arg = clause.action
        if kind == "conj":
            if not 0 <= arg < G.order:
                raise DslError(f"conj element {arg} out of range", clause.line, clause.col)
            action = G.conjugation_actions()[arg]
        else:
            action = tuple(G.power(x, arg) for x in range(G.order))
    else:
        action = clause.action
    try:
        return FiniteOmegaGroup(G.table, list(G.operators) + [(clause.label, action)],
                                name=name)
    except ValidationError as exc:
        raise DslError(f"operator {clause.label!r} on {name!r} rejected: {exc}",
                       clause.line, clause.col) from None


def elaborate(spec: SpecFile) -> dict[str, FiniteOmegaGroup]:
    """Build every group in definition order; later definitions may refer to
    earlier ones (with their operator clauses already applied)."""
    env: dict[str, FiniteOmegaGroup] = {}
    for gspec in spec.groups:
        form = gspec.form
        try:
            if form[0] == "named":
                G = build_named(form[1], form[2], name=gspec.name)
            elif form[0] == "table":
                G = build_from_table(form[1], name=gspec.name)
            elif form[0] == "product":
                left, right = (_lookup(env, n, gspec.line) for n in form[1:3])
                G = direct_product([left, right], name=gspec.name).product
            elif form[0] == "quotient":
                base = _lookup(env, form[1], gspec.line)
                N = generated_subgroup(base, form[2])
                G, _ = quotient(base, N)
                G = FiniteOmegaGroup(G.table, G.operators, name=gspec.name)
            else:  # inner
                G = with_inner_operators(_lookup(env, form[1], gspec.line))
                G = FiniteOmegaGroup(G.table, G.operators, name=gspec.name)
        except DslError:
            raise
        except ValidationError as exc:
            raise DslError(f"group {gspec.name!r}: {exc}", gspec.line) from None
        for clause in gspec.operators:
            G = _apply_operator(G, clause, gspec.name)
        env[gspec.name] = G
    return env


def _lookup(env: dict[str, FiniteOmegaGroup], name: str, line: int) -> FiniteOmegaGroup:
    if name not in env:
        raise DslError(f"reference to undefined group {name!r}", line)
    return env[name]


def elaborate_group(spec: SpecFile | str, name: str | None = None) -> FiniteOmegaGroup:
    """Elaborate and return one group (the last defined one by default)."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    env = elaborate(spec)
    if not env:
        raise DslError("the description defines no groups")
    if name is None:
        name = spec.groups[-1].name
    if name not in env:
        raise DslError(f"no group named {name!r} in the description")
    return env[name]


def format_spec(spec: SpecFile) -> str:
    """Canonical printing; parsing the result gives back equivalent groups."""
    lines = []
    for g in spec.groups:
        form = g.form
        if form[0] == "named":
            arg = "" if form[1] == "klein4" else f" {form[2]}"
            lines.append(f"group {g.name} = {form[1]}{arg}")
        elif form[0] == "table":
            rows = ",".join("[" + ",".join(str(v) for v in row) + "]" for row in form[1])
            lines.append(f"group {g.name} = table [{rows}]")
        elif form[0] == "product":
            lines.append(f"group {g.name} = product {form[1]} {form[2]}")
        elif form[0] == "quotient":
            gens = "[" + ",".join(str(v) for v in form[2]) + "]"
            lines.append(f"group {g.name} = quotient {form[1]} by {gens}")
        else:
            lines.append(f"group {g.name} = inner {form[1]}")
        for cl in g.operators:
            if isinstance(cl.action[0], str):
                act = f"{cl.action[0]} {cl.action[1]}"
            else:
                act = "[" + ",".join(str(v) for v in cl.action) + "]"
            lines.append(f"operator {cl.label} on {g.name} = {act}")
    return "\n".join(lines) + "\n"
