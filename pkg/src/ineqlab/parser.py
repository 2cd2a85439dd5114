"""Surface syntax for information measures.

Grammar::

    stmt    := expr REL expr                 REL in  >=  <=  =  (also the unicode forms)
    expr    := ["+"|"-"] term (("+"|"-") term)*  |  "0"
    term    := [rational ["*"]] measure
    measure := "H" "(" vlist ["|" vlist] ")"
             | "I" "(" vlist ";" vlist ["|" vlist] ")"
             | "h" indexset                  h12  or  h{1,10}
    vlist   := var ("," var)*
    rational:= int ["/" int]
    ci      := vlist ("_|_" | "⊥") vlist ["|" vlist]  |  "I" "(" ... ")"

Names are resolved through a :class:`VarMap`. Undeclared names get indices
automatically unless the map is strict: when every name looks like
``<prefix><number>`` with one shared prefix (X1, X3, X4 ...) the number is
the index, otherwise indices follow first appearance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .core import (
    LinForm,
    lf_cond_entropy,
    lf_entropy,
    lf_mutual,
    mask_label,
    varset,
)


class ParseError(ValueError):
    """Syntax error; ``offset`` is the byte offset into the UTF-8 source."""

    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.offset = len(text[:pos].encode("utf-8"))
        self.text = text
        super().__init__(f"{message} at byte {self.offset}")


class UnknownVariable(ValueError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown variable {name!r}")


# -- AST ----------------------------------------------------------------------

Group = tuple  # of names while parsing, of indices once resolved


@dataclass(frozen=True)
class EntropyTerm:
    group: Group
    cond: Group = ()


@dataclass(frozen=True)
class MutualTerm:
    left: Group
    right: Group
    cond: Group = ()


@dataclass(frozen=True)
class Coord:
    indices: tuple[int, ...]


@dataclass(frozen=True)
class Scaled:
    coef: Fraction
    node: "Node"


@dataclass(frozen=True)
class Sum:
    nodes: tuple["Node", ...]


Node = Union[EntropyTerm, MutualTerm, Coord, Scaled, Sum]

RELATIONS = {">=": ">=", "≥": ">=", "<=": "<=", "≤": "<=", "=": "=", "==": "="}


@dataclass(frozen=True)
class Statement:
    lhs: Node
    relation: str  # ">=", "<=" or "="
    rhs: Node
    varmap: "VarMap" = field(compare=False, default=None)


@dataclass(frozen=True)
class CI:
    """X_left independent of X_right given X_cond, as variable bitmasks."""
    left: int
    right: int
    cond: int = 0

    def label(self) -> str:
        s = f"{mask_label(self.left)} _|_ {mask_label(self.right)}"
        return s + (f" | {mask_label(self.cond)}" if self.cond else "")


# -- variable names -----------------------------------------------------------

_NUMBERED = re.compile(r"^([A-Za-z_]+?)(\d+)$")


class VarMap:
    """Name -> 1-based index mapping shared by the expressions of one problem."""

    def __init__(self, names=None, strict: bool = False):
        self.index: dict[str, int] = {}
        self.strict = strict
        if isinstance(names, dict):
            self.index.update(names)
        elif names:
            for i, name in enumerate(names, 1):
                self.index[name] = i

    @property
    def n(self) -> int:
        return max(self.index.values(), default=0)

    def name_of(self, i: int) -> str:
        for name, j in self.index.items():
            if j == i:
                return name
        return f"X{i}"

    def resolve_all(self, names: list[str]) -> None:
        """Assign indices to every undeclared name in ``names`` (first-appearance order)."""
        fresh = [nm for nm in dict.fromkeys(names) if nm not in self.index]
        if not fresh:
            return
        if self.strict:
            raise UnknownVariable(fresh[0])
        if not self.index:
            matches = [_NUMBERED.match(nm) for nm in fresh]
            if all(matches) and len({m.group(1) for m in matches}) == 1:
                nums = [int(m.group(2)) for m in matches]
                if all(k >= 1 for k in nums) and len(set(nums)) == len(nums):
                    self.index.update(zip(fresh, nums))
                    return
        nxt = self.n + 1
        for nm in fresh:
            self.index[nm] = nxt
            nxt += 1

    def __getitem__(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownVariable(name) from None


# -- tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<ci>_\|_|⊥)
  | (?P<rel>>=|<=|==|=|≥|≤)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/(),;|{}])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind if kind != "op" else m.group(), m.group(), pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


# -- recursive descent ---------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.names: list[str] = []

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, expected: str):
        t = self.tok
        got = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"expected {expected}, got {got}", self.text, t.pos)

    def take(self, kind: str, expected: str | None = None) -> _Tok:
        if self.tok.kind != kind:
            self.fail(expected or repr(kind))
        t = self.tok
        self.i += 1
        return t

    def accept(self, kind: str) -> bool:
        if self.tok.kind == kind:
            self.i += 1
            return True
        return False

    def done(self) -> None:
        if self.tok.kind != "eof":
            self.fail("end of input")

    # statement / expression

    def statement(self) -> tuple[Node, str, Node]:
        lhs = self.expr()
        if self.tok.kind != "rel":
            self.fail("relation (>=, <=, =)")
        rel = RELATIONS[self.take("rel").text]
        rhs = self.expr()
        self.done()
        return lhs, rel, rhs

    def expr(self) -> Node:
        t = self.tok
        if t.kind == "num" and t.text == "0" and self.toks[self.i + 1].kind in ("rel", "eof"):
            self.i += 1
            return Sum(())
        nodes = [self.signed_term(first=True)]
        while self.tok.kind in ("+", "-"):
            nodes.append(self.signed_term(first=False))
        return nodes[0] if len(nodes) == 1 else Sum(tuple(nodes))

    def signed_term(self, first: bool) -> Node:
        sign = 1
        if self.tok.kind in ("+", "-"):
            sign = -1 if self.take(self.tok.kind).kind == "-" else 1
        elif not first:
            self.fail("'+' or '-'")
        coef = None
        if self.tok.kind == "num":
            coef = self.rational()
            self.accept("*")
        node = self.measure()
        if coef is None and sign == 1:
            return node
        return Scaled(sign * (coef if coef is not None else Fraction(1)), node)

    def rational(self) -> Fraction:
        num = int(self.take("num").text)
        if self.accept("/"):
            t = self.take("num", "denominator")
            den = int(t.text)
            if den == 0:
                raise ParseError("zero denominator", self.text, t.pos)
            return Fraction(num, den)
        return Fraction(num)

    def measure(self) -> Node:
        t = self.tok
        if t.kind != "ident":
            self.fail("measure H(...), I(...) or h<indices>")
        if t.text == "H" and self.toks[self.i + 1].kind == "(":
            self.i += 2
            group = self.vlist()
            cond = self.vlist() if self.accept("|") else ()
            self.take(")", "')'")
            return EntropyTerm(group, cond)
        if t.text == "I" and self.toks[self.i + 1].kind == "(":
            self.i += 2
            left = self.vlist()
            self.take(";", "';'")
            right = self.vlist()
            cond = self.vlist() if self.accept("|") else ()
            self.take(")", "')'")
            return MutualTerm(left, right, cond)
        if re.fullmatch(r"h\d+", t.text):
            self.i += 1
            return Coord(tuple(int(ch) for ch in t.text[1:]))
        if t.text == "h" and self.toks[self.i + 1].kind == "{":
            self.i += 2
            idx = [int(self.take("num", "index").text)]
            while self.accept(","):
                idx.append(int(self.take("num", "index").text))
            self.take("}", "'}'")
            return Coord(tuple(idx))
        self.fail("measure H(...), I(...) or h<indices>")

    def vlist(self) -> tuple[str, ...]:
        out = [self.var()]
        while self.accept(","):
            out.append(self.var())
        return tuple(out)

    def var(self) -> str:
        name = self.take("ident", "variable name").text
        self.names.append(name)
        return name

    def ci(self) -> tuple:
        if self.tok.kind == "ident" and self.tok.text == "I" and self.toks[self.i + 1].kind == "(":
            node = self.measure()
            self.done()
            return node.left, node.right, node.cond
        left = self.vlist()
        self.take("ci", "'_|_'")
        right = self.vlist()
        cond = self.vlist() if self.accept("|") else ()
        self.done()
        return left, right, cond


def _resolve(node: Node, vm: VarMap) -> Node:
    def g(names):
        return tuple(vm[nm] for nm in names)

    if isinstance(node, EntropyTerm):
        return EntropyTerm(g(node.group), g(node.cond))
    if isinstance(node, MutualTerm):
        return MutualTerm(g(node.left), g(node.right), g(node.cond))
    if isinstance(node, Scaled):
        return Scaled(node.coef, _resolve(node.node, vm))
    if isinstance(node, Sum):
        return Sum(tuple(_resolve(x, vm) for x in node.nodes))
    return node


def _varmap(vars) -> VarMap:
    if isinstance(vars, VarMap):
        return vars
    return VarMap(vars)


def shared_varmap(statements=(), cis=(), vars=None) -> VarMap:
    """One VarMap for a whole problem, numbered from all names at once."""
    names: list[str] = []
    for text in statements:
        p = _Parser(text)
        p.statement()
        names += p.names
    for text in cis:
        p = _Parser(text)
        p.ci()
        names += p.names
    vm = _varmap(vars)
    vm.resolve_all(names)
    return vm


def parse_expr(text: str, vars=None) -> Node:
    """Parse an expression; groups in the result hold 1-based indices."""
    p = _Parser(text)
    node = p.expr()
    p.done()
    vm = _varmap(vars)
    vm.resolve_all(p.names)
    return _resolve(node, vm)


def parse_statement(text: str, vars=None) -> Statement:
    p = _Parser(text)
    lhs, rel, rhs = p.statement()
    vm = _varmap(vars)
    vm.resolve_all(p.names)
    return Statement(_resolve(lhs, vm), rel, _resolve(rhs, vm), vm)


def parse_ci(text: str, vars=None) -> CI:
    p = _Parser(text)
    left, right, cond = p.ci()
    vm = _varmap(vars)
    vm.resolve_all(p.names)
    return CI(varset(vm[x] for x in left), varset(vm[x] for x in right),
              varset(vm[x] for x in cond))


# -- lowering -----------------------------------------------------------------

def max_index(node: Node) -> int:
    if isinstance(node, EntropyTerm):
        return max(node.group + node.cond)
    if isinstance(node, MutualTerm):
        return max(node.left + node.right + node.cond)
    if isinstance(node, Coord):
        return max(node.indices)
    if isinstance(node, Scaled):
        return max_index(node.node)
    return max((max_index(x) for x in node.nodes), default=0)


def lower(node: Node, n: int | None = None) -> LinForm:
    """Exact LinForm of a resolved expression."""
    if n is None:
        n = max(max_index(node), 1)
    if isinstance(node, EntropyTerm):
        alpha, gamma = varset(node.group), varset(node.cond)
        if gamma:
            return lf_cond_entropy(n, alpha, gamma)
        return lf_entropy(n, alpha)
    if isinstance(node, MutualTerm):
        return lf_mutual(n, varset(node.left), varset(node.right), varset(node.cond))
    if isinstance(node, Coord):
        return lf_entropy(n, varset(node.indices))
    if isinstance(node, Scaled):
        return node.coef * lower(node.node, n)
    acc = LinForm.zero(n)
    for x in node.nodes:
        acc = acc + lower(x, n)
    return acc


def statement_n(st: Statement) -> int:
    n = max(max_index(st.lhs), max_index(st.rhs), st.varmap.n if st.varmap else 0)
    return max(n, 1)


def lower_statement(st: Statement, n: int | None = None) -> tuple[LinForm, str]:
    """Normalize to ``(form, rel)`` with rel ``">="`` (form >= 0) or ``"="`` (form = 0)."""
    n = n or statement_n(st)
    lhs, rhs = lower(st.lhs, n), lower(st.rhs, n)
    if st.relation == "<=":
        return rhs - lhs, ">="
    return lhs - rhs, st.relation


# -- printing -----------------------------------------------------------------

def format_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_form(f: LinForm) -> str:
    """Canonical rendering, e.g. ``+1 h1 +1 h2 -1 h12``; the zero form is ``0``."""
    if f.is_zero():
        return "0"
    parts = []
    for mask, c in f.items():
        sign = "+" if c > 0 else "-"
        parts.append(f"{sign}{format_rational(abs(c))} h{mask_label(mask)}")
    return " ".join(parts)


def format_statement(f: LinForm, rel: str = ">=") -> str:
    return f"{format_form(f)} {rel} 0"
