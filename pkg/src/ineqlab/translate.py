"""Group, principal-minor and Kolmogorov renderings of ``b.h >= 0``.

Every translation keeps the source coefficients c_a exactly in its term list;
only the rendered text moves terms across the relation and clears
denominators.

* group: h_a -> log(|G| / |G_a|), so ``b >= 0`` reads
  ``prod_{c_a>0} |G_a|^c_a <= |G|^{sum c} prod_{c_a<0} |G_a|^-c_a``.
* minor: h_a -> 1/2 log((2 pi e)^|a| |K_a|), valid only when b is balanced,
  which makes the 2 pi e factors cancel:
  ``prod_{c_a<0} |K_a|^-c_a <= prod_{c_a>0} |K_a|^c_a``.
* kolmogorov: h_a -> K(x_a) with the same coefficients. The correspondence
  holds up to additive constants, which the rendering does not show.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .core import LinForm, is_balanced, members
from .parser import format_rational


class Unbalanced(ValueError):
    """The form is not balanced, so it does not transfer to differential entropy."""


@dataclass(frozen=True)
class Term:
    symbol: str
    mask: int
    coeff: Fraction


@dataclass(frozen=True)
class TranslatedInequality:
    kind: str  # "group" | "minor" | "kolmogorov"
    n: int
    terms: tuple[Term, ...]
    text: str

    def to_linform(self) -> LinForm:
        return LinForm(self.n, {t.mask: t.coeff for t in self.terms})

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "terms": [[t.symbol, format_rational(t.coeff)] for t in self.terms],
            "text": self.text,
        }

    def __str__(self) -> str:
        return self.text


def _scale(b: LinForm) -> int:
    den = 1
    for _, c in b.items():
        den = lcm(den, c.denominator)
    return den


def _power(sym: str, e: int) -> str:
    return sym if e == 1 else f"{sym}^{e}"


def _product(factors: list[tuple[str, int]]) -> str:
    return " ".join(_power(s, e) for s, e in factors if e) or "1"


def _label(mask: int) -> str:
    ms = members(mask)
    return "".join(map(str, ms)) if max(ms) < 10 else ",".join(map(str, ms))


def _group_symbol(mask: int) -> str:
    return "|" + "&".join(f"G_{i}" for i in members(mask)) + "|"


def to_group_inequality(b: LinForm) -> TranslatedInequality:
    terms = tuple(Term(_group_symbol(m), m, c) for m, c in b.items())
    d = _scale(b)
    small = [(t.symbol, int(t.coeff * d)) for t in terms if t.coeff > 0]
    large = [(t.symbol, int(-t.coeff * d)) for t in terms if t.coeff < 0]
    s = int(sum((t.coeff for t in terms), Fraction(0)) * d)
    if s > 0:
        large.insert(0, ("|G|", s))
    elif s < 0:
        small.insert(0, ("|G|", -s))
    return TranslatedInequality("group", b.n, terms, f"{_product(small)} <= {_product(large)}")


def to_minor_inequality(b: LinForm) -> TranslatedInequality:
    if not is_balanced(b):
        raise Unbalanced(f"{b!r} is not balanced")
    terms = tuple(Term(f"|K_{_label(m)}|", m, c) for m, c in b.items())
    d = _scale(b)
    small = [(t.symbol, int(-t.coeff * d)) for t in terms if t.coeff < 0]
    large = [(t.symbol, int(t.coeff * d)) for t in terms if t.coeff > 0]
    return TranslatedInequality("minor", b.n, terms, f"{_product(small)} <= {_product(large)}")


def _kolmogorov_side(terms) -> str:
    parts = []
    for sym, c in terms:
        parts.append(sym if c == 1 else f"{format_rational(c)} {sym}")
    return " + ".join(parts) or "0"


def to_kolmogorov(b: LinForm) -> TranslatedInequality:
    terms = tuple(Term("K(" + ",".join(f"x_{i}" for i in members(m)) + ")", m, c)
                  for m, c in b.items())
    pos = [(t.symbol, t.coeff) for t in terms if t.coeff > 0]
    neg = [(t.symbol, -t.coeff) for t in terms if t.coeff < 0]
    return TranslatedInequality("kolmogorov", b.n, terms,
                                f"{_kolmogorov_side(pos)} >= {_kolmogorov_side(neg)}")


TRANSLATIONS = {
    "group": to_group_inequality,
    "minor": to_minor_inequality,
    "kolmogorov": to_kolmogorov,
}
