"""Canonical element strings.

Prime-field constants print as signed representatives in (-p/2, p/2], field
elements as polynomials in the generator `g`, polynomials in descending
order (or ascending on request).  Composite coefficients are parenthesised.
"""
from __future__ import annotations

from .ff import FFElement


def _signed(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def _ff_terms(x: FFElement, var: str = "g"):
    """List of (sign, body) for a finite-field element."""
    F = x.field
    digits = F._digits(x.v)
    terms = []
    for k in range(len(digits) - 1, -1, -1):
        c = _signed(digits[k], F.p)
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        terms.append((sign, body))
    return terms


def _join(terms) -> str:
    if not terms:
        return "0"
    out = []
    for i, (sign, body) in enumerate(terms):
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def ff_to_str(x: FFElement, var: str = "g") -> str:
    return _join(_ff_terms(x, var))


def _terms(x, ascending=False):
    from .poly import Poly
    from .ratfunc import RatFunc
    if isinstance(x, FFElement):
        return _ff_terms(x)
    if isinstance(x, int):
        return [("-" if x < 0 else "+", str(abs(x)))] if x else []
    if isinstance(x, RatFunc):
        if x.den.degree() == 0:
            return _terms(x.num, ascending)
        n, d = to_str(x.num), to_str(x.den)
        if _is_composite(n):
            n = f"({n})"
        if _is_composite(d) or "*" in d:
            d = f"({d})"
        if n.startswith("-") and not n.startswith("(") and "(" not in n:
            return [("-", f"{n[1:]}/{d}")]
        return [("+", f"{n}/{d}")]
    if isinstance(x, Poly):
        v = x.ring.var
        degs = range(len(x.c)) if ascending else range(len(x.c) - 1, -1, -1)
        terms = []
        for k in degs:
            c = x.c[k]
            if not c:
                continue
            ct = _terms(c)
            mono = "" if k == 0 else (v if k == 1 else f"{v}^{k}")
            if not mono:
                terms.extend(ct)
                continue
            if len(ct) == 1 and "/" not in ct[0][1]:
                sign, body = ct[0]
                terms.append((sign, mono if body == "1" else f"{body}*{mono}"))
            else:
                terms.append(("+", f"({_join(ct)})*{mono}"))
        return terms
    raise TypeError(f"cannot print {type(x).__name__}")


def _is_composite(s: str) -> bool:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-/" and i > 0:
            return True
    return False


def to_str(x, ascending: bool = False) -> str:
    """Canonical string of a field element, polynomial or rational function."""
    return _join(_terms(x, ascending))
