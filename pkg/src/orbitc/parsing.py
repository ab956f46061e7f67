"""Text formats for torus elements.

Two spellings are accepted:

* explicit values, ``B5:[0,0,1,1,1]`` (rationals such as ``1/2`` allowed);
* type syntax, ``B5:B2xSU(3)``, ``D4:SU(4)-``, ``A3:SU(2)xSU(2)``.

Type syntax resolves to the canonical witness of the type (zeros, then blocks
filled with 1, 2, 3, ...).  Coordinates not covered by a factor become
singleton blocks, so ``D6:SU(5)+`` is SU(5)xSU(1).  A zero block is written
with the family letter (``B2``, ``C1``, ``D1``).  For D_4 with no zero block
the sign class decides conjugacy-sensitive verdicts, so a missing sign is
refused there; at other D ranks it defaults to ``+``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .classifier import ElementType, GroupTorusElement, TorusElement
from .errors import DomainError
from .roots import FAMILIES, coord_length

_HEAD = re.compile(r"\s*([ABCD])\s*(\d+)\s*:\s*")
_FACTOR = re.compile(r"SU\((\d+)\)|([ABCD])(\d+)")


class ParseError(DomainError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos = text, pos
        super().__init__(f"{msg} at position {pos}: {text!r}")


def _head(text: str) -> tuple[str, int, int]:
    m = _HEAD.match(text)
    if not m:
        raise ParseError(text, 0, "expected FAMILY RANK ':' (e.g. 'B5:')")
    fam, rank = m.group(1), int(m.group(2))
    if fam not in FAMILIES:
        raise ParseError(text, 0, f"unknown family {fam}")
    return fam, rank, m.end()


def _values(text: str, pos: int) -> tuple[list[Fraction], int]:
    if text[pos:pos + 1] != "[":
        raise ParseError(text, pos, "expected '['")
    end = text.find("]", pos)
    if end < 0:
        raise ParseError(text, len(text), "missing ']'")
    body = text[pos + 1:end]
    vals = []
    offset = pos + 1
    for item in body.split(","):
        tok = item.strip()
        if not tok:
            raise ParseError(text, offset, "empty value")
        if re.search(r"[.eE]", tok):
            raise ParseError(text, offset, "floating point values are refused; use rationals like 1/2")
        try:
            vals.append(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise ParseError(text, offset, f"not a rational number {tok!r}") from None
        offset += len(item) + 1
    return vals, end + 1


def _type_syntax(text: str, fam: str, rank: int, pos: int) -> ElementType:
    body = text[pos:].strip()
    sign = None
    if body.endswith(("+", "-")):
        sign, body = body[-1], body[:-1]
    J, parts = 0, []
    if body != "regular":
        p = 0
        while True:
            m = _FACTOR.match(body, p)
            if not m:
                raise ParseError(text, pos + p, "expected SU(k) or a zero-block factor such as B2")
            if m.group(1):
                parts.append(int(m.group(1)))
            else:
                if fam == "A":
                    raise ParseError(text, pos + p, "family A has no zero block")
                if m.group(2) != fam:
                    raise ParseError(text, pos + p, f"zero block must be written {fam}k in family {fam}")
                if J:
                    raise ParseError(text, pos + p, "at most one zero-block factor")
                J = int(m.group(3))
            p = m.end()
            if p == len(body):
                break
            if body[p] != "x":
                raise ParseError(text, pos + p, "expected 'x' between factors")
            p += 1
    m_total = coord_length(fam, rank)
    used = J + sum(parts)
    if used > m_total:
        raise ParseError(text, pos, f"type needs {used} coordinates, {fam}{rank} has {m_total}")
    parts += [1] * (m_total - used)
    parts.sort(reverse=True)
    if fam == "D" and J == 0:
        if sign is None:
            if rank == 4:
                raise ParseError(text, len(text), "D4 type without zero block needs a sign class '+' or '-'")
            sign = "+"
    elif sign is not None:
        raise ParseError(text, len(text) - 1, "sign class applies only to family D without zero block")
    try:
        return ElementType(fam, rank, J, tuple(parts), sign)
    except DomainError as exc:
        raise ParseError(text, pos, str(exc)) from None


def parse_element(text: str) -> TorusElement:
    fam, rank, pos = _head(text)
    try:
        if text[pos:pos + 1] == "[":
            vals, end = _values(text, pos)
            if text[end:].strip():
                raise ParseError(text, end, "trailing characters")
            return TorusElement(fam, rank, tuple(vals))
        return _type_syntax(text, fam, rank, pos).witness()
    except ParseError:
        raise
    except DomainError as exc:
        raise ParseError(text, pos, str(exc)) from None


def parse_group_element(text: str) -> GroupTorusElement:
    """``B2:[1,1/2]`` with angles in units of pi."""
    fam, rank, pos = _head(text)
    vals, end = _values(text, pos)
    if text[end:].strip():
        raise ParseError(text, end, "trailing characters")
    try:
        return GroupTorusElement(fam, rank, tuple(vals))
    except DomainError as exc:
        raise ParseError(text, pos, str(exc)) from None


def format_element(X: TorusElement) -> str:
    return X.spec
