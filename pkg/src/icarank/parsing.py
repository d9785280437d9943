"""Group specification grammar.

    C<n>            cyclic of order n
    D<m>            dihedral of order m (m even)
    Q8              quaternion group
    S<n>            symmetric group of degree n
    V4              alias for C2xC2
    <spec>x<spec>   direct product
    W(<spec>,<k>)   wreath product with S_k

Case-insensitive; whitespace is ignored.
"""

from __future__ import annotations

import re

from .caps import DEFAULT_CAPS, Caps
from .errors import ConstructionError, SpecParseError
from . import groups

_ATOM_RE = re.compile(r"^([CDSQV])(\d+)$", re.IGNORECASE)


def _split_product(text: str) -> list[str]:
    """Split on 'x' at paren depth zero."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise SpecParseError(f"unbalanced parentheses in {text!r}")
        if ch in "xX" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise SpecParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    return parts


def _parse_atom(text: str, caps: Caps) -> groups.FiniteGroup:
    if text.upper().startswith("W(") and text.endswith(")"):
        inner = text[2:-1]
        args = _split_top_commas(inner)
        if len(args) != 2:
            raise SpecParseError(f"W() takes exactly two arguments: {text!r}")
        base = parse_group_spec(args[0], caps)
        try:
            k = int(args[1])
        except ValueError:
            raise SpecParseError(f"wreath degree must be an integer: {args[1]!r}") from None
        return groups.make_wreath(base, k, caps)
    m = _ATOM_RE.match(text)
    if not m:
        raise SpecParseError(f"unrecognized group spec {text!r}")
    letter, num = m.group(1).upper(), int(m.group(2))
    try:
        if letter == "C":
            return groups.make_cyclic(num, caps)
        if letter == "D":
            return groups.make_dihedral(num, caps)
        if letter == "S":
            return groups.make_symmetric(num)
        if letter == "Q":
            if num != 8:
                raise SpecParseError("only Q8 is supported")
            return groups.make_quaternion()
        if letter == "V":
            if num != 4:
                raise SpecParseError("only V4 is supported")
            g = groups.direct_product(groups.make_cyclic(2), groups.make_cyclic(2), caps)
            g.name = "V4"
            return g
    except ConstructionError as exc:
        raise SpecParseError(str(exc)) from exc
    raise SpecParseError(f"unrecognized group spec {text!r}")


def _split_top_commas(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def parse_group_spec(text: str, caps: Caps = DEFAULT_CAPS) -> groups.FiniteGroup:
    """Build the group named by a spec string."""
    cleaned = re.sub(r"\s+", "", text)
    if not cleaned:
        raise SpecParseError("empty group spec")
    parts = _split_product(cleaned)
    if any(not p for p in parts):
        raise SpecParseError(f"empty factor in product spec {text!r}")
    g = _parse_atom(parts[0], caps)
    for part in parts[1:]:
        g = groups.direct_product(g, _parse_atom(part, caps), caps)
    return g
