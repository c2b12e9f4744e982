"""Plain-text SFT spec files.

Layout::

    2                 # dimension
    0 1 2             # alphabet (whitespace or comma separated)
    (0,0)=0           # one forbidden pattern per blank-line separated block
    (1,0)=0

    (0,0)=1
    (0,1)=1

Text after ``#`` is ignored. Product symbols are written ``a*b``.
"""

import re

from .sft import Pattern, SftSpec

_CELL = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)\s*=\s*(\S+)$")


class SpecFormatError(ValueError):
    pass


def _symbol(tok):
    if "*" in tok:
        return tuple(_symbol(t) for t in tok.split("*"))
    return int(tok) if re.fullmatch(r"-?\d+", tok) else tok


def _token(sym):
    if isinstance(sym, tuple):
        return "*".join(_token(s) for s in sym)
    tok = str(sym)
    if not tok or re.search(r"[\s,=#()*]", tok):
        raise SpecFormatError(f"symbol {sym!r} cannot be serialized")
    return tok


def parse_spec(text, name=None):
    lines = [ln.split("#", 1)[0].rstrip() for ln in text.splitlines()]
    it = iter(enumerate(lines, 1))
    header = []
    for lineno, ln in it:
        if ln.strip():
            header.append((lineno, ln.strip()))
        if len(header) == 2:
            break
    if len(header) < 2:
        raise SpecFormatError("missing dimension or alphabet line")
    try:
        d = int(header[0][1])
    except ValueError:
        raise SpecFormatError(f"line {header[0][0]}: dimension must be an integer")
    alphabet = tuple(_symbol(t) for t in re.split(r"[\s,]+", header[1][1]) if t)

    blocks, cur = [], {}
    for lineno, ln in it:
        ln = ln.strip()
        if not ln:
            if cur:
                blocks.append(cur)
                cur = {}
            continue
        m = _CELL.match(ln)
        if not m:
            raise SpecFormatError(f"line {lineno}: expected '(v1,...,vd)=symbol'")
        vec = tuple(int(x) for x in m.group(1).split(","))
        if len(vec) != d:
            raise SpecFormatError(f"line {lineno}: vector has dimension {len(vec)}, expected {d}")
        if vec in cur:
            raise SpecFormatError(f"line {lineno}: cell {vec} assigned twice")
        cur[vec] = _symbol(m.group(2))
    if cur:
        blocks.append(cur)
    try:
        return SftSpec(d, alphabet, frozenset(Pattern.from_dict(b) for b in blocks),
                       name=name)
    except ValueError as e:
        raise SpecFormatError(str(e)) from None


def dump_spec(X):
    out = [str(X.dimension), " ".join(_token(s) for s in X.alphabet)]
    for p in sorted(X.forbidden, key=lambda p: repr(p.cells)):
        out.append("")
        for v, s in p.cells:
            out.append(f"({','.join(map(str, v))})={_token(s)}")
    return "\n".join(out) + "\n"


def load_spec(path):
    with open(path) as f:
        return parse_spec(f.read(), name=str(path))
