"""graph6 encoding (McKay's format), bit-exact.

Only the short (n < 63) and 4-byte (n <= 258047) size headers can occur
here since graphs are capped at order 128.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import MAX_ORDER, Graph, GraphError

HEADER = ">>graph6<<"


class Graph6Error(GraphError):
    pass


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def encode(g: Graph) -> str:
    n, rows = g.n, g.rows
    out = [_encode_n(n)]
    acc = nbits = 0
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            acc = (acc << 1) | ((rj >> i) & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def decode(text: str) -> Graph:
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    vals = []
    for pos, ch in enumerate(s):
        c = ord(ch)
        if not 63 <= c <= 126:
            raise Graph6Error(f"character {ch!r} at offset {pos} outside graph6 range")
        vals.append(c - 63)
    if vals[0] == 63:
        if len(vals) < 4:
            raise Graph6Error("truncated long-form size header")
        if vals[1] == 63:
            raise Graph6Error("8-byte size header exceeds supported order")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        if n < 63:
            raise Graph6Error(f"non-canonical long-form header for n={n}")
        body = vals[4:]
    else:
        n = vals[0]
        body = vals[1:]
    if n > MAX_ORDER:
        raise Graph6Error(f"order {n} exceeds {MAX_ORDER}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    rows = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k += 1
    return Graph._trusted(n, tuple(rows))


def read_stream(lines: Iterable[str]) -> Iterator[Graph]:
    """Decode a newline-delimited graph6 stream, skipping blank lines."""
    for line in lines:
        line = line.strip()
        if line:
            yield decode(line)


def write_stream(graphs: Iterable[Graph], fh: TextIO) -> int:
    count = 0
    for g in graphs:
        fh.write(encode(g))
        fh.write("\n")
        count += 1
    return count
