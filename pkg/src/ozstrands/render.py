"""Fixed-width ASCII pictures of strands generators.

Each circle gets a band of four rows (heights 1.5, z+, 0.5, z-, top to
bottom); time runs left to right.  Solid strands are drawn with '*', a wrap
past the top of the circle with '~', the constant strands of an idle
coordinate as a dashed pair of ':' rows, and a closed loop as an 'O' row.
"""

from __future__ import annotations

from .strands import Context, Gen, validate_generator

_HEIGHTS = (3, 2, 1, 0)  # quarter-turn heights of the band rows: 1.5, 1, 0.5, 0
_LABELS = {3: "   ", 2: "z+ ", 1: "   ", 0: "z- "}


def _idle(g: Gen):
    for j in g.x:
        if g.col(j)[1] == 0 and g.col(j + 1)[0] == 0:
            yield j


def render_ascii(ctx: Context, g: Gen) -> str:
    validate_generator(ctx, g)
    n = ctx.n
    top = max([p for p, _ in g.pq] + [q for _, q in g.pq] + [1])
    width = max(8, 2 * top)
    blank = lambda: [" "] * (width + 1)  # noqa: E731
    bands = {i: {h: blank() for h in _HEIGHTS} for i in range(1, n + 1)}
    outer_top, outer_bottom = blank(), blank()

    for j in _idle(g):
        lower = outer_bottom if j == 0 else bands[j][2]
        upper = outer_top if j == n else bands[j + 1][0]
        for row in (lower, upper):
            for t in range(0, width + 1, 2):
                row[t] = ":"

    for i, (p, q) in enumerate(g.pq, 1):
        for start, speed in ((0, p), (2, q)):
            if not speed:
                continue
            prev = None
            for t in range(width + 1):
                h4 = start + (2 * speed * t) // width  # position in half-units
                h = h4 % 4
                wrapped = prev is not None and h < prev
                bands[i][h][t] = "~" if wrapped else "*"
                prev = h

    lines = [f"z{n + 1}- |" + "".join(outer_top)]
    for i in range(n, 0, -1):
        for h in _HEIGHTS:
            lines.append(f"{i:>2} {_LABELS[h]}|" + "".join(bands[i][h]))
        if i in g.c:
            lines.append(f"{i:>2} O  |" + "O" * (width + 1))
    lines.append("z0+  |" + "".join(outer_bottom))
    width_label = max(len(s.split("|")[0]) for s in lines)
    return "\n".join(s.split("|")[0].ljust(width_label) + "|" + s.split("|", 1)[1].rstrip()
                     for s in lines)


__all__ = ["render_ascii"]
