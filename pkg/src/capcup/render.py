"""Text and SVG pictures of the (alpha, beta)-plane."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .labeling import AlphaBetaPlane

FILLED = "●"
HOLE = "○"


def _cell_width(plane: AlphaBetaPlane) -> int:
    widest = max((len(str(v)) for v in plane.occupied.values()), default=0)
    return max(2, widest + 1)


def render_ascii(plane: AlphaBetaPlane) -> str:
    """Rows by beta from ``n-1`` down to 1, columns by alpha from 1 up.

    Occupied cells show the filled marker followed by the vertex index,
    holes the open marker; cells with ``alpha > beta`` are blank.
    """
    top = plane.n - 1
    w = _cell_width(plane)
    label_w = len(str(top))
    lines = []
    for beta in range(top, 0, -1):
        cells = []
        for alpha in range(1, top + 1):
            if alpha > beta:
                cells.append(" " * (w + 1))
                continue
            v = plane.vertex_at(alpha, beta)
            text = HOLE if v is None else f"{FILLED}{v}"
            cells.append(text.ljust(w + 1))
        lines.append(f"{beta:>{label_w}} | " + "".join(cells).rstrip())
    lines.append(" " * label_w + " +-" + "-" * ((w + 1) * top))
    lines.append(" " * (label_w + 3) + "".join(str(a).ljust(w + 1) for a in range(1, top + 1)).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(plane: AlphaBetaPlane, cell: int = 48) -> str:
    """SVG version of :func:`render_ascii`.

    Same grid, same cells.  Label-1 edges between neighbours in a row and
    label-2 edges between neighbours in a column are drawn as segments.
    """
    top = plane.n - 1
    margin = cell
    size = margin * 2 + cell * max(top - 1, 0)

    def xy(alpha, beta):
        return margin + (alpha - 1) * cell, margin + (top - beta) * cell

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        '<g stroke="#444" stroke-width="2">',
    ]
    # row neighbours (same beta) and column neighbours (same alpha)
    for beta in range(1, top + 1):
        row = [al for al in range(1, beta + 1) if plane.vertex_at(al, beta) is not None]
        for a0, a1 in zip(row, row[1:]):
            (x0, y0), (x1, y1) = xy(a0, beta), xy(a1, beta)
            out.append(f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" class="label-1"/>')
    for alpha in range(1, top + 1):
        col = [be for be in range(alpha, top + 1) if plane.vertex_at(alpha, be) is not None]
        for b0, b1 in zip(col, col[1:]):
            (x0, y0), (x1, y1) = xy(alpha, b0), xy(alpha, b1)
            out.append(
                f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" class="label-2" stroke-dasharray="6 4"/>'
            )
    out.append("</g>")
    r = cell // 6
    for beta in range(top, 0, -1):
        for alpha in range(1, beta + 1):
            x, y = xy(alpha, beta)
            v = plane.vertex_at(alpha, beta)
            if v is None:
                out.append(f'<circle cx="{x}" cy="{y}" r="{r}" fill="white" stroke="black" class="hole"/>')
            else:
                out.append(f'<circle cx="{x}" cy="{y}" r="{r}" fill="black" class="vertex"/>')
                out.append(
                    f'<text x="{x + r + 2}" y="{y - r - 2}" font-family="monospace" '
                    f'font-size="{cell // 4}">{escape(str(v))}</text>'
                )
    out.append("</svg>")
    return "\n".join(out) + "\n"
