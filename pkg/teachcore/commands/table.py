from typing import Iterable, Sequence

from teachcore.util import canonical_json

__all__ = ["render_table", "render_machine"]


def render_table(headers: Sequence[str], rows: Iterable[Sequence[object]], *, title: str = None) -> str:
    rows = [[str(cell) for cell in row] for row in rows]
    widths = [max([len(h), *(len(row[i]) for row in rows)]) for i, h in enumerate(headers)]

    def line(cells):
        return " " + " | ".join(cell.ljust(width) for cell, width in zip(cells, widths)).rstrip()

    ruler = "-" * (sum(widths) + 3 * (len(widths) - 1) + 2)
    lines = []
    if title:
        lines.append(f"[{title}]")
    lines.append(line(headers))
    lines.append(ruler)
    lines.extend(line(row) for row in rows)
    return "\n".join(lines)


def render_machine(document) -> str:
    return canonical_json(document)
