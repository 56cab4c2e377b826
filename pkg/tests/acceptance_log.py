"""Collects one PASS/FAIL line per acceptance criterion."""

LINES: dict[int, str] = {}


def report(number: int, title: str, ok: bool, detail: str = "") -> str:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title}"
    if detail:
        line += f" ({detail})"
    LINES[number] = line
    print(line)
    return line
