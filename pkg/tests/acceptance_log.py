"""Shared record of acceptance verdicts, printed in the pytest summary."""

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line, flush=True)
