"""Collects one verdict per acceptance criterion for the terminal summary."""

RESULTS: list[tuple[int, bool, str]] = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    RESULTS.append((number, ok, detail))
