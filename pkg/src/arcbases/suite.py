"""Registry of verifiable statements and a deterministic runner."""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable

from .bases import basis_reports
from .correspondences import verify_correspondences
from .families import verify_sharp
from .fourier import conjecture_report, filtration_check, form_report, involution_report, n5_certify
from .gf2 import check_n
from .orders import verify_monotonicity
from .report import Report


def _fourier(n: int) -> list[Report]:
    out = [involution_report(n, exact_operators=n <= 7), filtration_check(n)]
    if n == 5:
        out.append(n5_certify())
    return out + [form_report(n), conjecture_report(n)]


GROUPS: dict[str, tuple[Callable[[int], list[Report]], tuple[str, ...]]] = {
    "correspondences": (
        verify_correspondences,
        ("1.4", "1.5", "Thm2.4a", "Thm2.4b", "Thm2.4c", "2.7", "2.8a", "Thm2.9a", "Thm2.9b", "Thm2.13", "3.1a"),
    ),
    "orders": (
        verify_monotonicity,
        ("2.5a", "2.5b", "2.10b", "2.10c", "2.14a", "3.2a", "3.3a", "3.4a",
         "3.6b", "3.6b-height", "3.7b", "3.7b-height"),
    ),
    "bases": (basis_reports, ("3.5", "2.6", "2.11", "2.15", "3.8a", "3.8b", "3.9a", "3.9b", "3.10")),
    "families": (
        verify_sharp,
        ("4.1a", "4.1b", "4.1c", "4.1d", "4.1e", "4.1e-Pr", "Thm4.3", "4.5a", "4.5a-Pr", "Thm4.7"),
    ),
    "fourier": (_fourier, ("5.1-involution", "5.1-filtration", "5.1-n5", "5.2-form", "5.2")),
}

STATEMENTS: tuple[str, ...] = tuple(s for _, ids in GROUPS.values() for s in ids)
_GROUP_OF = {s: g for g, (_, ids) in GROUPS.items() for s in ids}


class UnknownStatement(KeyError):
    pass


def resolve(selection: Iterable[str] | str = "all") -> list[str]:
    """Expand "all", group names and statement ids into registry order."""
    if isinstance(selection, str):
        selection = [selection]
    wanted: set[str] = set()
    for item in selection:
        for token in filter(None, (p.strip() for p in item.split(","))):
            if token == "all":
                wanted.update(STATEMENTS)
            elif token in GROUPS:
                wanted.update(GROUPS[token][1])
            elif token in _GROUP_OF:
                wanted.add(token)
            else:
                raise UnknownStatement(token)
    return [s for s in STATEMENTS if s in wanted]


def _run_group(group: str, n: int) -> list[Report]:
    t0 = time.perf_counter()
    reports = GROUPS[group][0](n)
    # each report's own timer only covers its tally; attribute shared setup evenly
    share = (time.perf_counter() - t0) / max(len(reports), 1)
    for r in reports:
        r.wall_time = max(r.wall_time, share)
    return reports


def run_suite(n: int, selection: Iterable[str] | str = "all", jobs: int = 1) -> list[Report]:
    """Reports for the selected statements, always in registry order."""
    check_n(n)
    ids = resolve(selection)
    groups = [g for g in GROUPS if any(_GROUP_OF[s] == g for s in ids)]
    # the N=5 block analysis is tied to N=5 and runs there whatever n is
    extra = [n5_certify()] if "5.1-n5" in ids and n != 5 else []
    if jobs != 1 and len(groups) > 1:
        with ProcessPoolExecutor(max_workers=jobs or None) as pool:
            results = list(pool.map(_run_group, groups, [n] * len(groups)))
    else:
        results = [_run_group(g, n) for g in groups]
    by_id = {r.statement: r for rs in results for r in rs}
    for r in extra:
        by_id[r.statement] = r
    return [by_id[s] for s in ids if s in by_id]
