"""Sweep runner: expands parameter ranges into instances, runs them in order-preserving
parallel, and writes JSON-lines or CSV."""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO

from .checks import run_check
from .families import FAMILIES, FamilyInstance
from .report import FAILS, HOLDS, INAPPLICABLE, CheckReport, to_jsonable


@dataclass(frozen=True)
class SweepTask:
    check_id: str
    instance: FamilyInstance
    check_params: tuple = ()  # sorted (name, value) pairs

    def describe(self) -> dict:
        return {**self.instance.describe(), **dict(self.check_params)}


def expand_tasks(check_id: str, family: str, fixed: dict, ranges: dict) -> list[SweepTask]:
    """Cartesian product of ``ranges`` (name -> list of values) over ``fixed`` parameters.

    Names belonging to the family go to the body constructor, everything else
    to the check.
    """
    spec = FAMILIES[family]
    names = sorted(ranges)
    tasks = []
    for combo in itertools.product(*[ranges[k] for k in names]):
        params = {**fixed, **dict(zip(names, combo))}
        fam = {k: v for k, v in params.items() if k in spec.params}
        chk = {k: v for k, v in params.items() if k not in spec.params and v is not None}
        tasks.append(SweepTask(check_id, FamilyInstance.make(family, **fam), tuple(sorted(chk.items()))))
    return tasks


def run_task(task: SweepTask) -> CheckReport:
    K = task.instance.build()
    return run_check(task.check_id, K, dict(task.check_params), task.describe())


def run_tasks(tasks: list[SweepTask], jobs: int = 1) -> Iterator[CheckReport]:
    """Reports in task order, whatever the number of worker processes."""
    if jobs <= 1 or len(tasks) <= 1:
        for t in tasks:
            yield run_task(t)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(run_task, tasks, chunksize=1)


def summarize(reports: Iterable[CheckReport]) -> dict:
    counts = {HOLDS: 0, FAILS: 0, INAPPLICABLE: 0}
    failed_sub = 0
    total = 0
    for r in reports:
        total += 1
        counts[r.verdict] += 1
        if r.verdict != FAILS and not r.ok:
            failed_sub += 1
    return {"instances": total, **counts, "failed_subchecks": failed_sub}


def write_jsonl(reports: Iterable[CheckReport], out: TextIO) -> dict:
    seen = []
    for r in reports:
        out.write(r.to_json() + "\n")
        out.flush()
        seen.append(r)
    summary = summarize(seen)
    out.write(json.dumps({"summary": summary}, separators=(",", ":")) + "\n")
    return summary


CSV_COLUMNS = ["check_id", "family", "params", "lhs", "rhs", "ratio_float", "verdict", "witnesses", "bounds"]


def _cell(x) -> str:
    if isinstance(x, (dict, list)):
        return json.dumps(to_jsonable(x), separators=(",", ":"))
    return "" if x is None else str(to_jsonable(x))


def write_csv(reports: Iterable[CheckReport], out: TextIO) -> dict:
    w = csv.writer(out, lineterminator="\r\n")
    w.writerow(CSV_COLUMNS)
    seen = []
    for r in reports:
        inst = dict(r.instance)
        family = inst.pop("family", "")
        w.writerow([
            r.check_id, family, _cell(inst), _cell(r.lhs_power), _cell(r.rhs_power), _cell(r.ratio_float),
            r.verdict if r.ok or r.verdict == FAILS else FAILS, _cell(r.witnesses), _cell(r.bounds),
        ])
        seen.append(r)
    return summarize(seen)
