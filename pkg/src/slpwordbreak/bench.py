"""Smoke benchmark suites producing CSV rows.

Each suite is a list of cases; a case that raises is reported in its
row's ``status`` column and the suite carries on.
"""

from __future__ import annotations

import random
import statistics
import time
from typing import Callable, Iterator

from .cliquegen import Graph, build_instance
from .dictionary import Dictionary
from .engine import build_index, estimate_bytes, query, solve, solve_compressed
from .slp import Slp, power_slp, repeat_slp

COLUMNS = ["suite", "params", "build_s", "solve_s", "query_s", "peak_mem_bytes", "status"]


def _median_query(index, rng: random.Random, count: int) -> float:
    n = len(index.slp)
    times = []
    for _ in range(count):
        i = rng.randint(1, n)
        j = rng.randint(i, n)
        t0 = time.perf_counter()
        query(index, i, j)
        times.append(time.perf_counter() - t0)
    return statistics.median(times)


def _index_case(slp: Slp, d: Dictionary, rng: random.Random) -> dict:
    t0 = time.perf_counter()
    index = build_index(slp, d)
    t1 = time.perf_counter()
    answer = solve(index)
    t2 = time.perf_counter()
    return {"build_s": t1 - t0, "solve_s": t2 - t1,
            "query_s": _median_query(index, rng, 50),
            "peak_mem_bytes": estimate_bytes(index.slp.size, d.m),
            "status": "YES" if answer else "NO"}


def scaling_n(tmin: int = 10, tmax: int = 30, seed: int = 0):
    d = Dictionary([(97, 97), (97, 97, 97)])
    rng = random.Random(seed)
    for t in range(tmin, tmax + 1):
        yield (f"t={t} N={2**t} g={t + 1} m={d.m}",
               lambda t=t: _index_case(power_slp(97, t), d, rng))


def scaling_m(ms=(8, 16, 32, 64), seed: int = 0):
    rng = random.Random(seed)
    base = [rng.randrange(4) for _ in range(64)]
    slp = repeat_slp(base, 10)
    text = base * 2
    for m in ms:
        words = {tuple(text[p:p + rng.randint(1, m)]) for p in rng.sample(range(64), 24)}
        words.add(tuple(text[:m]))
        d = Dictionary(words)
        yield (f"m={d.m} N={len(slp)} K={d.K}", lambda d=d: _index_case(slp, d, rng))


def clique(n: int = 20, k: int = 1, p: float = 0.5, seed: int = 0):
    def case() -> dict:
        t0 = time.perf_counter()
        inst = build_instance(Graph.random(n, p, seed), k)
        d = Dictionary(inst.dict_words)
        t1 = time.perf_counter()
        answer = solve_compressed(inst.slp, d)
        t2 = time.perf_counter()
        return {"build_s": t1 - t0, "solve_s": t2 - t1, "query_s": "",
                "peak_mem_bytes": estimate_bytes(inst.slp.size, d.m),
                "status": f"{'YES' if answer else 'NO'} N={inst.N} |w|={len(inst.slp)} "
                          f"g={inst.slp.size} m={d.m} M={d.M}"}

    yield f"n={n} k={k} p={p} seed={seed}", case


SUITES: dict[str, Callable] = {"scaling-N": scaling_n, "scaling-m": scaling_m, "clique": clique}


def run_suite(name: str, **params) -> Iterator[dict]:
    for label, case in SUITES[name](**params):
        row = {"suite": name, "params": label}
        try:
            row.update(case())
        except Exception as exc:
            row["status"] = f"ERROR {type(exc).__name__}: {exc}"
        yield row
