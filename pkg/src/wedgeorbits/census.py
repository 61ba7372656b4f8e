"""Finite-field census driver: full enumeration of the 14-coordinate space
over F_3 (p^14 points) or seeded sampling for other small odd primes, with
stratum counts, fiber counts, the X1 class split, the X2 core check and
sampled classifier-constancy verification.

Backend selection at import: the compiled kernel (`_censuskernel`) when built,
else the numpy kernel.  Contiguous chunks are processed by worker threads and
merged in submission order (counts commute, so the result is deterministic).
"""

import os
import random
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _census_py
from .fields import PrimeField, legendre
from .orbits import calibration, invariant
from .quartic import j_invariant
from .wedgerep import XTuple

try:
    from . import _censuskernel as _compiled
except ImportError:  # pure-python fallback only
    _compiled = None


class ScopeTooLarge(Exception):
    pass


def available_backends():
    out = ["python"]
    if _compiled is not None:
        out.insert(0, "compiled")
    return out


def default_backend():
    return "compiled" if _compiled is not None else "python"


def _tables(p):
    ctx = PrimeField(p)
    ranks = calibration(ctx)
    chi = np.zeros(p, dtype=np.int64)
    for t in range(1, p):
        chi[t] = legendre(t, p)
    return {
        "inv4": pow(4, -1, p),
        "rx0": ranks["x0"],
        "rx1": ranks["x1"],
        "chi": chi,
        "lnr": ctx.least_nonresidue().v,
    }


def _tensor_inputs(p):
    tensor = _census_py.q16_tensor() % p
    nz = np.nonzero(tensor)
    pairs = _census_py.monomial_index_pairs()
    return {
        "nz_mon": nz[0].astype(np.int32),
        "nz_gram": nz[1].astype(np.int32),
        "nz_val": tensor[nz].astype(np.int64),
        "mon_k": np.array([k for k, _ in pairs], dtype=np.int64),
        "mon_l": np.array([l for _, l in pairs], dtype=np.int64),
    }


def run_range(p, start, stop, backend=None, tables=None):
    """Classify one contiguous index range; returns the raw count record."""
    backend = backend or default_backend()
    tables = tables or _tables(p)
    if backend == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel not built")
        tin = _tensor_inputs(p)
        raw = _compiled.census_range(
            p, start, stop,
            tables["inv4"], tables["rx0"], tables["rx1"], tables["lnr"],
            tables["chi"],
            tin["nz_mon"], tin["nz_gram"], tin["nz_val"],
            tin["mon_k"], tin["mon_l"],
        )
        cores = set()
        cc = raw.pop("x2_core_counts")
        lnr = tables["lnr"]
        for r in range(15):
            for cls in range(2):
                if cc[r * 2 + cls]:
                    cores.add((r, 1 if cls == 0 else lnr))
        raw["x2_cores"] = cores
        return raw
    if backend == "python":
        return _census_py.census_chunk(p, start, stop, tables)
    raise ValueError("backend must be 'compiled' or 'python'")


def _merge(acc, part, p):
    if acc is None:
        acc = {
            "zero": 0,
            "x0": 0,
            "x1": np.zeros(p, dtype=np.int64),
            "x2": 0,
            "x2_cores": set(),
            "fibers": np.zeros(p, dtype=np.int64),
            "anomalies": 0,
        }
    acc["zero"] += part["zero"]
    acc["x0"] += part["x0"]
    acc["x1"] = acc["x1"] + np.asarray(part["x1"])
    acc["x2"] += part["x2"]
    acc["x2_cores"] |= part["x2_cores"]
    acc["fibers"] = acc["fibers"] + np.asarray(part["fibers"])
    acc["anomalies"] += part["anomalies"]
    return acc


def _random_tuple(ctx, rng):
    return XTuple.from_coords(ctx, [ctx.random(rng) for _ in range(14)])


def _fiber_constancy(p, seed, pairs_per_fiber=2, max_draws=20000):
    """Sampled check: invariant keys agree within each nonzero J-fiber."""
    ctx = PrimeField(p)
    rng = random.Random(seed)
    buckets = {}
    draws = 0
    want = pairs_per_fiber + 1
    while draws < max_draws and any(
        len(buckets.get(i, ())) < want for i in range(1, p)
    ):
        draws += 1
        t = _random_tuple(ctx, rng)
        j = j_invariant(t)
        if j == ctx.zero:
            continue
        buckets.setdefault(j.v, []).append(t)
    out = {}
    for i, pts in sorted(buckets.items()):
        pts = pts[:want]
        keys = {invariant(t, mode="sp6", seed=seed).key() for t in pts}
        out[i] = {"points": len(pts), "constant": len(keys) == 1}
    return out


def _x1_route_agreement(p, seed, samples=5):
    """Dual-route check: kernel-style class (covariant) vs reduction class."""
    ctx = PrimeField(p)
    rng = random.Random(seed)
    from .symplectic import random_element
    from .wedgerep import act, from_tuple, to_tuple

    agree = True
    z3 = [[ctx.zero] * 3 for _ in range(3)]
    for k in range(samples):
        a = ctx.random_nonzero(rng)
        b = [[a, ctx.zero, ctx.zero], [ctx.zero] * 3, [ctx.zero] * 3]
        t = XTuple.make(ctx, ctx.one, ctx.zero, z3, b)
        g = random_element(ctx, seed * 131 + k, 4)
        moved = to_tuple(ctx, act(ctx, g, from_tuple(t)))
        inv = invariant(moved, mode="sp6", seed=seed)
        agree = agree and inv.x1_class == ctx.square_class(a)
    return agree


def run_census(
    p,
    full=False,
    sample=None,
    seed=0,
    jobs=1,
    backend=None,
    chunk_count=64,
    check_pairs=2,
):
    """Stratum and fiber census; see module docstring.

    Full scope is restricted to p = 3 (3^14 points); other primes use
    seeded sampling.
    """
    backend = backend or default_backend()
    tables = _tables(p)
    report = {
        "schema": "wedgeorbits/1",
        "p": p,
        "backend": backend,
        "jobs": jobs,
    }
    if full:
        if p != 3:
            raise ScopeTooLarge("full census is only supported for p = 3")
        total = p**14
        bounds = np.linspace(0, total, chunk_count + 1, dtype=np.int64)
        chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if a < b]
        acc = None
        workers = max(1, min(jobs, os.cpu_count() or 1))
        report["workers"] = workers
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as ex:
                parts = list(ex.map(lambda ab: run_range(p, ab[0], ab[1], backend, tables), chunks))
        else:
            parts = [run_range(p, a, b, backend, tables) for a, b in chunks]
        for part in parts:
            acc = _merge(acc, part, p)
        report["scope"] = "full"
    else:
        n = sample or 10**5
        rng = np.random.default_rng(seed)
        coords = rng.integers(0, p, size=(n, 14)).astype(np.int64)
        acc = _census_py.classify_coords(p, coords, tables)
        report["scope"] = {"sample": n, "seed": seed}
        report["backend"] = "python"

    x1_by_class = {int(v): int(c) for v, c in enumerate(acc["x1"]) if c}
    fibers = {int(i): int(c) for i, c in enumerate(acc["fibers"]) if i > 0 and c}
    counts = {
        "zero": acc["zero"],
        "x0": acc["x0"],
        "x1": int(acc["x1"].sum()),
        "x1_by_class": x1_by_class,
        "x2": acc["x2"],
        "fibers": fibers,
    }
    counts["total"] = (
        counts["zero"] + counts["x0"] + counts["x1"] + counts["x2"] + sum(fibers.values())
    )
    report["counts"] = counts
    checks = {
        "anomalies": acc["anomalies"],
        "x1_distinct_classes": len(x1_by_class),
        "x2_distinct_cores": len(acc["x2_cores"]),
        "x2_cores": sorted(acc["x2_cores"]),
    }
    if full:
        checks["partition_ok"] = counts["total"] == p**14
    fib = _fiber_constancy(p, seed, pairs_per_fiber=check_pairs)
    checks["fiber_constancy"] = {str(i): v for i, v in fib.items()}
    checks["fibers_all_constant"] = all(v["constant"] for v in fib.values())
    checks["x1_route_agreement"] = _x1_route_agreement(p, seed)
    report["checks"] = checks
    report["ok"] = bool(
        checks["anomalies"] == 0
        and checks["x1_distinct_classes"] == 2
        and checks["x2_distinct_cores"] == 1
        and checks["fibers_all_constant"]
        and checks["x1_route_agreement"]
        and checks.get("partition_ok", True)
    )
    return report
