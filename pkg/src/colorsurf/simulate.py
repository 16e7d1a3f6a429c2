"""Monte Carlo logical-failure estimation for the mapped decoding pipeline.

Trials draw i.i.d. depolarizing noise, decode through the map, and grade
the lifted correction against the color code's logical group.  Every trial
seeds its own generator from (seed, trial index), so results are
reproducible bit for bit and independent of how trials are distributed
across workers.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .codemap import MapArtifact, MapConventions, build_artifact
from .colex import Color, Colex, load_colex, save_colex
from .decode import ColorDecoder
from .symplectic import PauliOp

_WILSON_Z = 1.959963984540054  # 95%


@dataclass(frozen=True)
class NoiseModel:
    """Depolarizing noise: each qubit suffers X, Y or Z with probability p/3."""

    p: float
    kind: str = "depolarizing"

    def __post_init__(self):
        if self.kind != "depolarizing":
            raise ValueError(f"unsupported noise kind {self.kind!r}")
        if not (0.0 <= self.p <= 1.0):
            raise ValueError(f"probability must lie in [0, 1], got {self.p}")


@dataclass(frozen=True)
class TrialStats:
    p: float
    trials: int
    failures: int
    rate: float
    ci_lo: float
    ci_hi: float
    seed: int
    seconds: float


def wilson_interval(failures: int, trials: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion.

    Clamped to [0, 1] and to contain the point estimate (the mathematical
    interval always does; floating point at the endpoints may not).
    """
    if trials == 0:
        return (0.0, 1.0)
    phat = failures / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = (z / denom) * sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return (min(phat, max(0.0, center - half)), max(phat, min(1.0, center + half)))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Counter-style generator: (seed, trial) fully determine the stream."""
    return np.random.Generator(
        np.random.Philox(key=np.array([seed, trial], dtype=np.uint64))
    )


def sample_error(space, p: float, rng: np.random.Generator) -> PauliOp:
    """One depolarizing draw from a single uniform vector.

    A qubit with u < p is hit; the same uniform, rescaled, picks X, Y or Z
    with equal weight, so the draw pattern is one vector per trial.
    """
    u = rng.random(space.n)
    if p <= 0.0:
        zero = np.zeros(space.n, dtype=np.uint8)
        return PauliOp(space, zero, zero.copy())
    hit = u < p
    kinds = np.minimum((u * (3.0 / p)).astype(np.int64), 2)  # 0=X, 1=Y, 2=Z
    x = (hit & (kinds != 2)).astype(np.uint8)
    z = (hit & (kinds != 0)).astype(np.uint8)
    return PauliOp(space, x, z)


def _count_failures(
    dec: ColorDecoder, p: float, seed: int, start: int, count: int
) -> int:
    space = dec.art.color_code.space
    failures = 0
    for t in range(start, start + count):
        err = sample_error(space, p, trial_rng(seed, t))
        out = dec.decode_error(err)
        if not out.success:
            failures += 1
    return failures


def _worker_count_failures(args) -> int:
    doc, color_value, conv_doc, method, p, seed, start, count = args
    g = load_colex(doc)
    conv = MapConventions.from_jsonable(conv_doc)
    art = build_artifact(g, Color.parse(color_value), conv)
    dec = ColorDecoder(art, method=method)
    return _count_failures(dec, p, seed, start, count)


def run_trials(
    g: Colex,
    color: Color = Color.R,
    conventions: MapConventions | None = None,
    noise: NoiseModel = NoiseModel(0.01),
    trials: int = 1000,
    seed: int = 0,
    threads: int = 1,
    method: str = "exact",
    _artifact: MapArtifact | None = None,
    _decoder: ColorDecoder | None = None,
) -> TrialStats:
    """Estimate the logical failure rate; deterministic for a given seed.

    Trial t draws its error from a generator keyed by (seed, t), so
    splitting the range across processes cannot change the outcome.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    art = _artifact if _decoder is None else _decoder.art
    if art is None:
        art = build_artifact(g, color, conventions)
    t0 = time.perf_counter()
    if _decoder is not None or threads <= 1 or trials < 4 * threads:
        dec = _decoder if _decoder is not None else ColorDecoder(art, method=method)
        failures = _count_failures(dec, noise.p, seed, 0, trials)
    else:
        doc = save_colex(art.colex)
        conv_doc = art.conventions.to_jsonable()
        chunk = (trials + threads - 1) // threads
        jobs = []
        start = 0
        while start < trials:
            count = min(chunk, trials - start)
            jobs.append((doc, art.color.value, conv_doc, method, noise.p, seed, start, count))
            start += count
        with ProcessPoolExecutor(max_workers=threads) as pool:
            failures = sum(pool.map(_worker_count_failures, jobs))
    seconds = time.perf_counter() - t0
    lo, hi = wilson_interval(failures, trials)
    return TrialStats(
        p=noise.p,
        trials=trials,
        failures=failures,
        rate=failures / trials,
        ci_lo=lo,
        ci_hi=hi,
        seed=seed,
        seconds=seconds,
    )


CSV_COLUMNS = "family,rows,cols,color,p,trials,failures,rate,ci_lo,ci_hi,seed,seconds"


def sweep(
    g: Colex,
    color: Color = Color.R,
    conventions: MapConventions | None = None,
    p_values: list[float] = (),
    trials: int = 1000,
    seed: int = 0,
    threads: int = 1,
    method: str = "exact",
) -> list[TrialStats]:
    """One run_trials row per p value, in the given order (duplicates kept)."""
    art = build_artifact(g, color, conventions)
    return [
        run_trials(
            g,
            color,
            conventions,
            NoiseModel(p),
            trials,
            seed,
            threads,
            method,
            _artifact=art,
        )
        for p in p_values
    ]


def stats_to_csv(g: Colex, color: Color, stats: list[TrialStats], timing: bool = True) -> str:
    """CSV text for a sweep.  The seconds column holds wall time, which is
    the one field that varies between reruns; pass timing=False to zero it
    when byte-stable output is required."""
    meta = g.meta or {}
    family = str(meta.get("family", "custom"))
    rows = str(meta.get("rows", ""))
    cols = str(meta.get("cols", ""))
    out = [CSV_COLUMNS]
    for s in stats:
        seconds = f"{s.seconds:.3f}" if timing else "0.000"
        out.append(
            f"{family},{rows},{cols},{color.value},{s.p:.8g},{s.trials},{s.failures},"
            f"{s.rate:.8g},{s.ci_lo:.8g},{s.ci_hi:.8g},{s.seed},{seconds}"
        )
    return "\n".join(out) + "\n"
