"""Code-capacity Monte Carlo: sampling, trials, bounds, scaling benches.

Sampling uses a counter-based generator keyed by (seed, trial) with a
fixed per-qubit draw order, so trials are order independent and can be
farmed out to worker processes without changing any result.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import OpCounter
from .gf2 import gf2_solve
from .hypergraph import Erasure, PauliXError, Syndrome
from .logical import is_logical_failure
from .peeling import decode_erasure
from .rep_mwpm import decode_rep
from .subdivided import BruteForceOuter, decode_subdivided
from .uf_surface import decode_uf_fast
from .gen_union_find import decode_gen_uf_fast

CSV_HEADER = "code_id,decoder,L,p,p_erase,trials,failures,rate,ci_lo,ci_hi,seed"
WILSON_Z = 1.959963984540054  # two-sided 95%


@dataclass(frozen=True)
class NoiseModel:
    """Independent per-qubit noise: X with probability p, erasure with
    p_erase; an erased qubit suffers X with probability one half."""

    p: float
    p_erase: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p out of range: {self.p}")
        if not 0.0 <= self.p_erase <= 1.0:
            raise ValueError(f"p_erase out of range: {self.p_erase}")


def sample(noise: NoiseModel, code, trial: int) -> tuple[PauliXError, Erasure]:
    """Draw one (error, erasure) pair; deterministic in (seed, trial)."""
    n = code.graph.n_edges
    key = np.array([noise.seed & (2**64 - 1), trial & (2**64 - 1)], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    u = rng.random(2 * n)
    erased = u[:n] < noise.p_erase
    threshold = np.where(erased, 0.5, noise.p)
    flipped = u[n:] < threshold
    return (
        {int(q) for q in np.nonzero(flipped)[0]},
        {int(q) for q in np.nonzero(erased)[0]},
    )


def wilson_interval(failures: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    if trials <= 0:
        raise ValueError("trials must be positive")
    phat = failures / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = 0.0 if failures == 0 else max(0.0, centre - half)
    hi = 1.0 if failures == trials else min(1.0, centre + half)
    return lo, hi


@dataclass(frozen=True)
class SweepPoint:
    code_id: str
    decoder: str
    L: int
    p: float
    p_erase: float
    trials: int
    failures: int
    rate: float
    ci_lo: float
    ci_hi: float
    seed: int

    def csv_row(self) -> str:
        return ",".join([
            self.code_id, self.decoder, str(self.L),
            format(self.p, ".10g"), format(self.p_erase, ".10g"),
            str(self.trials), str(self.failures),
            format(self.rate, ".10g"), format(self.ci_lo, ".10g"),
            format(self.ci_hi, ".10g"), str(self.seed),
        ])


@dataclass
class SweepResult:
    points: list[SweepPoint] = field(default_factory=list)

    def to_csv(self) -> str:
        return "\n".join([CSV_HEADER] + [pt.csv_row() for pt in self.points]) + "\n"

    def write(self, path) -> None:
        with open(path, "w") as fh:
            fh.write(self.to_csv())


# ---------------------------------------------------------------------------
# decoders exposed to the harness


class SubdividedDecoder:
    name = "subdivided"
    erasure_aware = False

    def __init__(self, code, mode: str = "serial"):
        self.outer = BruteForceOuter(code.outer_hz, code.outer.distance_hint)
        self.mode = mode

    def decode(self, code, syndrome: Syndrome, erasure: Erasure,
               counter: OpCounter | None = None) -> PauliXError:
        return decode_subdivided(code, syndrome, self.outer, mode=self.mode,
                                 counter=counter)


class GenUnionFindDecoder:
    name = "gen-uf"
    erasure_aware = True

    def decode(self, code, syndrome, erasure, counter=None):
        return decode_gen_uf_fast(code, erasure, syndrome, counter=counter)


class UnionFindDecoder:
    name = "uf"
    erasure_aware = True

    def decode(self, code, syndrome, erasure, counter=None):
        return decode_uf_fast(code.graph, erasure, syndrome, counter=counter)


class PeelingDecoder:
    """Erasure-channel decoder: the error must lie within the erasure."""

    name = "peel"
    erasure_aware = True

    def decode(self, code, syndrome, erasure, counter=None):
        return decode_erasure(code.graph, erasure, syndrome, counter=counter)


class RepMwpmDecoder:
    name = "rep-mwpm"
    erasure_aware = False

    def decode(self, code, syndrome, erasure, counter=None):
        return decode_rep(code, syndrome, counter=counter)


class SolveDecoder:
    """Trivial baseline: any syndrome-consistent correction via GF(2) solve."""

    name = "solve"
    erasure_aware = False

    def decode(self, code, syndrome, erasure, counter=None):
        x = gf2_solve(code.hz.transpose(), sorted(syndrome))
        if x is None:
            raise ValueError("inconsistent syndrome")
        if counter is not None:
            counter.add(len(x))
        return set(x)


class QuadraticReferenceDecoder:
    """Negative control for scaling fits: does quadratic busy work."""

    name = "quadratic-reference"
    erasure_aware = False

    def __init__(self):
        self._solver = SolveDecoder()

    def decode(self, code, syndrome, erasure, counter=None):
        n = code.graph.n_edges
        touched = 0
        for e in range(n):
            for other in range(n):
                touched += (e ^ other) & 1
        if counter is not None:
            counter.add(n * n)
        return self._solver.decode(code, syndrome, erasure)


# ---------------------------------------------------------------------------
# trials


def _run_chunk(code, decoder, noise, start, stop) -> int:
    failures = 0
    for trial in range(start, stop):
        error, erasure = sample(noise, code, trial)
        if erasure and not decoder.erasure_aware:
            raise ValueError(f"decoder {decoder.name} cannot use erasure information")
        if decoder.name == "peel" and noise.p > 0:
            raise ValueError("peeling decodes the erasure channel; set p = 0")
        sigma = code.graph.syndrome_of(error)
        correction = decoder.decode(code, sigma, erasure)
        assert code.graph.syndrome_of(correction) == sigma, \
            "decoder output must reproduce the sampled syndrome"
        residual = correction ^ error
        if is_logical_failure(code, residual):
            failures += 1
    return failures


def run_trials(code, decoder, noise: NoiseModel, trials: int, *,
               code_id: str = "code", L: int = 0, jobs: int = 1) -> SweepPoint:
    """Monte-Carlo logical-failure estimate with a Wilson 95% interval."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if jobs > 1:
        bounds = np.linspace(0, trials, jobs + 1, dtype=int)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_run_chunk, code, decoder, noise, int(a), int(b))
                for a, b in zip(bounds[:-1], bounds[1:])
            ]
            failures = sum(f.result() for f in futures)
    else:
        failures = _run_chunk(code, decoder, noise, 0, trials)
    lo, hi = wilson_interval(failures, trials)
    return SweepPoint(
        code_id=code_id, decoder=decoder.name, L=L, p=noise.p,
        p_erase=noise.p_erase, trials=trials, failures=failures,
        rate=failures / trials, ci_lo=lo, ci_hi=hi, seed=noise.seed,
    )


def u_path_diagnostic(code, residual) -> bool:
    """Does the residual connect two distinct U vertices?  A proxy for a
    logical error built from T-region paths; tracked as a diagnostic, not
    an invariant."""
    u_set = set(code.u_vertex)
    remaining = set(residual)
    for seed in sorted(remaining):
        if seed not in remaining:
            continue
        stack = [seed]
        remaining.discard(seed)
        seen_v: set[int] = set()
        touched: set[int] = set()
        while stack:
            e = stack.pop()
            for v in code.graph.edges[e]:
                if v in seen_v:
                    continue
                seen_v.add(v)
                if v in u_set:
                    touched.add(v)
                for e2 in code.graph.vertex_edges[v]:
                    if e2 in remaining:
                        remaining.discard(e2)
                        stack.append(e2)
        if len(touched) >= 2:
            return True
    return False


# ---------------------------------------------------------------------------
# analytic bounds


def hoeffding_bound(n_qldpc: int, r: int, p: float) -> float:
    """Logical-rate bound for an outer code correcting up to r errors."""
    if n_qldpc < 1 or r < 0:
        raise ValueError("need n_qldpc >= 1 and r >= 0")
    cutoff = (r + 1) / n_qldpc
    if not 0.0 <= p <= cutoff:
        raise ValueError(f"bound requires p <= (r + 1) / n = {cutoff:.6g}, got {p}")
    return math.exp(-2.0 * n_qldpc * (cutoff - p) ** 2)


def mwpm_path_bound(L: int, delta: int, a: float | None, eps: float) -> float:
    """Per-T-region logical-path probability bound for matching decoders.

    Counts non-backtracking paths of m >= (L-1) delta / 2 + 1 edges with
    branching base ``a`` (defaults to delta - 1); a path needs errors on at
    least a quarter of its edges since matching leaves at most half wrong
    in each region and the T sections at most double the path.  The
    geometric sum gives (2 a eps^(1/4))^m / (1 - 2 a eps^(1/4)).
    """
    if a is None:
        a = delta - 1
    if L < 1 or L % 2 == 0 or delta < 2 or a <= 0:
        raise ValueError("need odd L >= 1, delta >= 2 and a > 0")
    limit = 1.0 / (2.0 * a) ** 4
    if not 0.0 <= eps < limit:
        raise ValueError(f"bound requires eps < 1/(2a)^4 = {limit:.6g}, got {eps}")
    if eps == 0.0:
        return 0.0
    m = (L - 1) * delta // 2 + 1
    base = 2.0 * a * eps ** 0.25
    return base ** m / (1.0 - base)


# ---------------------------------------------------------------------------
# scaling bench


@dataclass(frozen=True)
class BenchRow:
    decoder: str
    size: int
    n: int
    ops: int
    seconds: float


@dataclass
class BenchResult:
    rows: list[BenchRow]
    slope_ops: float | None
    slope_seconds: float | None

    def to_csv(self) -> str:
        lines = ["decoder,size,n,ops,seconds"]
        for r in self.rows:
            lines.append(
                f"{r.decoder},{r.size},{r.n},{r.ops},{format(r.seconds, '.6g')}"
            )
        return "\n".join(lines) + "\n"


def fit_loglog_slope(xs, ys) -> float:
    xs = np.log(np.asarray(xs, dtype=float))
    ys = np.log(np.asarray(ys, dtype=float))
    return float(np.polyfit(xs, ys, 1)[0])


def bench_scaling(cases, decoder, noise_p: float, trials: int, seed: int) -> BenchResult:
    """Operation-count and wall-time scaling over a family of codes.

    ``cases`` is a list of (size_label, code) pairs of increasing size;
    inputs are sampled deterministically per size.  Wall time is reported
    for information, the operation counter is the deterministic signal.
    """
    if not cases:
        raise ValueError("no benchmark sizes given")
    rows = []
    for size, code in cases:
        noise = NoiseModel(p=noise_p, seed=seed)
        total_ops = 0
        t0 = time.perf_counter()
        for trial in range(trials):
            error, _ = sample(noise, code, trial)
            sigma = code.graph.syndrome_of(error)
            counter = OpCounter()
            decoder.decode(code, sigma, set(), counter=counter)
            total_ops += counter.ticks
        seconds = time.perf_counter() - t0
        rows.append(BenchRow(
            decoder=decoder.name, size=size, n=code.graph.n_edges,
            ops=max(1, total_ops // max(1, trials)),
            seconds=seconds / max(1, trials),
        ))
    if len(rows) < 2:
        return BenchResult(rows=rows, slope_ops=None, slope_seconds=None)
    ns = [r.n for r in rows]
    return BenchResult(
        rows=rows,
        slope_ops=fit_loglog_slope(ns, [r.ops for r in rows]),
        slope_seconds=fit_loglog_slope(ns, [max(r.seconds, 1e-9) for r in rows]),
    )
