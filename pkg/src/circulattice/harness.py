"""Searches over double circulant codes, invariant suites and reports."""
from __future__ import annotations

import json
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .counting import (C_THEOREM, ball_count, count_type1, log_ball_volume, moment_bound,
                       moment_bound_curve, norm_counts, type1_disc_bound)
from .cyclic import RingElement, count_irreducible_factors, cyclic_code_of, factor_x_q_minus_1, poly
from .dcode import (DEFAULT_BUDGET, DoubleCirculantCode, _left_halves, all_first_rows,
                    batch_min_norm_sq, contains, membership_probability, random_first_rows,
                    syndrome, words_for)
from .enumeration import ball_points, ball_size, centered_mod
from .errors import BudgetExceeded, NotTwoCodeRegime, RegimeViolation
from .group import act, group_elements, orbit_census
from .lattice import construction_a, density
from .modp import FpVector, Params
from .primes import is_primitive, select_p_direct

log = logging.getLogger(__name__)

SHARD_SIZE = 4096
SUITES = ("syndrome_distribution", "syndrome_identity", "two_code_structure", "orbit_lengths",
          "code_invariance", "ball_count", "type1_disc_bound", "first_moment")


def target_w_sq(params: Params, c: float = C_THEOREM) -> int:
    """Largest integer w_sq with vol S_n(sqrt(w_sq)) <= c n p^(n/2)."""
    if c <= 0:
        raise ValueError("c must be positive")
    n, p = params.n, params.p
    target = math.log(c * n) + 0.5 * n * math.log(p)
    # log vol = const + (n/2) log w_sq
    const = log_ball_volume(n, 1.0)
    w = max(0, int(math.exp(2 * (target - const) / n)))

    def fits(x: int) -> bool:
        return x == 0 or log_ball_volume(n, math.sqrt(x)) <= target

    while not fits(w):
        w -= 1
    while fits(w + 1):
        w += 1
    return w


# -- search ------------------------------------------------------------------

@dataclass
class SearchConfig:
    q: int
    p: Optional[int] = None
    mode: str = "exhaustive"
    samples: int = 1000
    w_sq: Optional[int] = None
    c: float = C_THEOREM
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    workers: int = 1

    def resolve(self) -> "SearchConfig":
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"unknown mode {self.mode!r}")
        p = self.p if self.p is not None else select_p_direct(self.q).p
        params = Params(self.q, p)
        w = self.w_sq if self.w_sq is not None else target_w_sq(params, self.c)
        return SearchConfig(self.q, p, self.mode, self.samples, w, self.c, self.seed,
                            self.budget, self.workers)


@dataclass
class SearchResult:
    config: dict
    codes_visited: int
    total_codes: int
    partial: bool
    best_a: Optional[tuple]
    best_d_sq: Optional[int]
    histogram: dict
    hits: int
    prob_estimate: Optional[Fraction]
    sampling_margin: Optional[float]
    moment_bound_value: Optional[Fraction]
    exact_expectation: Optional[Fraction]
    density_report: Optional[dict]
    c_achieved: Optional[float]
    words_visited: int
    naive_word_visits: int
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        def frac(x):
            return None if x is None else str(x)

        return {
            "config": self.config,
            "codes_visited": str(self.codes_visited),
            "total_codes": str(self.total_codes),
            "partial": self.partial,
            "best_a": None if self.best_a is None else list(self.best_a),
            "best_d2": None if self.best_d_sq is None else str(self.best_d_sq),
            "histogram": {str(k): str(v) for k, v in sorted(self.histogram.items())},
            "hits": str(self.hits),
            "prob_estimate": frac(self.prob_estimate),
            "prob_estimate_float": None if self.prob_estimate is None else float(self.prob_estimate),
            "sampling_margin": self.sampling_margin,
            "moment_bound": frac(self.moment_bound_value),
            "moment_bound_float": (None if self.moment_bound_value is None
                                   else float(self.moment_bound_value)),
            "exact_expectation": frac(self.exact_expectation),
            "density": self.density_report,
            "c_achieved": self.c_achieved,
            "c_theorem": C_THEOREM,
            "words_visited": str(self.words_visited),
            "naive_word_visits": str(self.naive_word_visits),
            "notes": self.notes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)


def _shard_min_norms(args):
    q, p, rows, budget = args
    params = Params(q, p)
    try:
        d2, visits = batch_min_norm_sq(params, rows, budget)
    except BudgetExceeded as exc:
        return None, exc.needed
    return d2, visits


def search(config: SearchConfig) -> SearchResult:
    """Minimum norms of every (exhaustive) or sampled (random) code, aggregated.

    Codes are processed in shards of ``SHARD_SIZE`` first rows; shard results
    are merged in shard order, so the outcome does not depend on ``workers``.
    Exceeding the word-visit budget stops the merge at the offending shard
    and flags the result partial.
    """
    cfg = config.resolve()
    params = Params(cfg.q, cfg.p)
    q, p = params.q, params.p
    notes = []
    if cfg.mode == "exhaustive":
        total = p ** q
        if total > cfg.budget:
            raise BudgetExceeded(total, cfg.budget)
        rows = all_first_rows(params)
    else:
        total = cfg.samples
        rows = random_first_rows(params, cfg.samples, cfg.seed)
    shards = [rows[i:i + SHARD_SIZE] for i in range(0, len(rows), SHARD_SIZE)]
    jobs = [(q, p, np.asarray(s), cfg.budget) for s in shards]
    if cfg.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            outs = list(pool.map(_shard_min_norms, jobs))
    else:
        outs = []
        spent = 0
        for job in jobs:
            out = _shard_min_norms(job)
            outs.append(out)
            spent += out[1]
            if out[0] is None or spent > cfg.budget:
                break

    hist: Counter = Counter()
    best_a, best_d2 = None, None
    visited_codes = 0
    words = 0
    partial = False
    hits = 0
    for shard, (d2s, visits) in zip(shards, outs):
        words += visits
        if d2s is None or words > cfg.budget:
            partial = True
            notes.append(f"word-visit budget {cfg.budget} exhausted after {visited_codes} codes")
            break
        for a, d2 in zip(shard, d2s):
            d2 = int(d2)
            hist[d2] += 1
            if d2 <= cfg.w_sq:
                hits += 1
            key = tuple(int(v) for v in a)
            if best_d2 is None or d2 > best_d2 or (d2 == best_d2 and key < best_a):
                best_a, best_d2 = key, d2
        visited_codes += len(shard)
        log.info("processed %d/%d codes", visited_codes, total)

    prob = Fraction(hits, visited_codes) if visited_codes else None
    mb_value = exact = None
    try:
        mb = moment_bound(params, cfg.w_sq, cross_check_budget=0)
        mb_value, exact = mb.paper_bound, mb.exact_expectation
    except (NotTwoCodeRegime, RegimeViolation) as exc:
        notes.append(f"moment bound unavailable: {type(exc).__name__}")
    margin = None
    if cfg.mode == "random" and mb_value is not None and visited_codes:
        margin = 3 * math.sqrt(float(mb_value) / visited_codes)

    dens = c_ach = None
    if best_a is not None:
        lat = construction_a(DoubleCirculantCode(params, best_a), best_d2)
        dens = density(lat).to_json()
        n, h = params.n, params.half
        if n * best_d2 * (math.isqrt(best_d2) + 1) <= 5 * 10**7:
            count = int(norm_counts(n, h, best_d2).sum())
            c_ach = count / (n * p ** q)
    cfg_json = {k: (str(v) if isinstance(v, int) and k in ("p", "budget", "seed") else v)
                for k, v in asdict(cfg).items() if k != "workers"}
    return SearchResult(
        config=cfg_json, codes_visited=visited_codes, total_codes=total, partial=partial,
        best_a=best_a, best_d_sq=best_d2, histogram=dict(hist), hits=hits, prob_estimate=prob,
        sampling_margin=margin, moment_bound_value=mb_value, exact_expectation=exact,
        density_report=dens, c_achieved=c_ach, words_visited=words,
        naive_word_visits=visited_codes * p ** q, notes=notes,
    )


def histogram_csv(result: SearchResult) -> str:
    lines = ["d2,codes"]
    lines += [f"{k},{v}" for k, v in sorted(result.histogram.items())]
    return "\n".join(lines) + "\n"


# -- invariant suites ---------------------------------------------------------

def structural_vectors(params: Params, count: int = 20, seed: int = 0) -> list[FpVector]:
    """Vectors whose right halves cover zero, C_1 minus 0, C_1^perp minus 0 and units,
    with left halves both inside and outside C(x_R)."""
    q, h = params.q, params.half
    rng = np.random.default_rng(seed)
    ones = (1,) * q
    sum_zero = (1, -1) + (0,) * (q - 2)
    unit = (1,) + (0,) * (q - 1)
    rights = [(0,) * q, ones, tuple(-v for v in ones), sum_zero, (0, 1, -1) + (0,) * (q - 3), unit]
    out = []
    i = 0
    while len(out) < count:
        xr = rights[i % len(rights)]
        cx = cyclic_code_of(RingElement(params, xr))
        # alternate a left half drawn from C(x_R) with an unconstrained one
        if i % 2 == 0:
            elems = list(cx.elements()) if cx.cardinality <= 4096 else None
            xl = elems[rng.integers(len(elems))].coeffs if elems else tuple(
                int(v) for v in rng.integers(-h, h + 1, size=q))
        else:
            xl = tuple(int(v) for v in rng.integers(-h, h + 1, size=q))
        out.append(FpVector.from_halves(params, xl, xr))
        i += 1
    return out


def right_syndromes(params: Params, xr, a_rows: np.ndarray) -> np.ndarray:
    """sigma_R(x) = x_R A^T for every first row in a_rows, computed by matrix action."""
    xr = np.asarray(xr, dtype=np.int64)[None, :]
    return (-words_for_rows(params, xr, a_rows)) % params.p


def words_for_rows(params: Params, xr: np.ndarray, a_rows: np.ndarray) -> np.ndarray:
    return _left_halves(np.asarray(a_rows, dtype=np.int64), xr, params.p)[:, 0, :]


def check_syndrome_law(x: FpVector, a_rows: np.ndarray) -> dict:
    """Exhaustive check of the syndrome law for one x over all listed first rows.

    sigma_R(x) must hit each element of C(x_R) equally often and nothing else,
    and the fraction of first rows whose code contains x must equal
    ``membership_probability(x)``.
    """
    params = x.params
    p = params.p
    syn = right_syndromes(params, x.right, a_rows)
    counts = Counter(tuple(int(v) for v in centered_mod(r, p)) for r in syn)
    cx = cyclic_code_of(RingElement(params, x.right))
    elements = {e.coeffs for e in cx.elements()}
    expected = Fraction(len(a_rows), cx.cardinality)
    uniform = set(counts) == elements and all(c == expected for c in counts.values())
    xl = np.array(x.left, dtype=np.int64)
    members = int(np.all((syn + xl[None, :]) % p == 0, axis=1).sum())
    freq = Fraction(members, len(a_rows))
    prob = membership_probability(x)
    return {"x": list(x.coords), "code_dim": cx.dimension, "uniform": uniform,
            "frequency": str(freq), "membership_probability": str(prob), "ok": uniform and freq == prob}


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def verify_lemmas(params: Params, budget: int = DEFAULT_BUDGET, seed: int = 0) -> dict:
    """Run the invariant suites for (q, p); failures become report entries, not exceptions."""
    q, p, n, h = params.q, params.p, params.n, params.half
    report: dict = {}

    def skipped(reason):
        return {"status": "skipped", "reason": reason}

    if budget <= 0:
        return {name: skipped("empty budget") for name in SUITES}

    # syndrome law over all first rows
    if p ** q <= budget and p ** q * 20 <= budget:
        a_rows = all_first_rows(params)
        results = [check_syndrome_law(x, a_rows) for x in structural_vectors(params, 20, seed)]
        bad = [r for r in results if not r["ok"]]
        report["syndrome_distribution"] = {"status": _status(not bad), "vectors": len(results),
                                           "counterexamples": bad[:3]}
        ident_bad = []
        for x in structural_vectors(params, 6, seed + 1):
            for a in a_rows[:: max(1, len(a_rows) // 50)]:
                try:
                    syndrome(DoubleCirculantCode(params, tuple(int(v) for v in a)), x)
                except ArithmeticError:
                    ident_bad.append({"x": list(x.coords), "a": [int(v) for v in a]})
        report["syndrome_identity"] = {"status": _status(not ident_bad), "counterexamples": ident_bad[:3]}
    else:
        report["syndrome_distribution"] = skipped(f"p^q * 20 exceeds budget {budget}")
        report["syndrome_identity"] = skipped(f"p^q exceeds budget {budget}")

    # factorization of Z^q - 1
    k = count_irreducible_factors(q, p)
    primitive = is_primitive(p % q, q)
    if primitive:
        facs = factor_x_q_minus_1(q, p)
        ok = k == 2 and facs == (tuple(poly([-1, 1], p)), tuple([1] * q))
        report["two_code_structure"] = {"status": _status(ok), "factors": k}
    else:
        report["two_code_structure"] = {"status": "not_applicable", "reason": "NotTwoCodeRegime",
                                        "factors": k, "expected": _status(k > 2) == "pass"}

    # orbit lengths
    space = p ** n
    try:
        if space <= budget:
            census = orbit_census(params, params.max_norm_sq, budget, strategy="sweep")
            ok = set(census) <= {1, 2, n} and census.get(2, 0) * 2 == p * p - 1 \
                and sum(k_ * v for k_, v in census.items()) == space
        else:
            w = max(q, 1)
            while ball_size(n, h, 2 * w) <= min(budget, 200000) and 2 * w <= params.max_norm_sq:
                w *= 2
            census = orbit_census(params, w, budget, strategy="ball")
            ok = set(census) <= {1, 2, n}
        report["orbit_lengths"] = {"status": _status(ok and q not in census),
                                   "census": {str(k_): v for k_, v in census.items()}}
    except BudgetExceeded as exc:
        report["orbit_lengths"] = skipped(str(exc))

    # G-invariance of codes
    rng = np.random.default_rng(seed)
    bad = []
    G = group_elements(q)
    for _ in range(5):
        code = DoubleCirculantCode(params, tuple(int(v) for v in rng.integers(-h, h + 1, size=q)))
        xr = rng.integers(-h, h + 1, size=(10, q))
        for w in words_for(code, xr):
            x = FpVector(params, tuple(int(v) for v in w))
            for g in G:
                if not contains(code, act(g, x)):
                    bad.append({"a": list(code.a), "x": list(x.coords), "g": [g.sign, g.shift]})
    report["code_invariance"] = {"status": _status(not bad), "counterexamples": bad[:3]}

    # ball counting DP against enumeration
    w_top = (p * p - 1) // 4
    while w_top > 0 and ball_size(n, h, w_top) > min(budget, 10**6):
        w_top //= 2
    if w_top > 0:
        pts = ball_points(n, h, w_top)
        norms = (pts * pts).sum(axis=1)
        bad = [w for w in range(w_top + 1) if ball_count(n, p, w) != int((norms <= w).sum())]
        report["ball_count"] = {"status": _status(not bad), "max_w2": w_top, "counterexamples": bad[:5]}
    else:
        report["ball_count"] = skipped("ball too large for budget")

    # type-1 disc bound
    w_grid = range(0, h * h + 1, max(1, (h * h) // 50))
    bad = [w for w in w_grid if count_type1(params, w) > type1_disc_bound(params, w)]
    report["type1_disc_bound"] = {"status": _status(not bad), "counterexamples": bad[:5]}

    # first moment: exact fraction of codes vs bound, needs two-code regime
    if not primitive:
        report["first_moment"] = {"status": "not_applicable", "reason": "NotTwoCodeRegime"}
    elif p ** q > budget:
        report["first_moment"] = skipped("p^q exceeds budget")
    else:
        try:
            d2, _ = batch_min_norm_sq(params, all_first_rows(params), budget)
            curve = moment_bound_curve(params)
            bad = []
            total = len(d2)
            sorted_d2 = np.sort(d2)
            for mb in curve:
                frac = Fraction(int(np.searchsorted(sorted_d2, mb.w_sq, side="right")), total)
                if not (frac <= mb.exact_expectation <= mb.paper_bound):
                    bad.append({"w2": mb.w_sq, "fraction": str(frac), "bound": str(mb.paper_bound)})
            report["first_moment"] = {"status": _status(not bad), "w_values": len(curve),
                                      "counterexamples": bad[:3]}
        except BudgetExceeded as exc:
            report["first_moment"] = skipped(str(exc))

    return report


def report_failed(report: dict) -> bool:
    return any(v.get("status") == "fail" for v in report.values())
