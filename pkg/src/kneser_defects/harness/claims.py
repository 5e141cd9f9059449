"""
Verification engine - checks chromatic/defect inequalities and reproduces the family values.

Every check computes both sides with the exact solvers. A claim passes only
when both sides were settled by exhaustive search; a budget cut-off on
either side makes it inconclusive.
"""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any, Callable, Mapping

from kneser_defects import DomainError, get_default_budget
from kneser_defects.chromatic import ChiResult, Coloring, chromatic_number_exact, is_proper_coloring
from kneser_defects.constructions import (
    Thm2Params,
    Thm3Params,
    closed_form_cd_complete,
    closed_form_chi_complete,
    complete_kneser_coloring,
    complete_uniform,
    thm2_chi_coloring,
    thm2_family,
    thm2_predicted,
    thm2_upper_certificate,
    thm3_family,
    thm3_predicted,
    thm3_upper_certificate,
)
from kneser_defects.defect import (
    DefectCertificate,
    DefectResult,
    cd_exact,
    defect_profile,
    ecd_exact,
    verify_certificate,
)
from kneser_defects.harness.report import Claim, Status, VerificationReport
from kneser_defects.hypergraph import Hypergraph, mask_of, min_edge_size
from kneser_defects.kneser import KneserSpec, build_kneser, lifted_adjacency_preserved

logger = logging.getLogger(__name__)

HOLDS = "holds"
VIOLATED = "violated"


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _kneser_chi(f: Hypergraph, r: int, s: int, budget: int | None) -> ChiResult:
    return chromatic_number_exact(build_kneser(f, KneserSpec(r=r, s=s)), budget=budget)


def _bound_claim(claim_id: str, params: dict[str, Any], chi: ChiResult,
                 defect: DefectResult, label: str) -> Claim:
    """Claim that chi >= ceil(defect / (r-1)), with `label` naming the defect side."""
    r = defect.r
    computed: dict[str, Any] = {"chi": chi.chi, label: defect.value}
    predicted = f"chi >= ceil({label} / {r - 1})"
    if not (chi.conclusive and defect.conclusive):
        computed.update(chi_bounds=[chi.lower_bound, chi.upper_bound],
                        defect_bounds=[defect.lower_bound, defect.upper_bound])
        return Claim(claim_id, params, predicted, computed, Status.INCONCLUSIVE,
                     "search budget exhausted")
    bound = _ceil_div(defect.value, r - 1)
    computed["bound"] = bound
    status = Status.PASS if chi.chi >= bound else Status.FAIL
    return Claim(claim_id, params, predicted, computed, status, f"{chi.chi} >= {bound}")


def check_aj_bound(f: Hypergraph, r: int, s: int, budget: int | None = None,
                   params: dict[str, Any] | None = None) -> Claim:
    """chi(KG^r(f,s)) >= ceil(ecd^r(f, floor(s/2)) / (r-1))."""
    if params is None:
        params = {"r": r, "s": s}
    chi = _kneser_chi(f, r, s, budget)
    ecd = ecd_exact(f, r, s // 2, budget=budget)
    return _bound_claim("AJ-bound", params, chi, ecd, f"ecd_at_{s // 2}")


def check_dk_bound(f: Hypergraph, r: int, budget: int | None = None,
                   params: dict[str, Any] | None = None) -> Claim:
    """chi(KG^r(f,0)) >= ceil(cd^r(f,0) / (r-1))."""
    if params is None:
        params = {"r": r, "s": 0}
    chi = _kneser_chi(f, r, 0, budget)
    cd = cd_exact(f, r, 0, budget=budget)
    return _bound_claim("DK-bound", params, chi, cd, "cd_at_0")


def _strengthened_claim(claim_id: str, params: dict[str, Any], r: int, x: int,
                        chi: ChiResult, cd: DefectResult, ecd: DefectResult,
                        expect: Mapping[str, str] | None) -> Claim:
    computed: dict[str, Any] = {"chi": chi.chi, "cd": cd.value, "ecd": ecd.value, "x": x}
    predicted: Any = dict(expect) if expect else "chi >= ceil(defect / (r-1)) at x"
    if not (chi.conclusive and cd.conclusive and ecd.conclusive):
        return Claim(claim_id, params, predicted, computed, Status.INCONCLUSIVE,
                     "search budget exhausted")

    outcome = {
        "cd": HOLDS if chi.chi >= _ceil_div(cd.value, r - 1) else VIOLATED,
        "ecd": HOLDS if chi.chi >= _ceil_div(ecd.value, r - 1) else VIOLATED,
    }
    computed["outcome"] = outcome
    detail = f"cd bound {outcome['cd']}, ecd bound {outcome['ecd']}"
    if not expect:
        return Claim(claim_id, params, predicted, computed, Status.PASS, detail)
    matches = all(outcome[side] == wanted for side, wanted in expect.items())
    return Claim(claim_id, params, predicted, computed,
                 Status.PASS if matches else Status.FAIL, detail)


def check_strengthened_bound(f: Hypergraph, r: int, s: int, x: int,
                             expect: Mapping[str, str] | None = None,
                             budget: int | None = None,
                             claim_id: str = "strengthened-bound",
                             params: dict[str, Any] | None = None) -> Claim:
    """Evaluate chi(KG^r(f,s)) >= ceil(cd^r(f,x)/(r-1)) and the ecd variant, recording holds/violated.

    Args:
        expect: Optional mapping side -> "holds"/"violated" ("cd", "ecd"); the
            claim passes iff every listed side matches. Without it, the claim
            passes once all values are computed.

    Raises:
        DomainError: If x is outside 0..s or expect names an unknown side/outcome.
    """
    if not 0 <= x <= s:
        raise DomainError(f"x must lie in 0..s={s}, got {x}")
    if expect:
        for side, wanted in expect.items():
            if side not in ("cd", "ecd") or wanted not in (HOLDS, VIOLATED):
                raise DomainError(f"Cannot expect {side}={wanted}")
    if params is None:
        params = {"r": r, "s": s, "x": x}
    chi = _kneser_chi(f, r, s, budget)
    cd = cd_exact(f, r, x, budget=budget)
    ecd = ecd_exact(f, r, x, budget=budget)
    return _strengthened_claim(claim_id, params, r, x, chi, cd, ecd, expect)


def _equality_claim(claim_id: str, params: dict[str, Any], predicted: int,
                    value: int | None, label: str) -> Claim:
    computed = {label: value}
    if value is None:
        return Claim(claim_id, params, predicted, computed, Status.INCONCLUSIVE,
                     "search budget exhausted")
    status = Status.PASS if value == predicted else Status.FAIL
    return Claim(claim_id, params, predicted, computed, status, f"{label}={value}")


def check_upper_certificate(claim_id: str, params: dict[str, Any], f: Hypergraph, s: int,
                            cert: DefectCertificate, predicted: int) -> Claim:
    """The certificate is valid at threshold s and its |X0| equals the predicted value."""
    valid = verify_certificate(f, s, cert)
    computed = {"valid": valid, "x0_size": cert.value, "part_sizes": cert.part_sizes()}
    status = Status.PASS if valid and cert.value == predicted else Status.FAIL
    return Claim(claim_id, params, predicted, computed, status,
                 "valid" if valid else "certificate rejected")


def check_coloring_certificate(claim_id: str, params: dict[str, Any], h: Hypergraph,
                               coloring: Coloring, predicted: int) -> Claim:
    """The coloring is proper on h and uses a palette of the predicted size."""
    proper = is_proper_coloring(h, coloring)
    computed = {"proper": proper, "palette_size": coloring.palette_size}
    status = Status.PASS if proper and coloring.palette_size == predicted else Status.FAIL
    return Claim(claim_id, params, predicted, computed, status,
                 "proper" if proper else "monochromatic edge found")


# --- Family grid ---

@dataclass(frozen=True)
class PaperGrid:
    """Parameter grid for reproduce_paper()."""

    name: str
    thm2: tuple[tuple[int, int, int], ...]      # (l, s, n)
    thm3: tuple[tuple[int, int], ...]           # (k, s), every l in s/2+1..s
    complete: tuple[tuple[int, int, int], ...]  # (r, k, n)
    max_chi_vertices: int = 35


def _complete_grid(rs: tuple[int, ...], ks: tuple[int, ...], max_n: int) -> tuple[tuple[int, int, int], ...]:
    return tuple(
        (r, k, n)
        for r in rs
        for k in ks
        for n in range(r * (k - 1) + 1, max_n + 1)
    )


GRIDS = {
    "small": PaperGrid(
        name="small",
        thm2=((2, 1, 2), (3, 1, 2)),
        thm3=((1, 2), (2, 2)),
        complete=_complete_grid((2,), (1, 2), 5),
        max_chi_vertices=10,
    ),
    "full": PaperGrid(
        name="full",
        thm2=tuple((l, s, n) for l in (2, 3) for s in (1, 2) for n in (2, 3)),
        thm3=tuple((k, s) for k in (1, 2, 3) for s in (2, 4)),
        complete=_complete_grid((2, 3), (1, 2, 3), 7),
        max_chi_vertices=35,
    ),
}


def thm2_claims(l: int, s: int, n: int, budget: int | None) -> list[Claim]:
    """All claims about the tail-extended complete family at (l, s, n)."""
    p = Thm2Params(l=l, s=s, n=n)
    f = thm2_family(p)
    params = {"l": l, "s": s, "n": n}
    chi_pred, ecd_pred = thm2_predicted(p)

    kneser = build_kneser(f, KneserSpec(r=2, s=s))
    chi = chromatic_number_exact(kneser, budget=budget)
    cd = cd_exact(f, 2, s, budget=budget)
    ecd = ecd_exact(f, 2, s, budget=budget)
    ecd_half = ecd_exact(f, 2, s // 2, budget=budget)
    base = complete_uniform(p.base_size, n)
    lifted = lifted_adjacency_preserved(base, f, s)

    return [
        _equality_claim("thm2-chi", params, chi_pred, chi.chi, "chi"),
        _equality_claim("thm2-ecd", params, ecd_pred, ecd.value, "ecd"),
        check_upper_certificate("thm2-certificate", params, f, s, thm2_upper_certificate(p), ecd_pred),
        check_coloring_certificate("thm2-coloring", params, kneser, thm2_chi_coloring(p), chi_pred),
        Claim("thm2-lift", params, True, {"preserved": lifted},
              Status.PASS if lifted else Status.FAIL,
              "KG^2(K,0) and KG^2(F,s) share their edges"),
        _strengthened_claim("thm2-counterexample", params, 2, s, chi, cd, ecd, {"ecd": VIOLATED}),
        _bound_claim("AJ-bound", {"family": "thm2", **params}, chi, ecd_half, f"ecd_at_{s // 2}"),
    ]


def thm3_claims(k: int, s: int, budget: int | None) -> list[Claim]:
    """All claims about the disjoint-blocks family at (k, s), for every threshold l in range."""
    p = Thm3Params(k=k, s=s)
    f = thm3_family(p)
    kneser = build_kneser(f, KneserSpec(r=2, s=s))
    chi = chromatic_number_exact(kneser, budget=budget)
    ecd_half = ecd_exact(f, 2, s // 2, budget=budget)

    claims = [
        _equality_claim("thm3-chi", {"k": k, "s": s}, k, chi.chi, "chi"),
        _bound_claim("AJ-bound", {"family": "thm3", "k": k, "s": s}, chi, ecd_half, f"ecd_at_{s // 2}"),
    ]
    for l in p.thresholds():
        params = {"k": k, "s": s, "l": l}
        _, cd_pred, ecd_pred = thm3_predicted(p, l)
        cd = cd_exact(f, 2, l, budget=budget)
        ecd = ecd_exact(f, 2, l, budget=budget)
        claims.extend([
            _equality_claim("thm3-cd", params, cd_pred, cd.value, "cd"),
            _equality_claim("thm3-ecd", params, ecd_pred, ecd.value, "ecd"),
            check_upper_certificate("thm3-certificate", params, f, l,
                                    thm3_upper_certificate(p, l), ecd_pred),
            _strengthened_claim("thm3-counterexample", params, 2, l, chi, cd, ecd, {"cd": VIOLATED}),
        ])
    return claims


def complete_claims(r: int, k: int, n: int, budget: int | None, max_chi_vertices: int) -> list[Claim]:
    """Closed forms for K_n^k at s = 0: the defect always, chi when C(n,k) is small enough."""
    f = complete_uniform(n, k)
    params = {"r": r, "k": k, "n": n}
    cd = cd_exact(f, r, 0, budget=budget)
    claims = [_equality_claim("complete-cd", params, closed_form_cd_complete(n, k, r), cd.value, "cd")]

    if f.n_edges <= max_chi_vertices:
        kneser = build_kneser(f, KneserSpec(r=r, s=0))
        chi = chromatic_number_exact(kneser, budget=budget)
        chi_pred = closed_form_chi_complete(n, k, r)
        claims.extend([
            _equality_claim("complete-chi", params, chi_pred, chi.chi, "chi"),
            check_coloring_certificate("complete-coloring", params, kneser,
                                       complete_kneser_coloring(n, k, r), chi_pred),
            _bound_claim("DK-bound", {"family": "complete", **params}, chi, cd, "cd_at_0"),
        ])
    return claims


def _run_tasks(tasks: list[Callable[[], Any]], jobs: int) -> list[Any]:
    if jobs <= 1:
        return [task() for task in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(task) for task in tasks]
        return [future.result() for future in futures]


def reproduce_paper(grid: PaperGrid | str = "small", budget: int | None = None,
                    jobs: int = 1) -> VerificationReport:
    """Recompute every family value and closed form on the grid and compare with the predictions."""
    if isinstance(grid, str):
        if grid not in GRIDS:
            raise DomainError(f"Unknown grid '{grid}', expected one of {sorted(GRIDS)}")
        grid = GRIDS[grid]
    if budget is None:
        budget = get_default_budget()

    started = time.perf_counter()
    tasks: list[Callable[[], list[Claim]]] = []
    tasks += [partial(thm2_claims, l, s, n, budget) for l, s, n in grid.thm2]
    tasks += [partial(thm3_claims, k, s, budget) for k, s in grid.thm3]
    tasks += [partial(complete_claims, r, k, n, budget, grid.max_chi_vertices)
              for r, k, n in grid.complete]

    report = VerificationReport(
        kind="paper",
        metadata={"grid": grid.name, "budget": budget},
    )
    for claims in _run_tasks(tasks, jobs):
        report.claims.extend(claims)
    report.sort_claims()
    report.elapsed_seconds = time.perf_counter() - started
    logger.info("paper grid '%s': %s", grid.name, report.summary())
    return report


# --- Fuzzing ---

def random_hypergraph(rng: random.Random, max_n: int, max_edges: int, s: int) -> Hypergraph:
    """n uniform in 1..max_n, then 1..max_edges edges with sizes uniform in s+1..n (none if n <= s)."""
    n = rng.randint(1, max_n)
    if n <= s:
        return Hypergraph(n, ())
    m = rng.randint(1, max_edges)
    edges = []
    for _ in range(m):
        size = rng.randint(s + 1, n)
        edges.append(mask_of(rng.sample(range(n), size)))
    return Hypergraph(n, tuple(edges))


@dataclass(frozen=True)
class FuzzInstance:
    trial: int
    f: Hypergraph
    r: int
    s: int


def fuzz_instances(seed: int, trials: int, max_n: int, max_edges: int = 8,
                   r_range: tuple[int, ...] = (2, 3),
                   s_range: tuple[int, int] = (0, 2)) -> list[FuzzInstance]:
    """The deterministic instance list for a seed."""
    rng = random.Random(seed)
    instances = []
    for trial in range(trials):
        r = rng.choice(r_range)
        s = rng.randint(*s_range)
        instances.append(FuzzInstance(trial, random_hypergraph(rng, max_n, max_edges, s), r, s))
    return instances


def _chain_claim(claim_id: str, params: dict[str, Any], values: list[int | None],
                 predicted: str) -> Claim:
    computed = {"values": values}
    if any(v is None for v in values):
        return Claim(claim_id, params, predicted, computed, Status.INCONCLUSIVE,
                     "search budget exhausted")
    ok = all(a <= b for a, b in zip(values, values[1:]))
    return Claim(claim_id, params, predicted, computed, Status.PASS if ok else Status.FAIL,
                 "non-decreasing" if ok else "decrease found")


def fuzz_instance_claims(instance: FuzzInstance, budget: int | None) -> tuple[list[Claim], bool]:
    """Claims for one fuzz instance, plus whether ecd grew when r grew (an experiment, not a claim)."""
    f, r, s = instance.f, instance.r, instance.s
    params = {"trial": instance.trial, "n": f.n_vertices, "edges": f.n_edges, "r": r, "s": s}

    # An edgeless instance admits every threshold
    max_s = min_edge_size(f) - 1 if f.edges else s
    cds = defect_profile(f, r, budget=budget, max_s=max_s)
    ecds = defect_profile(f, r, equitable=True, budget=budget, max_s=max_s)
    cd_values = [res.value for res in cds]
    ecd_values = [res.value for res in ecds]

    chi = _kneser_chi(f, r, s, budget)
    claims = [_bound_claim("AJ-bound", params, chi, ecds[s // 2], f"ecd_at_{s // 2}")]
    if s == 0:
        claims.append(_bound_claim("DK-bound", params, chi, cds[0], "cd_at_0"))

    pairs = list(zip(cd_values, ecd_values))
    if any(v is None for pair in pairs for v in pair):
        ge_status, ge_detail = Status.INCONCLUSIVE, "search budget exhausted"
    elif all(e >= c for c, e in pairs):
        ge_status, ge_detail = Status.PASS, "ecd >= cd at every threshold"
    else:
        ge_status, ge_detail = Status.FAIL, "ecd < cd found"
    claims.append(Claim("ecd-ge-cd", params, "ecd >= cd at every legal s",
                        {"cd": cd_values, "ecd": ecd_values}, ge_status, ge_detail))
    claims.append(_chain_claim("cd-s-monotone", params, cd_values, "cd non-decreasing in s"))
    claims.append(_chain_claim("ecd-s-monotone", params, ecd_values, "ecd non-decreasing in s"))

    cd_wider = cd_exact(f, r + 1, s, budget=budget)
    claims.append(_chain_claim("cd-r-monotone", params, [cd_wider.value, cd_values[s]],
                               f"cd^{r + 1} <= cd^{r} at s"))

    ecd_wider = ecd_exact(f, r + 1, s, budget=budget)
    increased = (ecd_wider.conclusive and ecds[s].conclusive
                 and ecd_wider.value > ecds[s].value)
    if increased:
        logger.info("trial %d: ecd^%d=%d exceeds ecd^%d=%d at s=%d",
                    instance.trial, r + 1, ecd_wider.value, r, ecds[s].value, s)
    return claims, increased


def fuzz_corpus(seed: int, trials: int, max_n: int, max_edges: int = 8,
                r_range: tuple[int, ...] = (2, 3), s_range: tuple[int, int] = (0, 2),
                budget: int | None = None, jobs: int = 1) -> VerificationReport:
    """Check the general inequalities and monotonicity chains on seeded random hypergraphs."""
    if budget is None:
        budget = get_default_budget()
    started = time.perf_counter()
    instances = fuzz_instances(seed, trials, max_n, max_edges, r_range, s_range)
    tasks = [partial(fuzz_instance_claims, instance, budget) for instance in instances]

    report = VerificationReport(kind="fuzz", metadata={})
    increases = 0
    for claims, increased in _run_tasks(tasks, jobs):
        report.claims.extend(claims)
        increases += increased
    report.sort_claims()
    report.metadata = {
        "seed": seed,
        "trials": trials,
        "max_n": max_n,
        "max_edges": max_edges,
        "r_range": list(r_range),
        "s_range": list(s_range),
        "budget": budget,
        "ecd_r_increase_observed": increases,
    }
    report.elapsed_seconds = time.perf_counter() - started
    logger.info("fuzz seed=%d trials=%d: %s", seed, trials, report.summary())
    return report


def single_claim_report(claim: Claim, metadata: dict[str, Any], started: float) -> VerificationReport:
    """Wrap one claim from the `verify aj` / `verify strengthened` commands."""
    report = VerificationReport(kind="single", metadata=metadata, claims=[claim])
    report.elapsed_seconds = time.perf_counter() - started
    return report

