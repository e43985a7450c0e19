"""Verification suites over prime sweeps.

Each suite binds one family of claims to the computational operations and
emits self-auditing cases; ineffective-constant claims (anything that would
need an unknown constant) are recorded as report-only metadata, never
pass/fail.  Per-prime work runs on a thread pool sized by the
SUMFREEFP_THREADS environment variable (default: available parallelism);
results are merged in (p, n, case_id) order, so the thread count never
affects the artifact.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from ._version import __version__
from .characters import Character, dual_characters, gauss_sum, interval_char_sum, twisted_exp_sum
from .discrepancy import (
    delta_table,
    delta_via_series,
    dilation_averages_all,
    even_char_sum_bound,
    folded_energy_identity,
    coset_profile,
    parseval_discrepancy,
    weighted_parseval,
)
from .errors import InvalidConfig, UnknownSuite
from .fourier import bohr_set, dft, spectrum, subgroup_transform_max, wiener_norms
from .lfunctions import (
    CHI3,
    CHI8,
    cos_eighth_identity_max_error,
    l_one_times_small,
    legendre_third_identity,
    legendre_third_via_rho,
    legendre_prefix_sum,
    legendre_prefix_sum_via_L,
    ProductCharacter,
)
from .modp import (
    MAX_PRIME,
    build_context,
    divisors,
    eighths_interval,
    primes_in_range,
    subgroup_of_index,
    thirds_interval,
)
from .report import Case, VerificationReport, bound_case, equality_case, report_case
from .rng import stream
from .sumfree import EXACT_CAPS, sf_dilation_bound, sf_exact, sigma_averages

SUITES = ("lemma31", "thm32", "prop41", "thm43", "sf_gamma", "wiener", "identities")

_TAG = {name: 101 + i for i, name in enumerate(SUITES)}

DEFAULT_TOLERANCES = {
    "lemma31": 0.0,
    "thm32": 0.0,
    "prop41": 1e-5,
    "thm43": 1e-4,
    "sf_gamma": 0.0,
    "wiener": 1e-9,
    "identities": 1e-9,
}

_SERIES_TOL = 1e-6
_LOG2 = math.log(2.0)


def _log2(x: float) -> float:
    return math.log(x) / _LOG2


@dataclass
class SweepConfig:
    """Sweep parameters; also the per-suite run configuration."""

    p_min: int = 5
    p_max: int = 101
    residue: tuple[int, int] | None = None
    indices: tuple[int, ...] | None = None
    max_index: int = 12
    suites: tuple[str, ...] = SUITES
    tolerances: dict = field(default_factory=dict)
    out: Path | None = None
    seed: int = 0
    plots: bool = False
    cases_per_prime: int = 8
    sf_cap: int = EXACT_CAPS[2]
    wiener_coset_pmax: int = 101

    def validate(self) -> None:
        if self.p_min > self.p_max:
            raise InvalidConfig(f"p_min {self.p_min} > p_max {self.p_max}")
        if self.p_max > MAX_PRIME:
            raise InvalidConfig(f"p_max {self.p_max} exceeds the cap {MAX_PRIME}")
        if self.indices is not None and any(n < 1 for n in self.indices):
            raise InvalidConfig("subgroup indices must be >= 1")
        for s in self.suites:
            if s not in SUITES:
                raise UnknownSuite(f"unknown suite {s!r}")
        if self.cases_per_prime < 0:
            raise InvalidConfig("cases_per_prime must be >= 0")


def worker_count() -> int:
    env = os.environ.get("SUMFREEFP_THREADS", "").strip()
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InvalidConfig(f"SUMFREEFP_THREADS={env!r} is not an integer")
    return os.cpu_count() or 1


def _indices_for(p: int, cfg: SweepConfig) -> list[int]:
    if cfg.indices is not None:
        return [n for n in sorted(set(cfg.indices)) if (p - 1) % n == 0]
    return [n for n in divisors(p - 1) if n <= cfg.max_index]


def _strict_positive_case(case_id: str, p: int, n: int, value: float,
                          metadata: dict) -> Case:
    return Case(case_id=case_id, p=p, n=n, lhs=float(value), rhs=0.0,
                abs_err=max(0.0, -float(value)), tol=0.0,
                passed=bool(value > 0), metadata=metadata)


def _draw_set(cfg: SweepConfig, suite: str, p: int, *keys: int,
              max_size: int = 16) -> tuple[int, ...]:
    rng = stream(cfg.seed, _TAG[suite], p, *keys)
    hi = min(max_size, p - 1)
    size = 4 + rng.below(max(1, hi - 3)) if hi > 4 else hi
    return rng.subset(p, size)


# ---------------------------------------------------------------------------
# suite: lemma31 — interval deficits of the quadratic residues


def _lemma31_cases(p: int, cfg: SweepConfig, tol: float) -> list[Case]:
    ctx = build_context(p)
    if p % 4 == 1:
        iv = thirds_interval(p)
        q_count = sum(1 for x in iv.members if ctx.legendre(x) == 1)
        deficit = iv.size / 2.0 - q_count
        md = {"interval": "thirds", "q_count": q_count, "size": iv.size,
              "residue_class": 1, "ratio_sqrt_p": deficit / math.sqrt(p)}
        return [_strict_positive_case("I_deficit", p, 2, deficit, md)]
    iv = eighths_interval(p)
    q_count = sum(1 for x in iv.members if ctx.legendre(x) == 1)
    n_count = iv.size - q_count
    deficit = iv.size / 2.0 - n_count
    md = {"interval": "eighths", "q_count": q_count, "n_count": n_count,
          "size": iv.size, "residue_class": 3,
          "ratio_sqrt_p": deficit / math.sqrt(p)}
    return [_strict_positive_case("J_deficit", p, 2, deficit, md)]


# ---------------------------------------------------------------------------
# suite: thm32 — dilation averages against the sum-free maximum


def _thm32_cases(p: int, cfg: SweepConfig, tol: float) -> list[Case]:
    ctx = build_context(p)
    cases = []
    for i in range(cfg.cases_per_prime):
        A = _draw_set(cfg, "thm32", p, i)
        rep = sf_exact(p, A, 2)
        s1, s2 = sigma_averages(ctx, A)
        smax = max(s1, s2)
        char_sum = abs(sum(ctx.legendre(a) for a in A))
        psi = float(rep.psi)
        md = {
            "set_size": len(A),
            "sigma1": float(s1),
            "sigma2": float(s2),
            "abs_char_sum": char_sum,
            "psi": psi,
            "psi_sqrt_p": psi * math.sqrt(p),
            "charsum_over_psi_sqrt_p": (char_sum / (psi * math.sqrt(p))) if psi > 0 else None,
            "exact": True,
            "flagged_residue_3_mod_4": p % 4 == 3,
        }
        cases.append(bound_case(f"A{i}", p, 2, float(smax), float(rep.value),
                                tol=0.0, extra_ok=(smax <= rep.value), metadata=md))
    return cases


# ---------------------------------------------------------------------------
# suite: prop41 — discrepancy Parseval identity and series reconstruction


def _prop41_cases(p: int, cfg: SweepConfig, tol: float) -> list[Case]:
    ctx = build_context(p)
    cases = []
    for n in _indices_for(p, cfg):
        sub = subgroup_of_index(ctx, n)
        table = delta_table(sub, thirds_interval(p))
        exact = [float(d) for d in table.deltas()]
        series = delta_via_series(sub)
        series_err = max((abs(a - b) for a, b in zip(exact, series)), default=0.0)
        lhs_frac, rhs = parseval_discrepancy(sub)
        lhs = float(lhs_frac)
        nums = table.numerators()
        signs_ok = all(v == 0 for v in nums) or (max(nums) > 0 and min(nums) < 0)
        lg = _log2(p)
        md = {
            "series_max_err": series_err,
            "signs_ok": signs_ok,
            "delta_max": max(exact),
            "delta_min": min(exact),
            "ratio_lower_sum_log2sq_over_p": lhs * lg * lg / p,
            "ratio_upper_sum_over_p_log2sq": lhs / (p * lg * lg),
            "ratio_sum_over_p_pow_0_9": lhs / p ** 0.9,
        }
        cases.append(equality_case(f"n{n}", p, n, lhs, rhs, tol,
                                   extra_ok=(series_err <= _SERIES_TOL and signs_ok),
                                   metadata=md))
    return cases


# ---------------------------------------------------------------------------
# suite: thm43 — the exact identity chain for arbitrary subgroups


def _thm43_cases(p: int, cfg: SweepConfig, tol: float) -> list[Case]:
    ctx = build_context(p)
    interval = thirds_interval(p)
    cases = []
    for n in _indices_for(p, cfg):
        sub = subgroup_of_index(ctx, n)
        for i in range(cfg.cases_per_prime):
            A = _draw_set(cfg, "thm43", p, n, i)
            pairs = dilation_averages_all(A, sub, interval)
            dil_ok = all(l == r for l, r in pairs)
            f_lhs, f_rhs = folded_energy_identity(A, sub)
            folded_err = abs(f_lhs - float(f_rhs))
            w_lhs, w_rhs = weighted_parseval(A, sub)
            w_lhs_f = float(w_lhs)
            w_tol = tol * max(1.0, abs(w_lhs_f))
            even_margin = None
            even_ok = True
            for eta in dual_characters(sub):
                if not eta.is_even:
                    continue
                b_lhs, b_rhs = even_char_sum_bound(A, sub, eta)
                margin = b_rhs - b_lhs
                even_margin = margin if even_margin is None else min(even_margin, margin)
                even_ok &= b_lhs <= b_rhs + 1e-6
            prof = coset_profile(A, sub)
            l2_stat = float(Fraction(sum(v * v for v in prof.folded_numerators()), n * n))
            rep = sf_exact(p, A, 2)
            psi = float(rep.psi)
            md = {
                "set_size": len(A),
                "dilation_exact": dil_ok,
                "folded_err": folded_err,
                "even_bound_min_margin": even_margin,
                "l2_folded_stat": l2_stat,
                "psi_sq_p": psi * psi * p,
                "l2_over_psi_sq_p": (l2_stat / (psi * psi * p)) if psi > 0 else None,
            }
            extra = dil_ok and folded_err <= 1e-6 and even_ok
            cases.append(equality_case(f"n{n}A{i}", p, n, w_lhs_f, w_rhs, w_tol,
                                       extra_ok=extra, metadata=md))
    return cases


# ---------------------------------------------------------------------------
# suite: sf_gamma — exact sum-free maxima of whole subgroups


def _sf_gamma_cases(p: int, cfg: SweepConfig, tol: float) -> list[Case]:
    ctx = build_context(p)
    interval = thirds_interval(p)
    cases = []
    for n in _indices_for(p, cfg):
        d = (p - 1) // n
        if d > cfg.sf_cap:
            cases.append(report_case(f"n{n}", p, n, 0.0,
                                     metadata={"skipped": f"|Gamma| = {d} exceeds exact cap {cfg.sf_cap}"}))
            continue
        members = sorted(subgroup_of_index(ctx, n).members)
        rep = sf_exact(p, members, 2)
        dil_value, _, _ = sf_dilation_bound(p, members, interval)
        md = {
            "gamma_size": d,
            "ratio": rep.value / d,
            "dilation_value": dil_value,
            "psi": float(rep.psi),
            "m": p / d,
        }
        if n >= 2 and p <= 2048:
            lg = _log2(p)
            tau = _log2(max(lg, 2.0)) / math.sqrt(lg)
            tau_eff = min(tau, 1.0)  # spectrum is defined for tau in (0, 1]
            spec = spectrum(p, members, tau_eff)
            bohr = bohr_set(p, spec, tau_eff)
            mm = p / d
            lgm = _log2(mm)
            md.update({
                "tau": tau,
                "spec_size": len(spec),
                "bohr_size": len(bohr),
                "log2_bohr_size_floor": (
                    (lgm / tau ** 2) * _log2(tau / lgm) + lg if lgm > 0 and tau < lgm else None
                ),
            })
        cases.append(bound_case(f"n{n}", p, n, float(rep.value), (p + 1) / 3.0,
                                tol=0.0, extra_ok=(dil_value <= rep.value), metadata=md))
    return cases


# ---------------------------------------------------------------------------
# suite: wiener — Wiener norms and the coset-deviation inequality


def _wiener_cases(p: int, cfg: SweepConfig, tol: float) -> list[Case]:
    ctx = build_context(p)
    q_sub = subgroup_of_index(ctx, 2)
    w, rw = wiener_norms(p, q_sub.members)
    cases = []
    if p % 4 == 3:
        cases.append(Case(case_id="qnorm", p=p, n=2, lhs=rw, rhs=1.0,
                          abs_err=max(0.0, rw - 1.0), tol=0.0, passed=bool(rw < 1.0),
                          metadata={"w": w, "rw": rw, "residue_class": 3}))
    else:
        cases.append(equality_case("qnorm_sym", p, 2, rw, w, tol,
                                   metadata={"w": w, "rw": rw, "residue_class": 1}))
    if p <= cfg.wiener_coset_pmax:
        for i in range(cfg.cases_per_prime):
            rng = stream(cfg.seed, _TAG["wiener"], p, i)
            size = 1 + rng.below(p - 1)
            A = rng.subset(p, size)
            wA = wiener_norms(p, A)[0]
            arr = np.array(A, dtype=np.int64)
            worst = -math.inf
            for n in _indices_for(p, cfg):
                sub = subgroup_of_index(ctx, n)
                gmax = subgroup_transform_max(sub)
                counts = np.bincount(sub.coset_of[arr], minlength=n)
                mean = len(A) * sub.d / p
                dev = float(np.max(np.abs(counts - mean)))
                worst = max(worst, dev - wA * gmax)
            cases.append(Case(case_id=f"coset_A{i}", p=p, n=0, lhs=worst, rhs=0.0,
                              abs_err=max(0.0, worst), tol=1e-6,
                              passed=bool(worst <= 1e-6),
                              metadata={"set_size": size, "wiener_norm": wA}))
    return cases


# ---------------------------------------------------------------------------
# suite: identities — character / L-value / Fourier invariant batteries


def _sample_ts(p: int) -> list[int]:
    if p <= 101:
        return list(range(1, p - 1))
    half = (p - 1) // 2
    picks = {1, 2, 3, 5, half - 1, half, half + 1, p - 3, p - 2}
    return sorted(t for t in picks if 1 <= t <= p - 2)


def _identities_cases(p: int, cfg: SweepConfig, tol: float) -> list[Case]:
    ctx = build_context(p)
    sqrt_p = math.sqrt(p)
    ts = _sample_ts(p)
    cases = []

    orth = max(abs(complex(np.sum(Character(ctx, t).values()))) for t in ts)
    cases.append(equality_case("orthogonality", p, 0, orth, 0.0, tol,
                               metadata={"t_count": len(ts)}))

    gerr = max(abs(abs(gauss_sum(Character(ctx, t))) - sqrt_p) for t in ts)
    cases.append(equality_case("gauss_modulus", p, 0, gerr, 0.0, tol,
                               metadata={"t_count": len(ts)}))

    ms = list(range(p)) if p <= 61 else sorted({0, 1, 2, 3, (p - 1) // 2, p - 2, p - 1})
    terr = 0.0
    for t in ts:
        chi = Character(ctx, t)
        g = gauss_sum(chi)
        conj_vals = chi.conj().values()
        for m in ms:
            terr = max(terr, abs(twisted_exp_sum(chi, m) - conj_vals[m] * g))
    cases.append(equality_case("twisted", p, 0, terr, 0.0, tol,
                               metadata={"t_count": len(ts), "m_count": len(ms)}))

    iv3 = thirds_interval(p)
    iv8 = eighths_interval(p)
    from .lfunctions import interval_sum_via_L

    ierr3 = ierr8 = 0.0
    for t in ts:
        chi = Character(ctx, t)
        direct3 = interval_char_sum(chi, iv3)
        ierr3 = max(ierr3, abs(direct3 - interval_sum_via_L(chi, iv3)))
        if not chi.is_even:
            direct8 = interval_char_sum(chi, iv8)
            ierr8 = max(ierr8, abs(direct8 - interval_sum_via_L(chi, iv8)))
    cases.append(equality_case("interval_thirds_via_L", p, 0, ierr3, 0.0, _SERIES_TOL))
    cases.append(equality_case("interval_eighths_via_L", p, 0, ierr8, 0.0, _SERIES_TOL))

    lhs, rhs = legendre_third_identity(ctx)
    if p % 4 == 1:
        cases.append(equality_case("legendre_third", p, 0, float(lhs), rhs, _SERIES_TOL,
                                   metadata={"form": "L(1, rho*chi3)"}))
    else:
        via_rho = legendre_third_via_rho(ctx)
        cases.append(equality_case("legendre_third", p, 0, float(lhs), via_rho, _SERIES_TOL,
                                   metadata={"form": "L(1, rho), p = 3 mod 4",
                                             "rho_chi3_rhs": rhs}))
        serr = max(abs(legendre_prefix_sum(ctx, a, 3) - legendre_prefix_sum_via_L(ctx, a, 3))
                   for a in (1, 2))
        cases.append(equality_case("prefix_expansion", p, 0, serr, 0.0, _SERIES_TOL))

    perr = 0.0
    for i in range(cfg.cases_per_prime):
        rng = stream(cfg.seed, _TAG["identities"], p, i)
        f = np.array([rng.unit() for _ in range(p)])
        energy = float(np.sum(f * f))
        fhat = dft(f)
        transform_side = float(np.sum(np.abs(fhat) ** 2)) / p
        perr = max(perr, abs(energy - transform_side) / max(1.0, energy))
    cases.append(equality_case("parseval_relative", p, 0, perr, 0.0, tol,
                               metadata={"functions": cfg.cases_per_prime}))

    gmax = max(subgroup_transform_max(subgroup_of_index(ctx, n))
               for n in divisors(p - 1))
    cases.append(bound_case("subgroup_transform_bound", p, 0, gmax, sqrt_p, tol=tol))

    rho = Character(ctx, (p - 1) // 2)
    lq3 = abs(l_one_times_small(rho, CHI3))
    lq8 = abs(l_one_times_small(rho, CHI8))
    cases.append(report_case("l_envelope", p, 0,
                             max(lq3 / (2 + math.log(3 * p)), lq8 / (2 + math.log(8 * p))),
                             metadata={"abs_L_rho_chi3": lq3, "abs_L_rho_chi8": lq8,
                                       "positivity": bool(
                                           l_one_times_small(rho, CHI3).real > 0
                                           and l_one_times_small(rho, CHI8).real > 0)}))
    return cases


_BUILDERS = {
    "lemma31": _lemma31_cases,
    "thm32": _thm32_cases,
    "prop41": _prop41_cases,
    "thm43": _thm43_cases,
    "sf_gamma": _sf_gamma_cases,
    "wiener": _wiener_cases,
    "identities": _identities_cases,
}


def run_suite(name: str, config: SweepConfig) -> VerificationReport:
    """Run one suite over the configured prime range and return its report."""
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite {name!r}")
    config.validate()
    tol = config.tolerances.get(name, DEFAULT_TOLERANCES[name])
    primes = primes_in_range(max(5, config.p_min), config.p_max, config.residue)
    builder = _BUILDERS[name]

    def for_prime(p: int) -> list[Case]:
        return builder(p, config, tol)

    workers = worker_count()
    if workers > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(for_prime, primes))
    else:
        chunks = [for_prime(p) for p in primes]
    cases = [c for chunk in chunks for c in chunk]
    cases.sort(key=lambda c: (c.p, c.n, c.case_id))
    if name == "identities" and primes:
        cases.insert(0, equality_case("cos_eighth_identity", 0, 0,
                                      cos_eighth_identity_max_error(), 0.0, tol,
                                      metadata={"cases": 16}))
    provenance = {
        "package": "sumfreefp",
        "version": __version__,
        "suite": name,
        "p_min": config.p_min,
        "p_max": config.p_max,
        "residue": f"{config.residue[0]} mod {config.residue[1]}" if config.residue else None,
        "indices": list(config.indices) if config.indices else None,
        "max_index": config.max_index,
        "seed": config.seed,
        "cases_per_prime": config.cases_per_prime,
        "tolerance": tol,
    }
    return VerificationReport(suite=name, provenance=provenance, cases=cases)


def sweep(config: SweepConfig) -> tuple[int, list[VerificationReport], list[Path]]:
    """Run all configured suites, write artifacts, return (exit, reports, paths).

    Exit status: 0 when every case passes, 1 otherwise.
    """
    config.validate()
    reports = [run_suite(name, config) for name in config.suites]
    paths: list[Path] = []
    if config.out is not None:
        from .report import report_to_csv, report_to_json

        outdir = Path(config.out)
        outdir.mkdir(parents=True, exist_ok=True)
        csv_path = outdir / "report.csv"
        csv_path.write_text(report_to_csv(reports))
        json_path = outdir / "report.json"
        json_path.write_text(report_to_json(reports))
        paths = [csv_path, json_path]
        if config.plots:
            from .plots import render_report_figures

            paths.extend(render_report_figures(reports, outdir))
    status = 0 if all(r.all_passed for r in reports) else 1
    return status, reports, paths


def parse_config_file(path: str | Path) -> SweepConfig:
    """Plain key=value config ('#' comments allowed).  Keys: p_min, p_max,
    residue ('1 mod 4'), indices ('2,3,6'), max_index, suites, seed, out,
    plots, cases_per_prime, sf_cap, tol.<suite>."""
    cfg = SweepConfig()
    tolerances: dict = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InvalidConfig(f"cannot read config {path}: {exc}")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        try:
            if key == "p_min":
                cfg = replace(cfg, p_min=int(value))
            elif key == "p_max":
                cfg = replace(cfg, p_max=int(value))
            elif key == "residue":
                parts = value.replace("mod", " ").split()
                cfg = replace(cfg, residue=(int(parts[0]), int(parts[1])))
            elif key == "indices":
                cfg = replace(cfg, indices=tuple(int(v) for v in value.split(",") if v.strip()))
            elif key == "max_index":
                cfg = replace(cfg, max_index=int(value))
            elif key == "suites":
                cfg = replace(cfg, suites=tuple(s.strip() for s in value.split(",") if s.strip()))
            elif key == "seed":
                cfg = replace(cfg, seed=int(value))
            elif key == "out":
                cfg = replace(cfg, out=Path(value))
            elif key == "plots":
                cfg = replace(cfg, plots=value.lower() in ("1", "true", "yes", "on"))
            elif key == "cases_per_prime":
                cfg = replace(cfg, cases_per_prime=int(value))
            elif key == "sf_cap":
                cfg = replace(cfg, sf_cap=int(value))
            elif key == "wiener_coset_pmax":
                cfg = replace(cfg, wiener_coset_pmax=int(value))
            elif key.startswith("tol."):
                tolerances[key[4:]] = float(value)
            else:
                raise InvalidConfig(f"{path}:{lineno}: unknown key {key!r}")
        except (ValueError, IndexError):
            raise InvalidConfig(f"{path}:{lineno}: bad value for {key!r}: {value!r}")
    cfg = replace(cfg, tolerances=tolerances)
    cfg.validate()
    return cfg
