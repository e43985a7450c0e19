"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance is pinned here, nothing is deferred.
"""

import math
import time

import numpy as np
import pytest

from conftest import brute_force_sf, seeded_set
from sumfreefp.characters import (
    Character,
    dual_characters,
    interval_char_sum,
    legendre_character,
)
from sumfreefp.discrepancy import (
    delta_table,
    delta_via_series,
    dilation_averages_all,
    even_char_sum_bound,
    folded_energy_identity,
    parseval_discrepancy,
    weighted_parseval,
)
from sumfreefp.fourier import (
    dft,
    indicator,
    schur_count,
    schur_count_via_transform,
    subgroup_transform_max,
    wiener_norms,
)
from sumfreefp.lfunctions import (
    CHI8,
    ProductCharacter,
    interval_sum_via_L,
    l_one,
    legendre_third_identity,
    legendre_third_via_rho,
)
from sumfreefp.modp import (
    build_context,
    divisors,
    eighths_interval,
    primes_in_range,
    subgroup_of_index,
    thirds_interval,
)
from sumfreefp.rng import stream
from sumfreefp.suites import SweepConfig, run_suite
from sumfreefp.sumfree import is_solution_free, sf_exact, sigma_averages

Q13 = (1, 3, 4, 9, 10, 12)
SEED = 20260811


def _line(num: int, ok: bool, detail: str) -> None:
    print(f"[acceptance] criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def discrepancy_sweep():
    """Shared sweep for criteria 1 and 2: all p <= 500, n | p-1, n <= 12."""
    t0 = time.monotonic()
    rows = []
    for p in primes_in_range(5, 500):
        ctx = build_context(p)
        for n in [n for n in divisors(p - 1) if n <= 12]:
            sub = subgroup_of_index(ctx, n)
            lhs, rhs = parseval_discrepancy(sub)
            exact = [float(d) for d in delta_table(sub, thirds_interval(p)).deltas()]
            series = delta_via_series(sub)
            series_err = max(abs(a - b) for a, b in zip(exact, series))
            rows.append((p, n, float(lhs), rhs, series_err, exact))
    return rows, time.monotonic() - t0


def test_criterion_1_parseval_discrepancy(discrepancy_sweep):
    rows, elapsed = discrepancy_sweep
    by_key = {(p, n): (lhs, rhs) for p, n, lhs, rhs, _, _ in rows}
    fix13 = by_key[(13, 2)]
    fix5 = by_key[(5, 2)]
    worst = max(abs(lhs - rhs) for _, _, lhs, rhs, _, _ in rows)
    ok = (
        abs(fix13[0] - 8) < 1e-9 and abs(fix13[1] - 8) < 1e-5
        and abs(fix5[0] - 2) < 1e-9 and abs(fix5[1] - 2) < 1e-5
        and worst <= 1e-5
        and elapsed < 60.0
    )
    _line(1, ok, f"Parseval discrepancy identity, {len(rows)} (p,n) pairs <= 1e-5 "
                 f"(worst {worst:.2e}), fixtures (13,2)->8 and (5,2)->2, {elapsed:.1f}s")
    assert ok


def test_criterion_2_series_reconstruction(discrepancy_sweep):
    rows, _ = discrepancy_sweep
    worst = max(err for _, _, _, _, err, _ in rows)
    p13 = next(deltas for p, n, _, _, _, deltas in rows if (p, n) == (13, 2))
    ok = worst <= 1e-6 and p13 == [-2.0, 2.0]
    _line(2, ok, f"coset reconstruction entrywise <= 1e-6 (worst {worst:.2e}), "
                 f"(13,2) deltas = (-2,+2)")
    assert ok


def test_criterion_3_quadratic_residue_deficit():
    t0 = time.monotonic()
    exceptions = []
    for p in primes_in_range(5, 5000):
        ctx = build_context(p)
        if p % 4 == 1:
            iv = thirds_interval(p)
            q_count = sum(1 for x in iv.members if ctx.legendre(x) == 1)
            if not 2 * q_count < iv.size:
                exceptions.append(p)
        else:
            iv = eighths_interval(p)
            q_count = sum(1 for x in iv.members if ctx.legendre(x) == 1)
            n_count = iv.size - q_count
            if not 2 * n_count < iv.size:
                exceptions.append(p)
    elapsed = time.monotonic() - t0
    ok = not exceptions and elapsed < 120.0
    _line(3, ok, f"strict interval deficits for all p in [5,5000] "
                 f"(exceptions: {exceptions or 'none'}), {elapsed:.1f}s")
    assert ok


def test_criterion_4_legendre_L_identity():
    worst = 0.0
    lhs13 = None
    for p in primes_in_range(5, 2000):
        ctx = build_context(p)
        lhs, rhs = legendre_third_identity(ctx)
        if p == 13:
            lhs13 = lhs
        if p % 4 == 1:
            worst = max(worst, abs(lhs - rhs))
        else:
            worst = max(worst, abs(lhs - legendre_third_via_rho(ctx)))
    ok = worst <= 1e-6 and lhs13 == 2
    _line(4, ok, f"Legendre prefix sum vs closed form <= 1e-6 for p <= 2000 "
                 f"(worst {worst:.2e}; p=13 lhs = {lhs13}; "
                 f"p = 3 mod 4 uses the L(1,rho) form, see ledger)")
    assert ok


def test_criterion_5_eighths_odd_character_identity():
    worst = 0.0
    count = 0
    for p in primes_in_range(5, 500, (3, 4)):
        ctx = build_context(p)
        iv = eighths_interval(p)
        for t in range(1, p - 1, 2):
            chi = Character(ctx, t)
            worst = max(worst, abs(interval_char_sum(chi, iv) - interval_sum_via_L(chi, iv)))
            count += 1
    rho7 = legendre_character(build_context(7))
    j_sum = interval_char_sum(rho7, eighths_interval(7))
    pinned_L = l_one(ProductCharacter(rho7, CHI8))
    ok = (worst <= 1e-6 and abs(j_sum - 2) < 1e-9
          and abs(pinned_L - 2 * math.pi / math.sqrt(14)) < 1e-9)
    _line(5, ok, f"odd-character eighths identity <= 1e-6 on {count} characters "
                 f"(worst {worst:.2e}); p=7 sum = 2 pins L(1,rho7*chi8) = 2pi/sqrt(14)")
    assert ok


def test_criterion_6_identity_chain():
    dil_ok = True
    even_ok = True
    spot_ok = True
    instances = 0
    for p in (13, 31, 101):
        ctx = build_context(p)
        iv = thirds_interval(p)
        subs = [subgroup_of_index(ctx, n) for n in divisors(p - 1)]
        for i in range(100):
            rng = stream(SEED, 6, p, i)
            A = rng.subset(p, 1 + rng.below(p - 1))
            for sub in subs:
                pairs = dilation_averages_all(A, sub, iv)
                dil_ok &= all(l == r for l, r in pairs)
                for eta in dual_characters(sub):
                    if eta.is_even:
                        b_lhs, b_rhs = even_char_sum_bound(A, sub, eta)
                        even_ok &= b_lhs <= b_rhs + 1e-6
                if i % 20 == 0:
                    f_lhs, f_rhs = folded_energy_identity(A, sub)
                    spot_ok &= abs(f_lhs - float(f_rhs)) <= 1e-6
                    w_lhs, w_rhs = weighted_parseval(A, sub)
                    spot_ok &= abs(float(w_lhs) - w_rhs) <= 1e-4 * max(1.0, float(w_lhs))
                instances += 1
    sub13 = subgroup_of_index(build_context(13), 2)
    w_lhs, w_rhs = weighted_parseval(Q13, sub13)
    f_lhs, f_rhs = folded_energy_identity(Q13, sub13)
    b_lhs, b_rhs = even_char_sum_bound(Q13, sub13, legendre_character(build_context(13)))
    fixtures_ok = (w_lhs == 288 and abs(float(w_lhs) - w_rhs) <= 1e-2
                   and f_rhs == 144 and abs(f_lhs - 144) <= 1e-6
                   and abs(b_lhs - 36) < 1e-9 and b_rhs == 72)
    ok = dil_ok and even_ok and spot_ok and fixtures_ok
    _line(6, ok, f"identity chain exact on {instances} (set, subgroup) instances; "
                 f"fixtures 288=288, 144=144, 36<=72")
    assert ok


def test_criterion_7_exact_sum_free_oracle():
    t0 = time.monotonic()
    mismatches = 0
    checked = 0
    for p in (13, 31, 61):
        for k in (2, 3):
            for i in range(200):
                A = seeded_set(SEED, 7000 + k, p, i)
                rep = sf_exact(p, A, k)
                if rep.value != brute_force_sf(p, A, k):
                    mismatches += 1
                ok_wit, _ = is_solution_free(p, rep.witness, k)
                if not ok_wit:
                    mismatches += 1
                checked += 1
    fix_ok = (sf_exact(13, [1, 2, 3, 4, 5], 2).value == 3
              and sf_exact(11, range(1, 11), 2).value == 4
              and sf_exact(13, Q13, 2).value == 4
              and sf_exact(13, Q13, 2).psi == 2)
    cd_ok = all(3 * sf_exact(p, range(1, p), 2).value <= p + 1
                for p in (5, 7, 11, 13, 17, 19, 23))
    elapsed = time.monotonic() - t0
    ok = mismatches == 0 and fix_ok and cd_ok and elapsed < 300.0
    _line(7, ok, f"exact search == brute force on {checked} instances "
                 f"({mismatches} mismatches); fixtures 3/4/4 (psi=2); "
                 f"sf(F_p*) <= (p+1)/3 up to 23; {elapsed:.1f}s")
    assert ok


def test_criterion_8_sigma_averages():
    ctx = build_context(13)
    s1, s2 = sigma_averages(ctx, Q13)
    tight = max(s1, s2) == sf_exact(13, Q13, 2).value == 4
    seeded_ok = True
    for p in (13, 31, 61):
        c = build_context(p)
        for i in range(30):
            A = seeded_set(SEED, 8, p, i)
            a1, a2 = sigma_averages(c, A)
            seeded_ok &= max(a1, a2) <= sf_exact(p, A, 2).value
    ok = (s1, s2) == (4, 0) and tight and seeded_ok
    _line(8, ok, f"sigma averages (Q13) = (4, 0), max = sf = 4 (tight); "
                 f"sigma <= sf on 90 seeded instances")
    assert ok


def test_criterion_9_fourier_battery():
    parseval_worst = 0.0
    for p in (7, 13, 101):
        for i in range(200):
            rng = stream(SEED, 9, p, i)
            f = np.array([rng.unit() for _ in range(p)])
            energy = float(np.sum(f * f))
            other = float(np.sum(np.abs(dft(f)) ** 2)) / p
            parseval_worst = max(parseval_worst, abs(energy - other) / max(1.0, energy))
    bound_ok = True
    for p in primes_in_range(5, 500):
        ctx = build_context(p)
        for n in divisors(p - 1):
            bound_ok &= subgroup_transform_max(subgroup_of_index(ctx, n)) <= math.sqrt(p) + 1e-9
    schur_worst = 0.0
    for p in (7, 13, 31):
        for i in range(50):
            rng = stream(SEED, 10, p, i)
            w = np.array([1.0 if rng.unit() < 0.5 else 0.0 for _ in range(p)])
            schur_worst = max(schur_worst, abs(schur_count(w) - schur_count_via_transform(w)))
    t_i = schur_count(indicator(13, thirds_interval(13).members))
    t_q7 = schur_count(indicator(7, (1, 2, 4)))
    ok = (parseval_worst <= 1e-9 and bound_ok and schur_worst <= 1e-6
          and t_i == 0 and t_q7 == 3)
    _line(9, ok, f"Parseval rel err {parseval_worst:.1e} <= 1e-9 (600 functions); "
                 f"subgroup transform bound p <= 500; Schur dual routes agree; "
                 f"T(I)=0, T(Q7)=3")
    assert ok


def test_criterion_10_wiener_suite():
    w7, rw7 = wiener_norms(7, (1, 2, 4))
    norms_ok = (abs(rw7 - 6 / 7) <= 1e-9
                and abs(w7 - (3 + 6 * math.sqrt(2)) / 7) <= 1e-9)
    below_one = True
    for p in primes_in_range(5, 2000, (3, 4)):
        sub = subgroup_of_index(build_context(p), 2)
        below_one &= wiener_norms(p, sub.members)[1] < 1.0
    coset_ok = True
    for p in primes_in_range(5, 101):
        ctx = build_context(p)
        subs = [(subgroup_of_index(ctx, n)) for n in divisors(p - 1)]
        gmaxes = [subgroup_transform_max(s) for s in subs]
        for i in range(10):
            rng = stream(SEED, 11, p, i)
            A = rng.subset(p, 1 + rng.below(p - 1))
            wA = wiener_norms(p, A)[0]
            arr = np.array(A, dtype=np.int64)
            for sub, gmax in zip(subs, gmaxes):
                counts = np.bincount(sub.coset_of[arr], minlength=sub.n)
                dev = float(np.max(np.abs(counts - len(A) * sub.d / p)))
                coset_ok &= dev <= wA * gmax + 1e-6
    ok = norms_ok and below_one and coset_ok
    _line(10, ok, f"Q7 norms exact to 1e-9; real-part Wiener norm of Q < 1 for all "
                  f"p = 3 mod 4 up to 2000; coset inequality on seeded sets p <= 101")
    assert ok


def test_criterion_11_asymptotics_report_only():
    cfg = SweepConfig(p_min=5, p_max=61, cases_per_prime=2)
    prop = run_suite("prop41", cfg)
    gamma = run_suite("sf_gamma", cfg)
    t32 = run_suite("thm32", cfg)
    ratio_keys_seen = set()
    for rep in (prop, gamma, t32):
        for c in rep.cases:
            for key in c.metadata:
                if key.startswith("ratio") or key in ("m", "tau", "log2_bohr_size_floor",
                                                      "psi_sqrt_p", "charsum_over_psi_sqrt_p"):
                    ratio_keys_seen.add(key)
            # report-only rows never fail
            if c.metadata.get("report_only"):
                assert c.passed and c.tol is None
    # the ineffective-constant observables are present as metadata...
    present = {"ratio_lower_sum_log2sq_over_p", "ratio_sum_over_p_pow_0_9",
               "ratio", "m", "psi_sqrt_p"} <= ratio_keys_seen
    # ...and no case asserts them: every case id names an exact identity/bound
    no_asymptotic_assertions = all(
        "ratio" not in c.case_id and "bohr" not in c.case_id and "tau" not in c.case_id
        for rep in (prop, gamma, t32) for c in rep.cases)
    ok = present and no_asymptotic_assertions and prop.all_passed and gamma.all_passed
    _line(11, ok, "asymptotic/ineffective-constant quantities appear only as "
                  "report-only metadata (observed-ratio fields), never as pass/fail")
    assert ok
