"""Verification suites and parameter sweeps.

A suite runs one family of checks over seeded instances and returns a
:class:`SuiteReport`: one row per instance with exact values rendered as
``num/den`` strings, plus a verdict.  ``pass``/``fail`` is used for exact
identities and inequalities with explicit constants; inequalities with
unspecified constants get ``measured`` and report their extremal ratio.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import oracle
from .commute import (
    ALGORITHMS,
    affine_energy,
    commute_count_measure,
    commute_count_product_measure,
    commute_count_set,
    commute_offdiag_degenerate_count,
    commute_offdiag_nonzero_count,
    degenerate_ratio,
    delta,
    theorem1_check,
)
from .exact import format_scalar, identity, mat
from .generators import (
    GapSpec,
    commuting_plane_example,
    gap,
    geometric,
    interval,
    random_matrix_measure,
    random_measure,
    random_partition,
    random_set,
    random_subset,
    sharp_example,
)
from .measures import MatrixMeasure, ScalarMeasure, norm, product_measure, uniform_on
from .profiles import (
    energy_additive,
    energy_mult,
    mixed_energy,
    moment,
    quotient_profile,
    restricted_energy,
    root4_sum_leq,
)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, Fraction)):
        return format_scalar(Fraction(v))
    return str(v)


@dataclass
class SuiteReport:
    name: str
    verdict: str = "pass"  # pass | fail | measured
    rows: list[dict[str, str]] = field(default_factory=list)
    summary: dict[str, str] = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    def add(self, ok: bool | None = None, **cols) -> None:
        self.rows.append({k: _fmt(v) for k, v in cols.items()})
        if ok is False:
            self.failures.append(_fmt(cols.get("instance", len(self.rows) - 1)))
            self.verdict = "fail"

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "verdict": self.verdict,
            "summary": {k: _fmt(v) for k, v in self.summary.items()},
            "failures": self.failures,
            "rows": self.rows,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        if self.rows:
            cols = list(self.rows[0])
            w = csv.DictWriter(buf, cols, lineterminator="\n", extrasaction="ignore")
            w.writeheader()
            w.writerows(self.rows)
        return buf.getvalue()


def _sub_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def _set_label(A: Iterable[Fraction]) -> str:
    return "{" + ",".join(format_scalar(a) for a in A) + "}"


# -- suites ------------------------------------------------------------------


def family_measures() -> list[tuple[str, MatrixMeasure]]:
    """Named matrix measures from the example families used by several suites."""
    out: list[tuple[str, MatrixMeasure]] = []
    out.append(("atom:I", MatrixMeasure({identity(): Fraction(1)}, True)))
    out.append(("nilpotent-pair", MatrixMeasure.uniform([identity(), mat(0, 1, 0, 0), mat(0, 0, 1, 0)])))
    for N in range(2, 6):
        out.append((f"sharp:{N}", sharp_example(N)))
    jordan = mat(1, 1, 0, 1)
    for N in range(2, 5):
        out.append((f"plane:{N}", commuting_plane_example(N, identity(), jordan)))
    for N in (2, 3):
        out.append((f"product:interval:{N}", product_measure(uniform_on(interval(N)))))
    out.append(("product:{0,1}", product_measure(uniform_on([0, 1]))))
    return out


def suite_theorem1(trials: int = 1000, seed: int = 7, max_atoms: int = 10, threads: int = 1) -> SuiteReport:
    rep = SuiteReport("theorem1")
    worst = Fraction(0)
    cases: list[tuple[str, MatrixMeasure]] = []
    for i in range(trials):
        n = 1 + i % max_atoms
        cases.append((f"random:{seed}:{i}", random_matrix_measure(n, _sub_seed(seed, i))))
    cases.extend(family_measures())
    for label, mu in cases:
        T, d, holds = theorem1_check(mu)
        ratio = T / d
        worst = max(worst, ratio)
        rep.add(holds, instance=label, atoms=len(mu), T=T, delta=d, T_over_delta=ratio, holds=holds)
    rep.summary = {"instances": len(cases), "max_T_over_delta": worst, "bound": 8}
    return rep


def suite_sharp_ratio(Ns: Sequence[int] = tuple(range(2, 11)), delta_upto: int = 4, threads: int = 1) -> SuiteReport:
    rep = SuiteReport("sharp-ratio")
    prev = None
    for N in Ns:
        mu = sharp_example(N)
        T = commute_count_measure(mu)
        closed = Fraction(2 * N**3 + N, 3 * N**4)
        scaled = N * T
        ok = T == closed and scaled > Fraction(2, 3) and (prev is None or scaled < prev)
        cols: dict = dict(instance=f"sharp:{N}", N=N, T=T, closed_form=closed, N_times_T=scaled)
        if N <= delta_upto:
            d_brute = oracle.brute_delta(mu)
            d_fast = delta(mu)
            ok = ok and d_brute == d_fast and d_brute <= Fraction(1, N)
            cols.update(delta_oracle=d_brute, delta=d_fast)
        else:
            cols.update(delta_oracle="", delta="")
        rep.add(ok, **cols)
        prev = scaled
    rep.summary = {"limit": Fraction(2, 3)}
    return rep


def suite_affine_bijection(
    sizes: Sequence[int] = tuple(range(1, 9)), trials: int = 100, seed: int = 11,
    lo: int = -9, hi: int = 9, family_max: int = 8, threads: int = 1,
) -> SuiteReport:
    rep = SuiteReport("affine-bijection")
    cases: list[tuple[str, list[Fraction]]] = []
    for i in range(trials):
        n = sizes[i % len(sizes)]
        A = random_set(n, lo, hi, _sub_seed(seed, i))
        if all(a == 0 for a in A):
            A = random_set(n, 1, hi, _sub_seed(seed, i))
        cases.append((f"random:{seed}:{i}", A))
    for N in range(1, family_max + 1):
        cases.append((f"interval:{N}", interval(N)))
        cases.append((f"geometric:{N}:2", geometric(N, 2)))
    for label, A in cases:
        off = commute_offdiag_nonzero_count(A, threads)
        aff = affine_energy(A)
        aff_inv = affine_energy(A, "inverse")
        T = commute_count_set(A, "zero_pattern", threads).total
        degenerate = commute_offdiag_degenerate_count(A, threads)
        ok = off == aff == aff_inv and T - aff >= 0 and T - aff == degenerate
        rep.add(ok, instance=label, set=_set_label(A), offdiag_nonzero=off, affine_energy=aff,
                affine_energy_inverse=aff_inv, T=T, degenerate=degenerate)
    rep.summary = {"instances": len(cases)}
    return rep


def _random_nu(i: int, seed: int, max_atoms: int = 6) -> ScalarMeasure:
    n = 1 + i % max_atoms
    return random_measure(n, -6, 6, _sub_seed(seed, i))


def suite_gkid(trials: int = 200, seed: int = 13, threads: int = 1) -> SuiteReport:
    """T(mu_nu) >= ||nu||_2^4 * E_nu(supp nu)."""
    rep = SuiteReport("gkid")
    for i in range(trials):
        nu = _random_nu(i, seed)
        T = commute_count_product_measure(nu, "zero_pattern", threads).total
        rhs = norm(nu, 2) ** 2 * energy_additive(nu)
        rep.add(T >= rhs, instance=f"random:{seed}:{i}", T=T, lower_bound=rhs)
    return rep


def _family_sets(family_max: int) -> list[tuple[str, list[Fraction]]]:
    out = []
    for N in range(1, family_max + 1):
        out.append((f"interval:{N}", interval(N)))
        out.append((f"geometric:{N}:2", geometric(N, 2)))
    return out


def _random_sets(trials: int, seed: int, sizes: Sequence[int], lo: int = -9, hi: int = 9):
    for i in range(trials):
        n = sizes[i % len(sizes)]
        yield f"random:{seed}:{i}", random_set(n, lo, hi, _sub_seed(seed, i))


def suite_nim(trials: int = 50, seed: int = 17, sizes: Sequence[int] = tuple(range(2, 9)),
              family_max: int = 10, threads: int = 1) -> SuiteReport:
    """Measured constant in T(A) <= C |A|^4 M(A)^(1/2); reported as C^2 exactly."""
    rep = SuiteReport("nim", verdict="measured")
    worst = Fraction(0)
    for label, A in [*_random_sets(trials, seed, sizes), *_family_sets(family_max)]:
        nz = [a for a in A if a != 0]
        if not nz:
            continue
        T = commute_count_set(A, "zero_pattern", threads).total
        M = energy_mult(set(A))
        c2 = Fraction(T * T, len(A) ** 8 * M)
        worst = max(worst, c2)
        rep.add(None, instance=label, size=len(A), T=T, M_energy=M, C_squared=c2)
    rep.summary = {"max_C_squared": worst}
    return rep


def suite_dmf2(trials: int = 50, seed: int = 19, sizes: Sequence[int] = tuple(range(1, 9)),
               family_max: int = 10, threads: int = 1) -> SuiteReport:
    """E(A)|A+A| >= |A|^4 exactly; T(A) K / |A|^5 measured."""
    rep = SuiteReport("dmf2")
    lowest = None
    for label, A in [*_random_sets(trials, seed, sizes), *_family_sets(family_max)]:
        n = len(A)
        sums = len({a + b for a in A for b in A})
        E = energy_additive(set(A))
        T = commute_count_set(A, "zero_pattern", threads).total
        ratio = Fraction(T * sums, n**6)
        lowest = ratio if lowest is None else min(lowest, ratio)
        rep.add(E * sums >= n**4, instance=label, size=n, sumset=sums, E=E, T=T, T_K_over_A5=ratio)
    rep.summary = {"min_T_K_over_A5": lowest if lowest is not None else ""}
    return rep


def suite_multbd(trials: int = 50, seed: int = 23, sizes: Sequence[int] = tuple(range(1, 9)),
                 family_max: int = 10, threads: int = 1) -> SuiteReport:
    """T >= |A|^5 when 0 in A, T >= sum q^4 otherwise; T M_d^6 / |A|^5 measured."""
    rep = SuiteReport("multbd")
    lowest = None
    for label, A in [*_random_sets(trials, seed, sizes), *_family_sets(family_max)]:
        n = len(A)
        T = commute_count_set(A, "zero_pattern", threads).total
        if 0 in A:
            bound = n**5
        else:
            bound = moment(quotient_profile(A, threads), 4)
        products = len({a * b for a in A for b in A})
        ratio = Fraction(T * products**6, n**11)
        lowest = ratio if lowest is None else min(lowest, ratio)
        rep.add(T >= bound, instance=label, size=n, T=T, lower_bound=bound, T_Md6_over_A5=ratio)
    rep.summary = {"min_T_Md6_over_A5": lowest if lowest is not None else ""}
    return rep


def suite_wtun(trials: int = 500, seed: int = 29, max_atoms: int = 8, threads: int = 1) -> SuiteReport:
    """Hoelder bound for the mixed energy and the fourth-root triangle inequality."""
    rep = SuiteReport("wtun")
    for i in range(trials):
        s = _sub_seed(seed, i)
        n = 2 + i % (max_atoms - 1)
        nu = random_measure(n, -12, 12, s, mass=Fraction(1 + i % 4, 4))
        supp = nu.support
        parts = random_partition(supp, 1 + i % min(4, n), s + 1)
        four = [random_subset(supp, s + 2 + k) for k in range(4)]
        mixed = mixed_energy(nu, four)
        energies = [restricted_energy(nu, p) for p in four]
        holder = mixed**4 <= energies[0] * energies[1] * energies[2] * energies[3]
        union = restricted_energy(nu, supp)
        triangle = root4_sum_leq(union, [restricted_energy(nu, p) for p in parts])
        rep.add(holder and triangle, instance=f"random:{seed}:{i}", parts=len(parts),
                mixed=mixed, holder=holder, union_energy=union, triangle=triangle)
    return rep


def suite_tn4(trials: int = 100, seed: int = 31, threads: int = 1) -> SuiteReport:
    """Measured constant in h1(nu) <= C (nu(0)^3 + ||nu||_2^6)."""
    rep = SuiteReport("tn4", verdict="measured")
    worst = Fraction(0)
    for i in range(trials):
        nu = _random_nu(i, seed, 8)
        r = degenerate_ratio(nu)
        worst = max(worst, r)
        rep.add(None, instance=f"random:{seed}:{i}", atoms=len(nu), ratio=r)
    rep.summary = {"max_ratio": worst}
    return rep


def suite_oracle(trials_small: int = 200, trials_large: int = 50, seed: int = 3,
                 lo: int = -9, hi: int = 9, threads: int = 1) -> SuiteReport:
    """Fast engines against brute force on sets, measures and energies."""
    rep = SuiteReport("oracle")
    for i in range(trials_small):
        A = random_set(1 + i % 4, lo, hi, _sub_seed(seed, i))
        brute = oracle.brute_T_set(A)
        totals = [commute_count_set(A, alg, threads).total for alg in ALGORITHMS]
        rep.add(all(t == brute for t in totals), instance=f"small:{seed}:{i}",
                set=_set_label(A), brute=brute, **dict(zip(ALGORITHMS, totals)))
    for i in range(trials_large):
        A = random_set(5 + i % 2, lo, hi, _sub_seed(seed + 1, i))
        brute = oracle.brute_T_set(A)
        zp = commute_count_set(A, "zero_pattern", threads).total
        cm = commute_count_set(A, "commutant", threads).total
        rep.add(zp == cm == brute, instance=f"large:{seed}:{i}", set=_set_label(A), brute=brute,
                pairwise="", zero_pattern=zp, commutant=cm)
    return rep


def suite_oracle_measures(trials: int = 40, seed: int = 5, threads: int = 1) -> SuiteReport:
    """Weighted engines and energies against definitional sums."""
    rep = SuiteReport("oracle-measures")
    for i in range(trials):
        s = _sub_seed(seed, i)
        nu = random_measure(1 + i % 3, -4, 4, s)
        mu = product_measure(nu)
        brute = oracle.brute_T_measure(mu)
        zp = commute_count_product_measure(nu, "zero_pattern", threads).total
        cm = commute_count_product_measure(nu, "commutant", threads).total
        nu6 = random_measure(1 + i % 6, -6, 6, s)
        e_ok = oracle.brute_E(nu6) == energy_additive(nu6) and oracle.brute_M(nu6) == energy_mult(nu6)
        mm = random_matrix_measure(1 + i % 10, s)
        d_ok = oracle.brute_delta(mm) == delta(mm)
        t_ok = oracle.brute_T_measure(mm) == commute_count_measure(mm)
        rep.add(zp == cm == brute and e_ok and d_ok and t_ok, instance=f"random:{seed}:{i}",
                T_brute=brute, zero_pattern=zp, commutant=cm, energies=e_ok, delta=d_ok, T_measure=t_ok)
    return rep


def suite_lower_bounds(trials: int = 100, seed: int = 37, sizes: Sequence[int] = tuple(range(1, 9)),
                       family_max: int = 10, measure_trials: int = 100, threads: int = 1) -> SuiteReport:
    rep = SuiteReport("lower-bounds")
    for label, A in [*_random_sets(trials, seed, sizes), *_family_sets(family_max)]:
        n = len(A)
        T = commute_count_set(A, "zero_pattern", threads).total
        ok = T >= n**4
        if 0 in A:
            ok = ok and T >= n**5
        else:
            ok = ok and T >= moment(quotient_profile(A, threads), 4)
        sums = len({a + b for a in A for b in A})
        ok = ok and energy_additive(set(A)) * sums >= n**4
        rep.add(ok, instance=label, size=n, T=T)
    for i in range(measure_trials):
        nu = _random_nu(i, seed)
        T = commute_count_product_measure(nu, "zero_pattern", threads).total
        rhs = norm(nu, 2) ** 2 * energy_additive(nu)
        rep.add(T >= rhs, instance=f"measure:{seed}:{i}", size=len(nu), T=T)
    return rep


def suite_closed_forms(Ns: Sequence[int] = tuple(range(2, 13)), brute_upto: int = 5, threads: int = 1) -> SuiteReport:
    rep = SuiteReport("closed-forms")
    for N in Ns:
        expected = (2 * N**3 + N) // 3
        E = energy_additive(set(interval(N)))
        M = energy_mult(set(geometric(N, 2)))
        ok = E == M == expected
        cols: dict = dict(instance=f"N:{N}", N=N, expected=expected, E_interval=E, M_geometric=M)
        if N <= brute_upto:
            bE = oracle.brute_E(interval(N))
            bM = oracle.brute_M(geometric(N, 2))
            ok = ok and bE == E and bM == M
            cols.update(E_oracle=bE, M_oracle=bM)
        else:
            cols.update(E_oracle="", M_oracle="")
        rep.add(ok, **cols)
    return rep


SUITES: dict[str, Callable[..., SuiteReport]] = {
    "theorem1": suite_theorem1,
    "sharp-ratio": suite_sharp_ratio,
    "affine-bijection": suite_affine_bijection,
    "gkid": suite_gkid,
    "nim": suite_nim,
    "dmf2": suite_dmf2,
    "multbd": suite_multbd,
    "wtun": suite_wtun,
    "tn4": suite_tn4,
    "oracle": suite_oracle,
    "oracle-measures": suite_oracle_measures,
    "lower-bounds": suite_lower_bounds,
    "closed-forms": suite_closed_forms,
}


def run_suite(name: str, **params) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return SUITES[name](**params)


# -- sweeps ------------------------------------------------------------------


SWEEP_COLUMNS = [
    "family", "param", "size", "K", "M_doubling", "E", "M_energy", "T", "E_affine",
    "T_over_A5", "E_over_A2", "T2_over_A8_M", "algorithm", "approx_C_nim",
]


def sweep_row(family: str, param: str, A: Sequence[Fraction], threads: int = 1) -> dict[str, str]:
    n = len(A)
    K = Fraction(len({a + b for a in A for b in A}), n)
    Md = Fraction(len({a * b for a in A for b in A}), n)
    E = energy_additive(set(A))
    M = energy_mult(set(A))
    T = commute_count_set(A, "zero_pattern", threads).total
    EG = affine_energy(A) if any(a != 0 for a in A) else 0
    c2 = Fraction(T * T, n**8 * M) if M else None
    row = {
        "family": family, "param": param, "size": n, "K": K, "M_doubling": Md, "E": E,
        "M_energy": M, "T": T, "E_affine": EG, "T_over_A5": Fraction(T, n**5),
        "E_over_A2": Fraction(E, n**2), "T2_over_A8_M": c2 if c2 is not None else "",
        "algorithm": "zero_pattern",
        # human-readable only: T / (|A|^4 sqrt(M)), rounded
        "approx_C_nim": f"{float(c2) ** 0.5:.6f}" if c2 is not None else "",
    }
    return {k: _fmt(v) for k, v in row.items()}


def _gap_square(L: int) -> list[Fraction]:
    return gap(GapSpec(Fraction(1), (Fraction(1), Fraction(4 * L)), (L, L)))


FAMILIES: dict[str, Callable[[int], list[Fraction]]] = {
    "interval": interval,
    "geometric": lambda N: geometric(N, 2),
    "gap": _gap_square,
}


def sweep(family: str, params: Iterable[int], threads: int = 1) -> list[dict[str, str]]:
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    return [sweep_row(family, str(N), FAMILIES[family](N), threads) for N in params]


def sweep_csv(rows: list[dict[str, str]]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def within_factor(values: dict[int, Fraction], ref_key: int, factor: int) -> bool:
    """Every value lies in [ref / factor, ref * factor]."""
    ref = values[ref_key]
    return all(ref <= v * factor and v <= ref * factor for v in values.values())
