import numpy as np
import pytest

from src.graph.families import (
    AbelianCayleySpec,
    abelian_cayley,
    complete,
    cycle,
    dyck,
    hypercube,
    middle_slice_adjacent,
    path,
    slice_graph,
    tree,
)
from src.verify import checks
from src.verify.context import AnalysisContext
from src.verify.corpus import build_corpus
from src.verify.records import c_k, make_record
from src.verify.runner import VerifySettings, run_all
from src.utils.errors import GraphInputError

T_GRID = (0.01, 0.1, 0.5, 1.0, 2.0)


def _single(records):
    assert len(records) == 1
    return records[0]


def _all_required_pass(records):
    failed = [r for r in records if r.required and not r.skipped and not r.passed]
    assert not failed, [r.to_dict() for r in failed]


def test_c_k():
    assert c_k(0.0, 0.3) == pytest.approx(0.6)
    assert c_k(1.0, 0.5) == pytest.approx(np.e - 1.0)
    assert c_k(-1.0, 0.5) == pytest.approx(1.0 - np.exp(-1.0))
    # c_K(t) >= t up to t = 1/(2|K|)
    assert c_k(-1.0, 0.5) >= 0.5


def test_record_pass_rule():
    assert make_record("x", "g", 1.0, 1.0, -1e-10, 1e-9).passed
    assert not make_record("x", "g", 1.0, 1.0, -1e-8, 1e-9).passed


def test_buser_on_hypercube():
    rec = _single(checks.check_buser_global(hypercube(4)))
    assert rec.lhs == pytest.approx(2.0)
    assert rec.rhs == pytest.approx(16.0)
    assert rec.passed and rec.details["h"] == pytest.approx(1.0)


def test_buser_on_cycle_and_circulant():
    rec = _single(checks.check_buser_global(cycle(12)))
    assert rec.rhs == pytest.approx(16.0 / 9.0)
    assert rec.lhs == pytest.approx(2.0 * (1.0 - np.cos(np.pi / 6.0)))
    assert rec.passed
    z16 = abelian_cayley(AbelianCayleySpec((16,), ((1,), (4,))))
    assert _single(checks.check_buser_global(z16)).passed


def test_buser_skipped_under_negative_curvature():
    rec = _single(checks.check_buser_global(tree(3, 3)))
    assert rec.skipped and "Ric" in rec.reason


@pytest.mark.parametrize("g", [complete(8), hypercube(3), slice_graph(6, 3)], ids=lambda g: g.name)
def test_cheeger_floor(g):
    rec = _single(checks.check_cheeger_floor(g))
    assert rec.passed and not rec.skipped


def test_cheeger_classic(petersen):
    _all_required_pass(checks.check_cheeger_classic(petersen))


@pytest.mark.parametrize("g", [cycle(8), complete(6), path(7), dyck(4)], ids=lambda g: g.name)
def test_subset_isoperimetry(g):
    rec = _single(checks.check_subset_iso(g))
    assert rec.passed and rec.details["failures"] == 0
    assert rec.details["subsets"] == 2**g.n


def test_subset_isoperimetry_every_record():
    records = checks.check_subset_iso(cycle(4), aggregate=False)
    assert len(records) == 16
    full = [r for r in records if r.details["set"] == [0, 1, 2, 3]][0]
    assert full.lhs == 0.0 and full.rhs == 0.0
    assert all(r.passed for r in records)


def test_subset_isoperimetry_cap():
    assert _single(checks.check_subset_iso(cycle(15))).skipped


def test_sharp_subset_bound_is_informational():
    rec = _single(checks.check_subset_iso_sharp(hypercube(3)))
    assert not rec.required and rec.passed
    assert checks.sharp_subset_coefficient(1.0, 0.0) >= 0.5


@pytest.mark.parametrize("g", [complete(8), hypercube(3)], ids=lambda g: g.name)
def test_lsi_isoperimetry(g):
    proof_form, statement_form = checks.check_lsi_iso(g)
    assert proof_form.required and proof_form.passed
    assert not statement_form.required
    assert proof_form.details["safety_factor"] == 0.5
    assert proof_form.details["rho"] == pytest.approx(0.5 * proof_form.details["rho_hat"])


def test_lsi_half_size_uses_log_two():
    g = cycle(4)
    ctx = AnalysisContext(g)
    proof_form, _ = checks.check_lsi_iso(g, ctx)
    coeff = np.sqrt(0.5 * ctx.log_sobolev.rho_hat) / 16.0
    # the worst subset of C_4 is a half with boundary 2
    assert proof_form.rhs == pytest.approx(coeff * 2 * np.sqrt(np.log(2.0)))


HEAT_INSTANCES = [hypercube(3), cycle(9), complete(6), slice_graph(5, 2), middle_slice_adjacent(3)]


@pytest.mark.parametrize("g", HEAT_INSTANCES, ids=lambda g: g.name)
def test_heat_suite(g):
    rng = np.random.default_rng(5)
    functions = rng.standard_normal((100, g.n))
    records = checks.heat_suite(g, functions, T_GRID)
    _all_required_pass(records)
    assert any(not r.skipped for r in records)


def test_heat_suite_respects_time_window():
    g = middle_slice_adjacent(3)
    ctx = AnalysisContext(g)
    assert ctx.ric < 0
    records = checks.heat_suite(g, np.ones((1, g.n)), (10.0,), ctx)
    assert {r.name for r in records if r.skipped} == {"gradient_lemma", "gradient_sup_bound", "step3"}


def test_gradient_lemma_on_constant():
    rec = _single(checks.check_gradient_lemma(hypercube(3), np.full(8, 2.0), 0.5))
    assert rec.lhs == pytest.approx(0.0, abs=1e-12)
    assert rec.rhs == 0.0


def test_step1_and_variance_at_time_zero(rng):
    g = cycle(7)
    f = rng.standard_normal(g.n)
    step1 = _single(checks.check_step1(g, 0.0, f, 0.0))
    assert step1.slack == pytest.approx(0.0, abs=1e-12)
    variance = _single(checks.check_variance_bound(g, 0.0, f, 0.0))
    assert variance.lhs == pytest.approx(0.0, abs=1e-12)
    assert variance.rhs == 0.0


def test_variance_bound_with_positive_curvature(rng):
    g = complete(5)
    functions = rng.standard_normal((20, g.n))
    for t in T_GRID:
        assert _single(checks.check_variance_bound(g, 3.5, functions, t)).passed


def test_hypercontractivity_is_informational(rng):
    rec = _single(checks.check_hypercontractivity(hypercube(3), np.abs(rng.standard_normal((10, 8))), 0.5))
    assert not rec.required


def test_gap_theorem():
    assert _single(checks.check_gap_theorem(hypercube(4))).slack == pytest.approx(0.0, abs=1e-8)
    assert _single(checks.check_gap_theorem(tree(3, 3))).skipped


def test_curvature_records(rng):
    g = slice_graph(5, 2)
    ctx = AnalysisContext(g)
    records = (
        checks.check_ricci_upper(g, ctx)
        + checks.check_regular_floor(g, ctx)
        + checks.check_dirichlet_curvature(g, rng.standard_normal((10, g.n)), ctx)
        + checks.check_oracle_agreement(g, ctx)
    )
    _all_required_pass(records)
    assert _single(checks.check_regular_floor(path(5))).skipped


def test_cayley_nonnegative():
    g = abelian_cayley(AbelianCayleySpec((4, 6), ((1, 0), (0, 1), (1, 1))))
    assert _single(checks.check_cayley_nonnegative(g)).passed


def test_negative_trend_records():
    contexts = [AnalysisContext(middle_slice_adjacent(n)) for n in (2, 3, 4)]
    records = checks.check_negative_trend(contexts, "middle-slice")
    assert all(r.required for r in records)
    by_kind = {}
    for r in records:
        by_kind.setdefault(r.name, []).append(r)
    assert len(by_kind["middle-slice_floor"]) == 3
    assert len(by_kind["middle-slice_ceiling"]) == 3
    assert len(by_kind["middle-slice_trend"]) == 2
    _all_required_pass(records)


def test_negative_trend_flags_a_non_decreasing_family():
    contexts = [AnalysisContext(middle_slice_adjacent(n)) for n in (3, 2)]
    trend = [r for r in checks.check_negative_trend(contexts, "middle-slice") if r.name.endswith("_trend")]
    assert len(trend) == 1 and not trend[0].passed


def test_corpus_contents():
    names = [inst.name for inst in build_corpus("standard", seed=7)]
    for expected in ("hypercube-3", "cycle-9", "complete-6", "slice-5-2", "middle-slice-3", "cayley-Z16-1-4"):
        assert expected in names
    assert len(names) == len(set(names))
    with pytest.raises(GraphInputError):
        build_corpus("nope", seed=7)


def test_settings_from_config():
    settings = VerifySettings.from_config(
        {"verify": {"heat_functions": 5, "tolerances": {"heat": 1e-6}}, "cheeger": {"exact_cap": 18}}
    )
    assert settings.heat_functions == 5
    assert settings.tolerances["heat"] == 1e-6
    assert settings.tolerances["subset"] == 1e-9
    assert settings.exact_cap == 18


def test_quick_corpus_passes_and_is_deterministic():
    config = {"verify": {"heat_functions": 10}}
    first = run_all("quick", seed=7, threads=1, config=config)
    assert first.ok, [r.to_dict() for r in first.failures]
    summary = first.summary()
    assert summary["all_pass"] and summary["failed_required"] == 0
    again = run_all("quick", seed=7, threads=2, config=config)
    assert [(r.name, r.instance, r.passed, r.skipped) for r in again.records] == [
        (r.name, r.instance, r.passed, r.skipped) for r in first.records
    ]
    for a, b in zip(first.records, again.records):
        if a.slack is not None:
            assert b.slack == pytest.approx(a.slack, abs=1e-9)
