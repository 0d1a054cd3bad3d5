"""Associated systems, total derivatives, recovery, and the jet transfer."""

import random

import pytest

import pseudosphere as ps
from pseudosphere import PdeSystem, TruncatedSeries
from pseudosphere.errors import LeviDegenerateError, RankConditionError

from conftest import heisenberg_model, rigid_perturbation_model

PCTX = ps.pde_context(2)
FCTX = ps.fundamental_context(2)
CTX = ps.canonical_context(2)


def p(text, order=5, ctx=PCTX):
    return ps.parse_series(text, ctx, order)


# ----------------------------------------------------------------------
# deriving the associated system


def test_heisenberg_system_is_zero():
    system = ps.derive_associated_system(heisenberg_model(2, 7))
    assert all(system.component(*k).is_zero() for k in system.component_keys())
    assert system.order == 5


def test_sheared_model_gives_constant_system():
    theta = ps.parse_series("-wb + z1*z1b + z2*z2b + z1^2 + z1b^2", CTX, 7)
    system = ps.derive_associated_system(ps.make_model(2, theta, 7))
    assert system.component(1, 1) == p("2")
    assert system.component(1, 2).is_zero()
    assert system.component(2, 2).is_zero()


def test_quartic_model_depends_on_first_jet():
    theta = ps.parse_series("-wb + z1*z1b + z2*z2b + z1^2*z1b^2", CTX, 7)
    system = ps.derive_associated_system(ps.make_model(2, theta, 7))
    f11 = system.component(1, 1)
    assert f11 == p("2*yx1^2 - 8*x1*yx1^3")
    # back-substitution: F11(z, theta, theta_z) must equal theta_z1z1
    assignment = {
        "x1": TruncatedSeries.variable(CTX, 7, "z1"),
        "x2": TruncatedSeries.variable(CTX, 7, "z2"),
        "y": theta,
        "yx1": theta.partial("z1"),
        "yx2": theta.partial("z2"),
    }
    back = f11.substitute(assignment, target_context=CTX)
    assert back.agrees_with(theta.partial("z1").partial("z1"))


def test_degenerate_model_rejected():
    theta = ps.parse_series("-wb + z1*z1b", CTX, 5)
    bad = ps.HypersurfaceModel(n=2, order=5, theta=theta)
    with pytest.raises(LeviDegenerateError):
        ps.derive_associated_system(bad)


def test_symmetry_of_derived_components():
    model = rigid_perturbation_model(random.Random(11), 2, 6)
    system = ps.derive_associated_system(model)
    for k1 in (1, 2):
        for k2 in (1, 2):
            assert system.component(k1, k2) == system.component(k2, k1)


# ----------------------------------------------------------------------
# total differentiation and compatibility


def test_total_derivative_formula():
    zero_system = PdeSystem(2, 5, {})
    y = TruncatedSeries.variable(PCTX, 5, "y")
    assert ps.total_derivative(zero_system, 1, y) == p("yx1", order=4)

    system = PdeSystem(2, 5, {(1, 2): p("y + x1")})
    yx2 = TruncatedSeries.variable(PCTX, 5, "yx2")
    assert ps.total_derivative(system, 1, yx2) == p("y + x1", order=4)

    x2 = TruncatedSeries.variable(PCTX, 5, "x2")
    assert ps.total_derivative(zero_system, 1, x2).is_zero()


def test_zero_system_is_integrable():
    assert ps.check_complete_integrability(PdeSystem(2, 5, {})).ok


def test_derived_systems_are_integrable():
    for seed in (3, 4):
        model = rigid_perturbation_model(random.Random(seed), 2, 6)
        system = ps.derive_associated_system(model)
        report = ps.check_complete_integrability(system)
        assert report.ok, report.failures


def test_integrability_counterexample():
    system = PdeSystem(2, 5, {(1, 1): p("x2")})
    report = ps.check_complete_integrability(system)
    assert not report.ok
    (k1, k2, k3, monomial, residual) = report.failures[0]
    assert (k1, k2, k3) == (1, 1, 2)
    assert monomial == "1"
    assert residual == ps.gaussian(1)


# ----------------------------------------------------------------------
# fundamental solutions


def test_flat_solution_recovers_zero_system():
    q = ps.parse_series("-b + x1*a1 + x2*a2", FCTX, 6)
    sol = ps.FundamentalSolution(2, q)
    assert sol.normalized
    system = ps.recover_system_from_solution(sol)
    assert all(system.component(*k).is_zero() for k in system.component_keys())


def test_heisenberg_as_fundamental_solution():
    # renaming theta into (x, a, b) gives the same zero system as the
    # elimination route
    theta = heisenberg_model(2, 6).theta.rename_context(FCTX)
    sol = ps.FundamentalSolution(2, theta)
    system = ps.recover_system_from_solution(sol)
    assert all(system.component(*k).is_zero() for k in system.component_keys())


def test_quartic_fundamental_solution_round_trip():
    q = ps.parse_series("-b + x1*a1 + x2*a2 + x1^2*a1^2", FCTX, 7)
    sol = ps.FundamentalSolution(2, q)
    system = ps.recover_system_from_solution(sol)
    f11 = system.component(1, 1)
    assert not f11.is_zero()
    # Q solves the recovered system: Q_{x1 x1} == F11(x, Q, Q_x)
    assignment = {
        "y": q,
        "yx1": q.partial("x1"),
        "yx2": q.partial("x2"),
        "x1": TruncatedSeries.variable(FCTX, 7, "x1"),
        "x2": TruncatedSeries.variable(FCTX, 7, "x2"),
    }
    back = f11.substitute(assignment, target_context=FCTX)
    assert back.agrees_with(q.partial("x1").partial("x1"))


def test_rank_condition_enforced():
    with pytest.raises(RankConditionError):
        ps.FundamentalSolution(2, ps.parse_series("-b + x1*a1", FCTX, 5))


def test_non_normalized_flag():
    q = ps.parse_series("-b + x1*a1 - x2*a2", FCTX, 5)
    assert not ps.FundamentalSolution(2, q).normalized


# ----------------------------------------------------------------------
# jet transfer


def test_jet_transfer_flat_square():
    sol = ps.FundamentalSolution(2, ps.parse_series("-b + x1*a1 + x2*a2", FCTX, 6))
    t = ps.parse_series("a1^2", FCTX, 6)
    assert ps.jet_transfer_second(sol, t, 1, 1) == ps.parse_series("2", FCTX, 3)
    assert ps.jet_transfer_second(sol, t, 1, 2).is_zero()
    assert ps.jet_transfer_second(sol, t, 2, 2).is_zero()


def test_jet_transfer_parameter_free_input():
    sol = ps.FundamentalSolution(2, ps.parse_series("-b + x1*a1 + x2*a2", FCTX, 6))
    t = ps.parse_series("x1^2 + x2", FCTX, 6)
    assert ps.jet_transfer_second(sol, t, 1, 1).is_zero()


def test_jet_transfer_symmetry():
    q = ps.parse_series("-b + x1*a1 + x2*a2 + x1^2*a1^2 + x1*x2*a2^2", FCTX, 6)
    sol = ps.FundamentalSolution(2, q)
    t = ps.parse_series("a1*a2 + b^2", FCTX, 6)
    out12 = ps.jet_transfer_second(sol, t, 1, 2)
    out21 = ps.jet_transfer_second(sol, t, 2, 1)
    assert out12 == out21


def _chain_rule_oracle(sol, t, l1, l2):
    """Independent route: solve for (a, b), compose, differentiate, pull back."""
    n = sol.n
    q = sol.q
    system = [q] + [q.partial(f"x{k}") for k in range(1, n + 1)]
    unknowns = [f"a{k}" for k in range(1, n + 1)] + ["b"]
    targets = ["y"] + [f"yx{k}" for k in range(1, n + 1)]
    solution = ps.solve_implicit(system, unknowns, targets)
    jet_ctx = solution["b"].context
    g = t.substitute(
        {name: solution[name] for name in unknowns}, target_context=jet_ctx
    )
    d2g = g.partial(f"yx{l1}").partial(f"yx{l2}")
    pullback = {
        "y": q,
        **{f"yx{k}": q.partial(f"x{k}") for k in range(1, n + 1)},
        **{
            f"x{k}": TruncatedSeries.variable(q.context, q.order, f"x{k}")
            for k in range(1, n + 1)
        },
    }
    return d2g.substitute(pullback, target_context=q.context)


@pytest.mark.parametrize("l1,l2", [(1, 1), (1, 2), (2, 2)])
def test_jet_transfer_matches_chain_rule_oracle(l1, l2):
    q = ps.parse_series("-b + x1*a1 + x2*a2 + x1^2*a1^2", FCTX, 7)
    sol = ps.FundamentalSolution(2, q)
    t = ps.parse_series("a1*a2 + b*x1", FCTX, 7)
    direct = ps.jet_transfer_second(sol, t, l1, l2)
    oracle = _chain_rule_oracle(sol, t, l1, l2)
    assert direct.agrees_with(oracle)


def test_fundamental_determinant_matches_levi_determinant():
    # with Q := theta and (a, b) := (zb, wb), the fundamental determinant
    # coincides with the Levi determinant under the fixed row convention
    model = rigid_perturbation_model(random.Random(23), 2, 6)
    from pseudosphere.hypersurface import levi_matrix

    delta = levi_matrix(model).determinant()
    sol = ps.FundamentalSolution(2, model.theta.rename_context(FCTX))
    box = ps.fundamental_minors(sol).delta
    assert box == delta.rename_context(FCTX)
