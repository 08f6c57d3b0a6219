import numpy as np
import pytest

from galcurves.errors import SpecError
from galcurves.expr import parse
from galcurves.families import (
    REQUIREMENTS,
    Case,
    CurveClass,
    Family,
    FamilySpec,
    classify,
    family_smarandache,
    resolve_profile,
)
from galcurves.quadrature import Grid, cumulative_simpson
from galcurves.smarandache import FRENET_KINDS, smarandache_closed
from galcurves.synthesis import frenet_from_profile

GRID = Grid(0.0, 2.0, 2001)
X = GRID.nodes
P = parse

SPECS = {
    ("geodesic", "general"): ({"theta0": 0.3}, {"kappa_n": P("1 + x/2"), "tau_g": P("x")}),
    ("geodesic", "circular_helix"): ({"e": 2.0, "c": 3.0, "c1": 0.5}, {}),
    ("geodesic", "generalized_helix"): ({"d": 0.5, "kappa_integral0": 0.2}, {"kappa_n": P("1 + x^2/2")}),
    ("geodesic", "salkowski"): ({"m": 1.5, "theta0": 0.1}, {"tau_g": P("1 - x")}),
    ("geodesic", "anti_salkowski"): ({"c": 2.0, "c1": 0.3}, {"kappa_n": P("1 + x")}),
    ("asymptotic", "general"): ({}, {"kappa_g": P("2 - x/2"), "tau_g": P("x^2")}),
    ("asymptotic", "circular_helix"): ({"f": 1.5, "c": -2.0, "c1": 0.1}, {}),
    ("asymptotic", "generalized_helix"): ({"k": 2.0}, {"kappa_g": P("1 + x")}),
    ("asymptotic", "salkowski"): ({"f": 2.0}, {"tau_g": P("sin(x)")}),
    ("asymptotic", "anti_salkowski"): ({"c": 1.0, "c1": 0.0}, {"kappa_g": P("exp(x/2)")}),
    ("curvature_line", "general"): ({"a": 0.4}, {"kappa_g": P("sin(x)"), "kappa_n": P("1")}),
    ("curvature_line", "circular_helix"): ({"a1": 3.0, "a2": 4.0, "a": 0.25}, {}),
}
EXACT_CASES = {("geodesic", "circular_helix"), ("asymptotic", "circular_helix"), ("curvature_line", "circular_helix")}


def spec(family, case, **params):
    return FamilySpec(family, case, params)


def test_every_supported_case_is_exercised():
    assert set(SPECS) == {(f.value, c.value) for f, c in REQUIREMENTS}


@pytest.mark.parametrize("key", sorted(SPECS))
@pytest.mark.parametrize("kind", FRENET_KINDS, ids=lambda k: k.value)
def test_family_form_equals_general_path(key, kind):
    params, functions = SPECS[key]
    s = FamilySpec(*key, params, functions)
    family = family_smarandache(s, GRID, kind).points
    general = smarandache_closed(resolve_profile(s, GRID), kind).points
    tol = 1e-9 if key in EXACT_CASES else 1e-6
    np.testing.assert_allclose(family, general, atol=tol)


@pytest.mark.parametrize("key", sorted(SPECS))
def test_family_fixes_the_right_scalar_to_zero(key):
    params, functions = SPECS[key]
    kg, kn, tg = resolve_profile(FamilySpec(*key, params, functions), GRID).samples
    vanishing = {"geodesic": kg, "asymptotic": kn, "curvature_line": tg}[key[0]]
    assert np.all(vanishing == 0.0)


def test_geodesic_helix_profile():
    kg, kn, tg = resolve_profile(spec("geodesic", "circular_helix", e=1, c=2, c1=0), GRID).samples
    assert np.all(kg == 0) and np.all(kn == 1) and np.all(tg == 2)


def test_helix_phase_start_follows_grid_start():
    g = Grid(1.0, 2.0, 11)
    p = resolve_profile(spec("geodesic", "circular_helix", e=1, c=2, c1=0.5), g)
    assert p.constants.theta0 == 2.5


def test_curvature_line_helix_has_constant_curvature_and_no_torsion():
    p = resolve_profile(spec("curvature_line", "circular_helix", a1=3, a2=4, a=0), GRID)
    f = frenet_from_profile(p)
    np.testing.assert_allclose(f.kappa, 5.0, rtol=1e-15)
    assert np.all(f.tau == 0.0)
    assert p.constants.theta0 == 0.0


# Hand-derived closed forms of the helix cases.

def test_geodesic_helix_tb_and_tnb_closed_forms():
    e, c, c1 = 2.0, 3.0, 0.5
    th = c * X + c1
    r = (e + c) / c
    s = spec("geodesic", "circular_helix", e=e, c=c, c1=c1)
    np.testing.assert_allclose(family_smarandache(s, GRID, "TB").points[:, 1:], np.column_stack([r * np.sin(th), r * np.cos(th)]), atol=1e-12)
    np.testing.assert_allclose(
        family_smarandache(s, GRID, "TNB").points[:, 1:],
        np.column_stack([r * np.sin(th) + np.cos(th), r * np.cos(th) - np.sin(th)]),
        atol=1e-12,
    )


def test_geodesic_helix_tn_with_equal_e_and_c():
    s = spec("geodesic", "circular_helix", e=2.0, c=2.0, c1=0.1)
    th = 2.0 * X + 0.1
    expected = np.column_stack([np.sin(th) + np.cos(th), np.cos(th) - np.sin(th)])
    np.testing.assert_allclose(family_smarandache(s, GRID, "TN").points[:, 1:], expected, atol=1e-12)


def test_geodesic_helix_tn_frame_terms_are_not_scaled():
    # scaling cos/sin by e/c as well would only agree with the general path at e = c
    e, c = 2.0, 3.0
    s = spec("geodesic", "circular_helix", e=e, c=c, c1=0.0)
    th = c * X
    expected = (e / c) * np.column_stack([np.sin(th) + np.cos(th), np.cos(th) - np.sin(th)])
    general = smarandache_closed(resolve_profile(s, GRID), "TN").points[:, 1:]
    assert np.max(np.abs(expected - general)) > 0.1


def test_geodesic_generalized_helix_closed_forms():
    d = 0.5
    s = FamilySpec("geodesic", "generalized_helix", {"d": d}, {"kappa_n": P("1 + x^2/2")})
    th = d * (X + X**3 / 6)
    sn, cs = np.sin(th), np.cos(th)
    expected = {
        "TN": (sn / d + cs, cs / d - sn),
        "TB": (sn / d + sn, cs / d + cs),
        "TNB": ((d + 1) / d * sn + cs, (d + 1) / d * cs - sn),
    }
    for kind, (y, z) in expected.items():
        np.testing.assert_allclose(family_smarandache(s, GRID, kind).points[:, 1:], np.column_stack([y, z]), atol=1e-9)


def test_asymptotic_helix_closed_forms():
    f, c, c1 = 1.5, 2.0, 0.3
    th = c * X + c1
    sn, cs, r = np.sin(th), np.cos(th), (c + f) / c
    s = spec("asymptotic", "circular_helix", f=f, c=c, c1=c1)
    expected = {
        "TN": (-f / c * cs + sn, f / c * sn + cs),
        "TB": (-r * cs, r * sn),
        "TNB": (-r * cs + sn, r * sn + cs),
    }
    for kind, (y, z) in expected.items():
        np.testing.assert_allclose(family_smarandache(s, GRID, kind).points[:, 1:], np.column_stack([y, z]), atol=1e-12)


def test_asymptotic_generalized_helix_at_unit_ratio():
    s = FamilySpec("asymptotic", "generalized_helix", {"k": 1.0}, {"kappa_g": P("1 + x")})
    th = X + X**2 / 2
    sn, cs = np.sin(th), np.cos(th)
    expected = {"TN": (-cs + sn, sn + cs), "TB": (-2 * cs, 2 * sn), "TNB": (-2 * cs + sn, 2 * sn + cs)}
    for kind, (y, z) in expected.items():
        np.testing.assert_allclose(family_smarandache(s, GRID, kind).points[:, 1:], np.column_stack([y, z]), atol=1e-9)


def test_asymptotic_generalized_helix_keeps_the_ratio():
    s = FamilySpec("asymptotic", "generalized_helix", {"k": 2.0}, {"kappa_g": P("1 + x")})
    th = 2.0 * (X + X**2 / 2)
    general = smarandache_closed(resolve_profile(s, GRID), "TB").points[:, 1:]
    np.testing.assert_allclose(general, np.column_stack([-1.5 * np.cos(th), 1.5 * np.sin(th)]), atol=1e-6)


def test_curvature_line_helix_tb_closed_form():
    a1, a2, a = 3.0, 4.0, 0.25
    Pc = a1 * np.sin(a) + a2 * np.cos(a)
    Rc = a1 * np.cos(a) - a2 * np.sin(a)
    s = spec("curvature_line", "circular_helix", a1=a1, a2=a2, a=a)
    expected = np.column_stack([Pc * X - Rc / 5.0, Rc * X + Pc / 5.0])
    np.testing.assert_allclose(family_smarandache(s, GRID, "TB").points[:, 1:], expected, atol=1e-12)


def test_curvature_line_helix_when_rotated_pair_has_no_second_component():
    # with a1 cos a = a2 sin a the rotated pair is (P, 0)
    a = 0.6
    a1, a2 = np.sin(a), np.cos(a)
    s = spec("curvature_line", "circular_helix", a1=a1, a2=a2, a=a)
    np.testing.assert_allclose(family_smarandache(s, GRID, "TN").points[:, 1:], np.column_stack([X + 1, 0 * X]), atol=1e-12)
    tnb_y = X + (a1 * (np.sin(a) - np.cos(a)) + a2 * (np.cos(a) + np.sin(a)))
    np.testing.assert_allclose(family_smarandache(s, GRID, "TNB").points[:, 1], tnb_y, atol=1e-12)


def test_geodesic_salkowski_integrates_unit_curvature():
    s = FamilySpec("geodesic", "salkowski", {"m": 2.0}, {"tau_g": P("1")})
    th = X
    y = 2.0 * cumulative_simpson(np.cos(th), GRID.h) + np.cos(th)
    np.testing.assert_allclose(family_smarandache(s, GRID, "TN").points[:, 1], y, atol=1e-15)
    np.testing.assert_allclose(y, 2.0 * np.sin(X) + np.cos(X), atol=1e-12)


# Validation

@pytest.mark.parametrize(
    "family, case, params, functions, fragment",
    [
        ("geodesic", "circular_helix", {"e": 1, "c": 1}, {}, "missing parameter 'c1'"),
        ("geodesic", "circular_helix", {"e": 1, "c": 0, "c1": 0}, {}, "'c' must be nonzero"),
        ("geodesic", "circular_helix", {"e": -1, "c": 1, "c1": 0}, {}, "'e' must be positive"),
        ("geodesic", "circular_helix", {"e": 1, "c": 1, "c1": 0, "k": 2}, {}, "unexpected parameter 'k'"),
        ("geodesic", "salkowski", {"m": 1}, {}, "missing function 'tau_g'"),
        ("asymptotic", "generalized_helix", {"k": 0}, {"kappa_g": P("1")}, "'k' must be nonzero"),
        ("curvature_line", "circular_helix", {"a1": 0, "a2": 0, "a": 0}, {}, "cannot both vanish"),
        ("curvature_line", "salkowski", {}, {}, "no closed forms"),
        ("spiral", "general", {}, {}, "spiral"),
    ],
)
def test_invalid_specs_rejected(family, case, params, functions, fragment):
    with pytest.raises(SpecError) as info:
        FamilySpec(family, case, params, functions)
    assert fragment in str(info.value)


def test_all_problems_listed_together():
    with pytest.raises(SpecError) as info:
        FamilySpec("geodesic", "circular_helix", {"e": 0})
    assert len(info.value.problems) == 3


def test_geodesic_needs_positive_normal_curvature_on_grid():
    s = FamilySpec("geodesic", "anti_salkowski", {"c": 1, "c1": 0}, {"kappa_n": P("x - 1")})
    with pytest.raises(SpecError):
        resolve_profile(s, GRID)


def test_family_forms_only_for_frenet_kinds():
    with pytest.raises(SpecError):
        family_smarandache(spec("geodesic", "circular_helix", e=1, c=1, c1=0), GRID, "TQ")


def test_enum_values_accepted_directly():
    s = FamilySpec(Family.ASYMPTOTIC, Case.GENERAL, {}, {"kappa_g": P("1"), "tau_g": P("x")})
    assert s.family is Family.ASYMPTOTIC


# Classification

@pytest.mark.parametrize(
    "kappa, tau, expected",
    [
        (0 * X, X, CurveClass.STRAIGHT_LINE),
        (1 + X, 0 * X, CurveClass.PLANE_CURVE),
        (2 + 0 * X, 3 + 0 * X, CurveClass.CIRCULAR_HELIX),
        (2 + 0 * X, -3 + 0 * X, CurveClass.CIRCULAR_HELIX),
        (1 + X**2, 3 * (1 + X**2), CurveClass.GENERALIZED_HELIX),
        (1 + 0 * X, 1 - X, CurveClass.SALKOWSKI),
        (np.exp(X), 2 + 0 * X, CurveClass.ANTI_SALKOWSKI),
        (np.sqrt(1 + X**2), X, CurveClass.GENERAL),
    ],
)
def test_classification_table(kappa, tau, expected):
    assert classify(kappa, tau) is expected


def test_straight_line_checked_before_plane_curve():
    assert classify(0 * X, 0 * X) is CurveClass.STRAIGHT_LINE


def test_tolerance_controls_constancy():
    wobble = 1 + 1e-7 * np.sin(X)
    assert classify(wobble, 1 - X) is CurveClass.SALKOWSKI
    assert classify(wobble, 1 - X, tol=1e-9) is CurveClass.GENERAL


def test_mismatched_lengths_rejected():
    with pytest.raises(ValueError):
        classify(np.ones(3), np.ones(4))


@pytest.mark.parametrize("family", ["geodesic", "asymptotic"])
@pytest.mark.parametrize("case", ["circular_helix", "generalized_helix", "salkowski", "anti_salkowski"])
def test_family_profiles_classify_as_their_case(family, case):
    params, functions = SPECS[(family, case)]
    f = frenet_from_profile(resolve_profile(FamilySpec(family, case, params, functions), GRID))
    assert classify(f.kappa, f.tau, 1e-6).value == case
