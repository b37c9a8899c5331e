import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from granville import CycloField, ExprContext, parse
from granville.classical import e2_by_division, e3_by_division, granville_map, e3_generator
from granville.invariance import (
    Adequate,
    AdequateMap,
    BadGeneratorError,
    Decomposition,
    Identity,
    NonconstantLeading,
    NonlinearInZ,
    NotInvariantError,
    TranslationLike,
    UnitNotRootOfUnity,
    adequate_map_of,
    apply_T,
    classify_map,
    coprimality_report,
    decompose,
    expand,
    first_difference,
    invariant_generator,
    is_invariant,
    iterate_p,
    iterate_p_by_substitution,
    lemma1_witnesses,
    orbit,
)
from granville.multipoly import degree_in_z, eval_z_zero, z_coefficients
from granville.randgen import random_adequate_map, random_coefficients, random_invariant, random_x_poly

XYZ = ExprContext(("x", "y", "z"))
K3 = ExprContext(("x", "z"), 3)


def P(text, ctx=XYZ):
    return parse(text, ctx)


def test_apply_T_examples():
    g = granville_map()
    assert apply_T(P("z"), g) == P("-x - y - z")
    assert apply_T(P("x^2 + 1"), g) == P("x^2 + 1")
    assert apply_T(P("z*(x+y+z)"), g) == P("z*(x+y+z)")


def test_is_invariant_examples():
    g = granville_map()
    assert is_invariant(P("x^2 + y^2 + z^2 + x*y + y*z + z*x"), g)
    assert not is_invariant(P("z"), g)
    cube = adequate_map_of(parse("w*z", K3))
    assert is_invariant(parse("z^3", K3), cube)


def test_classification_examples():
    g = classify_map(P("-(x+y+z)"))
    assert isinstance(g, Adequate)
    assert g.map.m == 2 and g.map.q == -1 and g.map.r == P("-(x+y)")
    assert isinstance(classify_map(P("z^2")), NonlinearInZ)
    assert isinstance(classify_map(P("z + x")), TranslationLike)
    c = classify_map(parse("w*z + x", K3))
    assert isinstance(c, Adequate)
    assert c.map.m == 3 and c.map.q == K3.field.gen and c.map.r == K3.var("x")


def test_classification_remaining_variants():
    assert isinstance(classify_map(P("z")), Identity)
    assert isinstance(classify_map(P("2*z")), UnitNotRootOfUnity)
    assert isinstance(classify_map(P("x*z")), NonconstantLeading)
    assert isinstance(classify_map(P("1/2*z + x")), UnitNotRootOfUnity)
    const = classify_map(P("x + 1"))
    assert isinstance(const, NonlinearInZ) and const.degree == 0
    ctx = ExprContext(("x", "z"), 4)
    assert isinstance(classify_map(parse("(1 + w)*z", ctx)), UnitNotRootOfUnity)
    assert classify_map(parse("-w*z", K3)).map.m == 6
    for p in ["z", "-z", "z^2", "z + x", "2*z", "x*z"]:
        cls = classify_map(P(p))
        assert cls.adequate == isinstance(cls, (Identity, Adequate))


def test_three_fold_substitution_is_identity():
    map_ = adequate_map_of(parse("w*z + x", K3))
    F = parse("z^2 + x*z", K3)
    G = F
    for _ in range(3):
        G = apply_T(G, map_)
    assert G == F
    assert apply_T(F, map_) != F


def test_adequate_map_validation():
    Q = CycloField(1)
    r = XYZ.zero()
    with pytest.raises(ValueError):
        AdequateMap(3, Q(-1), r)
    with pytest.raises(ValueError):
        AdequateMap(1, Q.one, P("x"))
    with pytest.raises(ValueError):
        AdequateMap(2, Q(-1), P("z"))
    with pytest.raises(ValueError):
        AdequateMap(2, CycloField(2)(-1), r)
    with pytest.raises(ValueError):
        adequate_map_of(P("z^2"))


def test_iterate_p_examples():
    g = granville_map()
    assert iterate_p(g, 0) == P("z")
    assert iterate_p(g, 1) == P("-z - (x+y)")
    assert iterate_p(g, 2) == P("z")
    m3 = adequate_map_of(parse("w*z + x", K3))
    zeta = K3.field.gen
    assert iterate_p(m3, 2) == parse("w^2*z + (1 + w)*x", K3)
    assert iterate_p(m3, 2) == (K3.z - K3.var("x")) * zeta ** 2
    assert iterate_p(m3, 3) == K3.z
    with pytest.raises(ValueError):
        iterate_p(g, -1)


def test_invariant_generator_examples():
    ident = adequate_map_of(P("z"))
    assert invariant_generator(ident) == P("z")
    assert invariant_generator(granville_map()) == P("-z^2 - x*z - y*z")
    assert invariant_generator(granville_map()) == -e3_generator()
    cube = adequate_map_of(parse("w*z", K3))
    assert invariant_generator(cube) == parse("z^3", K3)


def test_decompose_examples():
    neg = adequate_map_of(ExprContext(("x", "z")).z * -1)
    dec = decompose(parse("z^2", ExprContext(("x", "z"))), neg)
    assert dec.generator == parse("-z^2", ExprContext(("x", "z")))
    assert dec.coeffs == (0, -1)
    E35 = e3_by_division(5)
    dec = decompose(E35, granville_map(), e3_generator())
    assert dec.coeffs == (P("x^2 + x*y + y^2"), 1)
    assert E35.evaluate([1, 1, 1]) == 6
    with pytest.raises(NotInvariantError) as info:
        decompose(P("z"), granville_map())
    assert info.value.monomial == (1, 0, 0)
    assert "x" in str(info.value)


def test_decompose_b_squared_plus_x_b():
    rng = random.Random(5)
    for m in (2, 3, 4, 6):
        map_ = random_adequate_map(rng, m, 2)
        b = invariant_generator(map_)
        x1 = map_.ctx.var(0)
        assert decompose(b ** 2 + x1 * b, map_).coeffs == (0, x1, 1)


def test_expand_examples():
    ctx = ExprContext(("x", "z"))
    assert expand(Decomposition(parse("-z^2", ctx), (ctx.zero(), ctx.const(-1)))) == parse("z^2", ctx)
    assert expand(Decomposition(parse("z^2", ctx), (parse("x + 3", ctx),))) == parse("x + 3", ctx)
    b = e3_generator()
    assert expand(Decomposition(b, (P("x^2 + x*y + y^2"), XYZ.one()))) == e3_by_division(5)


def test_decompose_zero_and_constants():
    g = granville_map()
    assert decompose(XYZ.zero(), g).coeffs == ()
    assert decompose(P("x + 5"), g).coeffs == (P("x + 5"),)


def test_identity_map_decomposes_by_z_coefficients():
    ident = adequate_map_of(P("z"))
    F = P("x*z^3 - y*z + 2")
    assert list(decompose(F, ident).coeffs) == z_coefficients(F)


def test_user_generator_must_be_a_multiple_of_b():
    g = granville_map()
    F = e3_by_division(7)
    d3 = decompose(F, g, e3_generator() * 3)
    assert expand(d3) == F
    with pytest.raises(BadGeneratorError):
        decompose(F, g, P("z^2"))
    with pytest.raises(BadGeneratorError):
        decompose(F, g, P("z*(x+y+z) + x"))
    with pytest.raises(BadGeneratorError):
        decompose(F, g, P("z*(x+y+z)^2"))
    with pytest.raises(BadGeneratorError):
        decompose(F, g, parse("z^2", ExprContext(("x", "y", "z"), 3)))


def test_orbit_quotient_examples():
    g = granville_map()
    assert lemma1_witnesses(e3_generator(), g) == [P("x + y + z"), -P("z")]
    assert lemma1_witnesses(P("x + 2"), g) == [XYZ.zero(), XYZ.zero()]
    q0, q1 = lemma1_witnesses(e3_by_division(7), g)
    W = e3_by_division(7) - e2_by_division(7)
    assert q0 * P("z") == W and q1 * P("-z - x - y") == W


def test_coprimality_examples():
    (j, k, w), = coprimality_report(granville_map())
    assert (j, k) == (0, 1) and w == P("-(x+y)")
    cube = adequate_map_of(parse("w*z", K3))
    assert all(not w for _, _, w in coprimality_report(cube))
    m3 = adequate_map_of(parse("w*z + x", K3))
    report = coprimality_report(m3)
    assert len(report) == 3 and all(w for _, _, w in report)


def test_orbit_and_first_difference():
    assert orbit(granville_map()) == [P("z"), P("-x - y - z")]
    assert first_difference(P("x + z"), P("x + z")) is None
    assert first_difference(P("x^2 + z"), P("z")) == (2, 0, 0)


ORDERS = st.sampled_from([1, 2, 3, 4, 6])
seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=60, deadline=None)
@given(seeds, ORDERS, st.integers(1, 3))
def test_round_trip(seed, m, n_x):
    rng = random.Random(seed)
    map_ = random_adequate_map(rng, m, n_x)
    coeffs = random_coefficients(rng, map_.ctx, rng.randint(0, 4))
    F = expand(Decomposition(invariant_generator(map_), coeffs))
    assert decompose(F, map_).coeffs == coeffs


@settings(max_examples=40, deadline=None)
@given(seeds, ORDERS, st.integers(1, 3))
def test_orbit_closes_and_generator_is_invariant(seed, m, n_x):
    map_ = random_adequate_map(random.Random(seed), m, n_x)
    assert iterate_p(map_, m) == map_.ctx.z
    for k in range(m + 1):
        assert iterate_p(map_, k) == iterate_p_by_substitution(map_, k)
    b = invariant_generator(map_)
    assert is_invariant(b, map_) and degree_in_z(b) == m


@settings(max_examples=40, deadline=None)
@given(seeds, ORDERS, st.integers(1, 3))
def test_invariants_form_a_subalgebra(seed, m, n_x):
    rng = random.Random(seed)
    map_ = random_adequate_map(rng, m, n_x)
    F, _ = random_invariant(rng, map_)
    G, _ = random_invariant(rng, map_)
    c = random_x_poly(rng, map_.ctx, 2, 2)
    for H in (F + G, F * G, c * F):
        assert is_invariant(H, map_)


@settings(max_examples=40, deadline=None)
@given(seeds, ORDERS, st.integers(1, 3))
def test_degree_count(seed, m, n_x):
    rng = random.Random(seed)
    map_ = random_adequate_map(rng, m, n_x)
    F, _ = random_invariant(rng, map_)
    if not F:
        return
    assert len(decompose(F, map_).coeffs) == degree_in_z(F) // m + 1
    assert degree_in_z(F) % m == 0


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4, 6]))
def test_r_zero_invariants_are_polynomials_in_z_to_the_m(seed, m):
    rng = random.Random(seed)
    ctx = ExprContext(("x", "y", "z"), m)
    map_ = AdequateMap(m, ctx.field.root_of_unity(1), ctx.zero())
    F = sum((random_x_poly(rng, ctx, 2, 2) * ctx.z ** (m * k) for k in range(3)), ctx.zero())
    assert is_invariant(F, map_)
    bad_exp = m * rng.randint(0, 2) + rng.randint(1, m - 1)
    G = F + random_x_poly(rng, ctx, 1, 2, nonzero=True) * ctx.z ** bad_exp
    assert not is_invariant(G, map_)
    with pytest.raises(NotInvariantError):
        decompose(G, map_)


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_top_coefficient_relation_in_the_granville_setting(seed):
    # T F = F forces q^d = 1 on the top z-coefficient u and
    # q^(d-1) (d u r + v) = v on the next one v
    rng = random.Random(seed)
    g = granville_map()
    F, _ = random_invariant(rng, g)
    d = degree_in_z(F)
    if d < 1:
        return
    cs = z_coefficients(F)
    u, v = cs[d], cs[d - 1]
    q, r = g.q, g.r
    assert q ** d == 1
    assert (u * r * d + v) * q ** (d - 1) == v


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4, 6]))
def test_orbit_quotients_exist(seed, m):
    rng = random.Random(seed)
    map_ = random_adequate_map(rng, m, rng.randint(1, 3))
    F, _ = random_invariant(rng, map_)
    W = F - eval_z_zero(F)
    for k, q in enumerate(lemma1_witnesses(F, map_)):
        assert q * iterate_p(map_, k) == W


@settings(max_examples=30, deadline=None)
@given(seeds, st.sampled_from([2, 3, 4, 6]))
def test_coprimality_iff_translation_part(seed, m):
    rng = random.Random(seed)
    map_ = random_adequate_map(rng, m, 2)
    report = coprimality_report(map_)
    assert len(report) == m * (m - 1) // 2
    if map_.r:
        assert all(w for _, _, w in report)
    else:
        assert not any(w for _, _, w in report)
