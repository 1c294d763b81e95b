"""Monomial operad presentations: normal forms, engines, growth dichotomy."""

import random

import pytest

from helpers import BINARY, UNARY_BINARY, all_monomials
from oplab import (
    Alphabet,
    MonomialOperadPresentation,
    dim_by_arity,
    dim_by_weight,
    divides,
    enumerate_irr,
    gap_dichotomy_check,
    is_normal_form,
    parse_monomial,
    submonomials,
)
from oplab.monomial import (
    GROWTH_BOUNDED,
    GROWTH_LINEAR,
    GROWTH_SUPERLINEAR,
    CompletenessError,
    PresentationError,
    PresentationSyntaxError,
    format_presentation,
    parse_presentation,
)

SHUFFLE = "a(a(*,*),a(*,*))"
CHAIN11 = "a(a(a(*,*),*),*)"
CHAIN21 = "a(*,a(a(*,*),*))"
CHAIN22 = "a(*,a(*,a(*,*)))"


def binary_presentation(*literals, name=None):
    rels = [parse_monomial(lit, BINARY) for lit in literals]
    return MonomialOperadPresentation(BINARY, rels, name=name)


@pytest.fixture
def fibonacci():
    return binary_presentation(SHUFFLE, CHAIN11, name="fibonacci")


class TestPresentation:
    def test_self_reduction(self):
        small = parse_monomial("a(a(*,*),*)", BINARY)
        big = parse_monomial("a(a(a(*,*),*),*)", BINARY)
        p = MonomialOperadPresentation(BINARY, [big, small, small])
        assert p.relations == (small,)

    def test_trivial_relation_rejected(self):
        from oplab import TreeMonomial
        with pytest.raises(PresentationError):
            MonomialOperadPresentation(BINARY, [TreeMonomial.trivial(BINARY)])

    def test_empty_relations_is_free(self):
        p = MonomialOperadPresentation(BINARY, ())
        assert all(is_normal_form(p, t) for t in all_monomials(BINARY, 4))


class TestNormalForms:
    def test_fibonacci_examples(self, fibonacci):
        assert not is_normal_form(fibonacci, parse_monomial(CHAIN11, BINARY))
        assert is_normal_form(fibonacci, parse_monomial("a(a(*,a(*,*)),*)", BINARY))

    def test_enumerate_free_counts(self):
        free = MonomialOperadPresentation(BINARY, ())
        got = list(enumerate_irr(free, 3))
        assert len(got) == 1 + 1 + 2 + 5
        assert len(set(got)) == len(got)
        weights = [t.weight for t in got]
        assert weights == sorted(weights)

    def test_enumerate_fibonacci_counts(self, fibonacci):
        # computed by brute force; both weight-2 monomials are normal since
        # every relation has weight 3
        per_weight = {}
        for t in enumerate_irr(fibonacci, 4):
            per_weight[t.weight] = per_weight.get(t.weight, 0) + 1
        assert [per_weight.get(w, 0) for w in range(5)] == [1, 1, 2, 3, 5]

    def test_all_weight2_relations_kill_everything(self):
        p = binary_presentation("a(a(*,*),*)", "a(*,a(*,*))")
        assert all(t.weight < 2 for t in enumerate_irr(p, 5))

    def test_enumeration_is_deterministic(self, fibonacci):
        a = [repr(t) for t in enumerate_irr(fibonacci, 5)]
        b = [repr(t) for t in enumerate_irr(fibonacci, 5)]
        assert a == b

    def test_irr_closed_under_submonomials(self, fibonacci):
        for t in enumerate_irr(fibonacci, 5):
            if t.is_trivial:
                continue
            for s in submonomials(t):
                assert is_normal_form(fibonacci, s)


class TestDimensions:
    def test_powers_of_two(self):
        p = binary_presentation(SHUFFLE)
        dims = dim_by_arity(p, 20)
        assert dims[1] == 1
        assert all(dims[n] == 2 ** (n - 2) for n in range(2, 21))

    def test_eventually_constant_two(self):
        p = binary_presentation(SHUFFLE, CHAIN21, CHAIN22)
        dims = dim_by_arity(p, 30)
        assert dims.values[:4] == (0, 1, 1, 2)
        assert all(dims[n] == 2 for n in range(3, 31))

    def test_fibonacci_recurrence(self, fibonacci):
        dims = dim_by_arity(fibonacci, 25, engine="brute")
        assert dims[1] == dims[2] == 1
        assert all(dims[n] == dims[n - 1] + dims[n - 2] for n in range(3, 26))

    def test_engines_agree_on_random_presentations(self):
        rng = random.Random(3)
        pool = [t for t in all_monomials(BINARY, 3) if t.weight >= 2]
        for _ in range(25):
            rels = rng.sample(pool, k=rng.randint(0, 4))
            p = MonomialOperadPresentation(BINARY, rels)
            assert dim_by_arity(p, 9, engine="brute").values == \
                dim_by_arity(p, 9, engine="dp").values
            assert dim_by_weight(p, 8, engine="brute").values == \
                dim_by_weight(p, 8, engine="dp").values

    def test_engines_agree_with_mixed_arities(self):
        rng = random.Random(9)
        al = Alphabet.of(u=1, b=2, c=3)
        pool = [t for t in all_monomials(al, 2) if t.weight >= 1]
        for _ in range(10):
            rels = rng.sample(pool, k=rng.randint(0, 4))
            p = MonomialOperadPresentation(al, rels)
            assert dim_by_arity(p, 8, engine="brute", weight_cap=6).values == \
                dim_by_arity(p, 8, engine="dp", weight_cap=6).values

    def test_unary_requires_weight_cap(self):
        p = MonomialOperadPresentation(UNARY_BINARY, ())
        with pytest.raises(CompletenessError):
            dim_by_arity(p, 5)
        dims = dim_by_arity(p, 5, weight_cap=4)
        assert not dims.exact

    def test_free_weight_counts_are_catalan(self):
        free = MonomialOperadPresentation(BINARY, ())
        assert dim_by_weight(free, 5).values == (1, 1, 2, 5, 14, 42)

    def test_weight_values_0_and_1(self):
        p = binary_presentation(SHUFFLE)
        wc = dim_by_weight(p, 4)
        assert wc[0] == 1 and wc[1] == 1

    def test_more_relations_never_grow_dims(self):
        rng = random.Random(17)
        pool = [t for t in all_monomials(BINARY, 3) if t.weight >= 2]
        for _ in range(15):
            rels = rng.sample(pool, k=rng.randint(0, 3))
            extra = rng.choice(pool)
            small = MonomialOperadPresentation(BINARY, rels)
            large = MonomialOperadPresentation(BINARY, rels + [extra])
            a = dim_by_arity(small, 9).values
            b = dim_by_arity(large, 9).values
            assert all(y <= x for x, y in zip(a, b))

    def test_reduced_connected_convention(self):
        p = binary_presentation(SHUFFLE)
        dims = dim_by_arity(p, 6)
        assert dims[0] == 0 and dims[1] == 1


class TestGapDichotomy:
    def test_eventually_constant_is_linear_with_d5(self):
        p = binary_presentation(SHUFFLE, CHAIN21, CHAIN22)
        report = gap_dichotomy_check(p, 30)
        assert report.criterion_d == 5
        assert report.growth_class == GROWTH_LINEAR
        assert report.first_violation is None

    def test_free_is_superlinear(self):
        free = MonomialOperadPresentation(BINARY, ())
        report = gap_dichotomy_check(free, 12)
        assert report.criterion_d is None
        assert report.growth_class == GROWTH_SUPERLINEAR
        assert report.affine_fit is None

    def test_all_weight2_is_bounded(self):
        p = binary_presentation("a(a(*,*),*)", "a(*,a(*,*))")
        report = gap_dichotomy_check(p, 10)
        assert report.criterion_d == 3
        assert report.growth_class == GROWTH_BOUNDED
        assert report.weight_counts.values[:4] == (1, 1, 0, 0)

    def test_needs_horizon_six(self, fibonacci):
        with pytest.raises(PresentationError):
            gap_dichotomy_check(fibonacci, 5)


class TestPresentationFiles:
    def test_round_trip(self, fibonacci):
        text = format_presentation(fibonacci)
        again = parse_presentation(text)
        assert again == fibonacci
        assert again.name == "fibonacci"

    def test_parse_errors_carry_line(self):
        with pytest.raises(PresentationSyntaxError) as err:
            parse_presentation("generator a 2\nrelation a(*\n")
        assert err.value.lineno == 2
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("generator a\n")
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("relation a(*,*)\n")
        with pytest.raises(PresentationSyntaxError):
            parse_presentation("frobnicate a\n")

    def test_comments_and_blanks(self):
        p = parse_presentation("# comment\n\ngenerator a 2\nrelation a(a(*,*),*)  # tail\n")
        assert len(p.relations) == 1
