#include <doctest.h>

#include "property_suites.hpp"

namespace {

void require_clean(const props::Tally& t) {
    CAPTURE(t.name);
    CAPTURE(t.first_failure);
    CHECK(t.cases > 0);
    CHECK(t.failures == 0);
}

}  // namespace

TEST_SUITE("properties") {
    TEST_CASE("reduced resultants") {
        require_clean(props::rres_division(200));
        require_clean(props::rres_composition(200));
    }

    TEST_CASE("goodness consequences and the badness constructor") {
        const auto [nonzero, af] = props::goodness_consequences();
        require_clean(nonzero);
        require_clean(af);
        // The corpus must exercise both sides of the verdict.
        CHECK(nonzero.skipped > 0);
        require_clean(props::badness_constructor(60));
    }

    TEST_CASE("polynomial core") {
        require_clean(props::resultant_multiplicativity(100));
        require_clean(props::resultant_vanishing(100));
        require_clean(props::squarefree_reconstruction(100));
        require_clean(props::cayley_hamilton(60));
        require_clean(props::ideal_constant_divides_resultant(100));
    }

    TEST_CASE("ideal constants against the lattice oracle, one slice in six") {
        // The acceptance runner covers every pair; this slice keeps the unit run short.
        require_clean(props::ideal_constant_exhaustive(6));
    }

    TEST_CASE("binomial commutator formula") { require_clean(props::binomial_formula(100)); }

    TEST_CASE("subset lemmas in abelian groups of order at most 24") {
        // Sum over n <= 24 of the products of partition numbers of the exponents in n.
        CHECK(props::abelian_groups(24).size() == 37);
        const auto [growth, escape] = props::subset_lemmas(24, 4);
        require_clean(growth);
        require_clean(escape);
    }

    TEST_CASE("eigenspace gradings and graded bounds") {
        const auto [grading, bounds] = props::eigenspace_bounds();
        require_clean(grading);
        require_clean(bounds);
    }

    TEST_CASE("group corpus") {
        for (const auto& t : props::group_properties()) require_clean(t);
    }
}
