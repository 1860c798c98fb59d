#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "normknot/oracle.hpp"

using namespace normknot;

TEST_CASE("enumerate_reps: counts match the scalar enumeration") {
    // C3 -> GL2(F2): the identity plus the two matrices of order 3
    auto reps = enumerate_reps(cyclic_group(3), 2);
    CHECK(reps.size() == 3);
    CHECK(reps.size() == count_matrices_with_order_dividing_brute(2, 3));

    auto reps53 = enumerate_reps(cyclic_group(3), 5);
    CHECK(reps53.size() == count_matrices_with_order_dividing_brute(5, 3));

    auto reps74 = enumerate_reps(cyclic_group(4), 7);
    CHECK(reps74.size() == count_matrices_with_order_dividing_brute(7, 4));
}

TEST_CASE("enumerate_reps: every nontrivial rep of C3 over F5 is in the nonsplit family") {
    auto traces_of = [](const Rep2& rep) {
        std::vector<std::int64_t> tr;
        for (const Mat2& m : rep.elem_images) tr.push_back(m.trace());
        return tr;
    };
    std::vector<std::vector<std::int64_t>> family;
    family.push_back(traces_of(build_rep_nonsplit(5, 3, 1)));
    for (const Rep2& rep : enumerate_reps(cyclic_group(3), 5)) {
        if (rep.gen_images[0].is_identity()) continue;
        CHECK(std::find(family.begin(), family.end(), traces_of(rep)) != family.end());
    }
}

TEST_CASE("enumerate_reps: dihedral extremal reps sit in the named family") {
    GroupTable d3 = dihedral_group(3);
    GroupTable htau = GroupTable::generate({d3.generators()[1]}, 3);
    auto traces_of = [](const Rep2& rep) {
        std::vector<std::int64_t> tr;
        for (const Mat2& m : rep.elem_images) tr.push_back(m.trace());
        return tr;
    };
    std::vector<std::int64_t> w = traces_of(build_rep_dihedral(5, 3, 1));
    std::size_t extremal_count = 0;
    for (const Rep2& rep : enumerate_reps(d3, 5)) {
        if (is_extremal(rep, htau).extremal) {
            ++extremal_count;
            CHECK(traces_of(rep) == w);
        }
    }
    CHECK(extremal_count > 0);
}

TEST_CASE("enumerate_reps rejects unsupported shapes") {
    GroupTable three_gens = GroupTable::generate(
        {Perm(std::vector<Point>{1, 0, 2, 3}), Perm(std::vector<Point>{0, 1, 3, 2}),
         Perm(std::vector<Point>{1, 0, 3, 2})},
        4);
    CHECK_THROWS_AS(enumerate_reps(three_gens, 5), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_reps(cyclic_group(3), 3), std::invalid_argument);
}

TEST_CASE("dim-1 reps") {
    // C2 -> F5^x has two characters
    auto chis = enumerate_dim1_reps(cyclic_group(2), 5);
    CHECK(chis.size() == 2);
    // D5 -> F3^x: trivial and the sign character
    auto d5 = enumerate_dim1_reps(dihedral_group(5), 3);
    CHECK(d5.size() == 2);
}

TEST_CASE("metacyclic pairs") {
    // C5 x| C2 with the inversion character is dihedral of degree 10
    auto gh = metacyclic_pair(5, {4}, cyclic_group(2),
                              orbit_and_stabilizer(cyclic_group(2), 0).stabilizer);
    CHECK(gh.first.degree() == 10);
    CHECK(gh.first.order() == 10);
    CHECK(!gh.first.is_abelian());
    CHECK(gh.second.order() == 1);

    // the trivial character gives the cyclic group
    auto gh2 = metacyclic_pair(5, {1}, cyclic_group(2),
                               orbit_and_stabilizer(cyclic_group(2), 0).stabilizer);
    CHECK(gh2.first.order() == 10);
    CHECK(gh2.first.is_abelian());
}

TEST_CASE("small extremal classification cells are clean") {
    CHECK(verify_extremal_classification(2, 5).ok());
    CHECK(verify_extremal_classification(5, 5).ok());
    CHECK(verify_extremal_classification(7, 3).ok());
}

TEST_CASE("small pair classification cells are clean") {
    CHECK(verify_pair_classification(2, 3).ok());
    SweepResult r = verify_pair_classification(5, 3);
    CHECK(r.ok());
    CHECK(r.checks > 100);
}

TEST_CASE("small isomorphism sweep is clean") {
    SweepResult r = verify_semidirect_isomorphisms(400);
    CHECK(r.ok());
    CHECK(r.cells >= 3);  // at least (7,3) split, (2,3)/(5,3)/(11,3) nonsplit, (5,3) dihedral
}

TEST_CASE("cross checks on flagship pairs") {
    CHECK(cross_check(build_beta(2, 3), 2).ok());
    CHECK(cross_check(build_gamma(5, 3), 5).ok());
    CHECK(cross_check(build_alpha(7, 3, 2), 7).ok());
}

TEST_CASE("constructed pair tables cover the known degree-6 classes") {
    auto pairs = constructed_pairs_of_degree(6);
    CHECK(pairs.size() > 20);
    bool saw_a4 = false;
    for (const CatalogPair& pair : pairs) {
        CHECK(is_transitive(pair.group));
        CHECK(pair.degree() == 6);
        if (pair.group.order() == 12) saw_a4 = true;
    }
    CHECK(saw_a4);
}
