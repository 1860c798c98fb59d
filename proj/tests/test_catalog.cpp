#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "normknot/catalog.hpp"
#include "normknot/sha.hpp"

using namespace normknot;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        path = std::string("normknot_test_") + std::to_string(std::rand()) + ".json";
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

void check_pair_shape(const CatalogPair& pair) {
    CHECK(is_transitive(pair.group));
    CHECK(pair.group.order() / pair.stabilizer.order() == pair.degree());
    CHECK(normal_core(pair.group, pair.stabilizer).order() == 1);
    CHECK(pair.stabilizer == orbit_and_stabilizer(pair.group, 0).stabilizer);
}

}  // namespace

TEST_CASE("beta(2,3) is the degree-6 alternating pair") {
    CatalogPair pair = build_beta(2, 3);
    CHECK(pair.degree() == 6);
    CHECK(pair.group.order() == 12);
    CHECK(pair.stabilizer.order() == 2);
    check_pair_shape(pair);
}

TEST_CASE("gamma(5,3) is the degree-15 dihedral pair") {
    CatalogPair pair = build_gamma(5, 3);
    CHECK(pair.degree() == 15);
    CHECK(pair.group.order() == 150);
    CHECK(pair.stabilizer.order() == 10);
    check_pair_shape(pair);
}

TEST_CASE("alpha and c4 shapes") {
    CatalogPair a = build_alpha(7, 3, 2);
    CHECK(a.degree() == 21);
    CHECK(a.group.order() == 147);
    check_pair_shape(a);

    CatalogPair c = build_c4(5);
    CHECK(c.degree() == 20);
    CHECK(c.group.order() == 100);
    check_pair_shape(c);

    CHECK_THROWS_AS(build_alpha(7, 3, 3), std::invalid_argument);  // inverse 2 < 3
    CHECK_THROWS_AS(build_alpha(5, 3, 2), std::invalid_argument);  // 3 does not divide 4
    CHECK_THROWS_AS(build_c4(7), std::invalid_argument);
    CHECK_THROWS_AS(build_beta(7, 3), std::invalid_argument);  // 3 divides 7-1, not 7+1
    CHECK_THROWS_AS(build_gamma(3, 2), std::invalid_argument);
}

TEST_CASE("times_cyclic extends the degree and keeps the shape") {
    CatalogPair base = build_beta(2, 3);
    CatalogPair big = build_times_cyclic(base, 3);
    CHECK(big.degree() == 18);
    CHECK(big.group.order() == 36);
    CHECK(big.stabilizer.order() == 2);
    check_pair_shape(big);

    // conditions (a)(b)(c) survive the extension
    Context base_ctx = validate(base.group, base.stabilizer, 2);
    Context big_ctx = validate(big.group, big.stabilizer, 2);
    CHECK(check_abc(base_ctx).all());
    CHECK(check_abc(big_ctx).all());

    CatalogPair same = build_times_cyclic(base, 1);
    CHECK(same.degree() == 6);
    CHECK(same.group.order() == 12);
}

TEST_CASE("times_cyclic at (5,3) x 2 gives the squarefree degree-30 witness") {
    CatalogPair pair = build_times_cyclic(build_beta(5, 3), 2);
    CHECK(pair.degree() == 30);
    CHECK(pair.group.order() == 150);
    check_pair_shape(pair);
    Context ctx = validate(pair.group, pair.stabilizer, 5);
    CHECK(check_abc(ctx).all());
}

TEST_CASE("semidirect_ext builds the degree-3pl extension") {
    CatalogPair base = build_beta(2, 3);
    CatalogPair ext = build_semidirect_ext(base, 5);
    CHECK(ext.degree() == 30);
    CHECK(ext.group.order() == 300);
    check_pair_shape(ext);
    Context ctx = validate(ext.group, ext.stabilizer, 2);
    CHECK(check_abc(ctx).all());

    CHECK_THROWS_AS(build_semidirect_ext(base, 3), std::invalid_argument);
    CHECK_THROWS_AS(build_semidirect_ext(base, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_semidirect_ext(build_c4(5), 7), std::invalid_argument);
}

TEST_CASE("label grammar") {
    CHECK(build_from_label("beta:p=5,l=3").group.order() == 75);
    CHECK(build_from_label("alpha:p=7,l=3,m=2").group.order() == 147);
    CHECK(build_from_label("c4:p=13").degree() == 52);
    CatalogPair nested = build_from_label("times_cyclic:base=(beta:p=2,l=3),d=3");
    CHECK(nested.degree() == 18);
    CatalogPair nested2 = build_from_label("semidirect_ext:base=(beta:p=2,l=3),l=5");
    CHECK(nested2.degree() == 30);
    CHECK_THROWS_AS(build_from_label("delta:p=5"), std::invalid_argument);
    CHECK_THROWS_AS(build_from_label("beta:p=5"), std::invalid_argument);
    CHECK_THROWS_AS(build_from_label("times_cyclic:base=(beta:p=2,l=3,d=3"),
                    std::invalid_argument);
}

TEST_CASE("load_external: single group") {
    TempFile f(R"({"degree": 3, "generators": [[2,3,1],[2,1,3]]})");
    auto pairs = load_external(f.path);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].group.order() == 6);
    CHECK(pairs[0].degree() == 3);
    CHECK(pairs[0].stabilizer.order() == 2);
}

TEST_CASE("load_external: the degree-6 generators match beta(2,3)") {
    CatalogPair beta = build_beta(2, 3);
    nlohmann::json j;
    j["degree"] = 6;
    nlohmann::json gens = nlohmann::json::array();
    for (const Perm& g : beta.group.generators()) {
        nlohmann::json img = nlohmann::json::array();
        for (Point v : g.images()) img.push_back(v + 1);
        gens.push_back(img);
    }
    j["generators"] = gens;
    TempFile f(j.dump());
    auto pairs = load_external(f.path);
    REQUIRE(pairs.size() == 1);
    CHECK(pairs[0].group == beta.group);
    ShaReport a = full_report(beta.group, beta.stabilizer, 2, Scenario::make_generic());
    ShaReport b =
        full_report(pairs[0].group, pairs[0].stabilizer, 2, Scenario::make_generic());
    CHECK(a.total == b.total);
    CHECK(a.case_label == b.case_label);
}

TEST_CASE("load_external: arrays, stabilizer points and errors") {
    TempFile list(R"([{"degree": 2, "generators": [[2,1]]},
                      {"degree": 4, "generators": [[2,3,4,1]], "stabilizer_point": 1}])");
    auto pairs = load_external(list.path);
    CHECK(pairs.size() == 2);
    CHECK(pairs[1].stabilizer.order() == 1);

    TempFile bad("{not json");
    CHECK_THROWS_AS(load_external(bad.path), std::invalid_argument);

    TempFile intransitive(R"({"degree": 4, "generators": [[2,1,3,4]]})");
    CHECK_THROWS_AS(load_external(intransitive.path), std::invalid_argument);

    TempFile badperm(R"({"degree": 3, "generators": [[1,1,2]]})");
    CHECK_THROWS_AS(load_external(badperm.path), std::invalid_argument);
}

TEST_CASE("built-in transitive groups") {
    auto deg4 = builtin_transitive_groups(4);
    REQUIRE(deg4.size() == 5);
    std::vector<std::size_t> orders;
    for (const CatalogPair& g : deg4) {
        orders.push_back(g.group.order());
        CHECK(is_transitive(g.group));
        CHECK(g.group.order() / g.stabilizer.order() == 4);
    }
    CHECK(orders == std::vector<std::size_t>{4, 4, 8, 12, 24});

    auto deg5 = builtin_transitive_groups(5);
    std::vector<std::size_t> o5;
    for (const CatalogPair& g : deg5) o5.push_back(g.group.order());
    CHECK(o5 == std::vector<std::size_t>{5, 10, 20, 60, 120});

    auto deg7 = builtin_transitive_groups(7);
    std::vector<std::size_t> o7;
    for (const CatalogPair& g : deg7) o7.push_back(g.group.order());
    CHECK(o7 == std::vector<std::size_t>{7, 14, 21, 42});

    CHECK_THROWS_AS(builtin_transitive_groups(6), std::invalid_argument);
}
