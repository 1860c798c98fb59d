#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "normknot/catalog.hpp"
#include "normknot/finabelian.hpp"
#include "normknot/gl2.hpp"
#include "normknot/sha.hpp"

using namespace normknot;

namespace {

const std::vector<std::uint64_t> kEmpty{};

GroupTable quaternion_table(std::int64_t p, Mat2 i4, Mat2 j4) {
    std::vector<Mat2> elems = mat_closure(p, {i4, j4});
    std::vector<Perm> perms;
    for (const Mat2& g : {i4, j4}) {
        std::vector<Point> img(elems.size());
        for (std::size_t k = 0; k < elems.size(); ++k) {
            Mat2 prod = g * elems[k];
            img[k] = static_cast<Point>(std::lower_bound(elems.begin(), elems.end(), prod) -
                                        elems.begin());
        }
        perms.emplace_back(std::move(img));
    }
    return GroupTable::generate(perms, elems.size());
}

}  // namespace

TEST_CASE("validate accepts the hypotheses and reports failures distinctly") {
    CatalogPair beta = build_beta(2, 3);
    Context ctx = validate(beta.group, beta.stabilizer, 2);
    CHECK(ctx.rank == 2);
    CHECK(ctx.sylow_p.order() == 4);
    CHECK(ctx.h_sylow.order() == 4);  // H is inside S_2 here
    CHECK(ctx.sp_in_h.order() == 2);

    // prime degree: S3 acting on 3 points at p = 3
    GroupTable s3 = dihedral_group(3);
    GroupTable stab = orbit_and_stabilizer(s3, 0).stabilizer;
    Context c3 = validate(s3, stab, 3);
    CHECK(c3.rank == 1);

    // the same A4 pair fails at p = 3: Sylow-3 is not normal
    CHECK_THROWS_AS(validate(beta.group, beta.stabilizer, 3), ValidationError);
    // degree not squarefree at p = 2 for a degree-4 group
    GroupTable c4 = cyclic_group(4);
    GroupTable triv = GroupTable::trivial(4);
    CHECK_THROWS_AS(validate(c4, triv, 2), ValidationError);
    // wrong index
    CHECK_THROWS_AS(validate(beta.group, GroupTable::trivial(6), 2), ValidationError);
    // p must be prime
    CHECK_THROWS_AS(validate(beta.group, beta.stabilizer, 6), std::invalid_argument);
}

TEST_CASE("conditions (a)(b)(c)") {
    Context beta = validate(build_beta(2, 3).group, build_beta(2, 3).stabilizer, 2);
    AbcReport r1 = check_abc(beta);
    CHECK(r1.a);
    CHECK(r1.b);
    CHECK(r1.c);

    CatalogPair alpha = build_alpha(7, 3, 2);
    AbcReport r2 = check_abc(validate(alpha.group, alpha.stabilizer, 7));
    CHECK(r2.all());

    // the pair built from the scalar action with j1 = j2 collapses to a
    // rank-1 context, so condition (a) fails
    Rep2 bad = build_rep_split_diag(7, 3, 1, 1);
    auto gh = semidirect_pair(bad, GroupTable::trivial(3), Line(7, 1, 1));
    CHECK(gh.first.order() == 21);
    Context ctx = validate(gh.first, gh.second, 7);
    AbcReport r3 = check_abc(ctx);
    CHECK(!r3.a);
    CHECK(r3.sylow_rank == 1);
    CHECK(!r3.all());
}

TEST_CASE("route L1: the structural criterion") {
    CatalogPair beta = build_beta(2, 3);
    Context ctx = validate(beta.group, beta.stabilizer, 2);
    CHECK(p_part_L1(ctx, close_scenario(beta.group, Scenario::make_generic())).divisors ==
          std::vector<std::uint64_t>{2});
    // an explicit member containing the Sylow subgroup kills the p-part
    Scenario expl = Scenario::make_explicit({ctx.sylow_p});
    CHECK(p_part_L1(ctx, close_scenario(beta.group, expl)).divisors == kEmpty);

    GroupTable s3 = dihedral_group(3);
    Context c3 = validate(s3, orbit_and_stabilizer(s3, 0).stabilizer, 3);
    CHECK(p_part_L1(c3, close_scenario(s3, Scenario::make_generic())).divisors == kEmpty);
}

TEST_CASE("route L3: surviving characters match the closed form") {
    for (const CatalogPair& pair : {build_beta(2, 3), build_beta(5, 3), build_gamma(5, 3),
                                    build_alpha(7, 3, 2), build_c4(5)}) {
        std::uint64_t p = 0;
        for (std::uint64_t q : {2, 3, 5, 7})
            if (pair.degree() % q == 0 && pair.degree() % (q * q) != 0 &&
                sylow(pair.group, q).normal)
                p = q;
        Context ctx = validate(pair.group, pair.stabilizer, p);
        ClosedScenario generic;
        CharacterGroup mt = m_tilde_L3(ctx, generic);
        // closed form |(S_p / [S_p,HS_p].[S_p n H, N_G(S_p n H)])^dual|
        GroupTable comm1 = commutator(ctx.g, ctx.sylow_p, ctx.h_sylow);
        GroupTable ngr = normalizer(ctx.g, ctx.sp_in_h);
        GroupTable comm2 = commutator(ctx.g, ctx.sp_in_h, ngr);
        std::vector<Perm> gens = comm1.generators();
        for (const Perm& x : comm2.generators()) gens.push_back(x);
        std::size_t denom = GroupTable::generate(gens, ctx.g.degree()).order();
        CHECK(mt.size() * denom == p * p);
        // the survivors form a subgroup: closed under addition
        auto find = [&](std::int64_t a, std::int64_t b) {
            return std::any_of(mt.survivors.begin(), mt.survivors.end(),
                               [&](const Character& c) {
                                   return c.row[0] == a && c.row[1] == b;
                               });
        };
        for (const Character& x : mt.survivors)
            for (const Character& y : mt.survivors)
                CHECK(find((x.row[0] + y.row[0]) % static_cast<std::int64_t>(p),
                           (x.row[1] + y.row[1]) % static_cast<std::int64_t>(p)));
    }
}

TEST_CASE("route L3: beta(2,3) keeps all four characters") {
    CatalogPair beta = build_beta(2, 3);
    Context ctx = validate(beta.group, beta.stabilizer, 2);
    ClosedScenario generic;
    CHECK(m_tilde_L3(ctx, generic).size() == 4);
}

TEST_CASE("route L3 does not depend on the generator order") {
    CatalogPair beta = build_beta(5, 3);
    std::vector<Perm> gens = beta.group.generators();
    std::reverse(gens.begin(), gens.end());
    GroupTable g2 = GroupTable::generate(gens, beta.group.degree());
    ClosedScenario generic;
    CharacterGroup a = m_tilde_L3(validate(beta.group, beta.stabilizer, 5), generic);
    CharacterGroup b = m_tilde_L3(validate(g2, beta.stabilizer, 5), generic);
    CHECK(a.survivors == b.survivors);
    CHECK(a.basis_idx == b.basis_idx);
}

TEST_CASE("route L2 agrees with route L1") {
    for (const CatalogPair& pair :
         {build_beta(2, 3), build_beta(5, 3), build_gamma(5, 3), build_alpha(7, 3, 2)}) {
        std::uint64_t p = 0;
        for (std::uint64_t q : {2, 3, 5, 7})
            if (pair.degree() % q == 0 && pair.degree() % (q * q) != 0 &&
                sylow(pair.group, q).normal)
                p = q;
        Context ctx = validate(pair.group, pair.stabilizer, p);
        ClosedScenario generic;
        CHECK(p_part_L2(ctx, generic) == p_part_L1(ctx, generic));
        ClosedScenario with_sp{std::vector<GroupTable>{ctx.sylow_p}};
        CHECK(p_part_L2(ctx, with_sp).trivial());
    }
}

TEST_CASE("prime-to-p dispatch") {
    // prime quotient index
    CatalogPair beta = build_beta(5, 3);
    Context ctx = validate(beta.group, beta.stabilizer, 5);
    ClosedScenario generic;
    PrimeToPResult r = prime_to_p_part(ctx, generic);
    REQUIRE(r.value.has_value());
    CHECK(r.value->trivial());

    // index 4, cyclic quotient: trivial
    CatalogPair c4 = build_c4(5);
    PrimeToPResult r2 =
        prime_to_p_part(validate(c4.group, c4.stabilizer, 5), generic);
    REQUIRE(r2.value.has_value());
    CHECK(r2.value->trivial());
    CHECK(r2.quotient_label.empty());

    // bicyclic quotient (C3)^2: Z/3
    CatalogPair tc = build_times_cyclic(build_beta(2, 3), 3);
    PrimeToPResult r3 = prime_to_p_part(validate(tc.group, tc.stabilizer, 2), generic);
    REQUIRE(r3.value.has_value());
    CHECK(r3.value->divisors == std::vector<std::uint64_t>{3});

    // recursive squarefree quotient: degree-30 extension pair
    CatalogPair ext = build_semidirect_ext(build_beta(2, 3), 5);
    PrimeToPResult r4 = prime_to_p_part(validate(ext.group, ext.stabilizer, 2), generic);
    REQUIRE(r4.value.has_value());
    CHECK(r4.value->divisors == std::vector<std::uint64_t>{5});
}

TEST_CASE("prime-to-p: Kunyavskii quotient labels at index 4") {
    // (C3)^2 x| V4 through diagonal signs collapses onto a degree-12 pair
    // whose quotient is the Klein four group
    GroupTable v4 = klein_four_group();
    Rep2 rep = Rep2::build(3, v4, {Mat2::diagonal(3, 1, -1), Mat2::diagonal(3, -1, 1)});
    auto gh = semidirect_pair(rep, GroupTable::trivial(4), Line(3, 1, 0));
    CHECK(gh.first.degree() == 12);
    CHECK(gh.first.order() == 12);
    ShaReport r = full_report(gh.first, gh.second, 3, Scenario::make_generic());
    REQUIRE(r.total.has_value());
    CHECK(r.total->divisors == std::vector<std::uint64_t>{2});
    CHECK(r.case_label == "quotient-(C2)^2");

    // a decomposition group containing a Klein four group removes it
    Scenario expl = Scenario::make_explicit({sylow(gh.first, 2).subgroup});
    ShaReport r2 = full_report(gh.first, gh.second, 3, expl);
    REQUIRE(r2.total.has_value());
    CHECK(r2.total->trivial());

    // degree 28 = 4*7 with alternating quotient
    CatalogPair a4 = builtin_transitive_groups(4)[3];
    REQUIRE(a4.group.order() == 12);
    Rep2 rep7 = Rep2::build(7, a4.group, {Mat2::identity(7), Mat2::diagonal(7, 2, 1)});
    auto gh7 = semidirect_pair(rep7, a4.stabilizer, Line(7, 0, 1));
    CHECK(gh7.first.degree() == 28);
    CHECK(gh7.first.order() == 84);
    ShaReport r3 = full_report(gh7.first, gh7.second, 7, Scenario::make_generic());
    REQUIRE(r3.total.has_value());
    CHECK(r3.total->divisors == std::vector<std::uint64_t>{2});
    CHECK(r3.case_label == "quotient-A4");
}

TEST_CASE("prime-to-p: unsupported quotient is UNKNOWN, not a guess") {
    Mat2 i4(5, 0, -1, 1, 0);
    Mat2 j4 = Mat2::diagonal(5, 2, 3);
    GroupTable q8 = quaternion_table(5, i4, j4);
    REQUIRE(q8.order() == 8);
    Rep2 rep = Rep2::build(5, q8, {i4, j4});
    auto gh = semidirect_pair(rep, GroupTable::trivial(8), Line(5, 1, 0));
    CHECK(gh.first.degree() == 40);
    ShaReport r = full_report(gh.first, gh.second, 5, Scenario::make_generic());
    CHECK(r.valid);
    CHECK(r.p_part.trivial());
    CHECK(!r.prime_to_p.value.has_value());
    CHECK(!r.prime_to_p.unknown_reason.empty());
    CHECK(!r.total.has_value());
}

TEST_CASE("classification labels") {
    CatalogPair beta = build_beta(2, 3);
    CHECK(classify(validate(beta.group, beta.stabilizer, 2)) == "beta");
    CatalogPair alpha = build_alpha(7, 3, 2);
    CHECK(classify(validate(alpha.group, alpha.stabilizer, 7)) == "alpha(2)");
    CatalogPair alpha2 = build_alpha(11, 5, 2);
    CHECK(classify(validate(alpha2.group, alpha2.stabilizer, 11)) == "alpha(2)");
    CatalogPair alpha3 = build_alpha(11, 5, 4);
    CHECK(classify(validate(alpha3.group, alpha3.stabilizer, 11)) == "alpha(4)");
    CatalogPair gamma = build_gamma(5, 3);
    CHECK(classify(validate(gamma.group, gamma.stabilizer, 5)) == "gamma");
    CatalogPair c4 = build_c4(13);
    CHECK(classify(validate(c4.group, c4.stabilizer, 13)) == "c4");

    // classify requires (a)(b)(c)
    GroupTable s3 = dihedral_group(3);
    CHECK_THROWS_AS(classify(validate(s3, orbit_and_stabilizer(s3, 0).stabilizer, 3)),
                    std::invalid_argument);
}

TEST_CASE("full reports for the flagship pairs") {
    CatalogPair beta = build_beta(2, 3);
    ShaReport r = full_report(beta.group, beta.stabilizer, 2, Scenario::make_generic());
    CHECK(r.valid);
    REQUIRE(r.total.has_value());
    CHECK(r.total->divisors == std::vector<std::uint64_t>{2});
    CHECK(r.case_label == "beta");
    CHECK(r.routes.l1 == *r.routes.l2);
    CHECK(*r.routes.l3_size == 4);

    CatalogPair tc = build_times_cyclic(build_beta(2, 3), 3);
    ShaReport r2 = full_report(tc.group, tc.stabilizer, 2, Scenario::make_generic());
    REQUIRE(r2.total.has_value());
    CHECK(r2.total->divisors == std::vector<std::uint64_t>{6});

    // invalid input is reported, not thrown
    ShaReport bad = full_report(beta.group, beta.stabilizer, 3, Scenario::make_generic());
    CHECK(!bad.valid);
    CHECK(!bad.error.empty());
}

TEST_CASE("reports are conjugation invariant") {
    CatalogPair gamma = build_gamma(5, 3);
    ShaReport base = full_report(gamma.group, gamma.stabilizer, 5, Scenario::make_generic());
    for (std::size_t i = 0; i < gamma.group.order(); i += 29) {
        GroupTable hc = conjugate_subgroup(gamma.stabilizer, gamma.group.element(i));
        ShaReport r = full_report(gamma.group, hc, 5, Scenario::make_generic());
        CHECK(r.p_part == base.p_part);
        CHECK(r.total == base.total);
        CHECK(r.case_label == base.case_label);
    }
}

TEST_CASE("scenario monotonicity") {
    CatalogPair c4 = build_c4(13);
    Context ctx = validate(c4.group, c4.stabilizer, 13);
    ClosedScenario generic;
    FinAbelian base = p_part_L1(ctx, generic);
    CHECK(base.divisors == std::vector<std::uint64_t>{13});
    // enlarging the family can only shrink the p-part (sampled members)
    for (std::size_t i = 1; i < ctx.h_sylow.order(); i += 31) {
        const Perm& e = ctx.h_sylow.element(i);
        if (e.is_identity()) continue;
        std::vector<Perm> gens = ctx.sp_in_h.generators();
        gens.push_back(e);
        GroupTable member = GroupTable::generate(gens, c4.group.degree());
        Scenario expl = Scenario::make_explicit({member});
        ClosedScenario closed = close_scenario(c4.group, expl);
        FinAbelian shrunk = p_part_L1(ctx, closed);
        CHECK(shrunk.order() <= base.order());
        CHECK(p_part_L2(ctx, closed) == shrunk);
    }
}

TEST_CASE("members not containing S_p leave the p-part alone") {
    // under (a)(b)(c) only S_p-containment matters; a dihedral member meeting
    // S_p in a different line must not disturb the answer
    CatalogPair gamma = build_gamma(5, 3);
    Context ctx = validate(gamma.group, gamma.stabilizer, 5);
    GroupTable member;
    for (const Perm& s : ctx.sylow_p.elements()) {
        if (s.is_identity() || ctx.sp_in_h.contains(s)) continue;
        for (const Perm& t : ctx.h.elements()) {
            if (t.order() != 2) continue;
            if (s.conjugated_by(t) == s.inverse() && !(s.conjugated_by(t) == s)) {
                member = GroupTable::generate({s, t}, gamma.group.degree());
                break;
            }
        }
        if (member.order() == 10) break;
    }
    REQUIRE(member.order() == 10);
    REQUIRE(!member.is_cyclic());
    REQUIRE(!ctx.sylow_p.is_subgroup_of(member));
    ShaReport r =
        full_report(gamma.group, gamma.stabilizer, 5, Scenario::make_explicit({member}));
    CHECK(r.p_part.divisors == std::vector<std::uint64_t>{5});
    REQUIRE(r.total.has_value());
    CHECK(r.total->divisors == std::vector<std::uint64_t>{5});
}

TEST_CASE("the total agrees through every admissible analysis prime") {
    // degree 30 = 2 * 3 * 5: both p = 2 (recursion through the quotient) and
    // p = 5 (direct) are valid entry points and must give the same group
    CatalogPair pair = build_times_cyclic(build_beta(5, 3), 2);
    ShaReport via5 = full_report(pair.group, pair.stabilizer, 5, Scenario::make_generic());
    ShaReport via2 = full_report(pair.group, pair.stabilizer, 2, Scenario::make_generic());
    REQUIRE(via5.total.has_value());
    REQUIRE(via2.total.has_value());
    CHECK(*via5.total == *via2.total);
    CHECK(via5.total->divisors == std::vector<std::uint64_t>{5});
    CHECK(via2.p_part.trivial());  // rank 1 at p = 2

    // the degree-42 extension pair, both ways
    CatalogPair ext = build_semidirect_ext(build_alpha(7, 3, 2), 2);
    CHECK(ext.degree() == 42);
    ShaReport e7 = full_report(ext.group, ext.stabilizer, 7, Scenario::make_generic());
    ShaReport e2 = full_report(ext.group, ext.stabilizer, 2, Scenario::make_generic());
    REQUIRE(e7.total.has_value());
    CHECK(e7.total->divisors == std::vector<std::uint64_t>{14});
    REQUIRE(e2.total.has_value());
    CHECK(*e2.total == *e7.total);
}

TEST_CASE("degree-12 fixtures: bicyclic gives Z/2, regular A4 is out of scope") {
    // C2 x C6 regular: the quotient dispatch lands in the Klein branch and
    // must reproduce Z/gcd(2,6)
    std::vector<Point> a(12), b(12);
    for (std::size_t i = 0; i < 12; ++i) {
        a[i] = static_cast<Point>((i + 6) % 12);       // the C2 factor
        b[i] = static_cast<Point>((i / 6) * 6 + (i + 1) % 6);  // the C6 factor
    }
    GroupTable g = GroupTable::generate({Perm(a), Perm(b)}, 12);
    REQUIRE(g.order() == 12);
    REQUIRE(abelian_invariants(g) == std::vector<std::uint64_t>{2, 6});
    ShaReport r = full_report(g, GroupTable::trivial(12), 3, Scenario::make_generic());
    CHECK(r.valid);
    REQUIRE(r.total.has_value());
    CHECK(r.total->divisors == std::vector<std::uint64_t>{2});
    CHECK(r.case_label == "quotient-(C2)^2");
    CHECK(*r.total == biquadratic_sha(2, 6));

    // the regular degree-12 action of A4: degree 12 is divisible by 4, and
    // the 3-Sylow subgroup is not normal, so neither prime validates
    GroupTable a4 = GroupTable::generate(
        {Perm(std::vector<Point>{1, 0, 3, 2}), Perm(std::vector<Point>{1, 2, 0, 3})}, 4);
    CosetAction reg = coset_action(a4, GroupTable::trivial(4));
    REQUIRE(reg.image.degree() == 12);
    CHECK(!full_report(reg.image, GroupTable::trivial(12), 2, Scenario::make_generic()).valid);
    CHECK(!full_report(reg.image, GroupTable::trivial(12), 3, Scenario::make_generic()).valid);
}

TEST_CASE("rank away from 2 forces a trivial p-part") {
    // rank 1 examples of several shapes
    GroupTable c10 = cyclic_group(10);
    ShaReport r =
        full_report(c10, GroupTable::trivial(10), 5, Scenario::make_generic());
    CHECK(r.valid);
    CHECK(r.sylow_rank == 1);
    CHECK(r.p_part.trivial());
    REQUIRE(r.total.has_value());
    CHECK(r.total->trivial());

    GroupTable s3 = dihedral_group(3);
    ShaReport r2 =
        full_report(s3, orbit_and_stabilizer(s3, 0).stabilizer, 3, Scenario::make_generic());
    CHECK(r2.p_part.trivial());
    REQUIRE(r2.total.has_value());
    CHECK(r2.total->trivial());
}

TEST_CASE("explicit scenarios close under conjugation and absorb cyclic members") {
    CatalogPair gamma = build_gamma(5, 3);
    Context ctx = validate(gamma.group, gamma.stabilizer, 5);

    // the stabilizer itself is cyclic of order 10 (the special line is fixed
    // pointwise), so it disappears into the implicit cyclic family
    REQUIRE(ctx.h.is_cyclic());
    CHECK(close_scenario(gamma.group, Scenario::make_explicit({ctx.h})).extras.empty());

    // a dihedral member of order 10: an inverted Sylow element and an involution
    GroupTable member;
    for (const Perm& s : ctx.sylow_p.elements()) {
        if (s.is_identity()) continue;
        for (const Perm& t : ctx.h.elements()) {
            if (t.order() != 2) continue;
            if (s.conjugated_by(t) == s.inverse() && !(s.conjugated_by(t) == s)) {
                member = GroupTable::generate({s, t}, gamma.group.degree());
                break;
            }
        }
        if (member.order() == 10) break;
    }
    REQUIRE(member.order() == 10);
    REQUIRE(!member.is_cyclic());
    ClosedScenario closed =
        close_scenario(gamma.group, Scenario::make_explicit({member}));
    CHECK(closed.extras.size() > 1);  // conjugates joined in
    for (const GroupTable& e : closed.extras) CHECK(!e.is_cyclic());
    // a subgroup of a foreign degree is rejected
    CHECK_THROWS_AS(close_scenario(gamma.group, Scenario::make_explicit({cyclic_group(4)})),
                    std::invalid_argument);
}

TEST_CASE("scenario JSON") {
    nlohmann::json j;
    j["subgroups"] = nlohmann::json::array();
    j["subgroups"].push_back(nlohmann::json::array({{2, 1, 4, 3, 5, 6}}));
    Scenario sc = scenario_from_json(j, 6);
    CHECK(!sc.generic);
    REQUIRE(sc.explicit_subgroups.size() == 1);
    CHECK(sc.explicit_subgroups[0].order() == 2);
    CHECK_THROWS_AS(scenario_from_json(nlohmann::json::object(), 6), std::invalid_argument);
}

TEST_CASE("report JSON carries the interface fields") {
    CatalogPair beta = build_beta(2, 3);
    ShaReport r = full_report(beta.group, beta.stabilizer, 2, Scenario::make_generic());
    nlohmann::json j = report_to_json(r);
    CHECK(j["valid"] == true);
    CHECK(j["sylow"]["rank"] == 2);
    CHECK(j["abc"]["a"] == true);
    CHECK(j["p_part"] == nlohmann::json::array({2}));
    CHECK(j["prime_to_p"] == nlohmann::json::array());
    CHECK(j["total"] == nlohmann::json::array({2}));
    CHECK(j["case"] == "beta");
    CHECK(j["routes"]["L1"] == nlohmann::json::array({2}));
    CHECK(j["routes"]["L2"] == nlohmann::json::array({2}));
    CHECK(j["routes"]["L3_size"] == 4);
}
