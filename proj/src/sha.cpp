#include "normknot/sha.hpp"

#include <algorithm>
#include <numeric>

#include "normknot/json_io.hpp"
#include "normknot/modarith.hpp"

namespace normknot {

bool ClosedScenario::contains_supergroup_of(const GroupTable& s) const {
    if (s.is_cyclic()) return true;  // implicit cyclic members
    for (const GroupTable& e : extras)
        if (s.is_subgroup_of(e)) return true;
    return false;
}

bool ClosedScenario::any_member_contains_klein_four() const {
    for (const GroupTable& e : extras) {
        std::vector<Perm> invol;
        for (const Perm& x : e.elements())
            if (!x.is_identity() && x.order() == 2) invol.push_back(x);
        for (std::size_t i = 0; i < invol.size(); ++i)
            for (std::size_t j = i + 1; j < invol.size(); ++j)
                if (invol[i] * invol[j] == invol[j] * invol[i]) return true;
    }
    return false;
}

ClosedScenario close_scenario(const GroupTable& g, const Scenario& s) {
    ClosedScenario out;
    if (s.generic) return out;
    for (const GroupTable& sub : s.explicit_subgroups) {
        require_subgroup(g, sub, "scenario");
        if (sub.is_cyclic()) continue;  // absorbed into the implicit cyclic family
        for (const Perm& c : g.elements()) {
            GroupTable conj = conjugate_subgroup(sub, c);
            bool dup = false;
            for (const GroupTable& e : out.extras)
                if (e == conj) {
                    dup = true;
                    break;
                }
            if (!dup) out.extras.push_back(std::move(conj));
        }
    }
    return out;
}

Context validate(const GroupTable& g, const GroupTable& h, std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("validate: p must be prime");
    require_subgroup(g, h, "validate");
    if (!is_transitive(g)) throw ValidationError("G is not transitive");
    if (g.order() % h.order() != 0 || g.order() / h.order() != g.degree())
        throw ValidationError("(G:H) does not equal the degree");
    if (normal_core(g, h).order() != 1)
        throw ValidationError("H has a nontrivial normal core");
    const std::size_t n = g.degree();
    if (n % p != 0 || n % (p * p) == 0)
        throw ValidationError("degree is not in pZ \\ p^2 Z");
    SylowResult sp = sylow(g, p);
    if (!sp.normal) throw ValidationError("the p-Sylow subgroup is not normal");

    Context ctx;
    ctx.g = g;
    ctx.h = h;
    ctx.p = p;
    ctx.sylow_p = std::move(sp.subgroup);
    if (!ctx.sylow_p.is_abelian() || ctx.sylow_p.exponent() != p)
        throw std::logic_error("validate: normal Sylow is not elementary abelian");
    std::size_t rank = 0;
    for (std::size_t o = ctx.sylow_p.order(); o > 1; o /= p) ++rank;
    ctx.rank = rank;

    std::vector<Perm> hs_gens = h.generators();
    for (const Perm& x : ctx.sylow_p.generators()) hs_gens.push_back(x);
    ctx.h_sylow = GroupTable::generate(hs_gens, g.degree());
    ctx.sp_in_h = intersection(ctx.sylow_p, h);
    if (ctx.sp_in_h.order() * p != ctx.sylow_p.order())
        throw std::logic_error("validate: (S_p : S_p n H) != p");
    return ctx;
}

AbcReport check_abc(const Context& ctx) {
    AbcReport rep;
    rep.sylow_rank = ctx.rank;
    rep.a = ctx.rank == 2;
    rep.b = commutator(ctx.g, ctx.sylow_p, ctx.g).order() == ctx.sylow_p.order();
    rep.c = normalizer(ctx.g, ctx.sp_in_h) == centralizer(ctx.g, ctx.sp_in_h);
    return rep;
}

FinAbelian p_part_L1(const Context& ctx, const ClosedScenario& scenario) {
    AbcReport abc = check_abc(ctx);
    if (!abc.all()) return {};
    if (scenario.contains_supergroup_of(ctx.sylow_p)) return {};
    return FinAbelian::from_orders({ctx.p});
}

namespace {

// S_p = (C_p)^2 with a fixed ordered basis and coordinates for every element
struct SylowCoords {
    std::array<std::size_t, 2> basis_idx;
    std::vector<std::array<std::int64_t, 2>> coords;  // aligned with sylow.elements()

    static SylowCoords build(const GroupTable& sp, std::uint64_t p) {
        SylowCoords sc;
        const Perm* b1 = nullptr;
        std::size_t i1 = 0;
        for (std::size_t i = 0; i < sp.order(); ++i)
            if (!sp.element(i).is_identity()) {
                b1 = &sp.element(i);
                i1 = i;
                break;
            }
        GroupTable line1 = GroupTable::generate({*b1}, sp.degree());
        const Perm* b2 = nullptr;
        std::size_t i2 = 0;
        for (std::size_t i = 0; i < sp.order(); ++i)
            if (!line1.contains(sp.element(i))) {
                b2 = &sp.element(i);
                i2 = i;
                break;
            }
        sc.basis_idx = {i1, i2};
        sc.coords.assign(sp.order(), {0, 0});
        Perm x = Perm(sp.degree());
        for (std::int64_t a = 0; a < static_cast<std::int64_t>(p); ++a) {
            Perm y = x;
            for (std::int64_t b = 0; b < static_cast<std::int64_t>(p); ++b) {
                sc.coords[*sp.index_of(y)] = {a, b};
                y = y * *b2;
            }
            x = x * *b1;
        }
        return sc;
    }
};

// the family of restriction subgroups: cyclic subgroups of S_p n H plus the
// proper intersections E n S_p over the non-cyclic scenario members,
// deduplicated up to conjugacy in G
std::vector<GroupTable> restriction_family(const Context& ctx, const ClosedScenario& scenario) {
    std::vector<GroupTable> fam = all_cyclic_subgroups(ctx.sp_in_h);
    for (const GroupTable& e : scenario.extras) {
        GroupTable meet = intersection(e, ctx.sylow_p);
        if (meet.order() >= ctx.sylow_p.order()) continue;  // proper subgroups only
        fam.push_back(std::move(meet));
    }
    std::vector<GroupTable> dedup;
    for (const GroupTable& d : fam) {
        if (d.order() == 1) continue;  // no condition from the trivial subgroup
        bool seen = false;
        for (const GroupTable& s : dedup)
            if (are_conjugate_subgroups(ctx.g, s, d)) {
                seen = true;
                break;
            }
        if (!seen) dedup.push_back(d);
    }
    return dedup;
}

}  // namespace

CharacterGroup m_tilde_L3(const Context& ctx, const ClosedScenario& scenario) {
    if (ctx.rank != 2) throw std::invalid_argument("m_tilde_L3: requires S_p of rank 2");
    const std::int64_t p = static_cast<std::int64_t>(ctx.p);
    SylowCoords sc = SylowCoords::build(ctx.sylow_p, ctx.p);

    // candidate characters: functionals vanishing on [S_p, H S_p]
    GroupTable comm = commutator(ctx.g, ctx.sylow_p, ctx.h_sylow);
    std::vector<Character> candidates;
    for (std::int64_t f1 = 0; f1 < p; ++f1) {
        for (std::int64_t f2 = 0; f2 < p; ++f2) {
            bool ok = true;
            for (const Perm& x : comm.generators()) {
                auto c = sc.coords[*ctx.sylow_p.index_of(x)];
                if (mod_reduce(f1 * c[0] + f2 * c[1], p) != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) candidates.push_back({{f1, f2}});
        }
    }

    // per restriction subgroup D: double-coset data. For each representative
    // g the tuple component of a character f is f(g^{-1} d g) on D, and the
    // free part is the functionals vanishing on D n gHg^{-1}. Membership in
    // diagonal + free asks for one functional on D matching all constrained
    // components at once.
    struct Constraint {
        std::int64_t k;                    // d = d0^k in D n gHg^{-1}
        std::array<std::int64_t, 2> conj;  // coordinates of g^{-1} d g
    };
    struct DData {
        std::vector<std::vector<Constraint>> per_rep;
    };
    std::vector<DData> family_data;
    for (const GroupTable& d : restriction_family(ctx, scenario)) {
        const Perm* d0 = nullptr;
        for (const Perm& x : d.elements())
            if (!x.is_identity()) {
                d0 = &x;
                break;
            }
        std::vector<std::int64_t> dlog(d.order(), 0);
        {
            Perm x = Perm(d.degree());
            for (std::int64_t k = 0; k < static_cast<std::int64_t>(d.order()); ++k) {
                dlog[*d.index_of(x)] = k;
                x = x * *d0;
            }
        }
        DData data;
        DoubleCosets dc = double_cosets(d, ctx.g, ctx.h_sylow);
        for (const Perm& rep : dc.representatives) {
            std::vector<Constraint> cons;
            Perm ri = rep.inverse();
            for (const Perm& x : d.elements()) {
                if (x.is_identity()) continue;
                Perm conj_into_h = ri * x * rep;  // Ad(g^{-1})(d)
                if (!ctx.h.contains(conj_into_h)) continue;  // d outside D n gHg^{-1}
                cons.push_back(
                    {dlog[*d.index_of(x)], sc.coords[*ctx.sylow_p.index_of(conj_into_h)]});
            }
            data.per_rep.push_back(std::move(cons));
        }
        family_data.push_back(std::move(data));
    }

    CharacterGroup out;
    out.basis_idx = sc.basis_idx;
    for (const Character& f : candidates) {
        bool survives = true;
        for (const DData& data : family_data) {
            bool feasible = false;
            for (std::int64_t c = 0; c < p && !feasible; ++c) {
                bool ok = true;
                for (const auto& cons : data.per_rep) {
                    for (const Constraint& cn : cons) {
                        std::int64_t val =
                            mod_reduce(f.row[0] * cn.conj[0] + f.row[1] * cn.conj[1], p);
                        if (val != mod_reduce(c * cn.k, p)) {
                            ok = false;
                            break;
                        }
                    }
                    if (!ok) break;
                }
                feasible = ok;
            }
            if (!feasible) {
                survives = false;
                break;
            }
        }
        if (survives) out.survivors.push_back(f);
    }
    return out;
}

FinAbelian p_part_L2(const Context& ctx, const ClosedScenario& scenario) {
    if (ctx.rank != 2) throw std::invalid_argument("p_part_L2: requires S_p of rank 2");
    if (scenario.contains_supergroup_of(ctx.sylow_p)) return {};

    const std::uint64_t p = ctx.p;
    std::size_t m_size = m_tilde_L3(ctx, scenario).size();
    std::size_t a_ord = commutator(ctx.g, ctx.sylow_p, ctx.g).order();
    std::vector<Perm> bgens = commutator(ctx.g, ctx.sylow_p, ctx.h_sylow).generators();
    for (const Perm& x : ctx.sp_in_h.generators()) bgens.push_back(x);
    std::size_t b_ord = GroupTable::generate(bgens, ctx.g.degree()).order();

    const std::size_t p4 = static_cast<std::size_t>(p) * p * p * p;
    std::size_t num = m_size * a_ord * b_ord;
    if (num % p4 != 0) throw std::logic_error("p_part_L2: order formula not integral");
    std::size_t order = num / p4;
    if (order == 1) return {};
    if (order == p) return FinAbelian::from_orders({p});
    throw std::logic_error("p_part_L2: computed order " + std::to_string(order) +
                           " outside {1, p}");
}

namespace {

std::vector<GroupTable> push_extras(const std::vector<GroupTable>& extras,
                                    const CosetAction& ca) {
    std::vector<GroupTable> out;
    for (const GroupTable& e : extras) {
        std::vector<Perm> img;
        for (const Perm& x : e.elements()) img.push_back(ca.act(x));
        GroupTable ge = GroupTable::from_elements(ca.image.degree(), std::move(img));
        if (ge.is_cyclic()) continue;
        bool dup = false;
        for (const GroupTable& s : out)
            if (s == ge) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(ge));
    }
    return out;
}

PrimeToPResult prime_to_p_dispatch(const GroupTable& q, const GroupTable& hbar,
                                   const ClosedScenario& scenario);

// materialize (Q/core(Hbar), Hbar/core) as a transitive pair of degree
// (Q:Hbar) and dispatch on it
PrimeToPResult reduce_and_dispatch(const GroupTable& q, const GroupTable& hbar,
                                   const ClosedScenario& scenario) {
    if (q.order() == hbar.order()) return {FinAbelian{}, "", ""};
    CosetAction ca = coset_action(q, hbar);
    GroupTable q2 = ca.image;
    GroupTable h2 = orbit_and_stabilizer(q2, 0).stabilizer;
    ClosedScenario pushed{push_extras(scenario.extras, ca)};
    return prime_to_p_dispatch(q2, h2, pushed);
}

// q transitive of degree (q:hbar) with trivial core; the supported quotient
// classes in order
PrimeToPResult prime_to_p_dispatch(const GroupTable& q, const GroupTable& hbar,
                                   const ClosedScenario& scenario) {
    PrimeToPResult res;
    const std::size_t nbar = q.degree();
    if (nbar <= 1) {
        res.value = FinAbelian{};
        return res;
    }
    if (is_prime(nbar)) {
        res.value = FinAbelian{};  // prime-index subextension never obstructs
        return res;
    }
    if (nbar == 4) {
        bool klein = q.order() == 4 && q.exponent() == 2;
        bool alt4 = q.order() == 12;
        if (!klein && !alt4) {
            res.value = FinAbelian{};
            return res;
        }
        res.quotient_label = klein ? "quotient-(C2)^2" : "quotient-A4";
        res.value = scenario.any_member_contains_klein_four() ? FinAbelian{}
                                                              : FinAbelian::from_orders({2});
        return res;
    }
    if (hbar.order() == 1 && q.is_abelian() && scenario.all_members_cyclic()) {
        std::vector<std::uint64_t> inv = abelian_invariants(q);
        if (inv.size() <= 2) {
            res.value = inv.size() == 2 ? FinAbelian::from_orders({inv[0]}) : FinAbelian{};
            return res;
        }
    }
    for (std::uint64_t qp = 2; qp <= nbar; ++qp) {
        if (!is_prime(qp) || nbar % qp != 0 || nbar % (qp * qp) == 0) continue;
        SylowResult sq = sylow(q, qp);
        if (!sq.normal) continue;
        Context inner = validate(q, hbar, qp);
        FinAbelian q_part = p_part_L1(inner, scenario);
        PrimeToPResult rest = prime_to_p_part(inner, scenario);
        if (res.quotient_label.empty()) res.quotient_label = rest.quotient_label;
        if (!rest.value) {
            res.unknown_reason = rest.unknown_reason;
            return res;
        }
        res.value = merge(q_part, *rest.value);
        return res;
    }
    res.unknown_reason = "quotient pair of order " + std::to_string(q.order()) + ", index " +
                         std::to_string(nbar) + " is outside the supported reductions";
    return res;
}

}  // namespace

PrimeToPResult prime_to_p_part(const Context& ctx, const ClosedScenario& scenario) {
    CosetAction ca = coset_action(ctx.g, ctx.sylow_p);
    std::vector<Perm> hbar_elems;
    for (const Perm& x : ctx.h_sylow.elements()) hbar_elems.push_back(ca.act(x));
    GroupTable hbar = GroupTable::from_elements(ca.image.degree(), std::move(hbar_elems));
    ClosedScenario pushed{push_extras(scenario.extras, ca)};
    return reduce_and_dispatch(ca.image, hbar, pushed);
}

namespace {

// a complement of S_p: subgroup of order k := (G:S_p), which meets S_p
// trivially since k is coprime to p. Searched in canonical element order:
// a cyclic complement <e> with ord(e) = k first, then a dihedral one from
// the relation b a b^{-1} = a^{-1} (ord a = k/2, ord b = 2), which pins the
// order at k without a closure.
GroupTable find_complement(const Context& ctx) {
    const std::size_t k = ctx.g.order() / ctx.sylow_p.order();
    for (const Perm& e : ctx.g.elements())
        if (e.order() == k) return GroupTable::generate({e}, ctx.g.degree());
    if (k % 2 == 0 && is_prime(k / 2) && k > 4) {
        const std::size_t ell = k / 2;
        for (const Perm& a : ctx.g.elements()) {
            if (a.order() != ell) continue;
            Perm ainv = a.inverse();
            for (const Perm& b : ctx.g.elements()) {
                if (b.order() != 2) continue;
                if (a.conjugated_by(b) == ainv)
                    return GroupTable::generate({a, b}, ctx.g.degree());
            }
        }
    }
    throw std::logic_error("classify: no complement of S_p found");
}

}  // namespace

std::string classify(const Context& ctx) {
    AbcReport abc = check_abc(ctx);
    if (!abc.all()) throw std::invalid_argument("classify: conditions (a)(b)(c) must hold");
    const std::uint64_t p = ctx.p;
    const std::size_t n = ctx.g.degree();
    if (n == 4 * p) return "c4";
    std::uint64_t ell = n / p;
    if (!is_prime(ell)) return "none";

    GroupTable comp = find_complement(ctx);
    if (comp.order() == 2 * ell) return "gamma";
    if (comp.order() != ell) return "none";

    // cyclic complement: diagonalizable conjugation action means alpha, with
    // the exponent pair normalized to m = min{m1, m1^{-1}}; irreducible means
    // beta
    SylowCoords sc = SylowCoords::build(ctx.sylow_p, p);
    const Perm* gen = nullptr;
    for (const Perm& e : comp.elements())
        if (e.order() == ell) {
            gen = &e;
            break;
        }
    const Perm& b1 = ctx.sylow_p.element(sc.basis_idx[0]);
    const Perm& b2 = ctx.sylow_p.element(sc.basis_idx[1]);
    auto col1 = sc.coords[*ctx.sylow_p.index_of(b1.conjugated_by(*gen))];
    auto col2 = sc.coords[*ctx.sylow_p.index_of(b2.conjugated_by(*gen))];
    const std::int64_t pp = static_cast<std::int64_t>(p);
    std::int64_t tr = mod_reduce(col1[0] + col2[1], pp);
    std::int64_t det = mod_reduce(col1[0] * col2[1] - col1[1] * col2[0], pp);

    std::int64_t sqrt_disc = -1;
    std::int64_t disc = mod_reduce(tr * tr - 4 * det, pp);
    for (std::int64_t r = 0; r < pp; ++r)
        if (r * r % pp == disc) {
            sqrt_disc = r;
            break;
        }
    if (sqrt_disc < 0 || p == 2) return "beta";  // no rational eigenline
    std::int64_t inv2 = mod_inverse(2, pp);
    std::int64_t lam1 = mod_reduce((tr + sqrt_disc) * inv2, pp);
    std::int64_t lam2 = mod_reduce((tr - sqrt_disc) * inv2, pp);
    if (lam1 == lam2) throw std::logic_error("classify: repeated eigenvalue under (a)(b)(c)");

    std::uint64_t m1 = 0;
    std::int64_t x = lam1;
    for (std::uint64_t t = 1; t < ell; ++t) {
        if (x == lam2) {
            m1 = t;
            break;
        }
        x = x * lam1 % pp;
    }
    if (m1 == 0) throw std::logic_error("classify: eigenvalues not powers of each other");
    std::uint64_t m2 = static_cast<std::uint64_t>(mod_inverse(
        static_cast<std::int64_t>(m1), static_cast<std::int64_t>(ell)));
    std::uint64_t m = std::min(m1, m2);
    return "alpha(" + std::to_string(m) + ")";
}

ShaReport full_report(const GroupTable& g, const GroupTable& h, std::uint64_t p,
                      const Scenario& scenario) {
    ShaReport rep;
    rep.p = p;
    rep.degree = g.degree();
    rep.group_order = g.order();
    Context ctx;
    try {
        ctx = validate(g, h, p);
    } catch (const ValidationError& e) {
        rep.error = e.what();
        return rep;
    }
    rep.valid = true;
    rep.sylow_order = ctx.sylow_p.order();
    rep.sylow_normal = true;
    rep.sylow_rank = ctx.rank;
    rep.abc = check_abc(ctx);

    ClosedScenario closed = close_scenario(g, scenario);
    rep.routes.l1 = p_part_L1(ctx, closed);
    if (ctx.rank == 2) {
        rep.routes.l3_size = m_tilde_L3(ctx, closed).size();
        rep.routes.l2 = p_part_L2(ctx, closed);
        if (!(*rep.routes.l2 == rep.routes.l1))
            throw std::logic_error("full_report: routes L1 and L2 disagree");
    }
    rep.p_part = rep.routes.l1;
    rep.prime_to_p = prime_to_p_part(ctx, closed);

    if (rep.abc.all()) rep.case_label = classify(ctx);
    if (rep.case_label == "none" && !rep.prime_to_p.quotient_label.empty())
        rep.case_label = rep.prime_to_p.quotient_label;

    if (rep.prime_to_p.value) rep.total = merge(rep.p_part, *rep.prime_to_p.value);
    return rep;
}

nlohmann::json divisors_to_json(const FinAbelian& a) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::uint64_t d : a.divisors) arr.push_back(d);
    return arr;
}

nlohmann::json report_to_json(const ShaReport& r) {
    nlohmann::json j;
    j["valid"] = r.valid;
    j["p"] = r.p;
    j["degree"] = r.degree;
    j["order"] = r.group_order;
    if (!r.valid) {
        j["error"] = r.error;
        return j;
    }
    j["sylow"] = {{"order", r.sylow_order}, {"normal", r.sylow_normal}, {"rank", r.sylow_rank}};
    j["abc"] = {{"a", r.abc.a}, {"b", r.abc.b}, {"c", r.abc.c}};
    j["p_part"] = divisors_to_json(r.p_part);
    if (r.prime_to_p.value)
        j["prime_to_p"] = divisors_to_json(*r.prime_to_p.value);
    else
        j["prime_to_p"] = {{"unknown", r.prime_to_p.unknown_reason}};
    if (r.total)
        j["total"] = divisors_to_json(*r.total);
    else
        j["total"] = nullptr;
    j["case"] = r.case_label;
    j["routes"]["L1"] = divisors_to_json(r.routes.l1);
    if (r.routes.l2)
        j["routes"]["L2"] = divisors_to_json(*r.routes.l2);
    else
        j["routes"]["L2"] = nullptr;
    if (r.routes.l3_size)
        j["routes"]["L3_size"] = *r.routes.l3_size;
    else
        j["routes"]["L3_size"] = nullptr;
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j, std::size_t degree) {
    if (!j.is_object() || !j.contains("subgroups"))
        throw std::invalid_argument("scenario: expected {subgroups: [[perm,...],...]}");
    std::vector<GroupTable> subs;
    for (const nlohmann::json& sub : j.at("subgroups")) {
        std::vector<Perm> gens;
        for (const nlohmann::json& g : sub) gens.push_back(perm_from_json(g, degree));
        subs.push_back(GroupTable::generate(std::move(gens), degree));
    }
    return Scenario::make_explicit(std::move(subs));
}

}  // namespace normknot
