#ifndef NORMKNOT_SHA_HPP
#define NORMKNOT_SHA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "normknot/finabelian.hpp"
#include "normknot/group.hpp"

namespace normknot {

// The admissible family of decomposition groups. GENERIC means all cyclic
// subgroups; EXPLICIT members are closed by the library under conjugation
// and union with all cyclic subgroups before use.
struct Scenario {
    bool generic = true;
    std::vector<GroupTable> explicit_subgroups;

    static Scenario make_generic() { return {}; }
    static Scenario make_explicit(std::vector<GroupTable> subs) {
        return {false, std::move(subs)};
    }
};

// Normal form of a closed scenario: the cyclic subgroups are implicit (every
// admissible family contains them); only non-cyclic members are kept, closed
// under conjugation and deduplicated.
struct ClosedScenario {
    std::vector<GroupTable> extras;

    bool contains_supergroup_of(const GroupTable& s) const;
    bool all_members_cyclic() const { return extras.empty(); }
    bool any_member_contains_klein_four() const;
};

ClosedScenario close_scenario(const GroupTable& g, const Scenario& s);

class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A validated input: transitive G, stabilizer-like H (index = degree,
// trivial core), degree in pZ \ p^2 Z, normal elementary abelian p-Sylow.
struct Context {
    GroupTable g;
    GroupTable h;
    std::uint64_t p = 0;
    GroupTable sylow_p;   // normal, isomorphic to (C_p)^rank
    std::size_t rank = 0;
    GroupTable h_sylow;   // H * S_p
    GroupTable sp_in_h;   // S_p intersect H
};

Context validate(const GroupTable& g, const GroupTable& h, std::uint64_t p);

struct AbcReport {
    bool a = false;  // S_p = (C_p)^2
    bool b = false;  // [S_p, G] = S_p
    bool c = false;  // N_G(S_p n H) = Z_G(S_p n H)
    std::size_t sylow_rank = 0;

    bool all() const { return a && b && c; }
};

AbcReport check_abc(const Context& ctx);

// a linear functional on S_p = F_p^2, as a coordinate row
struct Character {
    std::array<std::int64_t, 2> row{};
    friend bool operator==(const Character&, const Character&) = default;
};

struct CharacterGroup {
    std::vector<Character> survivors;        // the subgroup M~ of (S_p/[S_p,HS_p])^dual
    std::array<std::size_t, 2> basis_idx{};  // indices into S_p.elements() of the basis
    std::size_t size() const { return survivors.size(); }
};

// route L1: the structural criterion (abc + scenario containment)
FinAbelian p_part_L1(const Context& ctx, const ClosedScenario& scenario);
// route L3: character subgroup cut out by the double-coset restrictions
CharacterGroup m_tilde_L3(const Context& ctx, const ClosedScenario& scenario);
// route L2: order count through the exact sequence; requires rank == 2
FinAbelian p_part_L2(const Context& ctx, const ClosedScenario& scenario);

struct PrimeToPResult {
    std::optional<FinAbelian> value;  // nullopt = UNKNOWN
    std::string unknown_reason;
    std::string quotient_label;  // "quotient-(C2)^2" / "quotient-A4" when that branch fires
};

PrimeToPResult prime_to_p_part(const Context& ctx, const ClosedScenario& scenario);

// case label for abc-passing contexts of degree p*l or 4p:
// "alpha(m)" | "beta" | "gamma" | "c4" | "none"
std::string classify(const Context& ctx);

struct RouteInfo {
    FinAbelian l1;
    std::optional<FinAbelian> l2;       // computed only when rank == 2
    std::optional<std::size_t> l3_size; // |M~|, only when rank == 2
};

struct ShaReport {
    bool valid = false;
    std::string error;
    std::uint64_t p = 0;
    std::size_t degree = 0;
    std::size_t group_order = 0;
    std::size_t sylow_order = 0;
    bool sylow_normal = false;
    std::size_t sylow_rank = 0;
    AbcReport abc;
    FinAbelian p_part;
    PrimeToPResult prime_to_p;
    std::optional<FinAbelian> total;
    std::string case_label = "none";
    RouteInfo routes;
};

ShaReport full_report(const GroupTable& g, const GroupTable& h, std::uint64_t p,
                      const Scenario& scenario);

nlohmann::json report_to_json(const ShaReport& r);
nlohmann::json divisors_to_json(const FinAbelian& a);

Scenario scenario_from_json(const nlohmann::json& j, std::size_t degree);

}  // namespace normknot

#endif
