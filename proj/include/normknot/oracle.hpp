#ifndef NORMKNOT_ORACLE_HPP
#define NORMKNOT_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "normknot/catalog.hpp"
#include "normknot/gl2.hpp"
#include "normknot/group.hpp"
#include "normknot/sha.hpp"

namespace normknot {

struct SweepResult {
    std::size_t cells = 0;
    std::size_t checks = 0;
    std::vector<std::string> mismatches;  // each carries a minimal reproduction

    bool ok() const { return mismatches.empty(); }
    void merge_in(const SweepResult& other);
};

// All homomorphisms source -> GL_2(F_p) for sources with at most two
// generators, found by assigning each generator every matrix of compatible
// order and checking the extension on the full element table.
std::vector<Rep2> enumerate_reps(const GroupTable& source, std::int64_t p);

// All homomorphisms source -> F_p^x, as per-generator scalars aligned with
// source.generators().
std::vector<std::vector<std::int64_t>> enumerate_dim1_reps(const GroupTable& source,
                                                           std::int64_t p);

// |{M in GL_2(F_p) : M^n = 1}| by scalar enumeration of the full group;
// intended for p <= 13 (26208 matrices at p = 13)
std::size_t count_matrices_with_order_dividing_brute(std::int64_t p, std::uint64_t n);

// The pair (C_p x|_chi G', {1} x| H') as a transitive permutation group of
// degree p * (G':H'); chi gives each generator's scalar action on C_p.
std::pair<GroupTable, GroupTable> metacyclic_pair(std::int64_t p,
                                                  const std::vector<std::int64_t>& chi,
                                                  const GroupTable& source,
                                                  const GroupTable& hprime);

// Exhaustive check of the extremality classification for F_p-representations
// of C_l and D_l (primes l <= ell_max), and of the degree-4 sources C_4, V_4.
SweepResult verify_extremal_classification(std::int64_t p, std::uint64_t ell_max);

// For every rep of C_l / D_l over F_p and every admissible line: builds the
// semidirect pair and checks conditions (a)(b)(c) against extremality, the
// alpha/beta/gamma label, route agreement L1 = L2, and the closed form for
// |M~| under the generic scenario.
SweepResult verify_pair_classification(std::int64_t p, std::uint64_t ell);

// Verifies the isomorphism statements between semidirect products built from
// equivalent representation parameters (and non-isomorphism when the
// parameter condition fails), for all families with group order <= max_order.
SweepResult verify_semidirect_isomorphisms(std::size_t max_order);

// Contexts with gcd(n, p-1) <= 2 and gcd(n, p+1) a power of 2 must fail
// (a)(b)(c) and have trivial p-part; sweeps all such constructible pairs.
SweepResult negative_control_sweep();

// Route agreement, closed-form checks, conjugation invariance, scenario
// monotonicity and the Sylow-index invariants, on one pair.
SweepResult cross_check(const CatalogPair& pair, std::uint64_t p);

// Every pair of the given degree constructible from the rank <= 2 semidirect
// machinery over the built-in small transitive groups (the comparison-table
// generator). Labels describe the construction.
std::vector<CatalogPair> constructed_pairs_of_degree(std::size_t degree);

}  // namespace normknot

#endif
