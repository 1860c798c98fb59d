#ifndef NORMKNOT_CATALOG_HPP
#define NORMKNOT_CATALOG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "normknot/group.hpp"

namespace normknot {

struct CatalogPair {
    GroupTable group;
    GroupTable stabilizer;
    std::string label;

    std::size_t degree() const { return group.degree(); }
};

// the named constructions; every builder returns a transitive pair with
// stabilizer = Stab(0) and trivial normal core
CatalogPair build_alpha(std::int64_t p, std::uint64_t ell, std::uint64_t m);
CatalogPair build_beta(std::int64_t p, std::uint64_t ell);
CatalogPair build_gamma(std::int64_t p, std::uint64_t ell);
CatalogPair build_c4(std::int64_t p);
CatalogPair build_times_cyclic(const CatalogPair& base, std::uint64_t d);
CatalogPair build_semidirect_ext(const CatalogPair& base, std::uint64_t ell);

// label grammar: "beta:p=5,l=3", "alpha:p=7,l=3,m=2", "c4:p=5",
// "times_cyclic:base=(beta:p=2,l=3),d=3", "semidirect_ext:base=(beta:p=2,l=3),l=5"
CatalogPair build_from_label(const std::string& label);

// group-JSON files with optional "stabilizer_point" (default 1); a file may
// hold one group object or an array of them
std::vector<CatalogPair> load_external(const std::string& path);

// hand-written transitive groups of small degree (2,3,4,5,7), used as the
// complement candidates G' when sweeping constructed families
std::vector<CatalogPair> builtin_transitive_groups(std::size_t degree);

}  // namespace normknot

#endif
