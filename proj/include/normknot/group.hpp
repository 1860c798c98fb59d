#ifndef NORMKNOT_GROUP_HPP
#define NORMKNOT_GROUP_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "normknot/perm.hpp"

namespace normknot {

// Hard cap on fully enumerated group orders. Construction beyond the cap
// throws GroupCapError. Overridable (CLI reads NORMKNOT_GROUP_CAP).
std::size_t group_order_cap();
void set_group_order_cap(std::size_t cap);

class GroupCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A fully enumerated permutation group. Elements are kept sorted
// lexicographically on image arrays, so equal groups produce identical
// tables and all derived output is reproducible. Immutable once built.
class GroupTable {
public:
    GroupTable() = default;  // empty placeholder; build via generate/from_elements

    static GroupTable generate(std::vector<Perm> gens, std::size_t degree);
    // `elems` must already be closed under the group operations.
    static GroupTable from_elements(std::size_t degree, std::vector<Perm> elems);
    static GroupTable trivial(std::size_t degree);

    std::size_t degree() const { return degree_; }
    std::size_t order() const { return elements_.size(); }
    const std::vector<Perm>& generators() const { return generators_; }
    const std::vector<Perm>& elements() const { return elements_; }
    const Perm& element(std::size_t i) const { return elements_[i]; }

    bool contains(const Perm& p) const;
    // index into elements(), or nullopt
    std::optional<std::size_t> index_of(const Perm& p) const;
    bool is_subgroup_of(const GroupTable& g) const;

    bool is_abelian() const;
    bool is_cyclic() const;
    std::size_t exponent() const;

    // BFS factorization over the generators: element i equals
    // element(parent(i)) * generator(via_gen(i)); the identity is the root.
    // Lets callers transport homomorphisms from generator images.
    std::size_t identity_index() const { return identity_index_; }
    std::int32_t parent(std::size_t i) const { return parent_[i]; }
    std::int32_t via_gen(std::size_t i) const { return via_gen_[i]; }

    friend bool operator==(const GroupTable& a, const GroupTable& b) {
        return a.degree_ == b.degree_ && a.elements_ == b.elements_;
    }

private:
    void finalize();  // sort, index, BFS factorization

    std::size_t degree_ = 0;
    std::vector<Perm> generators_;
    std::vector<Perm> elements_;
    std::vector<std::int32_t> parent_, via_gen_;
    std::size_t identity_index_ = 0;
    std::unordered_map<Perm, std::size_t, PermHash> index_;
};

struct OrbitStabilizer {
    std::vector<Point> orbit;  // sorted
    GroupTable stabilizer;
};

struct SylowResult {
    GroupTable subgroup;
    bool normal;
};

// G acting on the left cosets of H by left multiplication.
struct CosetAction {
    GroupTable parent;
    GroupTable subgroup;
    std::vector<Perm> representatives;  // lex-minimal per coset, canonical order
    std::vector<Perm> action;           // aligned with parent.elements()
    GroupTable image;                   // transitive of degree (G:H)
    GroupTable kernel;                  // == normal_core(parent, subgroup)

    Perm act(const Perm& g) const;
};

struct DoubleCosets {
    std::vector<Perm> representatives;  // lex-minimal per class, canonical order
    std::vector<std::size_t> sizes;
};

OrbitStabilizer orbit_and_stabilizer(const GroupTable& g, Point point);
bool is_transitive(const GroupTable& g);

GroupTable normal_core(const GroupTable& g, const GroupTable& h);
SylowResult sylow(const GroupTable& g, std::uint64_t p);
GroupTable normalizer(const GroupTable& g, const GroupTable& h);
GroupTable centralizer(const GroupTable& g, const GroupTable& h);
// subgroup generated by all commutators [a,b], a in A, b in B (both <= G)
GroupTable commutator(const GroupTable& g, const GroupTable& a, const GroupTable& b);

CosetAction coset_action(const GroupTable& g, const GroupTable& h);
DoubleCosets double_cosets(const GroupTable& d, const GroupTable& g, const GroupTable& h);

// elementary divisors d1 | d2 | ... of a finite abelian group
std::vector<std::uint64_t> abelian_invariants(const GroupTable& a);

GroupTable intersection(const GroupTable& a, const GroupTable& b);
GroupTable conjugate_subgroup(const GroupTable& h, const Perm& g);
bool are_conjugate_subgroups(const GroupTable& g, const GroupTable& a, const GroupTable& b);
std::vector<GroupTable> all_cyclic_subgroups(const GroupTable& g);
bool is_normal_in(const GroupTable& g, const GroupTable& h);

// small standard groups in their natural transitive actions
GroupTable cyclic_group(std::size_t n);
GroupTable dihedral_group(std::size_t n);  // degree n, order 2n, n >= 3
GroupTable klein_four_group();             // regular, degree 4

void require_subgroup(const GroupTable& g, const GroupTable& h, const char* where);

}  // namespace normknot

#endif
