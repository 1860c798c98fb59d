#ifndef NORMKNOT_PERM_HPP
#define NORMKNOT_PERM_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace normknot {

using Point = std::uint16_t;

// A permutation of {0,...,degree-1}, stored as its image array.
// Composition convention: (a * b)(x) = a(b(x)), i.e. b acts first.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::size_t degree);               // identity
    explicit Perm(std::vector<Point> images);        // must be a bijection

    std::size_t degree() const { return images_.size(); }
    Point operator()(Point x) const { return images_[x]; }
    const std::vector<Point>& images() const { return images_; }

    Perm operator*(const Perm& rhs) const;
    Perm inverse() const;
    bool is_identity() const;
    std::size_t order() const;

    // a * b * a^{-1}
    Perm conjugated_by(const Perm& a) const;

    friend bool operator==(const Perm&, const Perm&) = default;
    auto operator<=>(const Perm& rhs) const { return images_ <=> rhs.images_; }

    std::string to_cycle_string() const;             // e.g. "(1 2 3)(4 5)", 1-based

private:
    std::vector<Point> images_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace normknot

#endif
