#include "normknot/perm.hpp"

#include <numeric>
#include <stdexcept>

namespace normknot {

Perm::Perm(std::size_t degree) : images_(degree) {
    std::iota(images_.begin(), images_.end(), Point{0});
}

Perm::Perm(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (Point v : images_) {
        if (v >= images_.size() || seen[v])
            throw std::invalid_argument("Perm: image array is not a bijection");
        seen[v] = true;
    }
}

Perm Perm::operator*(const Perm& rhs) const {
    if (degree() != rhs.degree())
        throw std::invalid_argument("Perm: degree mismatch in composition");
    Perm out;
    out.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i)
        out.images_[i] = images_[rhs.images_[i]];
    return out;
}

Perm Perm::inverse() const {
    Perm out;
    out.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i)
        out.images_[images_[i]] = static_cast<Point>(i);
    return out;
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < degree(); ++i)
        if (images_[i] != i) return false;
    return true;
}

std::size_t Perm::order() const {
    // lcm of cycle lengths
    std::vector<bool> seen(degree(), false);
    std::size_t ord = 1;
    for (std::size_t i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (Point j = static_cast<Point>(i); !seen[j]; j = images_[j]) {
            seen[j] = true;
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

Perm Perm::conjugated_by(const Perm& a) const {
    Perm out;
    out.images_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i)
        out.images_[a.images_[i]] = a.images_[images_[i]];
    return out;
}

std::string Perm::to_cycle_string() const {
    std::vector<bool> seen(degree(), false);
    std::string s;
    for (std::size_t i = 0; i < degree(); ++i) {
        if (seen[i] || images_[i] == i) continue;
        s += '(';
        Point j = static_cast<Point>(i);
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) s += ' ';
            s += std::to_string(j + 1);
            first = false;
            j = images_[j];
        }
        s += ')';
    }
    if (s.empty()) s = "()";
    return s;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Point v : p.images()) {
        h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace normknot
