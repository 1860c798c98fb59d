#ifndef NORMKNOT_FINABELIAN_HPP
#define NORMKNOT_FINABELIAN_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace normknot {

// A finite abelian group in elementary divisor form d1 | d2 | ... (empty =
// trivial group). Divisors are kept normalized: ascending chain, no 1s.
struct FinAbelian {
    std::vector<std::uint64_t> divisors;

    FinAbelian() = default;
    // normalizes any list of cyclic orders into a divisor chain
    static FinAbelian from_orders(std::vector<std::uint64_t> orders);

    std::uint64_t order() const;
    bool trivial() const { return divisors.empty(); }
    std::string to_string() const;  // "0" for trivial, else "Z/d1 + Z/d2 + ..."

    friend bool operator==(const FinAbelian&, const FinAbelian&) = default;
};

// (A[p^inf], A^(p))
std::pair<FinAbelian, FinAbelian> split(const FinAbelian& a, std::uint64_t p);
FinAbelian merge(const FinAbelian& a, const FinAbelian& b);

// Z/gcd(n1,n2), the obstruction of a bicyclic group with all-cyclic
// decomposition data
FinAbelian biquadratic_sha(std::uint64_t n1, std::uint64_t n2);

}  // namespace normknot

#endif
