#ifndef NORMKNOT_MODARITH_HPP
#define NORMKNOT_MODARITH_HPP

#include <cstdint>
#include <stdexcept>

namespace normknot {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t mod_reduce(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

inline std::int64_t mod_pow(std::int64_t base, std::uint64_t e, std::int64_t p) {
    std::int64_t r = 1 % p;
    base = mod_reduce(base, p);
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return r;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t p) {
    a = mod_reduce(a, p);
    if (a == 0) throw std::invalid_argument("mod_inverse: zero");
    return mod_pow(a, static_cast<std::uint64_t>(p - 2), p);  // p prime
}

inline std::uint64_t multiplicative_order(std::int64_t a, std::int64_t p) {
    a = mod_reduce(a, p);
    if (a == 0) throw std::invalid_argument("multiplicative_order: zero");
    std::uint64_t ord = 1;
    std::int64_t x = a;
    while (x != 1) {
        x = x * a % p;
        ++ord;
    }
    return ord;
}

inline std::int64_t least_primitive_root(std::int64_t p) {
    if (p == 2) return 1;
    for (std::int64_t g = 2; g < p; ++g)
        if (multiplicative_order(g, p) == static_cast<std::uint64_t>(p - 1)) return g;
    throw std::logic_error("least_primitive_root: none found");
}

// g^((p-1)/n) for the least primitive root g; requires n | p-1
inline std::int64_t canonical_root_of_unity(std::int64_t p, std::uint64_t n) {
    if ((static_cast<std::uint64_t>(p - 1)) % n != 0)
        throw std::invalid_argument("canonical_root_of_unity: n does not divide p-1");
    return mod_pow(least_primitive_root(p), static_cast<std::uint64_t>(p - 1) / n, p);
}

}  // namespace normknot

#endif
