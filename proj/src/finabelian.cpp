#include "normknot/finabelian.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace normknot {

namespace {

std::map<std::uint64_t, std::vector<std::size_t>> primary_parts(
    const std::vector<std::uint64_t>& orders) {
    std::map<std::uint64_t, std::vector<std::size_t>> parts;  // q -> exponents desc
    for (std::uint64_t n : orders) {
        std::uint64_t rem = n;
        for (std::uint64_t q = 2; q * q <= rem; ++q) {
            if (rem % q) continue;
            std::size_t e = 0;
            while (rem % q == 0) {
                rem /= q;
                ++e;
            }
            parts[q].push_back(e);
        }
        if (rem > 1) parts[rem].push_back(1);
    }
    for (auto& [q, exps] : parts) std::sort(exps.begin(), exps.end(), std::greater<>());
    return parts;
}

}  // namespace

FinAbelian FinAbelian::from_orders(std::vector<std::uint64_t> orders) {
    auto parts = primary_parts(orders);
    std::size_t rank = 0;
    for (const auto& [q, exps] : parts) rank = std::max(rank, exps.size());
    std::vector<std::uint64_t> divisors(rank, 1);
    for (const auto& [q, exps] : parts) {
        for (std::size_t t = 0; t < exps.size(); ++t) {
            std::uint64_t f = 1;
            for (std::size_t e = 0; e < exps[t]; ++e) f *= q;
            divisors[t] *= f;
        }
    }
    std::sort(divisors.begin(), divisors.end());
    FinAbelian a;
    a.divisors = std::move(divisors);
    return a;
}

std::uint64_t FinAbelian::order() const {
    std::uint64_t n = 1;
    for (std::uint64_t d : divisors) n *= d;
    return n;
}

std::string FinAbelian::to_string() const {
    if (divisors.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
        if (i) s += " + ";
        s += "Z/" + std::to_string(divisors[i]);
    }
    return s;
}

std::pair<FinAbelian, FinAbelian> split(const FinAbelian& a, std::uint64_t p) {
    std::vector<std::uint64_t> ppart, rest;
    for (std::uint64_t d : a.divisors) {
        std::uint64_t dp = 1;
        while (d % p == 0) {
            dp *= p;
            d /= p;
        }
        if (dp > 1) ppart.push_back(dp);
        if (d > 1) rest.push_back(d);
    }
    return {FinAbelian::from_orders(std::move(ppart)), FinAbelian::from_orders(std::move(rest))};
}

FinAbelian merge(const FinAbelian& a, const FinAbelian& b) {
    std::vector<std::uint64_t> orders = a.divisors;
    orders.insert(orders.end(), b.divisors.begin(), b.divisors.end());
    return FinAbelian::from_orders(std::move(orders));
}

FinAbelian biquadratic_sha(std::uint64_t n1, std::uint64_t n2) {
    if (n1 == 0 || n2 == 0) throw std::invalid_argument("biquadratic_sha: n >= 1");
    return FinAbelian::from_orders({std::gcd(n1, n2)});
}

}  // namespace normknot
