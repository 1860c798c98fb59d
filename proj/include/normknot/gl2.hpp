#ifndef NORMKNOT_GL2_HPP
#define NORMKNOT_GL2_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "normknot/group.hpp"

namespace normknot {

// An invertible 2x2 matrix over F_p; the prime is part of the value.
struct Mat2 {
    std::int64_t p = 0;
    std::array<std::int64_t, 4> e{};  // row-major [a b; c d]

    Mat2() = default;
    Mat2(std::int64_t p, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
    static Mat2 identity(std::int64_t p);
    static Mat2 diagonal(std::int64_t p, std::int64_t a, std::int64_t d);
    // [[0,-1],[1,t]]
    static Mat2 companion(std::int64_t p, std::int64_t trace);

    std::int64_t det() const;
    std::int64_t trace() const;
    Mat2 operator*(const Mat2& rhs) const;
    Mat2 inverse() const;
    Mat2 pow(std::uint64_t k) const;
    std::uint64_t order() const;
    bool is_identity() const;
    bool is_scalar() const;

    std::array<std::int64_t, 2> apply(std::array<std::int64_t, 2> v) const;

    friend bool operator==(const Mat2&, const Mat2&) = default;
    auto operator<=>(const Mat2&) const = default;
    std::string to_string() const;
};

// A point of P^1(F_p), stored as the normalized generator (first nonzero
// coordinate scaled to 1). There are p+1 lines.
struct Line {
    std::int64_t p = 0;
    std::array<std::int64_t, 2> rep{};

    Line() = default;
    Line(std::int64_t p, std::int64_t x, std::int64_t y);  // normalizes, (x,y) != 0

    friend bool operator==(const Line&, const Line&) = default;
    auto operator<=>(const Line&) const = default;
    std::string to_string() const;
};

std::vector<Line> all_lines(std::int64_t p);  // sorted on normalized generators
Line apply(const Mat2& m, const Line& l);
bool fixes_pointwise(const Mat2& m, const Line& l);

// A matrix representation of a fully enumerated group: generator images that
// have been verified to extend to a homomorphism, with images cached for
// every element. |source| must be coprime to p.
struct Rep2 {
    std::int64_t p = 0;
    GroupTable source;
    std::vector<Mat2> gen_images;   // aligned with source.generators()
    std::vector<Mat2> elem_images;  // aligned with source.elements()

    static Rep2 build(std::int64_t p, GroupTable source, std::vector<Mat2> gen_images);
    const Mat2& image_of(const Perm& g) const;
    bool is_faithful() const;
};

// ascending list of all t in F_p for which [[0,-1],[1,t]] has order exactly n
std::vector<std::int64_t> companion_trace_candidates(std::int64_t p, std::uint64_t n);
// 1-based selection from the list above; requires n odd prime dividing p^2-1
std::int64_t companion_parameter(std::int64_t p, std::uint64_t ell, std::size_t j);

// the four named constructions; sources are C_l, C_l, D_l, C_4
Rep2 build_rep_split_diag(std::int64_t p, std::uint64_t ell, std::int64_t j1, std::int64_t j2);
Rep2 build_rep_nonsplit(std::int64_t p, std::uint64_t ell, std::size_t j);
Rep2 build_rep_dihedral(std::int64_t p, std::uint64_t ell, std::size_t j);
Rep2 build_rep_order4(std::int64_t p, std::int64_t j1, std::int64_t j2);

enum class ExtremalReason { Extremal, HasInvariants, NoSpecialLine };

struct ExtremalReport {
    bool extremal = false;
    bool has_invariants = false;              // nonzero common fixed vector
    std::vector<Line> special_lines;          // lines with H' <= Stab = Fix
    ExtremalReason reason = ExtremalReason::NoSpecialLine;
};

ExtremalReport is_extremal(const Rep2& rep, const GroupTable& hprime);

// the pair (V x| G', L x| H') as a transitive permutation group of degree
// p * (G':H') with its point stabilizer; L must be H'-stable and H'-fixed
std::pair<GroupTable, GroupTable> semidirect_transitive(const Rep2& rep,
                                                        const GroupTable& hprime,
                                                        const Line& l);

// general form used by the catalog: subgroup of V is {0} (no line) or a line
std::pair<GroupTable, GroupTable> semidirect_pair(const Rep2& rep,
                                                  const GroupTable& hprime,
                                                  const std::optional<Line>& l);

// ---- small matrix-group utilities (closures stay tiny) ----
std::vector<Mat2> mat_closure(std::int64_t p, std::vector<Mat2> gens);
bool mat_group_is_cyclic(const std::vector<Mat2>& g);
bool mat_group_is_dihedral(const std::vector<Mat2>& g);  // order 2n, n >= 3
std::vector<Mat2> mat_normal_core(const std::vector<Mat2>& g, const std::vector<Mat2>& h);

// all M in GL_2(F_p) with M^n = 1, grouped by nothing, sorted; exact for any
// p (conjugacy-class orbits; no full GL_2 enumeration needed)
std::vector<Mat2> matrices_with_order_dividing(std::int64_t p, std::uint64_t n);

}  // namespace normknot

#endif
