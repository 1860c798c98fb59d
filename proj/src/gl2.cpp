#include "normknot/gl2.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "normknot/modarith.hpp"

namespace normknot {

Mat2::Mat2(std::int64_t p_, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : p(p_), e{mod_reduce(a, p_), mod_reduce(b, p_), mod_reduce(c, p_), mod_reduce(d, p_)} {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw std::invalid_argument("Mat2: p not prime");
    if (det() == 0) throw std::invalid_argument("Mat2: singular matrix");
}

Mat2 Mat2::identity(std::int64_t p) { return Mat2(p, 1, 0, 0, 1); }
Mat2 Mat2::diagonal(std::int64_t p, std::int64_t a, std::int64_t d) { return Mat2(p, a, 0, 0, d); }
Mat2 Mat2::companion(std::int64_t p, std::int64_t trace) { return Mat2(p, 0, -1, 1, trace); }

std::int64_t Mat2::det() const { return mod_reduce(e[0] * e[3] - e[1] * e[2], p); }
std::int64_t Mat2::trace() const { return mod_reduce(e[0] + e[3], p); }

Mat2 Mat2::operator*(const Mat2& rhs) const {
    if (p != rhs.p) throw std::invalid_argument("Mat2: field mismatch");
    return Mat2(p, e[0] * rhs.e[0] + e[1] * rhs.e[2], e[0] * rhs.e[1] + e[1] * rhs.e[3],
                e[2] * rhs.e[0] + e[3] * rhs.e[2], e[2] * rhs.e[1] + e[3] * rhs.e[3]);
}

Mat2 Mat2::inverse() const {
    std::int64_t di = mod_inverse(det(), p);
    return Mat2(p, e[3] * di, -e[1] * di, -e[2] * di, e[0] * di);
}

Mat2 Mat2::pow(std::uint64_t k) const {
    Mat2 r = identity(p);
    Mat2 b = *this;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

std::uint64_t Mat2::order() const {
    Mat2 x = *this;
    std::uint64_t n = 1;
    while (!x.is_identity()) {
        x = x * *this;
        ++n;
    }
    return n;
}

bool Mat2::is_identity() const { return e[0] == 1 && e[1] == 0 && e[2] == 0 && e[3] == 1; }
bool Mat2::is_scalar() const { return e[1] == 0 && e[2] == 0 && e[0] == e[3]; }

std::array<std::int64_t, 2> Mat2::apply(std::array<std::int64_t, 2> v) const {
    return {mod_reduce(e[0] * v[0] + e[1] * v[1], p), mod_reduce(e[2] * v[0] + e[3] * v[1], p)};
}

std::string Mat2::to_string() const {
    return "[[" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "],[" +
           std::to_string(e[2]) + "," + std::to_string(e[3]) + "]]";
}

Line::Line(std::int64_t p_, std::int64_t x, std::int64_t y) : p(p_) {
    x = mod_reduce(x, p);
    y = mod_reduce(y, p);
    if (x == 0 && y == 0) throw std::invalid_argument("Line: zero vector");
    if (x != 0) {
        std::int64_t xi = mod_inverse(x, p);
        rep = {1, y * xi % p};
    } else {
        rep = {0, 1};
    }
}

std::string Line::to_string() const {
    return "<(" + std::to_string(rep[0]) + "," + std::to_string(rep[1]) + ")>";
}

std::vector<Line> all_lines(std::int64_t p) {
    std::vector<Line> lines;
    lines.emplace_back(p, 0, 1);
    for (std::int64_t a = 0; a < p; ++a) lines.emplace_back(p, 1, a);
    std::sort(lines.begin(), lines.end());
    return lines;
}

Line apply(const Mat2& m, const Line& l) {
    auto v = m.apply(l.rep);
    return Line(m.p, v[0], v[1]);
}

bool fixes_pointwise(const Mat2& m, const Line& l) { return m.apply(l.rep) == l.rep; }

Rep2 Rep2::build(std::int64_t p, GroupTable source, std::vector<Mat2> gen_images) {
    if (gen_images.size() != source.generators().size())
        throw std::invalid_argument("Rep2: one image per generator required");
    for (const Mat2& m : gen_images)
        if (m.p != p) throw std::invalid_argument("Rep2: image field mismatch");
    if (source.order() % static_cast<std::size_t>(p) == 0)
        throw std::invalid_argument("Rep2: source order must be coprime to p");

    Rep2 rep;
    rep.p = p;
    rep.gen_images = gen_images;
    // transport along the BFS factorization, then verify the homomorphism
    // property on every (element, generator) pair, which implies it on all
    // products
    std::vector<Mat2> images(source.order(), Mat2::identity(p));
    std::vector<bool> done(source.order(), false);
    done[source.identity_index()] = true;
    std::vector<std::size_t> order_of_fill;
    order_of_fill.push_back(source.identity_index());
    for (std::size_t filled = 0; filled < order_of_fill.size(); ++filled) {
        std::size_t i = order_of_fill[filled];
        for (std::size_t gi = 0; gi < source.generators().size(); ++gi) {
            std::size_t j = *source.index_of(source.element(i) * source.generators()[gi]);
            if (!done[j]) {
                images[j] = images[i] * gen_images[gi];
                done[j] = true;
                order_of_fill.push_back(j);
            }
        }
    }
    for (std::size_t i = 0; i < source.order(); ++i) {
        for (std::size_t gi = 0; gi < source.generators().size(); ++gi) {
            std::size_t j = *source.index_of(source.element(i) * source.generators()[gi]);
            if (!(images[j] == images[i] * gen_images[gi]))
                throw std::invalid_argument("Rep2: images do not define a homomorphism");
        }
    }
    rep.source = std::move(source);
    rep.elem_images = std::move(images);
    return rep;
}

const Mat2& Rep2::image_of(const Perm& g) const {
    auto i = source.index_of(g);
    if (!i) throw std::invalid_argument("Rep2::image_of: not a source element");
    return elem_images[*i];
}

bool Rep2::is_faithful() const {
    std::size_t id_count = 0;
    for (const Mat2& m : elem_images)
        if (m.is_identity()) ++id_count;
    return id_count == 1;
}

std::vector<std::int64_t> companion_trace_candidates(std::int64_t p, std::uint64_t n) {
    std::vector<std::int64_t> ts;
    for (std::int64_t t = 0; t < p; ++t)
        if (Mat2::companion(p, t).order() == n) ts.push_back(t);
    return ts;
}

std::int64_t companion_parameter(std::int64_t p, std::uint64_t ell, std::size_t j) {
    if (ell < 3 || !is_prime(ell) || ell == static_cast<std::uint64_t>(p))
        throw std::invalid_argument("companion_parameter: ell must be an odd prime != p");
    if ((static_cast<std::uint64_t>(p) * p - 1) % ell != 0)
        throw std::invalid_argument("companion_parameter: ell does not divide p^2-1");
    auto ts = companion_trace_candidates(p, ell);
    if (ts.size() != (ell - 1) / 2)
        throw std::logic_error("companion_parameter: trace count != (ell-1)/2");
    if (j < 1 || j > ts.size())
        throw std::invalid_argument("companion_parameter: index out of range");
    return ts[j - 1];
}

Rep2 build_rep_split_diag(std::int64_t p, std::uint64_t ell, std::int64_t j1, std::int64_t j2) {
    if (ell < 3 || !is_prime(ell)) throw std::invalid_argument("split_diag: ell odd prime");
    if (static_cast<std::uint64_t>(p - 1) % ell != 0)
        throw std::invalid_argument("split_diag: ell must divide p-1");
    std::int64_t zeta = canonical_root_of_unity(p, ell);
    Mat2 m = Mat2::diagonal(p, mod_pow(zeta, static_cast<std::uint64_t>(mod_reduce(j1, ell)), p),
                            mod_pow(zeta, static_cast<std::uint64_t>(mod_reduce(j2, ell)), p));
    return Rep2::build(p, cyclic_group(ell), {m});
}

Rep2 build_rep_nonsplit(std::int64_t p, std::uint64_t ell, std::size_t j) {
    if (static_cast<std::uint64_t>(p + 1) % ell != 0)
        throw std::invalid_argument("nonsplit: ell must divide p+1");
    Mat2 m = Mat2::companion(p, companion_parameter(p, ell, j));
    return Rep2::build(p, cyclic_group(ell), {m});
}

Rep2 build_rep_dihedral(std::int64_t p, std::uint64_t ell, std::size_t j) {
    if (p < 5) throw std::invalid_argument("dihedral: p >= 5 required");
    Mat2 rot = Mat2::companion(p, companion_parameter(p, ell, j));
    Mat2 refl(p, 0, 1, 1, 0);
    return Rep2::build(p, dihedral_group(ell), {rot, refl});
}

Rep2 build_rep_order4(std::int64_t p, std::int64_t j1, std::int64_t j2) {
    if (p % 4 != 1) throw std::invalid_argument("order4: p = 1 mod 4 required");
    std::int64_t i4 = canonical_root_of_unity(p, 4);
    Mat2 m = Mat2::diagonal(p, mod_pow(i4, static_cast<std::uint64_t>(mod_reduce(j1, 4)), p),
                            mod_pow(i4, static_cast<std::uint64_t>(mod_reduce(j2, 4)), p));
    return Rep2::build(p, cyclic_group(4), {m});
}

ExtremalReport is_extremal(const Rep2& rep, const GroupTable& hprime) {
    require_subgroup(rep.source, hprime, "is_extremal");
    const std::int64_t p = rep.p;
    ExtremalReport out;

    for (std::int64_t x = 0; x < p && !out.has_invariants; ++x) {
        for (std::int64_t y = 0; y < p; ++y) {
            if (x == 0 && y == 0) continue;
            bool fixed = true;
            for (const Mat2& m : rep.gen_images) {
                if (!(m.apply({x, y}) == std::array<std::int64_t, 2>{x, y})) {
                    fixed = false;
                    break;
                }
            }
            if (fixed) {
                out.has_invariants = true;
                break;
            }
        }
    }

    for (const Line& l : all_lines(p)) {
        std::vector<std::size_t> stab, fix;
        for (std::size_t i = 0; i < rep.source.order(); ++i) {
            const Mat2& m = rep.elem_images[i];
            if (apply(m, l) == l) stab.push_back(i);
            if (fixes_pointwise(m, l)) fix.push_back(i);
        }
        if (stab != fix) continue;
        bool contains_h = true;
        for (const Perm& h : hprime.elements()) {
            std::size_t i = *rep.source.index_of(h);
            if (!std::binary_search(stab.begin(), stab.end(), i)) {
                contains_h = false;
                break;
            }
        }
        if (contains_h) out.special_lines.push_back(l);
    }

    out.extremal = !out.has_invariants && !out.special_lines.empty();
    out.reason = out.extremal        ? ExtremalReason::Extremal
                 : out.has_invariants ? ExtremalReason::HasInvariants
                                      : ExtremalReason::NoSpecialLine;
    return out;
}

std::pair<GroupTable, GroupTable> semidirect_pair(const Rep2& rep, const GroupTable& hprime,
                                                  const std::optional<Line>& l) {
    require_subgroup(rep.source, hprime, "semidirect_pair");
    if (l) {
        // L x| H' is a subgroup only when H' stabilizes L
        for (const Perm& h : hprime.generators())
            if (!(apply(rep.image_of(h), *l) == *l))
                throw std::invalid_argument("semidirect_pair: line not H'-stable");
    }
    const std::int64_t p = rep.p;
    const std::size_t ns = rep.source.order();
    const std::size_t nv = static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
    const std::size_t total = nv * ns;

    auto vidx = [&](std::int64_t x, std::int64_t y) {
        return static_cast<std::size_t>(x) * static_cast<std::size_t>(p) +
               static_cast<std::size_t>(y);
    };

    // source multiplication table and element images, by index
    std::vector<std::vector<std::uint32_t>> mult(ns, std::vector<std::uint32_t>(ns));
    for (std::size_t i = 0; i < ns; ++i)
        for (std::size_t j = 0; j < ns; ++j)
            mult[i][j] =
                static_cast<std::uint32_t>(*rep.source.index_of(rep.source.element(i) *
                                                                rep.source.element(j)));

    // members of L x| H' as pair indices
    std::vector<std::pair<std::size_t, std::size_t>> h0;
    std::vector<std::size_t> hprime_idx;
    for (const Perm& h : hprime.elements()) hprime_idx.push_back(*rep.source.index_of(h));
    if (l) {
        for (std::int64_t k = 0; k < p; ++k) {
            std::int64_t x = mod_reduce(k * l->rep[0], p), y = mod_reduce(k * l->rep[1], p);
            for (std::size_t hi : hprime_idx) h0.emplace_back(vidx(x, y), hi);
        }
    } else {
        for (std::size_t hi : hprime_idx) h0.emplace_back(vidx(0, 0), hi);
    }

    // left cosets of H0; pair index = v * ns + g
    std::vector<std::int32_t> coset_of(total, -1);
    std::vector<std::size_t> rep_of_coset;
    for (std::size_t idx = 0; idx < total; ++idx) {
        if (coset_of[idx] >= 0) continue;
        std::int32_t cid = static_cast<std::int32_t>(rep_of_coset.size());
        rep_of_coset.push_back(idx);
        std::size_t v = idx / ns, gi = idx % ns;
        std::int64_t vx = static_cast<std::int64_t>(v / p), vy = static_cast<std::int64_t>(v % p);
        const Mat2& rho = rep.elem_images[gi];
        for (auto [w, hi] : h0) {
            std::int64_t wx = static_cast<std::int64_t>(w / p), wy = static_cast<std::int64_t>(w % p);
            auto rw = rho.apply({wx, wy});
            std::size_t v2 = vidx(mod_reduce(vx + rw[0], p), mod_reduce(vy + rw[1], p));
            coset_of[v2 * ns + mult[gi][hi]] = cid;
        }
    }
    const std::size_t m = rep_of_coset.size();

    // left-multiplication action of a generator on cosets
    auto gen_perm = [&](std::size_t gv, std::size_t ggi) {
        std::int64_t gx = static_cast<std::int64_t>(gv / p), gy = static_cast<std::int64_t>(gv % p);
        const Mat2& rho = rep.elem_images[ggi];
        std::vector<Point> img(m);
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t idx = rep_of_coset[c];
            std::size_t v = idx / ns, gi = idx % ns;
            std::int64_t vx = static_cast<std::int64_t>(v / p),
                         vy = static_cast<std::int64_t>(v % p);
            auto rv = rho.apply({vx, vy});
            std::size_t v2 = vidx(mod_reduce(gx + rv[0], p), mod_reduce(gy + rv[1], p));
            img[c] = static_cast<Point>(coset_of[v2 * ns + mult[ggi][gi]]);
        }
        return Perm(std::move(img));
    };

    std::vector<Perm> gens;
    std::size_t id_idx = rep.source.identity_index();
    gens.push_back(gen_perm(vidx(1, 0), id_idx));
    gens.push_back(gen_perm(vidx(0, 1), id_idx));
    for (const Perm& g : rep.source.generators())
        gens.push_back(gen_perm(vidx(0, 0), *rep.source.index_of(g)));

    GroupTable big = GroupTable::generate(gens, m);
    GroupTable stab = orbit_and_stabilizer(big, 0).stabilizer;
    return {std::move(big), std::move(stab)};
}

std::pair<GroupTable, GroupTable> semidirect_transitive(const Rep2& rep, const GroupTable& hprime,
                                                        const Line& l) {
    for (const Perm& h : hprime.generators()) {
        const Mat2& m = rep.image_of(h);
        if (!(apply(m, l) == l) || !fixes_pointwise(m, l))
            throw std::invalid_argument(
                "semidirect_transitive: line must be stable and pointwise fixed by H'");
    }
    auto pair = semidirect_pair(rep, hprime, l);
    const std::size_t deg = pair.first.degree();
    const std::size_t p = static_cast<std::size_t>(rep.p);
    if (deg % p != 0 || deg % (p * p) == 0)
        throw std::logic_error("semidirect_transitive: degree not squarefree at p");
    if (!sylow(pair.first, rep.p).normal)
        throw std::logic_error("semidirect_transitive: p-Sylow not normal");
    return pair;
}

std::vector<Mat2> mat_closure(std::int64_t p, std::vector<Mat2> gens) {
    std::set<Mat2> seen;
    std::vector<Mat2> queue{Mat2::identity(p)};
    seen.insert(queue[0]);
    while (!queue.empty()) {
        Mat2 cur = queue.back();
        queue.pop_back();
        for (const Mat2& g : gens) {
            Mat2 next = cur * g;
            if (seen.insert(next).second) queue.push_back(next);
        }
    }
    return {seen.begin(), seen.end()};
}

bool mat_group_is_cyclic(const std::vector<Mat2>& g) {
    for (const Mat2& m : g)
        if (m.order() == g.size()) return true;
    return false;
}

bool mat_group_is_dihedral(const std::vector<Mat2>& g) {
    if (g.size() % 2 != 0 || g.size() < 6) return false;
    std::uint64_t n = g.size() / 2;
    for (const Mat2& r : g) {
        if (r.order() != n) continue;
        for (const Mat2& s : g) {
            if (s.order() != 2) continue;
            if (s * r * s.inverse() == r.pow(n - 1)) {
                // s outside <r>
                bool inside = false;
                Mat2 x = Mat2::identity(r.p);
                for (std::uint64_t k = 0; k < n; ++k) {
                    if (x == s) inside = true;
                    x = x * r;
                }
                if (!inside) return true;
            }
        }
    }
    return false;
}

std::vector<Mat2> mat_normal_core(const std::vector<Mat2>& g, const std::vector<Mat2>& h) {
    std::vector<Mat2> core;
    std::set<Mat2> hset(h.begin(), h.end());
    for (const Mat2& x : h) {
        bool keep = true;
        for (const Mat2& c : g) {
            if (!hset.count(c * x * c.inverse())) {
                keep = false;
                break;
            }
        }
        if (keep) core.push_back(x);
    }
    return core;
}

std::vector<Mat2> matrices_with_order_dividing(std::int64_t p, std::uint64_t n) {
    std::set<Mat2> out;
    for (std::int64_t lam = 1; lam < p; ++lam)
        if (n % multiplicative_order(lam, p) == 0) out.insert(Mat2::diagonal(p, lam, lam));

    // non-scalar classes, one per characteristic polynomial x^2 - t x + d
    for (std::int64_t t = 0; t < p; ++t) {
        for (std::int64_t d = 1; d < p; ++d) {
            Mat2 comp(p, 0, -d, 1, t);
            if (n % comp.order() != 0) continue;
            for (std::int64_t a = 0; a < p; ++a) {
                std::int64_t dd = mod_reduce(t - a, p);
                std::int64_t k = mod_reduce(a * dd - d, p);  // bc = ad' - det
                if (k != 0) {
                    for (std::int64_t b = 1; b < p; ++b)
                        out.insert(Mat2(p, a, b, k * mod_inverse(b, p) % p, dd));
                } else {
                    for (std::int64_t b = 1; b < p; ++b) out.insert(Mat2(p, a, b, 0, dd));
                    for (std::int64_t c = 1; c < p; ++c) out.insert(Mat2(p, a, 0, c, dd));
                    if (a != dd) out.insert(Mat2(p, a, 0, 0, dd));
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace normknot
