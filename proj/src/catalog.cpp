#include "normknot/catalog.hpp"

#include <algorithm>
#include <numeric>

#include "normknot/gl2.hpp"
#include "normknot/json_io.hpp"
#include "normknot/modarith.hpp"

namespace normknot {

namespace {

void require_trivial_core(const CatalogPair& pair, const char* what) {
    if (pair.group.order() % pair.stabilizer.order() != 0 ||
        pair.group.order() / pair.stabilizer.order() != pair.degree())
        throw std::logic_error(std::string(what) + ": stabilizer index != degree");
    if (normal_core(pair.group, pair.stabilizer).order() != 1)
        throw std::logic_error(std::string(what) + ": normal core not trivial");
}

CatalogPair finish(std::pair<GroupTable, GroupTable> gh, std::string label, const char* what) {
    CatalogPair pair{std::move(gh.first), std::move(gh.second), std::move(label)};
    if (!is_transitive(pair.group))
        throw std::logic_error(std::string(what) + ": action not transitive");
    require_trivial_core(pair, what);
    return pair;
}

}  // namespace

CatalogPair build_alpha(std::int64_t p, std::uint64_t ell, std::uint64_t m) {
    if (ell <= 2 || !is_prime(ell) || static_cast<std::uint64_t>(p - 1) % ell != 0)
        throw std::invalid_argument("alpha: need odd prime ell dividing p-1");
    if (m < 2 || m > ell - 1) throw std::invalid_argument("alpha: m in {2,...,ell-1}");
    std::uint64_t minv = static_cast<std::uint64_t>(
        mod_inverse(static_cast<std::int64_t>(m), static_cast<std::int64_t>(ell)));
    if (minv < m) throw std::invalid_argument("alpha: m must not exceed its inverse mod ell");
    Rep2 rep = build_rep_split_diag(p, ell, 1, static_cast<std::int64_t>(m));
    GroupTable h1 = GroupTable::trivial(rep.source.degree());
    auto gh = semidirect_transitive(rep, h1, Line(p, 1, 1));
    return finish(std::move(gh),
                  "alpha:p=" + std::to_string(p) + ",l=" + std::to_string(ell) +
                      ",m=" + std::to_string(m),
                  "alpha");
}

CatalogPair build_beta(std::int64_t p, std::uint64_t ell) {
    if (ell <= 2 || !is_prime(ell) || static_cast<std::uint64_t>(p + 1) % ell != 0)
        throw std::invalid_argument("beta: need odd prime ell dividing p+1");
    Rep2 rep = build_rep_nonsplit(p, ell, 1);
    GroupTable h1 = GroupTable::trivial(rep.source.degree());
    auto gh = semidirect_transitive(rep, h1, Line(p, 1, 1));
    return finish(std::move(gh), "beta:p=" + std::to_string(p) + ",l=" + std::to_string(ell),
                  "beta");
}

CatalogPair build_gamma(std::int64_t p, std::uint64_t ell) {
    if (p < 5 || ell <= 2 || !is_prime(ell) ||
        (static_cast<std::uint64_t>(p) * p - 1) % ell != 0)
        throw std::invalid_argument("gamma: need p >= 5 and odd prime ell dividing p^2-1");
    Rep2 rep = build_rep_dihedral(p, ell, 1);
    // H' = <tau>, the point stabilizer of the natural degree-ell action
    GroupTable hp = GroupTable::generate({rep.source.generators()[1]}, rep.source.degree());
    auto gh = semidirect_transitive(rep, hp, Line(p, 1, 1));
    return finish(std::move(gh), "gamma:p=" + std::to_string(p) + ",l=" + std::to_string(ell),
                  "gamma");
}

CatalogPair build_c4(std::int64_t p) {
    if (p % 4 != 1) throw std::invalid_argument("c4: p = 1 mod 4 required");
    Rep2 rep = build_rep_order4(p, 2, 1);  // diag(-1, sqrt(-1))
    GroupTable h1 = GroupTable::trivial(rep.source.degree());
    auto gh = semidirect_transitive(rep, h1, Line(p, 1, 1));
    return finish(std::move(gh), "c4:p=" + std::to_string(p), "c4");
}

CatalogPair build_times_cyclic(const CatalogPair& base, std::uint64_t d) {
    if (d < 1) throw std::invalid_argument("times_cyclic: d >= 1");
    const std::size_t n0 = base.degree();
    const std::size_t deg = n0 + d;
    auto extend = [&](const Perm& p, bool on_base) {
        std::vector<Point> img(deg);
        for (std::size_t i = 0; i < deg; ++i) img[i] = static_cast<Point>(i);
        if (on_base) {
            for (std::size_t i = 0; i < n0; ++i) img[i] = p(static_cast<Point>(i));
        } else {
            for (std::size_t i = 0; i < d; ++i)
                img[n0 + i] = static_cast<Point>(n0 + (i + 1) % d);
        }
        return Perm(std::move(img));
    };
    std::vector<Perm> gens;
    for (const Perm& g : base.group.generators()) gens.push_back(extend(g, true));
    gens.push_back(extend(Perm(deg), false));  // the d-cycle
    GroupTable big = GroupTable::generate(gens, deg);
    std::vector<Perm> hgens;
    for (const Perm& g : base.stabilizer.generators()) hgens.push_back(extend(g, true));
    GroupTable hbig = GroupTable::generate(hgens, deg);
    CosetAction ca = coset_action(big, hbig);
    GroupTable g = ca.image;
    GroupTable h = orbit_and_stabilizer(g, 0).stabilizer;
    return finish({std::move(g), std::move(h)},
                  "times_cyclic:base=(" + base.label + "),d=" + std::to_string(d),
                  "times_cyclic");
}

CatalogPair build_semidirect_ext(const CatalogPair& base, std::uint64_t ell) {
    if (base.degree() % 3 != 0)
        throw std::invalid_argument("semidirect_ext: base degree must be 3p");
    std::uint64_t p = base.degree() / 3;
    if (!is_prime(p) || p == 3)
        throw std::invalid_argument("semidirect_ext: base degree must be 3p, p prime != 3");
    if (!is_prime(ell) || ell == 3 || ell == p)
        throw std::invalid_argument("semidirect_ext: ell must be a prime not in {3, p}");

    SylowResult sp = sylow(base.group, p);
    if (!sp.normal) throw std::invalid_argument("semidirect_ext: base p-Sylow not normal");
    CosetAction ca = coset_action(base.group, sp.subgroup);
    if (ca.image.order() != 3)
        throw std::invalid_argument("semidirect_ext: base/S_p must be C_3");

    // G acts on (C_ell)^2 through its C_3 quotient by the fixed order-3 matrix
    const Perm& c3 = ca.image.element(ca.image.identity_index() == 0 ? 1 : 0);
    Mat2 a(static_cast<std::int64_t>(ell), 0, -1, 1, -1);
    auto exponent_of = [&](const Perm& img) {
        Perm x(img.degree());
        for (std::uint64_t k = 0; k < 3; ++k) {
            if (x == img) return k;
            x = x * c3;
        }
        throw std::logic_error("semidirect_ext: quotient dlog failed");
    };
    std::vector<Mat2> images;
    for (const Perm& g : base.group.generators())
        images.push_back(a.pow(exponent_of(ca.act(g))));
    Rep2 rep = Rep2::build(static_cast<std::int64_t>(ell), base.group, std::move(images));

    auto gh = semidirect_pair(rep, base.stabilizer, Line(static_cast<std::int64_t>(ell), 1, 1));
    return finish(std::move(gh),
                  "semidirect_ext:base=(" + base.label + "),l=" + std::to_string(ell),
                  "semidirect_ext");
}

namespace {

std::vector<std::pair<std::string, std::string>> split_params(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    int depth = 0;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) return;
        auto eq = cur.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("catalog label: expected key=value in '" + cur + "'");
        out.emplace_back(cur.substr(0, eq), cur.substr(eq + 1));
        cur.clear();
    };
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            flush();
            continue;
        }
        cur += c;
    }
    flush();
    if (depth != 0) throw std::invalid_argument("catalog label: unbalanced parentheses");
    return out;
}

std::uint64_t get_int(const std::vector<std::pair<std::string, std::string>>& kv,
                      const std::string& key) {
    for (const auto& [k, v] : kv)
        if (k == key) return std::stoull(v);
    throw std::invalid_argument("catalog label: missing parameter '" + key + "'");
}

std::string get_nested(const std::vector<std::pair<std::string, std::string>>& kv,
                       const std::string& key) {
    for (const auto& [k, v] : kv) {
        if (k != key) continue;
        if (v.size() < 2 || v.front() != '(' || v.back() != ')')
            throw std::invalid_argument("catalog label: '" + key + "' must be (label)");
        return v.substr(1, v.size() - 2);
    }
    throw std::invalid_argument("catalog label: missing parameter '" + key + "'");
}

}  // namespace

CatalogPair build_from_label(const std::string& label) {
    auto colon = label.find(':');
    std::string name = label.substr(0, colon);
    auto kv = colon == std::string::npos
                  ? std::vector<std::pair<std::string, std::string>>{}
                  : split_params(label.substr(colon + 1));
    if (name == "alpha")
        return build_alpha(static_cast<std::int64_t>(get_int(kv, "p")), get_int(kv, "l"),
                           get_int(kv, "m"));
    if (name == "beta")
        return build_beta(static_cast<std::int64_t>(get_int(kv, "p")), get_int(kv, "l"));
    if (name == "gamma")
        return build_gamma(static_cast<std::int64_t>(get_int(kv, "p")), get_int(kv, "l"));
    if (name == "c4") return build_c4(static_cast<std::int64_t>(get_int(kv, "p")));
    if (name == "times_cyclic")
        return build_times_cyclic(build_from_label(get_nested(kv, "base")), get_int(kv, "d"));
    if (name == "semidirect_ext")
        return build_semidirect_ext(build_from_label(get_nested(kv, "base")), get_int(kv, "l"));
    throw std::invalid_argument("catalog label: unknown construction '" + name + "'");
}

std::vector<CatalogPair> load_external(const std::string& path) {
    nlohmann::json j = load_json_file(path);
    std::vector<nlohmann::json> entries;
    if (j.is_array())
        entries.assign(j.begin(), j.end());
    else
        entries.push_back(j);
    std::vector<CatalogPair> out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        GroupInput in = group_from_json(entries[i]);
        if (!is_transitive(in.group))
            throw std::invalid_argument("external group " + std::to_string(i) +
                                        " is not transitive");
        Point pt = in.stabilizer_point.value_or(0);
        GroupTable h = orbit_and_stabilizer(in.group, pt).stabilizer;
        out.push_back(
            {std::move(in.group), std::move(h), "external[" + std::to_string(i) + "]"});
    }
    return out;
}

namespace {

GroupTable from_images(std::size_t degree, const std::vector<std::vector<Point>>& images) {
    std::vector<Perm> gens;
    for (const auto& img : images) gens.emplace_back(std::vector<Point>(img.begin(), img.end()));
    return GroupTable::generate(gens, degree);
}

}  // namespace

std::vector<CatalogPair> builtin_transitive_groups(std::size_t degree) {
    auto pair_of = [](std::string name, GroupTable g) {
        GroupTable h = orbit_and_stabilizer(g, 0).stabilizer;
        return CatalogPair{std::move(g), std::move(h), std::move(name)};
    };
    std::vector<CatalogPair> out;
    switch (degree) {
        case 2:
            out.push_back(pair_of("C2", cyclic_group(2)));
            break;
        case 3:
            out.push_back(pair_of("C3", cyclic_group(3)));
            out.push_back(pair_of("S3", dihedral_group(3)));
            break;
        case 4:
            out.push_back(pair_of("C4", cyclic_group(4)));
            out.push_back(pair_of("V4", klein_four_group()));
            out.push_back(pair_of("D4", dihedral_group(4)));
            out.push_back(pair_of("A4", from_images(4, {{1, 0, 3, 2}, {1, 2, 0, 3}})));
            out.push_back(pair_of("S4", from_images(4, {{1, 2, 3, 0}, {1, 0, 2, 3}})));
            break;
        case 5:
            out.push_back(pair_of("C5", cyclic_group(5)));
            out.push_back(pair_of("D5", dihedral_group(5)));
            out.push_back(pair_of("F20", from_images(5, {{1, 2, 3, 4, 0}, {0, 2, 4, 1, 3}})));
            out.push_back(pair_of("A5", from_images(5, {{1, 2, 3, 4, 0}, {1, 2, 0, 3, 4}})));
            out.push_back(pair_of("S5", from_images(5, {{1, 2, 3, 4, 0}, {1, 0, 2, 3, 4}})));
            break;
        case 7:
            out.push_back(pair_of("C7", cyclic_group(7)));
            out.push_back(pair_of("D7", dihedral_group(7)));
            out.push_back(pair_of(
                "F21", from_images(7, {{1, 2, 3, 4, 5, 6, 0}, {0, 2, 4, 6, 1, 3, 5}})));
            out.push_back(pair_of(
                "F42", from_images(7, {{1, 2, 3, 4, 5, 6, 0}, {0, 3, 6, 2, 5, 1, 4}})));
            // the remaining degree-7 groups all have even order >= 168 and
            // never pass the coprimality filter used by the sweeps
            break;
        default:
            throw std::invalid_argument("builtin_transitive_groups: degree not covered");
    }
    return out;
}

}  // namespace normknot
