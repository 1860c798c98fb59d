#include "normknot/group.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <map>
#include <numeric>
#include <unordered_set>

namespace normknot {

namespace {
std::atomic<std::size_t> g_cap{200000};
}

std::size_t group_order_cap() { return g_cap.load(); }
void set_group_order_cap(std::size_t cap) { g_cap.store(cap); }

void require_subgroup(const GroupTable& g, const GroupTable& h, const char* where) {
    if (h.degree() != g.degree() || !h.is_subgroup_of(g))
        throw std::invalid_argument(std::string(where) + ": not a subgroup");
}

void GroupTable::finalize() {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    index_.clear();
    index_.reserve(elements_.size() * 2);
    for (std::size_t i = 0; i < elements_.size(); ++i) index_.emplace(elements_[i], i);

    identity_index_ = *index_of(Perm(degree_));
    parent_.assign(elements_.size(), -1);
    via_gen_.assign(elements_.size(), -1);
    std::deque<std::size_t> queue{identity_index_};
    std::vector<bool> seen(elements_.size(), false);
    seen[identity_index_] = true;
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
            auto j = index_of(elements_[i] * generators_[gi]);
            if (!j) throw std::logic_error("GroupTable: element set not closed");
            if (!seen[*j]) {
                seen[*j] = true;
                parent_[*j] = static_cast<std::int32_t>(i);
                via_gen_[*j] = static_cast<std::int32_t>(gi);
                queue.push_back(*j);
            }
        }
    }
    for (bool s : seen)
        if (!s) throw std::logic_error("GroupTable: generators do not reach all elements");
}

GroupTable GroupTable::generate(std::vector<Perm> gens, std::size_t degree) {
    if (degree > 65535)
        throw std::invalid_argument("generate: degree exceeds the point type");
    for (const Perm& p : gens)
        if (p.degree() != degree)
            throw std::invalid_argument("generate: generator degree mismatch");

    std::unordered_set<Perm, PermHash> seen;
    std::deque<Perm> queue;
    Perm id(degree);
    seen.insert(id);
    queue.push_back(id);
    const std::size_t cap = group_order_cap();
    while (!queue.empty()) {
        Perm cur = std::move(queue.front());
        queue.pop_front();
        for (const Perm& g : gens) {
            Perm next = cur * g;
            if (seen.insert(next).second) {
                if (seen.size() > cap)
                    throw GroupCapError("generate: group order exceeds cap " +
                                        std::to_string(cap));
                queue.push_back(std::move(next));
            }
        }
    }
    GroupTable t;
    t.degree_ = degree;
    t.generators_ = std::move(gens);
    if (t.generators_.empty()) t.generators_.push_back(id);
    t.elements_.assign(seen.begin(), seen.end());
    t.finalize();
    return t;
}

GroupTable GroupTable::from_elements(std::size_t degree, std::vector<Perm> elems) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    // greedy small generating set
    std::vector<Perm> gens;
    std::unordered_set<Perm, PermHash> closure;
    closure.insert(Perm(degree));
    for (const Perm& e : elems) {
        if (closure.count(e)) continue;
        gens.push_back(e);
        std::deque<Perm> queue(closure.begin(), closure.end());
        closure.clear();
        closure.insert(Perm(degree));
        queue.assign(1, Perm(degree));
        while (!queue.empty()) {
            Perm cur = std::move(queue.front());
            queue.pop_front();
            for (const Perm& g : gens) {
                Perm next = cur * g;
                if (closure.insert(next).second) queue.push_back(std::move(next));
            }
        }
    }
    if (closure.size() != elems.size())
        throw std::logic_error("from_elements: element set not closed");
    GroupTable t;
    t.degree_ = degree;
    t.generators_ = gens.empty() ? std::vector<Perm>{Perm(degree)} : std::move(gens);
    t.elements_ = std::move(elems);
    t.finalize();
    return t;
}

GroupTable GroupTable::trivial(std::size_t degree) {
    return from_elements(degree, {Perm(degree)});
}

bool GroupTable::contains(const Perm& p) const { return index_.count(p) != 0; }

std::optional<std::size_t> GroupTable::index_of(const Perm& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

bool GroupTable::is_subgroup_of(const GroupTable& g) const {
    if (order() > g.order()) return false;
    for (const Perm& e : elements_)
        if (!g.contains(e)) return false;
    return true;
}

bool GroupTable::is_abelian() const {
    for (const Perm& a : generators_)
        for (const Perm& b : generators_)
            if (!(a * b == b * a)) return false;
    return true;
}

bool GroupTable::is_cyclic() const {
    for (const Perm& e : elements_)
        if (e.order() == order()) return true;
    return false;
}

std::size_t GroupTable::exponent() const {
    std::size_t e = 1;
    for (const Perm& x : elements_) e = std::lcm(e, x.order());
    return e;
}

OrbitStabilizer orbit_and_stabilizer(const GroupTable& g, Point point) {
    if (point >= g.degree())
        throw std::invalid_argument("orbit_and_stabilizer: point out of range");
    std::vector<bool> in_orbit(g.degree(), false);
    std::deque<Point> queue{point};
    in_orbit[point] = true;
    while (!queue.empty()) {
        Point x = queue.front();
        queue.pop_front();
        for (const Perm& gen : g.generators()) {
            Point y = gen(x);
            if (!in_orbit[y]) {
                in_orbit[y] = true;
                queue.push_back(y);
            }
        }
    }
    OrbitStabilizer res;
    for (std::size_t i = 0; i < g.degree(); ++i)
        if (in_orbit[i]) res.orbit.push_back(static_cast<Point>(i));
    std::vector<Perm> stab;
    for (const Perm& e : g.elements())
        if (e(point) == point) stab.push_back(e);
    res.stabilizer = GroupTable::from_elements(g.degree(), std::move(stab));
    return res;
}

bool is_transitive(const GroupTable& g) {
    return orbit_and_stabilizer(g, 0).orbit.size() == g.degree();
}

GroupTable normal_core(const GroupTable& g, const GroupTable& h) {
    require_subgroup(g, h, "normal_core");
    std::vector<Perm> core;
    for (const Perm& x : h.elements()) {
        bool keep = true;
        for (const Perm& c : g.elements()) {
            if (!h.contains(x.conjugated_by(c))) {
                keep = false;
                break;
            }
        }
        if (keep) core.push_back(x);
    }
    return GroupTable::from_elements(g.degree(), std::move(core));
}

bool is_normal_in(const GroupTable& g, const GroupTable& h) {
    for (const Perm& c : g.generators())
        for (const Perm& x : h.generators())
            if (!h.contains(x.conjugated_by(c))) return false;
    return true;
}

SylowResult sylow(const GroupTable& g, std::uint64_t p) {
    if (p < 2) throw std::invalid_argument("sylow: p must be prime");
    std::size_t pp = 1;
    while (g.order() % (pp * p) == 0) pp *= p;
    if (pp == 1) return {GroupTable::trivial(g.degree()), true};

    auto is_ppower_order = [&](const Perm& e) {
        std::size_t o = e.order();
        while (o % p == 0) o /= p;
        return o == 1;
    };
    std::vector<Perm> ppelems;
    for (const Perm& e : g.elements())
        if (is_ppower_order(e)) ppelems.push_back(e);
    if (ppelems.size() == pp) {
        // unique Sylow: the p-power-order elements already form it
        return {GroupTable::from_elements(g.degree(), std::move(ppelems)), true};
    }

    // grow a p-subgroup inside its normalizer until full order
    GroupTable part = GroupTable::trivial(g.degree());
    for (const Perm& e : g.elements()) {
        if (!e.is_identity() && e.order() == p) {
            part = GroupTable::generate({e}, g.degree());
            break;
        }
    }
    while (part.order() < pp) {
        GroupTable n = normalizer(g, part);
        bool grown = false;
        for (const Perm& y : n.elements()) {
            if (part.contains(y) || !is_ppower_order(y) || y.is_identity()) continue;
            std::vector<Perm> gens = part.generators();
            gens.push_back(y);
            GroupTable bigger = GroupTable::generate(gens, g.degree());
            if (bigger.order() % p == 0 && bigger.order() <= pp) {
                std::size_t o = bigger.order();
                while (o % p == 0) o /= p;
                if (o == 1) {
                    part = std::move(bigger);
                    grown = true;
                    break;
                }
            }
        }
        if (!grown) throw std::logic_error("sylow: could not grow p-subgroup");
    }
    bool normal = is_normal_in(g, part);
    return {std::move(part), normal};
}

GroupTable normalizer(const GroupTable& g, const GroupTable& h) {
    require_subgroup(g, h, "normalizer");
    std::vector<Perm> res;
    for (const Perm& c : g.elements()) {
        bool ok = true;
        for (const Perm& x : h.generators()) {
            if (!h.contains(x.conjugated_by(c))) {
                ok = false;
                break;
            }
        }
        if (ok) res.push_back(c);
    }
    return GroupTable::from_elements(g.degree(), std::move(res));
}

GroupTable centralizer(const GroupTable& g, const GroupTable& h) {
    require_subgroup(g, h, "centralizer");
    std::vector<Perm> res;
    for (const Perm& c : g.elements()) {
        bool ok = true;
        for (const Perm& x : h.generators()) {
            if (!(c * x == x * c)) {
                ok = false;
                break;
            }
        }
        if (ok) res.push_back(c);
    }
    return GroupTable::from_elements(g.degree(), std::move(res));
}

GroupTable commutator(const GroupTable& g, const GroupTable& a, const GroupTable& b) {
    require_subgroup(g, a, "commutator");
    require_subgroup(g, b, "commutator");
    // [A,B] is the closure of generator commutators under conjugation by <A,B>
    std::vector<Perm> conjugators = a.generators();
    conjugators.insert(conjugators.end(), b.generators().begin(), b.generators().end());

    std::vector<Perm> gens;
    for (const Perm& x : a.generators())
        for (const Perm& y : b.generators())
            gens.push_back(x * y * x.inverse() * y.inverse());
    GroupTable k = GroupTable::generate(gens, g.degree());
    bool stable = false;
    while (!stable) {
        stable = true;
        for (const Perm& c : conjugators) {
            for (const Perm& x : k.generators()) {
                Perm y = x.conjugated_by(c);
                if (!k.contains(y)) {
                    gens.push_back(y);
                    stable = false;
                }
            }
        }
        if (!stable) k = GroupTable::generate(gens, g.degree());
    }
    return k;
}

Perm CosetAction::act(const Perm& g) const {
    auto i = parent.index_of(g);
    if (!i) throw std::invalid_argument("CosetAction::act: not an element of the parent");
    return action[*i];
}

CosetAction coset_action(const GroupTable& g, const GroupTable& h) {
    require_subgroup(g, h, "coset_action");
    const std::size_t n = g.order();
    std::vector<std::int32_t> coset_of(n, -1);
    std::vector<Perm> reps;
    std::vector<std::size_t> rep_index;
    for (std::size_t i = 0; i < n; ++i) {
        if (coset_of[i] >= 0) continue;
        std::int32_t id = static_cast<std::int32_t>(reps.size());
        reps.push_back(g.element(i));
        rep_index.push_back(i);
        for (const Perm& x : h.elements()) coset_of[*g.index_of(g.element(i) * x)] = id;
    }
    const std::size_t m = reps.size();
    std::vector<Perm> action;
    action.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Point> img(m);
        for (std::size_t j = 0; j < m; ++j)
            img[j] = static_cast<Point>(coset_of[*g.index_of(g.element(i) * reps[j])]);
        action.emplace_back(std::move(img));
    }
    std::vector<Perm> image_gens;
    for (const Perm& gen : g.generators()) image_gens.push_back(action[*g.index_of(gen)]);
    GroupTable image = GroupTable::generate(image_gens, m);
    std::vector<Perm> ker;
    for (std::size_t i = 0; i < n; ++i)
        if (action[i].is_identity()) ker.push_back(g.element(i));
    CosetAction res;
    res.parent = g;
    res.subgroup = h;
    res.representatives = std::move(reps);
    res.action = std::move(action);
    res.image = std::move(image);
    res.kernel = GroupTable::from_elements(g.degree(), std::move(ker));
    return res;
}

DoubleCosets double_cosets(const GroupTable& d, const GroupTable& g, const GroupTable& h) {
    require_subgroup(g, d, "double_cosets");
    require_subgroup(g, h, "double_cosets");
    const std::size_t n = g.order();
    std::vector<std::int32_t> cls(n, -1);
    DoubleCosets res;
    std::size_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        const Perm& rep = g.element(i);
        const std::int32_t id = static_cast<std::int32_t>(res.representatives.size());
        std::size_t size = 0;
        // the class collapses to the single coset (rep)H exactly when the
        // D-generators keep it; check that first, it covers D <= core(H)
        for (const Perm& y : h.elements()) {
            std::size_t j = *g.index_of(rep * y);
            if (cls[j] < 0) {
                cls[j] = id;
                ++size;
            }
        }
        bool single_coset = true;
        for (const Perm& x : d.generators()) {
            if (cls[*g.index_of(x * rep)] != id) {
                single_coset = false;
                break;
            }
        }
        if (!single_coset) {
            for (const Perm& x : d.elements()) {
                Perm xr = x * rep;
                for (const Perm& y : h.elements()) {
                    std::size_t j = *g.index_of(xr * y);
                    if (cls[j] < 0) {
                        cls[j] = id;
                        ++size;
                    }
                }
            }
        }
        res.representatives.push_back(rep);
        res.sizes.push_back(size);
        total += size;
    }
    if (total != n) throw std::logic_error("double_cosets: classes do not partition G");
    return res;
}

std::vector<std::uint64_t> abelian_invariants(const GroupTable& a) {
    if (!a.is_abelian())
        throw std::invalid_argument("abelian_invariants: group is not abelian");
    if (a.order() == 1) return {};

    std::vector<std::uint64_t> primes;
    std::uint64_t rem = a.order();
    for (std::uint64_t q = 2; q * q <= rem; ++q)
        if (rem % q == 0) {
            primes.push_back(q);
            while (rem % q == 0) rem /= q;
        }
    if (rem > 1) primes.push_back(rem);

    // per prime q: with q^{n_k} := #{x : x^{q^k} = 1}, the number of cyclic
    // factors of order >= q^k equals n_k - n_{k-1}
    std::map<std::uint64_t, std::vector<std::size_t>> primary;  // q -> exponents, descending
    for (std::uint64_t q : primes) {
        std::uint64_t full = 1, o = a.order();
        while (o % q == 0) {
            full *= q;
            o /= q;
        }
        std::vector<std::size_t>& exps = primary[q];
        std::size_t prev = 0;
        std::uint64_t covered = 1;
        for (std::uint64_t qk = q; covered < full; qk *= q) {
            std::size_t count = 0;
            for (const Perm& e : a.elements())
                if (qk % e.order() == 0) ++count;
            std::size_t nk = 0;
            for (std::size_t c = count; c > 1; c /= q) ++nk;
            std::size_t factors_ge_k = nk - prev;
            while (exps.size() < factors_ge_k) exps.push_back(0);
            for (std::size_t t = 0; t < factors_ge_k; ++t) ++exps[t];
            prev = nk;
            covered = 1;
            for (std::size_t t = 0; t < nk; ++t) covered *= q;
        }
    }

    std::size_t rank = 0;
    for (const auto& [q, exps] : primary) rank = std::max(rank, exps.size());
    std::vector<std::uint64_t> divisors(rank, 1);
    for (const auto& [q, exps] : primary) {
        for (std::size_t t = 0; t < exps.size(); ++t) {
            std::uint64_t f = 1;
            for (std::size_t e = 0; e < exps[t]; ++e) f *= q;
            divisors[t] *= f;  // largest divisor collects largest exponents
        }
    }
    std::sort(divisors.begin(), divisors.end());  // d1 | d2 | ... ascending
    return divisors;
}

GroupTable intersection(const GroupTable& a, const GroupTable& b) {
    if (a.degree() != b.degree())
        throw std::invalid_argument("intersection: degree mismatch");
    std::vector<Perm> common;
    const GroupTable& small = a.order() <= b.order() ? a : b;
    const GroupTable& big = a.order() <= b.order() ? b : a;
    for (const Perm& e : small.elements())
        if (big.contains(e)) common.push_back(e);
    return GroupTable::from_elements(a.degree(), std::move(common));
}

GroupTable conjugate_subgroup(const GroupTable& h, const Perm& g) {
    std::vector<Perm> elems;
    elems.reserve(h.order());
    for (const Perm& e : h.elements()) elems.push_back(e.conjugated_by(g));
    return GroupTable::from_elements(h.degree(), std::move(elems));
}

bool are_conjugate_subgroups(const GroupTable& g, const GroupTable& a, const GroupTable& b) {
    if (a.order() != b.order()) return false;
    if (a == b) return true;
    for (const Perm& c : g.elements()) {
        bool all = true;
        for (const Perm& x : a.generators()) {
            if (!b.contains(x.conjugated_by(c))) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

std::vector<GroupTable> all_cyclic_subgroups(const GroupTable& g) {
    std::vector<GroupTable> subs;
    for (const Perm& e : g.elements()) {
        GroupTable c = GroupTable::generate({e}, g.degree());
        bool dup = false;
        for (const GroupTable& s : subs)
            if (s == c) {
                dup = true;
                break;
            }
        if (!dup) subs.push_back(std::move(c));
    }
    return subs;
}

GroupTable cyclic_group(std::size_t n) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>((i + 1) % n);
    return GroupTable::generate({Perm(std::move(img))}, n);
}

GroupTable dihedral_group(std::size_t n) {
    if (n < 3) throw std::invalid_argument("dihedral_group: n >= 3");
    std::vector<Point> rot(n), refl(n);
    for (std::size_t i = 0; i < n; ++i) {
        rot[i] = static_cast<Point>((i + 1) % n);
        refl[i] = static_cast<Point>((n - i) % n);
    }
    return GroupTable::generate({Perm(std::move(rot)), Perm(std::move(refl))}, n);
}

GroupTable klein_four_group() {
    Perm a(std::vector<Point>{1, 0, 3, 2});
    Perm b(std::vector<Point>{2, 3, 0, 1});
    return GroupTable::generate({a, b}, 4);
}

}  // namespace normknot
