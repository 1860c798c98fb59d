// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "normknot/catalog.hpp"
#include "normknot/modarith.hpp"
#include "normknot/oracle.hpp"
#include "normknot/sha.hpp"

using namespace normknot;

namespace {

int failures = 0;

void criterion(int number, const std::string& what, double budget_seconds,
               const std::function<bool(std::string&)>& run) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = run(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
    }
    std::printf("criterion %2d %s  (%.2fs / %gs)  %s%s%s\n", number, ok ? "PASS" : "FAIL",
                secs, budget_seconds, what.c_str(), detail.empty() ? "" : "  -- ",
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

bool total_is(const ShaReport& r, std::vector<std::uint64_t> want, std::string& detail) {
    if (!r.valid) {
        detail = "invalid: " + r.error;
        return false;
    }
    if (!r.total) {
        detail = "total unknown: " + r.prime_to_p.unknown_reason;
        return false;
    }
    if (r.total->divisors != want) {
        detail = "total = " + r.total->to_string();
        return false;
    }
    return true;
}

std::uint64_t analysis_prime(const CatalogPair& pair) {
    for (std::uint64_t p = 2; p <= pair.degree(); ++p)
        if (is_prime(p) && pair.degree() % p == 0 && pair.degree() % (p * p) != 0 &&
            sylow(pair.group, p).normal)
            return p;
    throw std::runtime_error("no analysis prime for " + pair.label);
}

}  // namespace

int main() {
    criterion(1, "degree-6 failure case and its covered variant", 1.0, [](std::string& d) {
        CatalogPair beta = build_beta(2, 3);
        ShaReport generic =
            full_report(beta.group, beta.stabilizer, 2, Scenario::make_generic());
        if (!total_is(generic, {2}, d)) return false;
        Scenario covered =
            Scenario::make_explicit({sylow(beta.group, 2).subgroup});
        ShaReport rc = full_report(beta.group, beta.stabilizer, 2, covered);
        return total_is(rc, {}, d);
    });

    criterion(2, "both degree-15 failure classes report Z/5", 5.0, [](std::string& d) {
        CatalogPair b = build_beta(5, 3);
        CatalogPair g = build_gamma(5, 3);
        ShaReport rb = full_report(b.group, b.stabilizer, 5, Scenario::make_generic());
        ShaReport rg = full_report(g.group, g.stabilizer, 5, Scenario::make_generic());
        return total_is(rb, {5}, d) && total_is(rg, {5}, d) && rb.case_label == "beta" &&
               rg.case_label == "gamma";
    });

    criterion(3, "degree-4p pairs at p = 5 and p = 13", 10.0, [](std::string& d) {
        CatalogPair c5 = build_c4(5);
        ShaReport r5 = full_report(c5.group, c5.stabilizer, 5, Scenario::make_generic());
        if (!total_is(r5, {5}, d)) return false;
        if (r5.case_label != "c4") {
            d = "case = " + r5.case_label;
            return false;
        }
        CatalogPair c13 = build_c4(13);
        ShaReport r13 = full_report(c13.group, c13.stabilizer, 13, Scenario::make_generic());
        return total_is(r13, {13}, d);
    });

    criterion(4, "composite exponent Z/6 at degree 18", 5.0, [](std::string& d) {
        CatalogPair tc = build_times_cyclic(build_beta(2, 3), 3);
        ShaReport r = full_report(tc.group, tc.stabilizer, 2, Scenario::make_generic());
        return total_is(r, {6}, d);
    });

    criterion(5, "squarefree degree-30 witness keeps only the 5-part", 30.0,
              [](std::string& d) {
                  CatalogPair pair = build_times_cyclic(build_beta(5, 3), 2);
                  if (pair.degree() != 30) {
                      d = "degree " + std::to_string(pair.degree());
                      return false;
                  }
                  ShaReport r =
                      full_report(pair.group, pair.stabilizer, 5, Scenario::make_generic());
                  if (!total_is(r, {5}, d)) return false;
                  if (!r.p_part.trivial() && r.prime_to_p.value &&
                      r.prime_to_p.value->trivial())
                      return true;
                  d = "parts split unexpectedly";
                  return false;
              });

    criterion(6, "every constructed normal-Sylow pair of degree 10 and 14 is trivial", 60.0,
              [](std::string& d) {
                  std::size_t rows = 0;
                  for (std::size_t degree : {10, 14}) {
                      for (const CatalogPair& pair : constructed_pairs_of_degree(degree)) {
                          ShaReport r = full_report(pair.group, pair.stabilizer,
                                                    analysis_prime(pair),
                                                    Scenario::make_generic());
                          ++rows;
                          std::string why;
                          if (!total_is(r, {}, why)) {
                              d = pair.label + ": " + why;
                              return false;
                          }
                      }
                  }
                  if (rows < 100) {
                      d = "only " + std::to_string(rows) + " rows constructed";
                      return false;
                  }
                  return true;
              });

    criterion(7, "route agreement and closed form over the (p,l) grid up to degree 65",
              600.0, [](std::string& d) {
                  SweepResult res;
                  for (std::uint64_t p = 2; p <= 65; ++p) {
                      if (!is_prime(p)) continue;
                      for (std::uint64_t ell = 3; p * ell <= 65; ++ell) {
                          if (!is_prime(ell) || ell == p) continue;
                          if ((p * p - 1) % ell != 0) continue;
                          res.merge_in(verify_pair_classification(
                              static_cast<std::int64_t>(p), ell));
                      }
                  }
                  if (!res.ok()) {
                      d = std::to_string(res.mismatches.size()) +
                          " mismatches; first: " + res.mismatches[0];
                      return false;
                  }
                  d = std::to_string(res.checks) + " checks";
                  return true;
              });

    criterion(8, "extremality classification for p <= 13, l <= 13", 900.0,
              [](std::string& d) {
                  SweepResult res;
                  for (std::int64_t p : {2, 3, 5, 7, 11, 13})
                      res.merge_in(verify_extremal_classification(p, 13));
                  if (!res.ok()) {
                      d = res.mismatches[0];
                      return false;
                  }
                  d = std::to_string(res.checks) + " checks";
                  return true;
              });

    criterion(9, "semidirect isomorphism statements up to order 2000", 600.0,
              [](std::string& d) {
                  SweepResult res = verify_semidirect_isomorphisms(2000);
                  if (!res.ok()) {
                      d = res.mismatches[0];
                      return false;
                  }
                  d = std::to_string(res.checks) + " checks over " +
                      std::to_string(res.cells) + " cells";
                  return true;
              });

    criterion(10, "gcd-constrained contexts always fail (a)(b)(c) with trivial p-part",
              600.0, [](std::string& d) {
                  SweepResult res = negative_control_sweep();
                  if (!res.ok()) {
                      d = res.mismatches[0];
                      return false;
                  }
                  d = std::to_string(res.checks) + " checks";
                  return true;
              });

    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures ? 1 : 0;
}
