// One pass/fail line per acceptance criterion. With arguments, runs only the
// listed criteria.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "factored.hpp"
#include "tq/certify.hpp"
#include "tq/checks.hpp"
#include "tq/homotopy.hpp"
#include "tq/polysys.hpp"
#include "tq/schubert.hpp"
#include "tq/search.hpp"

using namespace tq;
using namespace tq::testing;

namespace {

int threads = 0;

struct Verdict {
  bool pass = false;
  std::string detail;
};

TrackerSettings tracker(std::uint64_t seed = 1) {
  TrackerSettings t;
  t.threads = threads;
  t.rng_seed = seed;
  return t;
}

CertifySettings certifier() {
  CertifySettings c;
  c.threads = threads;
  return c;
}

CertificationReport solved(const TangencyInstance& inst, std::optional<std::size_t> expected,
                           std::size_t* paths = nullptr) {
  const auto r = solve_and_certify(inst, tracker(), certifier(), expected);
  if (paths) *paths = r.solve.paths;
  return r.certification;
}

std::uint64_t fact(int n) { return n <= 1 ? 1 : static_cast<std::uint64_t>(n) * fact(n - 1); }

Verdict example_333() {
  std::size_t paths = 0;
  const auto cr = solved(load_instance(data_path("instance_3_3_3.json")), 104, &paths);
  const auto& s = cr.summary;
  std::ostringstream d;
  d << paths << " paths, " << s.certified << " certified, " << s.distinct << " distinct (" << s.distinct_real
    << " real), " << s.nondegenerate << " nondegenerate";
  return {paths == 216 && s.certified == 104 && s.distinct == 104 && s.distinct_real == 104 &&
              s.nondegenerate == 104,
          d.str()};
}

Verdict bezout_region() {
  bool ok = true;
  std::ostringstream d;
  for (const auto& [sig, want] : {std::pair{Signature{9, 0, 0, 0}, 1ull}, std::pair{Signature{5, 4, 0, 0}, 16ull},
                                  std::pair{Signature{4, 3, 2, 0}, 72ull}}) {
    d << sig.to_string() << ":";
    for (std::uint64_t k = 0; k < 3; ++k) {
      Rng rng(derive_seed(100 + k, static_cast<std::uint64_t>(sig.beta)));
      const auto n = solved(random_instance(sig, rng), want).summary.nondegenerate;
      ok = ok && n == want;
      d << " " << n;
    }
    d << " (want " << want << ") ";
  }
  return {ok, d.str()};
}

Verdict triangle_entries() {
  const std::pair<Signature, std::uint64_t> quoted[] = {
      {{3, 3, 3, 0}, 104}, {{2, 5, 2, 0}, 128}, {{3, 4, 2, 0}, 112}, {{3, 5, 1, 0}, 80}, {{2, 6, 1, 0}, 104},
      {{1, 7, 1, 0}, 104}, {{1, 8, 0, 0}, 92},  {{3, 6, 0, 0}, 56},  {{5, 0, 4, 0}, 21},
  };
  CensusSettings st;
  st.trials = 3;
  st.tracker = tracker();
  st.certify = certifier();
  bool ok = true;
  std::ostringstream d;
  for (const auto& [sig, want] : quoted) {
    std::string got;
    try {
      const auto r = census(sig, st);
      got = std::to_string(r.count);
      ok = ok && r.count == want && r.trials.size() == 3;
    } catch (const std::exception& e) {
      got = "error";
      ok = false;
      std::cerr << sig.to_string() << ": " << e.what() << "\n";
    }
    d << sig.alpha << sig.beta << sig.gamma << "=" << got << " ";
  }
  return {ok, d.str()};
}

Verdict pyramid() {
  auto t = CountTable::load(data_path("triangle.json"));
  if (!t.triangle_complete()) return {false, "triangle incomplete"};
  std::uint64_t sum = 0;
  for (int a = 0; a <= 9; ++a)
    for (int b = 0; a + b <= 9; ++b) sum += fact(9) / (fact(a) * fact(b) * fact(9 - a - b)) * *t.get({a, b, 9 - a - b, 0});
  const auto marked = pyramid_entry(t, {2, 3, 2, 2});
  const bool partial = trinomial9({3, 3, 3, 0}) * *t.get({3, 3, 3, 0}) == 1680 * 104 &&
                       trinomial9({2, 5, 2, 0}) * *t.get({2, 5, 2, 0}) == 756 * 128;
  std::ostringstream d;
  d << "(2,3,2,2)=" << marked << " q9=" << q9_aggregate(t) << " (p+l+h)^9=" << flag_power_aggregate(t)
    << " independent sum=" << sum;
  return {marked == 3712 && q9_aggregate(t) == 666841088 && flag_power_aggregate(t) == 1302424 && sum == 1302424 &&
              512 * sum == 666841088 && partial && t.check().empty(),
          d.str()};
}

Verdict small_delta() {
  Rng rng(derive_seed(7, 8001));
  const std::uint64_t want = 2 * (*bezout_count({9, 0, 0, 0}) + *bezout_count({8, 1, 0, 0}) + *bezout_count({8, 0, 1, 0}));
  const auto n = solved(random_instance({8, 0, 0, 1}, rng), want).summary.nondegenerate;
  return {n == want && want == 12, std::to_string(n) + " certified nondegenerate, recurrence " + std::to_string(want)};
}

Verdict checks(const std::vector<CheckOutcome>& v, const std::vector<std::string>& names) {
  bool ok = true;
  std::ostringstream d;
  for (const auto& c : v)
    for (const auto& n : names)
      if (c.name == n) {
        ok = ok && c.pass;
        d << c.name << ": " << (c.pass ? "ok" : "FAIL " + c.witness) << " (" << c.trials << ") ";
      }
  return {ok, d.str()};
}

Verdict soundness() {
  Rng rng(2024);
  int certified = 0, false_certs = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = factored_system(rng, 2 + static_cast<std::size_t>(trial % 3));
    for (const auto& root : f.roots) {
      Eigen::VectorXcd x = to_vec(root), y = to_vec(root);
      for (auto& v : x) v += cd(rng.gaussian(), rng.gaussian()) * 1e-9;
      for (auto& v : y) v += cd(rng.gaussian(), rng.gaussian()) * 1e-2;
      for (const auto& b : {krawczyk_certify(f.sys, x, default_inflation(f.sys, x, {})), krawczyk_certify(f.sys, y, 1e-3)}) {
        if (!b.certified) continue;
        ++certified;
        int inside = 0;
        for (const auto& r : f.roots) inside += box_contains(b, r);
        false_certs += inside != 1;
      }
    }
  }
  std::ostringstream d;
  d << certified << " certificates, " << false_certs << " false; ";
  bool ok = false_certs == 0 && certified > 0;
  // without a 96-real instance, report the best one found by search
  const auto record = data_path("instance_2_6_1_record.json");
  const bool have = std::filesystem::exists(record);
  const auto cr = solved(load_instance(have ? record : data_path("instance_2_6_1_best.json")), 104);
  const auto& s = cr.summary;
  d << (have ? "record" : "no 96-real instance stored; best found") << ": " << s.distinct << " distinct, "
    << s.distinct_real << " real, " << s.nonreal << " nonreal, " << s.real_unknown << " unknown";
  ok = ok && have && s.nondegenerate == 104 && s.distinct_real == 96 && s.nonreal == 8 && s.real_unknown == 0;
  return {ok, d.str()};
}

Verdict search_sanity() {
  bool ok = true;
  std::ostringstream d;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    SearchSettings st;
    st.iters = 500;
    st.seed = seed;
    st.tracker = tracker();
    st.certify = certifier();
    Rng rng(derive_seed(seed, 0));
    const auto inst = seed_instance({5, 0, 4, 0}, SeedStrategy::coordinate_planes, rng);
    const auto s = hill_climb({5, 0, 4, 0}, inst, st);
    ok = ok && s.verified && s.verified_real == 21 && s.verified_certified == 21;
    d << "seed " << seed << ": " << s.verified_real << "/21 after " << s.iteration << " its; ";
  }
  return {ok, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a.rfind("--threads=", 0) == 0)
      threads = std::stoi(a.substr(10));
    else
      only.insert(std::stoi(a));
  }
  std::vector<CheckOutcome> identities;
  const auto ident = [&]() -> const std::vector<CheckOutcome>& {
    if (identities.empty()) identities = check_identities(11, 1000, 50);
    return identities;
  };
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"example (3,3,3) instance: 216 paths, 104 certified distinct real nondegenerate", example_333},
      {"Bezout region (9,0,0) (5,4,0) (4,3,2), 3 instances each", bezout_region},
      {"quoted triangle entries by census, 3 agreeing trials", triangle_entries},
      {"pyramid entry 3712, q^9 and (p+l+h)^9 from the stored triangle", pyramid},
      {"(8,0,0,1) gives 12", small_delta},
      {"degeneration order 8 and leading coefficient, 20 trials",
       [] { return checks(check_degeneration(20, 5), {"degeneration order and leading coefficient"}); }},
      {"Sigma bidegree (12,12) and resultant oracle, 50 trials each",
       [&] { return checks(ident(), {"Sigma has bidegree (12,12)", "Sigma equals the resultant discriminant"}); }},
      {"complete quadrics generators, 1000 trials",
       [&] { return checks(ident(), {"complete quadrics generators vanish"}); }},
      {"no false certificates; record (2,6,1,0) instance has exactly 8 nonreal", soundness},
      {"search reaches 21/21 real on (5,0,4,0) for 5 seeds", search_sanity},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(n)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !v.pass;
    std::cout << "criterion " << n << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ["
              << v.detail << "] " << std::fixed << std::setprecision(1) << sec << "s" << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
