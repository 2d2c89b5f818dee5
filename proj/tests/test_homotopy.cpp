#include "doctest.h"

#include <atomic>
#include <cmath>

#include "test_support.hpp"
#include "tq/homotopy.hpp"

using namespace tq;

namespace {

FunctionSystem quadratic(cd a) {
  return FunctionSystem(1, [a](std::span<const cd> x, Eigen::VectorXcd& F, Eigen::MatrixXcd& J) {
    F.resize(1);
    J.resize(1, 1);
    F[0] = x[0] * x[0] - a;
    J(0, 0) = 2.0 * x[0];
  });
}

TrackerSettings quiet() {
  TrackerSettings st;
  st.threads = 1;
  return st;
}

}  // namespace

TEST_CASE("univariate path from x^2 - 1 to x^2 - 4") {
  const auto start = quadratic(1.0);
  const auto target = quadratic(4.0);
  for (double sign : {1.0, -1.0}) {
    Eigen::VectorXcd x0(1);
    x0[0] = sign;
    const auto sol = track_path(start, target, x0, cd(0.6, 0.8), quiet());
    CHECK(sol.status == PathStatus::converged);
    CHECK(std::abs(sol.x[0] - 2.0 * sign) < 1e-12);
    CHECK(sol.t_end == 0.0);
  }
}

TEST_CASE("total degree start system") {
  const TotalDegreeStart g({2, 3, 1}, {cd(1.0), cd(0.0, 2.0), cd(-3.0)});
  CHECK(g.solution_count() == 6);
  Eigen::VectorXcd F;
  Eigen::MatrixXcd J;
  for (std::uint64_t k = 0; k < 6; ++k) {
    const Eigen::VectorXcd x = g.solution(k);
    g.evaluate({x.data(), 3}, F, J);
    CHECK(F.cwiseAbs().maxCoeff() < 1e-14);
    for (std::uint64_t l = 0; l < k; ++l) CHECK((g.solution(l) - x).norm() > 0.1);
  }
}

TEST_CASE("Bezout region solves") {
  Rng rng(21);
  const TrackerSettings st = quiet();
  {
    const auto s = assemble(random_instance({9, 0, 0, 0}, rng), 1);
    const auto rep = solve_total_degree(s, st);
    CHECK(rep.paths == 1);
    CHECK(rep.count(PathStatus::converged) == 1);
    CHECK(count_real(rep.solutions, st.real_tol) == 1);
  }
  {
    const auto s = assemble(random_instance({5, 4, 0, 0}, rng), 1);
    const auto rep = solve_total_degree(s, st);
    CHECK(rep.paths == 16);
    CHECK(rep.count(PathStatus::converged) == 16);
    for (const auto& sol : rep.converged()) {
      CHECK(sol.residual < st.endpoint_tol);
      CHECK(s.evaluate(sol.x).cwiseAbs().maxCoeff() < 1e-8 * std::pow(std::max(1.0, sol.x.cwiseAbs().maxCoeff()), 2));
    }
  }
}

TEST_CASE("solutions are deterministic for a seed") {
  Rng r1(22);
  const auto s = assemble(random_instance({5, 4, 0, 0}, r1), 1);
  const auto a = solve_total_degree(s, quiet());
  const auto b = solve_total_degree(s, quiet());
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (std::size_t i = 0; i < a.solutions.size(); ++i) CHECK((a.solutions[i].x - b.solutions[i].x).norm() == 0.0);
}

TEST_CASE("parameter homotopy") {
  Rng rng(23);
  const auto i0 = random_instance({5, 4, 0, 0}, rng);
  const auto i1 = random_instance({5, 4, 0, 0}, rng);
  const TrackerSettings st = quiet();
  const auto s0 = assemble(i0, 1);
  const auto r0 = solve_total_degree(s0, st);
  REQUIRE(r0.count(PathStatus::converged) == 16);

  SUBCASE("identical instances keep the solutions") {
    const auto same = parameter_homotopy(i0, r0.converged(), i0, st);
    CHECK(same.count(PathStatus::converged) == 16);
    for (const auto& sol : same.solutions) {
      double best = INFINITY;
      for (const auto& ref : r0.converged()) best = std::min(best, (ref.x - sol.x).norm());
      CHECK(best < 1e-8);
    }
  }
  SUBCASE("a new instance gets all 16") {
    const auto moved = parameter_homotopy(i0, r0.converged(), i1, st);
    CHECK(moved.count(PathStatus::converged) == 16);
    const auto s1 = assemble(i1, 1);
    for (const auto& sol : moved.converged())
      CHECK(s1.evaluate(sol.x).cwiseAbs().maxCoeff() < 1e-8 * std::max(1.0, sol.x.squaredNorm()));
  }
}

TEST_CASE("reality estimate and conjugate pairs") {
  Eigen::VectorXcd real(3);
  real << 1.0, -2.0, 0.5;
  const cd phase = std::polar(1.0, 0.7);
  CHECK(reality_defect(real) < 1e-15);
  CHECK(reality_defect(phase * real) < 1e-15);
  const Eigen::VectorXcd aligned = phase_aligned(phase * real);
  CHECK(aligned.imag().norm() < 1e-14);

  Eigen::VectorXcd z(3);
  z << cd(1.0, 1.0), cd(2.0, -0.5), 3.0;
  CHECK(reality_defect(z) > 0.1);

  std::vector<TrackedSolution> sols(3);
  sols[0].x = real;
  sols[1].x = z;
  sols[2].x = z.conjugate();
  for (auto& s : sols) s.status = PathStatus::converged;
  CHECK(count_real(sols, 1e-6) == 1);
  sols[0].status = PathStatus::singular_endpoint;
  CHECK(count_real(sols, 1e-6) == 0);
}

TEST_CASE("settings") {
  TrackerSettings st;
  st.max_step = 0.05;
  st.rng_seed = 99;
  const auto back = settings_from_json(to_json(st));
  CHECK(back.max_step == 0.05);
  CHECK(back.rng_seed == 99);
  const auto partial = settings_from_json(nlohmann::json{{"newton_tol", 1e-12}});
  CHECK(partial.newton_tol == 1e-12);
  CHECK(partial.max_step == TrackerSettings{}.max_step);
  CHECK_THROWS(settings_from_json(nlohmann::json{{"max_step", -1.0}}));
}

TEST_CASE("solution json") {
  TrackedSolution s;
  s.x = Eigen::VectorXcd::Constant(2, cd(1.5, -2.0));
  s.status = PathStatus::singular_endpoint;
  s.path_index = 7;
  const auto b = solution_from_json(to_json(s));
  CHECK(b.status == PathStatus::singular_endpoint);
  CHECK(b.path_index == 7);
  CHECK(b.x == s.x);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
}
