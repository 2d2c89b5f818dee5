#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "tq/polysys.hpp"

using namespace tq;
using tq::testing::random_complex;

namespace {

Eigen::VectorXcd random_point(Rng& rng, std::size_t n) {
  Eigen::VectorXcd x(static_cast<Eigen::Index>(n));
  for (auto& v : x) v = random_complex(rng);
  return x;
}

}  // namespace

TEST_CASE("signature parsing and validity") {
  const Signature s = Signature::parse("3,3,3");
  CHECK(s == Signature{3, 3, 3, 0});
  CHECK(s.to_string() == "3,3,3,0");
  CHECK(Signature::parse("8, 0, 0, 1") == Signature{8, 0, 0, 1});
  CHECK_THROWS(Signature::parse("3,3"));
  CHECK_THROWS(Signature::parse("3,3,4"));
  CHECK_THROWS(Signature::parse("a,b,c"));
  CHECK_FALSE(Signature{1, 1, 1, 1}.valid());
}

TEST_CASE("degrees and total degree") {
  Rng rng(1);
  const auto s333 = assemble(random_instance({3, 3, 3, 0}, rng), 1);
  CHECK(s333.n() == 10);
  CHECK(s333.total_degree() == 216);
  CHECK(s333.degrees() == std::vector<int>{1, 1, 1, 2, 2, 2, 3, 3, 3, 1});
  CHECK(assemble(random_instance({9, 0, 0, 0}, rng), 1).total_degree() == 1);
  CHECK(assemble(random_instance({5, 4, 0, 0}, rng), 1).total_degree() == 16);
  CHECK(assemble(random_instance({4, 3, 2, 0}, rng), 1).total_degree() == 72);
  const auto s8001 = assemble(random_instance({8, 0, 0, 1}, rng), 1);
  CHECK(s8001.total_degree() == 12);
  const auto d = with_det_variable(s8001);
  CHECK(d.n() == 11);
  CHECK(d.has_det_variable());
  CHECK(d.total_degree() == 48);
  CHECK_THROWS_AS(with_det_variable(d), std::logic_error);
}

TEST_CASE("chart row is c.x - 1") {
  Rng rng(2);
  const auto s = assemble(random_instance({3, 3, 3, 0}, rng), 5);
  const Eigen::VectorXcd F0 = s.evaluate(Eigen::VectorXcd::Zero(10));
  CHECK(std::abs(F0[9] - cd(-1.0)) < 1e-15);
  for (int i = 0; i < 9; ++i) CHECK(std::abs(F0[i]) == 0.0);
  for (const auto& c : s.chart()) CHECK(std::abs(std::abs(c) - 1.0) < 1e-14);
  const Eigen::VectorXcd x = random_point(rng, 10);
  cd dot = 0.0;
  for (int i = 0; i < 10; ++i) dot += s.chart()[static_cast<std::size_t>(i)] * x[i];
  CHECK(std::abs(s.evaluate(x)[9] - (dot - 1.0)) < 1e-13);
}

TEST_CASE("jacobian matches central differences") {
  Rng rng(3);
  for (const auto sig : {Signature{3, 3, 3, 0}, Signature{2, 6, 1, 0}, Signature{8, 0, 0, 1}}) {
    const auto s = with_det_variable(assemble(random_instance(sig, rng), 2));
    const Eigen::VectorXcd x = random_point(rng, s.n()) * 0.5;
    const Eigen::MatrixXcd J = s.jacobian(x);
    const double h = 1e-6;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      Eigen::VectorXcd xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      const Eigen::VectorXcd fd = (s.evaluate(xp) - s.evaluate(xm)) / (2.0 * h);
      const double err = (fd - J.col(j)).cwiseAbs().maxCoeff();
      CHECK(err <= 1e-6 * std::max(1.0, J.col(j).cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("condition rows are homogeneous of their degree") {
  Rng rng(4);
  const auto s = assemble(random_instance({2, 3, 3, 1}, rng), 1);
  const Eigen::VectorXcd x = random_point(rng, 10);
  const cd lambda(0.7, -1.3);
  const Eigen::VectorXcd f1 = s.evaluate(x), f2 = s.evaluate(lambda * x);
  for (int i = 0; i < 9; ++i) {
    const cd expect = std::pow(lambda, s.degrees()[static_cast<std::size_t>(i)]) * f1[i];
    CHECK(std::abs(f2[i] - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("determinant row") {
  Rng rng(5);
  const auto s = with_det_variable(assemble(random_instance({9, 0, 0, 0}, rng), 1));
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(11);
  // X = diag(1,2,3,4): entries x11 x12 x13 x14 x22 x23 x24 x33 x34 x44.
  x[1] = 1.0;
  x[5] = 2.0;
  x[8] = 3.0;
  x[10] = 4.0;
  x[0] = 24.0;
  CHECK(std::abs(s.evaluate(x)[10]) < 1e-12);
  x[0] = 0.0;
  CHECK(std::abs(s.evaluate(x)[10] + 24.0) < 1e-12);
}

TEST_CASE("interval evaluation encloses the double evaluation") {
  Rng rng(6);
  const auto s = with_det_variable(assemble(random_instance({3, 3, 3, 0}, rng), 1));
  const Eigen::VectorXcd x = random_point(rng, 11);
  std::vector<CInterval> box;
  for (const auto& v : x) box.emplace_back(v, 1e-9);
  const auto F = s.evaluate_interval(box);
  const auto J = s.jacobian_interval(box);
  const Eigen::VectorXcd Fd = s.evaluate(x);
  const Eigen::MatrixXcd Jd = s.jacobian(x);
  for (Eigen::Index i = 0; i < 11; ++i) {
    const auto& f = F[static_cast<std::size_t>(i)];
    CHECK(std::abs(f.re.mid - Fd[i].real()) <= f.re.rad + 1e-12);
    CHECK(std::abs(f.im.mid - Fd[i].imag()) <= f.im.rad + 1e-12);
    for (Eigen::Index j = 0; j < 11; ++j) {
      const auto& g = J[static_cast<std::size_t>(i * 11 + j)];
      CHECK(std::abs(g.re.mid - Jd(i, j).real()) <= g.re.rad + 1e-12);
    }
  }
}

TEST_CASE("instances serialize and validate") {
  Rng rng(7);
  const auto inst = random_instance({3, 3, 2, 1}, rng);
  CHECK(inst.signature() == Signature{3, 3, 2, 1});
  const auto back = instance_from_json(to_json(inst));
  CHECK(back.signature() == inst.signature());
  const auto a = inst.figures(), b = back.figures();
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].coords() == b[i].coords());
  CHECK(inst.warnings().empty());

  const auto bare = instance_from_json(nlohmann::json::parse(R"({
    "points": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1],[1,1,1,1],[1,2,3,4],[1,-1,2,5],["1/2",3,1,1],[2,1,7,1]]
  })"));
  CHECK(bare.signature() == Signature{9, 0, 0, 0});

  TangencyInstance bad = inst;
  bad.points.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("evaluation is deterministic and shared across instances") {
  Rng r1(11), r2(11);
  const auto s1 = assemble(random_instance({4, 3, 2, 0}, r1), 3);
  const auto s2 = assemble(random_instance({4, 3, 2, 0}, r2), 3);
  CHECK(&s1.tape() == &s2.tape());
  Rng rx(12);
  const Eigen::VectorXcd x = random_point(rx, 10);
  CHECK((s1.evaluate(x) - s2.evaluate(x)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the fixture instance loads") {
  const auto inst = load_instance(tq::testing::data_path("instance_3_3_3.json"));
  CHECK(inst.signature() == Signature{3, 3, 3, 0});
  const auto s = assemble(inst, 1);
  CHECK(s.total_degree() == 216);
}
