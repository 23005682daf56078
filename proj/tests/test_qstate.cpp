#include <doctest.h>

#include <cmath>
#include <random>

#include "dense_oracle.hpp"
#include "mres/builders.hpp"
#include "mres/orthoarray.hpp"
#include "mres/qstate.hpp"

using namespace mres;

namespace {

double dense_gap(const DensityOperator& rho, const Eigen::MatrixXcd& ref) {
  return (to_dense(rho) - ref).cwiseAbs().maxCoeff();
}

std::vector<int> random_subset(std::mt19937_64& rng, int n) {
  std::vector<int> s;
  while (s.empty())
    for (int i = 0; i < n; ++i)
      if (rng() & 1) s.push_back(i);
  return s;
}

}  // namespace

TEST_CASE("labels") {
  const std::vector<int> dims{2, 12, 36};
  const Label l{1, 11, 35};
  CHECK(label_to_string(l) == "1bz");
  CHECK(label_from_string("1bz", dims) == l);
  CHECK_THROWS(label_from_string("1c", std::vector<int>{2, 12}));
  CHECK_THROWS(label_from_string("2", std::vector<int>{2}));
  CHECK_THROWS(check_dims(std::vector<int>{2, 1}));
}

TEST_CASE("GHZ and W reductions") {
  const std::vector<int> keep{1, 2};
  const auto g = reduce(ghz(3), keep);
  CHECK(g.trace() == doctest::Approx(1.0));
  CHECK(is_diagonal_in_product_basis(g));
  CHECK(std::abs(g.entry({0, 0}, {0, 0}) - 0.5) < 1e-15);
  CHECK(std::abs(g.entry({1, 1}, {1, 1}) - 0.5) < 1e-15);
  CHECK(std::abs(g.entry({0, 0}, {1, 1})) < 1e-15);

  const auto w = reduce(w3(), keep);
  CHECK_FALSE(is_diagonal_in_product_basis(w));
  CHECK(std::abs(w.entry({0, 0}, {0, 0}) - 1.0 / 3) < 1e-15);
  CHECK(std::abs(w.entry({0, 1}, {1, 0}) - 1.0 / 3) < 1e-15);
  CHECK(std::abs(w.entry({0, 1}, {0, 1}) - 1.0 / 3) < 1e-15);

  const std::vector<int> site2{2};
  const auto pt = partial_transpose(w, site2);
  CHECK(eigenvalues(pt.matrix()).front() == doctest::Approx((1 - std::sqrt(5.0)) / 6).epsilon(1e-12));
}

TEST_CASE("Bell projector transpose spectrum") {
  const auto bell = reduce(ghz(2), std::vector<int>{0, 1});
  const auto ev = eigenvalues(partial_transpose(bell, std::vector<int>{1}).matrix());
  REQUIRE(ev.size() == 4);
  CHECK(ev[0] == doctest::Approx(-0.5));
  for (int i = 1; i < 4; ++i) CHECK(ev[i] == doctest::Approx(0.5));
}

TEST_CASE("product kets reduce to rank-one projectors") {
  std::mt19937_64 rng(5);
  auto a = oracle::random_ket(rng, {3});
  auto b = oracle::random_ket(rng, {2});
  auto c = oracle::random_ket(rng, {2});
  const auto psi = tensor(tensor(a, b), c);
  const auto rho = reduce(psi, std::vector<int>{0, 2});
  const auto ev = eigenvalues(rho.matrix());
  CHECK(ev.back() == doctest::Approx(1.0));
  for (std::size_t i = 0; i + 1 < ev.size(); ++i) CHECK(std::abs(ev[i]) < 1e-12);
}

TEST_CASE("eigenvalues of simple matrices") {
  const auto id = eigenvalues(Eigen::MatrixXcd::Identity(4, 4));
  CHECK(id == std::vector<double>(4, 1.0));
  Eigen::MatrixXcd half = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  CHECK(eigenvalues(half) == std::vector<double>{0.5, 0.5});
  Eigen::MatrixXcd bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("support reduction matches the dense oracle") {
  std::mt19937_64 rng(17);
  const std::vector<std::vector<int>> shapes = {
      {2, 2, 2}, {2, 3, 2}, {3, 3, 3}, {2, 2, 2, 2, 2}, {4, 2, 3, 2}, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2}};
  for (const auto& dims : shapes)
    for (double density : {1.0, 0.2}) {
      const auto psi = oracle::random_ket(rng, dims, density);
      for (int t = 0; t < 6; ++t) {
        const auto keep = random_subset(rng, static_cast<int>(dims.size()));
        CHECK(dense_gap(reduce(psi, keep), oracle::dense_reduce(psi, keep)) < 1e-12);
      }
    }
}

TEST_CASE("partial transpose matches the dense oracle and is an involution") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<int> dims{2, 3, 2, 2};
    const auto psi = oracle::random_ket(rng, dims, 0.4);
    const std::vector<int> keep{0, 1, 3};
    const auto rho = reduce(psi, keep);
    const std::vector<int> t{1};
    const auto pt = partial_transpose(rho, t);
    const auto dense = oracle::dense_partial_transpose(to_dense(rho), rho.dims(), {1});
    CHECK((to_dense(pt) - dense).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(max_abs_difference(partial_transpose(pt, t), rho) < 1e-15);
  }
}

TEST_CASE("diagonal operators are fixed by partial transposition") {
  const auto rho = reduce(oa_to_state(construct_bush(4, 2)), std::vector<int>{0, 2, 4});
  REQUIRE(is_diagonal_in_product_basis(rho));
  CHECK(max_abs_difference(partial_transpose(rho, std::vector<int>{2}), rho) < 1e-15);
}

TEST_CASE("partial traces compose") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<int> dims{2, 3, 2, 2, 2};
    const auto psi = oracle::random_ket(rng, dims, 0.5);
    const std::vector<int> s{0, 1, 3, 4}, sub{1, 4};
    const auto rho = reduce(psi, s);
    // sites 0 and 3 of psi sit at positions 0 and 2 of rho
    Eigen::MatrixXcd traced = Eigen::MatrixXcd::Zero(6, 6);
    const auto full = to_dense(rho);
    const std::vector<int> kd{2, 3, 2, 2};
    for (std::size_t i = 0; i < 24; ++i)
      for (std::size_t j = 0; j < 24; ++j) {
        const auto li = dense_label(i, kd), lj = dense_label(j, kd);
        if (li[0] != lj[0] || li[2] != lj[2]) continue;
        traced(li[1] * 2 + li[3], lj[1] * 2 + lj[3]) += full(i, j);
      }
    CHECK(dense_gap(reduce(psi, sub), traced) < 1e-12);
  }
}

TEST_CASE("reduction is Hermitian with unit trace") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 30; ++trial) {
    const auto psi = oracle::random_ket(rng, {2, 2, 3, 2}, 0.6).scaled(3.7);
    const auto rho = reduce(psi, random_subset(rng, 4));
    CHECK(rho.trace() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("complementary reductions share their nonzero spectrum") {
  std::mt19937_64 rng(31);
  for (int n = 3; n <= 6; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<int> dims(n, 2);
      const auto psi = oracle::random_ket(rng, dims, 0.7);
      std::vector<int> s, c;
      for (int i = 0; i < n; ++i) (i % 2 == trial % 2 ? s : c).push_back(i);
      auto a = eigenvalues(reduce(psi, s).matrix());
      auto b = eigenvalues(reduce(psi, c).matrix());
      std::erase_if(a, [](double x) { return std::abs(x) < 1e-10; });
      std::erase_if(b, [](double x) { return std::abs(x) < 1e-10; });
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
    }
}

TEST_CASE("mixture reduction through the environment") {
  const auto terms = mixed_from_polynomial(3, 1);
  const auto all = reduce_mixture(terms, std::vector<int>{0, 1, 2});
  CHECK(all.trace() == doctest::Approx(1.0));
  int rank = 0;
  for (double e : eigenvalues(all.matrix())) rank += e > 1e-12;
  CHECK(rank == 3);
  const auto s = mixture_state(terms);
  CHECK(max_abs_difference(reduce(s.ket, std::vector<int>{0, 1, 2}), all) < 1e-15);
  const std::vector<SparseKet> one{w3()};
  CHECK(max_abs_difference(reduce_mixture(one, std::vector<int>{0, 2}),
                           reduce(w3(), std::vector<int>{0, 2})) < 1e-15);
}

TEST_CASE("local unitaries and permutations") {
  std::mt19937_64 rng(37);
  const auto psi = oracle::random_ket(rng, {2, 3, 2});
  const auto u = oracle::random_unitary(rng, 3);
  const auto moved = apply_local(psi, 1, u);
  CHECK(moved.norm() == doctest::Approx(1.0));
  // tracing the rotated site leaves the rest untouched
  CHECK(max_abs_difference(reduce(moved, std::vector<int>{0, 2}), reduce(psi, std::vector<int>{0, 2})) < 1e-13);
  const std::vector<int> perm{2, 0, 1};
  const auto p = permute_sites(psi, perm);
  CHECK(p.dims() == std::vector<int>{2, 2, 3});
  CHECK(p.amplitude({1, 0, 2}) == psi.amplitude({0, 2, 1}));
  CHECK(fidelity(psi, psi.scaled(Complex(0, 2))) == doctest::Approx(1.0));
}
