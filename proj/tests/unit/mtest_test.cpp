#include "oracles.hpp"

#include "stemcpd/error.hpp"
#include "stemcpd/infer.hpp"
#include "stemcpd/mtest.hpp"
#include "stemcpd/rng.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

using namespace stemcpd;

namespace {

std::set<std::size_t> as_set(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("worked BH examples") {
  const std::vector<double> p{0.001, 0.01, 0.029, 0.039, 0.2};
  const BHOutcome bh = bh_select(p, 0.05);
  CHECK(bh.m == 5);
  CHECK(bh.k == 4);
  CHECK(bh.p_threshold == doctest::Approx(0.04));
  CHECK(bh.rejected == std::vector<std::size_t>{0, 1, 2, 3});

  // p_(i) equal to i alpha / m is not rejected.
  const std::vector<double> tie{0.01, 0.02};
  CHECK(bh_select(tie, 0.02).k == 0);
  const std::vector<double> below{0.0099, 0.02};
  CHECK(bh_select(below, 0.02).k == 1);
  const std::vector<double> edge{0.02, 0.04};
  CHECK(bh_select(edge, 0.04).k == 0);

  const std::vector<double> none{0.5, 0.6, 0.9};
  const BHOutcome empty = bh_select(none, 0.05);
  CHECK(empty.k == 0);
  CHECK(empty.p_threshold == 0.0);
  CHECK(empty.rejected.empty());

  const BHOutcome nothing = bh_select(std::span<const double>{}, 0.05);
  CHECK(nothing.m == 0);
  CHECK(nothing.p_threshold == 1.0);
}

TEST_CASE("BH agrees with a brute-force step-up") {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform() * 40);
    std::vector<double> p(m);
    for (double& v : p) {
      // Mix of small p-values, nulls and ties.
      const double u = rng.uniform();
      v = u < 0.3 ? std::max(1e-6, std::pow(rng.uniform(), 4.0) * 0.05) : std::max(1e-6, rng.uniform());
      if (u > 0.9) v = 0.025;
    }
    const double alpha = trial % 3 == 0 ? 0.05 : (trial % 3 == 1 ? 0.1 : 0.2);
    INFO("trial " << trial);
    CHECK(as_set(bh_select(p, alpha).rejected) == oracle::bh_reject(p, alpha));
  }
}

TEST_CASE("BH is invariant under permutation") {
  std::vector<double> p{0.3, 0.0001, 0.02, 0.011, 0.5, 0.004, 0.9, 0.03};
  const BHOutcome base = bh_select(p, 0.1);
  std::vector<std::size_t> perm{3, 7, 0, 5, 1, 6, 2, 4};
  std::vector<double> q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[i] = p[perm[i]];
  const BHOutcome shuffled = bh_select(q, 0.1);
  CHECK(shuffled.k == base.k);
  CHECK(shuffled.p_threshold == base.p_threshold);
  std::set<std::size_t> mapped;
  for (std::size_t i : shuffled.rejected) mapped.insert(perm[i]);
  CHECK(mapped == as_set(base.rejected));
}

TEST_CASE("rejections grow with alpha") {
  Rng rng(4);
  std::vector<double> p(200);
  for (double& v : p) v = std::max(1e-9, rng.uniform() * rng.uniform());
  std::size_t prev = 0;
  for (double alpha : {0.01, 0.02, 0.05, 0.1, 0.2, 0.4}) {
    const std::size_t k = bh_select(p, alpha).k;
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("height threshold reproduces the p-value cut") {
  const SpectralMoments m(5.575387862977409e-4, 2.0907704486165284e-5, 1.30673153038533e-6);
  Rng rng(8);
  std::vector<Extremum> ex(300);
  for (std::size_t i = 0; i < ex.size(); ++i) {
    ex[i].index = i;
    ex[i].kind = i % 2 == 0 ? ExtremumKind::maximum : ExtremumKind::minimum;
    const double h = (rng.normal() * 0.03 + (i % 17 == 0 ? 0.12 : 0.0));
    ex[i].height = ex[i].is_max() ? h : -h;
  }
  assign_pvalues(ex, m);
  std::vector<double> p;
  for (const Extremum& e : ex) p.push_back(e.p_value);
  for (double alpha : {0.01, 0.05, 0.2}) {
    BHOutcome bh = bh_select(p, alpha);
    REQUIRE(bh.k > 0);
    bh.u_threshold = bh_height_threshold(bh, m);
    CHECK(select_by_height(ex, bh.u_threshold) == bh.rejected);
  }

  BHOutcome none;
  none.m = 3;
  none.p_threshold = 0.0;
  CHECK(bh_height_threshold(none, m) == std::numeric_limits<double>::infinity());
  BHOutcome all;
  all.p_threshold = 1.0;
  CHECK(bh_height_threshold(all, m) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("BH input validation") {
  const std::vector<double> ok{0.1, 0.2};
  CHECK_THROWS_AS(bh_select(ok, 0.0), Error);
  CHECK_THROWS_AS(bh_select(ok, 1.0), Error);
  const std::vector<double> zero{0.0, 0.2};
  CHECK_THROWS_AS(bh_select(zero, 0.05), Error);
  const std::vector<double> big{1.5};
  CHECK_THROWS_AS(bh_select(big, 0.05), Error);
  const std::vector<double> nan{std::nan("")};
  CHECK_THROWS_AS(bh_select(nan, 0.05), Error);
}
