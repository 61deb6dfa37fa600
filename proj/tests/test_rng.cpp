#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "paircmp/rng.hpp"

using namespace paircmp;

TEST_CASE("rng: identical seeds give identical streams") {
  Rng a(1234), b(1234);
  for (int k = 0; k < 1000; ++k) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng: different seeds diverge") {
  Rng a(1), b(2);
  int same = 0;
  for (int k = 0; k < 64; ++k)
    if (a.next_u64() == b.next_u64()) ++same;
  CHECK(same == 0);
}

TEST_CASE("mix_seed separates streams") {
  const std::uint64_t master = 42;
  CHECK(mix_seed(master, 0) != mix_seed(master, 1));
  CHECK(mix_seed(master, 1) != mix_seed(master, 2));
  CHECK(mix_seed(master, 0) != mix_seed(master + 1, 0));
  // stability: the derivation is part of the reproducibility contract
  CHECK(mix_seed(42, 7) == mix_seed(42, 7));
}

TEST_CASE("uniform stays in range with plausible moments") {
  Rng rng(7);
  const int N = 200000;
  double sum = 0, sum2 = 0;
  for (int k = 0; k < N; ++k) {
    const double x = rng.uniform(2.0, 5.0);
    CHECK(x >= 2.0);
    CHECK(x < 5.0);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / N;
  const double var = sum2 / N - mean * mean;
  CHECK(mean == doctest::Approx(3.5).epsilon(0.01));
  CHECK(var == doctest::Approx(9.0 / 12.0).epsilon(0.05));
}

TEST_CASE("normal deviates have standard moments") {
  Rng rng(99);
  const int N = 400000;
  double s1 = 0, s2 = 0, s3 = 0, s4 = 0;
  int within = 0;
  for (int k = 0; k < N; ++k) {
    const double z = rng.normal();
    s1 += z;
    s2 += z * z;
    s3 += z * z * z;
    s4 += z * z * z * z;
    if (std::fabs(z) < 1.959963984540054) ++within;
  }
  CHECK(std::fabs(s1 / N) < 0.01);
  CHECK(s2 / N == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::fabs(s3 / N) < 0.03);
  CHECK(s4 / N == doctest::Approx(3.0).epsilon(0.05));
  CHECK(static_cast<double>(within) / N == doctest::Approx(0.95).epsilon(0.005));
}
