#ifndef ASYMPARTITA_TEST_SUPPORT_HPP
#define ASYMPARTITA_TEST_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace testing_support {

// Small deterministic generator for property tests, independent of the
// library's own RNG so the two cannot mask each other's bugs.
class Lcg {
 public:
  explicit Lcg(std::uint64_t seed) : s_(seed * 2862933555777941757ull + 3037000493ull) {}
  std::uint64_t next() {
    s_ = s_ * 6364136223846793005ull + 1442695040888963407ull;
    return s_ >> 11;
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  double unit() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-42; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::uint64_t s_;
};

// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

}  // namespace testing_support

#endif
