#include "algdet/bench.hpp"

#include <chrono>
#include <cstdio>
#include <random>

namespace algdet {
namespace {

std::uint64_t fnv_bytes(const std::string& s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

AlgMatrix random_matrix(const AlgebraPtr& alg, std::size_t n, std::mt19937_64& rng) {
  const FieldSpec& s = alg->field();
  AlgMatrix m = AlgMatrix::zero(alg, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<FieldValue> c(alg->dim());
      for (auto& x : c) x = FieldValue::of_int(s, static_cast<long long>(rng() % s.p));
      m.at(i, j) = AlgebraElement(alg, std::move(c));
    }
  return m;
}

// Number of nondecreasing index sequences the upper-triangular algorithm
// walks: sum over basis pairs p <= q of C(n-2+s, s-1) with s = q - p + 1.
unsigned long long upper_triangular_terms(int n, int d) {
  unsigned long long total = 0;
  for (int p = 1; p <= d; ++p)
    for (int q = p; q <= d; ++q) {
      int s = q - p + 1;
      unsigned long long c = 1;
      for (int i = 1; i <= s - 1; ++i) c = c * (n - 1 + i) / i;
      total += c;
    }
  return total;
}

}  // namespace

std::uint64_t result_checksum(const AlgebraElement& x) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const FieldValue& c : x.coords()) {
    h = fnv_bytes(c.str(), h);
    h = fnv_bytes(",", h);
  }
  return h;
}

std::vector<BenchRecord> run_bench(std::uint64_t seed, const Guards& guards) {
  struct Family {
    const char* name;
    int d;
    std::vector<int> sizes;
  };
  const std::vector<Family> families = {{"U_2", 2, {5, 10, 20, 40}}, {"U_3", 3, {4, 8, 16, 25}}};
  FieldSpec gf7 = FieldSpec::gf(7);
  std::vector<BenchRecord> out;
  for (const Family& fam : families) {
    AlgebraPtr alg = upper_triangular(gf7, fam.d);
    for (int n : fam.sizes) {
      std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(fam.d) * 0x9e3779b97f4a7c15ULL + n));
      AlgMatrix m = random_matrix(alg, n, rng);
      auto t0 = std::chrono::steady_clock::now();
      AlgebraElement det = det_upper_triangular(m);
      auto t1 = std::chrono::steady_clock::now();
      BenchRecord r;
      r.family = fam.name;
      r.n = n;
      r.d = fam.d;
      r.algorithm = "upper-triangular";
      r.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      r.terms = upper_triangular_terms(n, fam.d);
      r.checksum = result_checksum(det);
      if (static_cast<std::size_t>(n) <= guards.bruteforce) {
        AlgebraElement oracle = det_cayley_bruteforce(m, guards);
        if (!(oracle == det))
          fail(Errc::internal, "benchmark checksum broken: " + r.family + " n=" +
                                   std::to_string(n) + " disagrees with the permutation-sum oracle");
        r.verified = true;
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::string bench_csv(const std::vector<BenchRecord>& rows) {
  std::string out = "family,n,d,algorithm,ms,checksum\n";
  char buf[64];
  for (const BenchRecord& r : rows) {
    std::snprintf(buf, sizeof buf, "%.3f", r.ms);
    out += r.family + "," + std::to_string(r.n) + "," + std::to_string(r.d) + "," + r.algorithm +
           "," + buf + "," + std::to_string(r.checksum) + "\n";
  }
  return out;
}

}  // namespace algdet
