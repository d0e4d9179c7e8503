#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "algdet/determinant.hpp"

namespace algdet {

struct BenchRecord {
  std::string family;     // algebra family, e.g. "U_2"
  int n = 0;              // matrix size
  int d = 0;              // nilpotency parameter of the family
  std::string algorithm;  // algorithm that produced the timed value
  double ms = 0.0;        // wall time
  unsigned long long terms = 0;  // summed terms the algorithm evaluated
  std::uint64_t checksum = 0;    // content hash of the result coordinates
  bool verified = false;  // re-checked against the permutation-sum oracle
};

// FNV-1a over the canonical coordinate strings; ties a timing row to a value.
std::uint64_t result_checksum(const AlgebraElement& x);

// Seeded upper-triangular determinant grid over GF(7): U_2 with
// n in {5,10,20,40} and U_3 with n in {4,8,16,25}. Rows with n <= oracle
// guard are re-verified; a mismatch throws.
std::vector<BenchRecord> run_bench(std::uint64_t seed, const Guards& guards = {});

// CSV with header `family,n,d,algorithm,ms,checksum`.
std::string bench_csv(const std::vector<BenchRecord>& rows);

}  // namespace algdet
