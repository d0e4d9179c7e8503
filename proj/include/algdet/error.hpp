#pragma once
#include <stdexcept>
#include <string>

namespace algdet {

// Every failure the library can raise carries one of these codes so callers
// (and the CLI exit-code mapping) can react without parsing messages.
enum class Errc {
  spec_mismatch,
  division_by_zero,
  bad_field,
  bad_dimension,
  associativity,
  unit,
  algebra_mismatch,
  not_ideal,
  not_nilpotent,
  unsupported_characteristic,
  lifting_failure,
  size_guard,
  precondition,
  parse,
  no_gadget,
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), c_(c) {}
  Errc code() const noexcept { return c_; }

 private:
  Errc c_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

}  // namespace algdet
