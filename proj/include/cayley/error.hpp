#pragma once

#include <stdexcept>
#include <string>

namespace cayley {

// Values mirror cl_status in cayleylab.h; keep both in sync.
enum class Errc : int {
  ok = 0,
  invalid_argument = 1,
  non_prime = 2,
  too_large = 3,
  no_irreducible_found = 4,
  division_by_zero = 5,
  context_mismatch = 6,
  bad_divisor = 7,
  too_large_to_enumerate = 8,
  dimension_mismatch = 9,
  group_too_large = 10,
  unsupported = 11,
  zero_torus_param = 12,
  unsupported_field_degree = 13,
  empty_generators = 14,
  empty_set = 15,
  set_too_large = 16,
  non_generic_conjugator = 17,
  inclusion_failed = 18,
  degree_too_large = 19,
  no_proper_subfield = 20,
  unsupported_family = 21,
  not_member = 22,
  buffer_too_small = 23,
  internal = 99,
};

const char* errc_name(Errc e) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace cayley
