#pragma once

#include <stdexcept>
#include <string>

namespace mgi {

// Failure conditions surfaced by library operations. Each value maps to a
// stable name used in CLI diagnostics and matched by tests.
enum class errc {
  non_unit,
  infinite_ring,
  bad_index,
  not_invertible,
  spec_mismatch,
  too_large,
  not_field,
  det_not_one,
  schedule_too_short,
  not_unitriangular,
  not_in_carrier,
  witness_check_failed,
  bad_indices,
  char_two,
  not_normal,
  invalid_cocycle,
  not_coboundary,
  bad_split,
  not_trivial_cocycle,
  inconsistent_context,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg)
      : std::runtime_error(std::string(errc_name(c)) + ": " + msg), code_(c) {}

  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) {
  throw error(c, msg);
}

}  // namespace mgi
