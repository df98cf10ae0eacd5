#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "mgi/cohom.hpp"
#include "mgi/deform.hpp"
#include "mgi/matrix.hpp"
#include "mgi/ring.hpp"
#include "mgi/word.hpp"

namespace mgi {

// Raised when an input document cannot be interpreted: malformed JSON
// (carrying the byte offset where parsing failed) or a schema violation
// (byte offset 0). Distinct from mgi::error so callers can map input
// problems to usage errors and domain failures to check failures.
class json_parse_error : public std::runtime_error {
 public:
  json_parse_error(std::size_t byte, const std::string& message)
      : std::runtime_error("parse error at byte " + std::to_string(byte) +
                           ": " + message),
        byte_(byte) {}

  std::size_t byte() const { return byte_; }

 private:
  std::size_t byte_;
};

// {"ring":"gf:5","n":3,"entries":[["1","2","0"],...]} — entries are element
// strings (rationals as "p/q"); plain integers are accepted on input.
std::string matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const std::string& text);

// {"ring":"gf:5","n":3,"letters":[[1,2,"2"],[2,3,"3"]],
//  "diag":{"index":3,"value":"4"}} — "diag" is optional; "pos" (the number
// of letters preceding the diagonal factor) is emitted only when the factor
// is not trailing and defaults to the letter count.
std::string word_to_json(const TransvectionWord& w);
TransvectionWord word_from_json(const std::string& text);

// {"domain":[2,2],"codomain":[2],"table":{"(1,0)|(1,0)":"(1)"}} — table
// keys are "(x tuple)|(y tuple)", values are codomain tuples; omitted keys
// default to the identity. "symmetric":false opts out of the symmetry
// contract (emitted only when set).
std::string cocycle_to_json(const Cocycle& f);
Cocycle cocycle_from_json(const std::string& text);

// {"ring":"gf:3","n":3,"Z":[2],"cocycle":{...}} — "cocycle" omitted means
// the trivial cocycle. Building the context revalidates everything, so a
// well-formed document can still fail with a domain error (InvalidCocycle).
std::string deform_to_json(const DeformContext& ctx);
DeformContext deform_from_json(const std::string& text);

}  // namespace mgi
