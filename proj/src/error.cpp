#include "mgi/error.hpp"

namespace mgi {

const char* errc_name(errc c) {
  switch (c) {
    case errc::non_unit: return "NonUnit";
    case errc::infinite_ring: return "InfiniteRing";
    case errc::bad_index: return "BadIndex";
    case errc::not_invertible: return "NotInvertible";
    case errc::spec_mismatch: return "SpecMismatch";
    case errc::too_large: return "TooLarge";
    case errc::not_field: return "NotField";
    case errc::det_not_one: return "DetNotOne";
    case errc::schedule_too_short: return "ScheduleTooShort";
    case errc::not_unitriangular: return "NotUnitriangular";
    case errc::not_in_carrier: return "NotInCarrier";
    case errc::witness_check_failed: return "WitnessCheckFailed";
    case errc::bad_indices: return "BadIndices";
    case errc::char_two: return "CharTwo";
    case errc::not_normal: return "NotNormal";
    case errc::invalid_cocycle: return "InvalidCocycle";
    case errc::not_coboundary: return "NotCoboundary";
    case errc::bad_split: return "BadSplit";
    case errc::not_trivial_cocycle: return "NotTrivialCocycle";
    case errc::inconsistent_context: return "InconsistentContext";
  }
  return "UnknownError";
}

}  // namespace mgi
