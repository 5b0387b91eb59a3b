#include "cayley/error.hpp"

namespace cayley {

const char* errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::ok: return "Ok";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::non_prime: return "NonPrime";
    case Errc::too_large: return "TooLarge";
    case Errc::no_irreducible_found: return "NoIrreducibleFound";
    case Errc::division_by_zero: return "DivisionByZero";
    case Errc::context_mismatch: return "ContextMismatch";
    case Errc::bad_divisor: return "BadDivisor";
    case Errc::too_large_to_enumerate: return "TooLargeToEnumerate";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::group_too_large: return "GroupTooLarge";
    case Errc::unsupported: return "Unsupported";
    case Errc::zero_torus_param: return "ZeroTorusParam";
    case Errc::unsupported_field_degree: return "UnsupportedFieldDegree";
    case Errc::empty_generators: return "EmptyGenerators";
    case Errc::empty_set: return "EmptySet";
    case Errc::set_too_large: return "SetTooLarge";
    case Errc::non_generic_conjugator: return "NonGenericConjugator";
    case Errc::inclusion_failed: return "InclusionFailed";
    case Errc::degree_too_large: return "DegreeTooLarge";
    case Errc::no_proper_subfield: return "NoProperSubfield";
    case Errc::unsupported_family: return "UnsupportedFamily";
    case Errc::not_member: return "NotMember";
    case Errc::buffer_too_small: return "BufferTooSmall";
    case Errc::internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace cayley
