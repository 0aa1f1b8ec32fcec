#ifndef CYCLIC_ERROR_HPP
#define CYCLIC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cyclic {

enum class Errc {
  parse,
  truncation,
  validation,
  shape_mismatch,
  size_mismatch,
  composition_nonzero,
  not_chain_map,
  simplicial_relation_violated,
  relation_check_failed,
  chain_mismatch,
  retract_invalid,
  homotopy_identity_failed,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::parse: return "ParseError";
    case Errc::truncation: return "TruncationError";
    case Errc::validation: return "ValidationFailed";
    case Errc::shape_mismatch: return "ShapeMismatch";
    case Errc::size_mismatch: return "SizeMismatch";
    case Errc::composition_nonzero: return "CompositionNonzero";
    case Errc::not_chain_map: return "NotChainMap";
    case Errc::simplicial_relation_violated: return "SimplicialRelationViolated";
    case Errc::relation_check_failed: return "RelationCheckFailed";
    case Errc::chain_mismatch: return "ChainMismatch";
    case Errc::retract_invalid: return "RetractInvalid";
    case Errc::homotopy_identity_failed: return "HomotopyIdentityFailed";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), message_(what) {}
  Errc code() const { return code_; }
  /// what() without the error-kind prefix
  const std::string& message() const { return message_; }

 private:
  Errc code_;
  std::string message_;
};

}  // namespace cyclic

#endif
