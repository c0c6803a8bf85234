#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace autocomm {

enum class Errc {
  NotAssociative,
  NoIdentity,
  NoInverse,
  NotClosed,
  InvalidTable,
  InvalidLabels,
  UnknownSpec,
  SizeLimitExceeded,
  NotASubgroup,
  NotNormal,
  NotContained,
  HypothesisViolated,
  TrivialAutGroup,
  NotAChain,
  DegenerateInstance,
  IllDefinedMap,
  ParseError,
  UnknownLabel,
  NotASubgroupSpec,
  InvariantViolation,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::NotAssociative: return "NotAssociative";
    case Errc::NoIdentity: return "NoIdentity";
    case Errc::NoInverse: return "NoInverse";
    case Errc::NotClosed: return "NotClosed";
    case Errc::InvalidTable: return "InvalidTable";
    case Errc::InvalidLabels: return "InvalidLabels";
    case Errc::UnknownSpec: return "UnknownSpec";
    case Errc::SizeLimitExceeded: return "SizeLimitExceeded";
    case Errc::NotASubgroup: return "NotASubgroup";
    case Errc::NotNormal: return "NotNormal";
    case Errc::NotContained: return "NotContained";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::TrivialAutGroup: return "TrivialAutGroup";
    case Errc::NotAChain: return "NotAChain";
    case Errc::DegenerateInstance: return "DegenerateInstance";
    case Errc::IllDefinedMap: return "IllDefinedMap";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::NotASubgroupSpec: return "NotASubgroupSpec";
    case Errc::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above; the
/// message names the offending element, triple or token.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Internal consistency assertion. A failure means an implementation bug or a
/// false mathematical identity, never bad user input.
inline void ensure(bool condition, std::string_view what) {
  if (!condition) throw Error(Errc::InvariantViolation, std::string(what));
}

}  // namespace autocomm
