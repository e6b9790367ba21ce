#pragma once

#include <stdexcept>
#include <string>

namespace ellrook {

struct ZeroArgument : std::domain_error {
  explicit ZeroArgument(const std::string& what) : std::domain_error(what) {}
};

struct NoConvergence : std::runtime_error {
  explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A denominator factor vanished: the parameter point is not generic.
struct PoleEncountered : std::domain_error {
  explicit PoleEncountered(const std::string& what) : std::domain_error(what) {}
};

struct NotJAttackingBoard : std::invalid_argument {
  explicit NotJAttackingBoard(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownIdentity : std::invalid_argument {
  explicit UnknownIdentity(const std::string& what) : std::invalid_argument(what) {}
};

struct BadBoardSpec : std::invalid_argument {
  explicit BadBoardSpec(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace ellrook
