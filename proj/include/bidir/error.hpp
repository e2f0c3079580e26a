#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bidir {

// Argument outside an operation's domain (unknown vertex, endpoint not on an
// edge, non-ACGT base).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed external input: edge-list lines, FASTA files, negative weights.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A walk references an edge the graph does not have.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An algorithm was called on input violating its documented precondition,
// e.g. an Euler tour requested on an imbalanced graph.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Thrown by the exact solver for graphs with more than one connected
// component. Carries the components (vertex labels) for reporting.
class DisconnectedGraphError : public std::runtime_error {
 public:
  explicit DisconnectedGraphError(std::vector<std::vector<std::uint64_t>> components)
      : std::runtime_error(describe(components)), components_(std::move(components)) {}

  const std::vector<std::vector<std::uint64_t>>& components() const noexcept {
    return components_;
  }

 private:
  static std::string describe(const std::vector<std::vector<std::uint64_t>>& comps) {
    std::string msg = "graph has " + std::to_string(comps.size()) + " connected components:";
    for (const auto& comp : comps) {
      msg += " {";
      for (std::size_t i = 0; i < comp.size(); ++i) {
        if (i == 8) {
          msg += ",...";
          break;
        }
        if (i) msg += ',';
        msg += std::to_string(comp[i]);
      }
      msg += '}';
    }
    return msg;
  }

  std::vector<std::vector<std::uint64_t>> components_;
};

}  // namespace bidir
