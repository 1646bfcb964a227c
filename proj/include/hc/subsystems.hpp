#pragma once
// Names for the tripartite and bipartite reductions of the five-mode
// register (A, B_I, B_II, C_I, C_II) = modes (0, 1, 2, 3, 4). ASCII ids use
// b1/b2/c1/c2 for the outside/inside horizon modes.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hc {

enum class Subsystem {
  // tripartite
  ab1c1,
  ab1b2,
  ab2c2,
  ab1c2,
  ab2c1,
  ac1c2,
  // bipartite
  ab1,
  ac1,
  ab2,
  ac2,
  b1c1,
  b1c2,
  b2c1,
  b1b2,
  c1c2,
  b2c2,
};

// Requested operation has no closed form (or no meaning) for this subsystem.
struct UnsupportedSubsystem : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

inline bool is_tripartite(Subsystem s) {
  switch (s) {
    case Subsystem::ab1c1:
    case Subsystem::ab1b2:
    case Subsystem::ab2c2:
    case Subsystem::ab1c2:
    case Subsystem::ab2c1:
    case Subsystem::ac1c2:
      return true;
    default:
      return false;
  }
}

inline bool is_bipartite(Subsystem s) { return !is_tripartite(s); }

inline std::string_view name(Subsystem s) {
  switch (s) {
    case Subsystem::ab1c1: return "a-b1-c1";
    case Subsystem::ab1b2: return "a-b1-b2";
    case Subsystem::ab2c2: return "a-b2-c2";
    case Subsystem::ab1c2: return "a-b1-c2";
    case Subsystem::ab2c1: return "a-b2-c1";
    case Subsystem::ac1c2: return "a-c1-c2";
    case Subsystem::ab1: return "a-b1";
    case Subsystem::ac1: return "a-c1";
    case Subsystem::ab2: return "a-b2";
    case Subsystem::ac2: return "a-c2";
    case Subsystem::b1c1: return "b1-c1";
    case Subsystem::b1c2: return "b1-c2";
    case Subsystem::b2c1: return "b2-c1";
    case Subsystem::b1b2: return "b1-b2";
    case Subsystem::c1c2: return "c1-c2";
    case Subsystem::b2c2: return "b2-c2";
  }
  throw std::invalid_argument("name: unknown subsystem");
}

// Register mode indices, ascending. A=0, B_I=1, B_II=2, C_I=3, C_II=4.
inline std::vector<int> modes(Subsystem s) {
  switch (s) {
    case Subsystem::ab1c1: return {0, 1, 3};
    case Subsystem::ab1b2: return {0, 1, 2};
    case Subsystem::ab2c2: return {0, 2, 4};
    case Subsystem::ab1c2: return {0, 1, 4};
    case Subsystem::ab2c1: return {0, 2, 3};
    case Subsystem::ac1c2: return {0, 3, 4};
    case Subsystem::ab1: return {0, 1};
    case Subsystem::ac1: return {0, 3};
    case Subsystem::ab2: return {0, 2};
    case Subsystem::ac2: return {0, 4};
    case Subsystem::b1c1: return {1, 3};
    case Subsystem::b1c2: return {1, 4};
    case Subsystem::b2c1: return {2, 3};
    case Subsystem::b1b2: return {1, 2};
    case Subsystem::c1c2: return {3, 4};
    case Subsystem::b2c2: return {2, 4};
  }
  throw std::invalid_argument("modes: unknown subsystem");
}

inline const std::vector<Subsystem>& all_tripartite() {
  static const std::vector<Subsystem> v = {
      Subsystem::ab1c1, Subsystem::ab1b2, Subsystem::ab2c2,
      Subsystem::ab1c2, Subsystem::ab2c1, Subsystem::ac1c2};
  return v;
}

inline const std::vector<Subsystem>& all_bipartite() {
  static const std::vector<Subsystem> v = {
      Subsystem::ab1,  Subsystem::ac1,  Subsystem::ab2,  Subsystem::ac2,
      Subsystem::b1c1, Subsystem::b1c2, Subsystem::b2c1, Subsystem::b1b2,
      Subsystem::c1c2, Subsystem::b2c2};
  return v;
}

inline std::optional<Subsystem> parse_subsystem(std::string_view text) {
  for (Subsystem s : all_tripartite())
    if (name(s) == text) return s;
  for (Subsystem s : all_bipartite())
    if (name(s) == text) return s;
  return std::nullopt;
}

}  // namespace hc
