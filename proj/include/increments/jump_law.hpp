#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace increments {

struct JumpAtom {
  unsigned size = 1;
  double rate = 0.0;

  friend bool operator==(const JumpAtom&, const JumpAtom&) = default;
};

/// Finite set of jump atoms. As t -> 0 a window sees no event with
/// probability 1 - t * total_rate and a jump of `size` with probability
/// t * rate; the single unit atom is the Poisson process.
class AtomicJumpLaw {
public:
  /// Atoms are stored in increasing size. Throws std::invalid_argument for an
  /// empty set, size 0, repeated sizes or non-positive rates.
  explicit AtomicJumpLaw(std::vector<JumpAtom> atoms);

  static AtomicJumpLaw unit(double rate);
  /// Parses `size:rate` pairs separated by commas, e.g. "1:1.0,2:0.5".
  static AtomicJumpLaw parse(std::string_view text);

  const std::vector<JumpAtom>& atoms() const noexcept { return atoms_; }
  double total_rate() const noexcept { return total_rate_; }
  unsigned max_size() const noexcept { return atoms_.back().size; }
  /// Rate of the atom with the given size, 0 if absent.
  double rate_of(unsigned size) const noexcept;

  std::string to_string() const;

  friend bool operator==(const AtomicJumpLaw&, const AtomicJumpLaw&) = default;

private:
  std::vector<JumpAtom> atoms_;
  double total_rate_ = 0.0;
};

} // namespace increments
