#include "increments/jump_law.hpp"

#include "increments/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <stdexcept>
#include <string>

namespace increments {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
    s.remove_suffix(1);
  }
  return s;
}

JumpAtom parse_atom(std::string_view token) {
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("jump atom '" + std::string(token) + "' is not size:rate");
  }
  const auto size_text = trim(token.substr(0, colon));
  const auto rate_text = trim(token.substr(colon + 1));

  JumpAtom atom;
  auto [size_end, size_err] =
      std::from_chars(size_text.data(), size_text.data() + size_text.size(), atom.size);
  if (size_err != std::errc{} || size_end != size_text.data() + size_text.size()) {
    throw std::invalid_argument("bad jump size '" + std::string(size_text) + "'");
  }
  // from_chars for double is missing from libstdc++ 11, strtod needs a
  // terminated buffer.
  const std::string rate_buffer(rate_text);
  char* rate_end = nullptr;
  atom.rate = std::strtod(rate_buffer.c_str(), &rate_end);
  if (rate_buffer.empty() || rate_end != rate_buffer.c_str() + rate_buffer.size()) {
    throw std::invalid_argument("bad jump rate '" + rate_buffer + "'");
  }
  return atom;
}

} // namespace

AtomicJumpLaw::AtomicJumpLaw(std::vector<JumpAtom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) {
    throw std::invalid_argument("a jump law needs at least one atom");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const JumpAtom& a, const JumpAtom& b) { return a.size < b.size; });
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const auto& atom = atoms_[i];
    if (atom.size == 0) {
      throw std::invalid_argument("jump sizes must be at least 1");
    }
    if (!(atom.rate > 0.0) || !std::isfinite(atom.rate)) {
      throw std::invalid_argument("jump rates must be positive and finite");
    }
    if (i > 0 && atoms_[i - 1].size == atom.size) {
      throw std::invalid_argument("jump size " + std::to_string(atom.size) + " repeated");
    }
    total_rate_ += atom.rate;
  }
}

AtomicJumpLaw AtomicJumpLaw::unit(double rate) { return AtomicJumpLaw({{1, rate}}); }

AtomicJumpLaw AtomicJumpLaw::parse(std::string_view text) {
  std::vector<JumpAtom> atoms;
  while (true) {
    const auto comma = text.find(',');
    atoms.push_back(parse_atom(trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) {
      break;
    }
    text.remove_prefix(comma + 1);
  }
  return AtomicJumpLaw(std::move(atoms));
}

double AtomicJumpLaw::rate_of(unsigned size) const noexcept {
  for (const auto& atom : atoms_) {
    if (atom.size == size) {
      return atom.rate;
    }
  }
  return 0.0;
}

std::string AtomicJumpLaw::to_string() const {
  std::string out;
  for (const auto& atom : atoms_) {
    if (!out.empty()) {
      out += ',';
    }
    out += std::to_string(atom.size) + ':' + format_number(atom.rate);
  }
  return out;
}

} // namespace increments
