#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ptlab {

/// Malformed question, answer, parameter or file content supplied by a caller.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A domain invariant failed (non-unitary matrix, non-orthogonal basis,
/// a Kochen-Specker file whose set turns out to be colourable, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured budget.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what_space, std::string size_text, std::uint64_t cap)
      : std::runtime_error(what_space + " has size " + size_text + ", exceeding the cap of " +
                           std::to_string(cap)),
        size_text_(std::move(size_text)),
        cap_(cap) {}

  const std::string& size_text() const noexcept { return size_text_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::string size_text_;
  std::uint64_t cap_;
};

/// The requested imperfection model does not apply to this strategy.
class UnsupportedModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ptlab
