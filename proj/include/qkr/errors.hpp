#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qkr {

// Invalid physical input (non-positive wavelength, zero detuning, negative time).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Index outside the momentum grid.
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Bad builder / configuration argument (odd N, empty epsilon list, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// States that live on different grids or quasimomenta.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A distribution that cannot be analysed (no central peak, no crossing).
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Population reached the edge of the momentum ladder: the grid is too small.
// event_index / member_index are filled in as the error propagates upward.
class AliasingError : public std::runtime_error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  AliasingError(const std::string& what, double edge_population)
      : std::runtime_error(what), edge_population_(edge_population) {}

  double edge_population() const noexcept { return edge_population_; }
  std::size_t event_index() const noexcept { return event_index_; }
  std::size_t member_index() const noexcept { return member_index_; }

  AliasingError with_event(std::size_t index) const {
    AliasingError e(std::string(what()) + " [event " + std::to_string(index) + "]", edge_population_);
    e.event_index_ = index;
    e.member_index_ = member_index_;
    return e;
  }

  AliasingError with_member(std::size_t index) const {
    AliasingError e(std::string(what()) + " [member " + std::to_string(index) + "]", edge_population_);
    e.event_index_ = event_index_;
    e.member_index_ = index;
    return e;
  }

 private:
  double edge_population_;
  std::size_t event_index_ = npos;
  std::size_t member_index_ = npos;
};

// The dense oracle refuses grids above its cost guard.
class OracleSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace qkr
