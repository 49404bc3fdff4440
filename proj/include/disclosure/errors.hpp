#ifndef DISCLOSURE_ERRORS_HPP_
#define DISCLOSURE_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace disclosure {

// Raised when a model or mechanism parameter lies outside its domain.
// field() names the offending parameter using its short flag name
// ("mu", "q", "T", "c", ...) so front ends can report it verbatim.
class ParameterError : public std::invalid_argument {
 public:
  ParameterError(std::string field, const std::string& what)
      : std::invalid_argument(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// A time index outside {0, ..., T+1} (or the narrower range an operation
// accepts).
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// The detector routines only handle policies whose good-state silence
// probability is 1 everywhere (a "declare" message is then fully revealing).
class UnsupportedPolicyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive routines refuse horizons beyond their tractable size.
class ScaleError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace disclosure

#endif  // DISCLOSURE_ERRORS_HPP_
