#pragma once

#include <stdexcept>
#include <string>

namespace survdiff {

// Failure categories surfaced by the library.  Input/configuration problems
// and degenerate-data conditions are kept apart so callers (notably the CLI)
// can map them to distinct exit statuses.
enum class errc {
  // invalid input data or parameters
  negative_time,
  non_binary_event,
  nan_or_infinite,
  empty_sample,
  invalid_parameter,
  file_not_found,
  schema_error,
  config_parse,
  unknown_method,
  unknown_scenario,
  // degenerate statistic on otherwise well-formed data
  no_events,
  degenerate_weights,
  zero_variance,
  degenerate_variance,
  // numerical routine failed to converge
  no_convergence,
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// True for conditions caused by malformed input or configuration.
inline bool is_input_error(errc c) noexcept {
  switch (c) {
    case errc::negative_time:
    case errc::non_binary_event:
    case errc::nan_or_infinite:
    case errc::empty_sample:
    case errc::invalid_parameter:
    case errc::file_not_found:
    case errc::schema_error:
    case errc::config_parse:
    case errc::unknown_method:
    case errc::unknown_scenario:
      return true;
    default:
      return false;
  }
}

// True for conditions where valid data admits no meaningful statistic
// (e.g. a group whose product-limit weights all vanish).
inline bool is_degenerate_error(errc c) noexcept {
  switch (c) {
    case errc::no_events:
    case errc::degenerate_weights:
    case errc::zero_variance:
    case errc::degenerate_variance:
      return true;
    default:
      return false;
  }
}

}  // namespace survdiff
